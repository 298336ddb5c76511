#include "axeuler/eos.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace axeuler {

EosSpec EosSpec::chaplygin(double P0, double B) {
    if (P0 <= 0.0 || B <= 0.0) throw std::domain_error("eos: P0 and B must be positive");
    EosSpec e;
    e.kind = EosKind::Chaplygin;
    e.P0 = P0;
    e.B = B;
    return e;
}

EosSpec EosSpec::polytropic(double gamma) { return polytropic(gamma, 1.0 / gamma); }

EosSpec EosSpec::polytropic(double gamma, double A) {
    if (gamma < 1.0) throw std::domain_error("eos: gamma must be >= 1");
    if (A <= 0.0) throw std::domain_error("eos: A must be positive");
    EosSpec e;
    e.kind = EosKind::Polytropic;
    e.gamma = gamma;
    e.A = A;
    return e;
}

std::string EosSpec::describe() const {
    std::ostringstream os;
    if (is_chaplygin()) {
        os << "chaplygin P0=" << P0 << " B=" << B;
    } else {
        os << "polytropic gamma=" << gamma << " A=" << A;
    }
    return os.str();
}

double pressure(const EosSpec& eos, double rho) {
    if (rho <= 0.0) throw std::domain_error("pressure: rho must be positive");
    if (eos.is_chaplygin()) return eos.P0 - eos.B / rho;
    return eos.A * std::pow(rho, eos.gamma);
}

double sound_speed(const EosSpec& eos, double rho) {
    if (rho <= 0.0) throw std::domain_error("sound_speed: rho must be positive");
    if (eos.is_chaplygin()) return std::sqrt(eos.B) / rho;
    return std::sqrt(eos.A * eos.gamma) * std::pow(rho, 0.5 * (eos.gamma - 1.0));
}

double dot_c(const EosSpec& eos, double rho) {
    if (eos.is_chaplygin()) throw std::invalid_argument("dot_c: polytropic eos required");
    if (std::fabs(eos.A * eos.gamma - 1.0) > 1e-12)
        throw std::invalid_argument("dot_c: requires the A = 1/gamma normalization");
    if (rho <= 0.0) throw std::domain_error("dot_c: rho must be positive");
    if (eos.gamma == 1.0) return std::log(rho);
    const double mu = 0.5 * (eos.gamma - 1.0);
    return (std::pow(rho, mu) - 1.0) / mu;
}

double rho_from_dot_c(const EosSpec& eos, double cdot) {
    if (eos.is_chaplygin()) throw std::invalid_argument("rho_from_dot_c: polytropic eos required");
    if (eos.gamma == 1.0) return std::exp(cdot);
    const double mu = 0.5 * (eos.gamma - 1.0);
    const double cs = 1.0 + mu * cdot;
    if (cs <= 0.0) throw std::domain_error("rho_from_dot_c: nonpositive sound speed");
    return std::pow(cs, 1.0 / mu);
}

} // namespace axeuler
