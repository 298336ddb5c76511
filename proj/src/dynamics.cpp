#include "axeuler/dynamics.hpp"
#include "axeuler/kernels.hpp"

#include <cmath>

namespace axeuler {

FieldState make_state(const GridPtr& g, double t) {
    FieldState s;
    s.t = t;
    s.p = zeros(g, Parity::Even);
    s.f = zeros(g, Parity::Odd);
    s.g = zeros(g, Parity::Odd);
    return s;
}

void validate_state(const FieldState& s, const EosSpec& eos) {
    const std::size_t n = s.p.size();
    const auto& r = s.p.grid->r;
    if (eos.is_chaplygin()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!(1.0 + s.p[j] >= kPositivityFloor))
                throw StateInvalidError("state invalid: 1+v below floor", j, r[j]);
        }
    } else {
        const double mu = 0.5 * (eos.gamma - 1.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (!(1.0 + mu * s.p[j] >= kPositivityFloor))
                throw StateInvalidError("state invalid: sound speed below floor", j, r[j]);
        }
    }
}

FieldTriple rhs(const FieldState& s, const EosSpec& eos, DerivScheme scheme) {
    validate_state(s, eos);
    const std::size_t n = s.p.size();
    const auto& g = *s.p.grid;
    RadialField dp = ddr(s.p, scheme);
    RadialField df = ddr(s.f, scheme);
    RadialField dg = ddr(s.g, scheme);
    FieldTriple out{zeros(s.p.grid, Parity::Even), zeros(s.p.grid, Parity::Odd),
                    zeros(s.p.grid, Parity::Odd)};
    if (eos.is_chaplygin()) {
        kernels::ops().rhs_chaplygin(s.p.data(), dp.data(), s.f.data(), df.data(),
                                     s.g.data(), dg.data(), g.inv_r.data(),
                                     out.p.data(), out.f.data(), out.g.data(), n);
        if (eos.B != 1.0) {
            // P' = B/rho^2: the acoustic term in df/dt scales by B.
            for (std::size_t j = 0; j < n; ++j) {
                out.f[j] += (eos.B - 1.0) * (1.0 + s.p[j]) * dp[j];
            }
        }
    } else {
        const double mu = 0.5 * (eos.gamma - 1.0);
        kernels::ops().rhs_polytropic(s.p.data(), dp.data(), s.f.data(), df.data(),
                                      s.g.data(), dg.data(), g.inv_r.data(), mu,
                                      out.p.data(), out.f.data(), out.g.data(), n);
    }
    return out;
}

double cfl_dt(const FieldState& s, const EosSpec& eos, double cfl) {
    const std::size_t n = s.p.size();
    std::vector<double> c(n);
    if (eos.is_chaplygin()) {
        const double sqB = std::sqrt(eos.B);
        for (std::size_t j = 0; j < n; ++j) c[j] = sqB * (1.0 + s.p[j]);
    } else {
        const double mu = 0.5 * (eos.gamma - 1.0);
        for (std::size_t j = 0; j < n; ++j) c[j] = 1.0 + mu * s.p[j];
    }
    const double smax = kernels::ops().max_signal(s.f.data(), c.data(), n);
    const double h = s.p.grid->h;
    if (smax <= 0.0) return cfl * h;
    return cfl * h / smax;
}

namespace {

FieldState stage(const FieldState& base, const FieldTriple& k, double c, double t_new) {
    FieldState out;
    out.t = t_new;
    out.p = RadialField(base.p.grid, Parity::Even);
    out.f = RadialField(base.p.grid, Parity::Odd);
    out.g = RadialField(base.p.grid, Parity::Odd);
    const std::size_t n = base.p.size();
    kernels::ops().axpy(base.p.data(), k.p.data(), c, out.p.data(), n);
    kernels::ops().axpy(base.f.data(), k.f.data(), c, out.f.data(), n);
    kernels::ops().axpy(base.g.data(), k.g.data(), c, out.g.data(), n);
    return out;
}

} // namespace

FieldState step_rk4(const FieldState& s, const EosSpec& eos, double dt, DerivScheme scheme) {
    const std::size_t n = s.p.size();
    const FieldTriple k1 = rhs(s, eos, scheme);
    const FieldState s2 = stage(s, k1, 0.5 * dt, s.t + 0.5 * dt);
    const FieldTriple k2 = rhs(s2, eos, scheme);
    const FieldState s3 = stage(s, k2, 0.5 * dt, s.t + 0.5 * dt);
    const FieldTriple k3 = rhs(s3, eos, scheme);
    const FieldState s4 = stage(s, k3, dt, s.t + dt);
    const FieldTriple k4 = rhs(s4, eos, scheme);

    FieldState out = make_state(s.p.grid, s.t + dt);
    const double c1 = dt / 6.0, c2 = dt / 3.0;
    kernels::ops().combine4(s.p.data(), k1.p.data(), k2.p.data(), k3.p.data(), k4.p.data(),
                            c1, c2, c2, c1, out.p.data(), n);
    kernels::ops().combine4(s.f.data(), k1.f.data(), k2.f.data(), k3.f.data(), k4.f.data(),
                            c1, c2, c2, c1, out.f.data(), n);
    kernels::ops().combine4(s.g.data(), k1.g.data(), k2.g.data(), k3.g.data(), k4.g.data(),
                            c1, c2, c2, c1, out.g.data(), n);
    validate_state(out, eos);
    return out;
}

double max_gradient(const FieldState& s) {
    const RadialField dp = ddr(s.p);
    const RadialField df = ddr(s.f);
    const double gp = kernels::ops().max_abs(dp.data(), dp.size());
    const double gf = kernels::ops().max_abs(df.data(), df.size());
    return gp > gf ? gp : gf;
}

bool detect_blowup(const FieldState& s, const FieldState& initial, const EosSpec& eos,
                   const BlowupThresholds& th, double cfl, bool state_invalid_seen) {
    if (state_invalid_seen) return true;
    const double grad = max_gradient(s);
    if (!std::isfinite(grad)) return true;
    const double base = max_gradient(initial);
    if (grad > th.theta * (base + 1.0)) return true;
    const double dt = cfl_dt(s, eos, cfl);
    if (dt < th.dt_floor_factor * s.p.grid->h) return true;
    return false;
}

} // namespace axeuler
