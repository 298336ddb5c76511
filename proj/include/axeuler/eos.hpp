#pragma once
// Equations of state: Chaplygin P = P0 - B/rho and polytropic P = A*rho^gamma,
// sound speeds, and the polytropic normalization c_dot with A = 1/gamma so the
// rest-state signal speed is 1 for both families.

#include <string>

namespace axeuler {

enum class EosKind { Chaplygin, Polytropic };

struct EosSpec {
    EosKind kind = EosKind::Chaplygin;
    double P0 = 2.0;     // Chaplygin
    double B = 1.0;      // Chaplygin
    double A = 0.5;      // polytropic, defaults to 1/gamma
    double gamma = 2.0;  // polytropic, >= 1

    static EosSpec chaplygin(double P0 = 2.0, double B = 1.0);
    static EosSpec polytropic(double gamma);              // A = 1/gamma
    static EosSpec polytropic(double gamma, double A);

    bool is_chaplygin() const { return kind == EosKind::Chaplygin; }
    std::string describe() const;
};

double pressure(const EosSpec& eos, double rho);
double sound_speed(const EosSpec& eos, double rho);

// c_dot(rho): (2/(gamma-1))(rho^((gamma-1)/2) - 1), or ln(rho) at gamma = 1.
// Requires a polytropic eos with the A = 1/gamma normalization.
double dot_c(const EosSpec& eos, double rho);

// Inverse maps used by the dynamics/analysis state variables:
// Chaplygin rho = 1/(1+v); polytropic rho from c_dot.
double rho_from_dot_c(const EosSpec& eos, double cdot);

} // namespace axeuler
