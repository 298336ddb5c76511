#pragma once
// Time integration of the axisymmetric system in primitive variables.
// Chaplygin state: p = v = 1/rho - 1.  Polytropic state: p = c_dot(rho).
//
//   dv/dt = (1+v)(df/dr + f/r) - f dv/dr
//   df/dt = (1+v) dv/dr - f df/dr + g^2/r          (Chaplygin)
//   dc/dt = -f dc/dr - (1+mu*c)(df/dr + f/r)
//   df/dt = -f df/dr - (1+mu*c) dc/dr + g^2/r      (polytropic, mu=(gamma-1)/2)
//   dg/dt = -f (dg/dr + g/r)

#include "axeuler/eos.hpp"
#include "axeuler/grid.hpp"

#include <stdexcept>
#include <string>

namespace axeuler {

struct FieldState {
    double t = 0.0;
    RadialField p;  // even
    RadialField f;  // odd
    RadialField g;  // odd
};

FieldState make_state(const GridPtr& g, double t = 0.0);

// Positivity floor: 1+v (Chaplygin) and the sound speed 1+mu*c (polytropic)
// must stay above this; vacuum formation fails loudly.
inline constexpr double kPositivityFloor = 1e-6;

struct StateInvalidError : std::runtime_error {
    std::size_t index;
    double r;
    StateInvalidError(const std::string& what, std::size_t j, double rj)
        : std::runtime_error(what + " at r=" + std::to_string(rj)), index(j), r(rj) {}
};

// Throws StateInvalidError at the first offending sample.
void validate_state(const FieldState& s, const EosSpec& eos);

struct FieldTriple {
    RadialField p, f, g;
};

FieldTriple rhs(const FieldState& s, const EosSpec& eos,
                DerivScheme scheme = DerivScheme::Centered4);

// dt = cfl*h / max_j(|f_j| + c_j); returns cfl*h if the max speed is zero.
double cfl_dt(const FieldState& s, const EosSpec& eos, double cfl);

// Classical RK4; parities preserved; stage states are validated.
FieldState step_rk4(const FieldState& s, const EosSpec& eos, double dt,
                    DerivScheme scheme = DerivScheme::Centered4);

struct BlowupThresholds {
    double theta = 100.0;            // gradient growth factor
    double dt_floor_factor = 1e-10;  // dt floor = factor * h
};

// Gradient baseline used by the blow-up test: max(|ddr p|, |ddr f|).
double max_gradient(const FieldState& s);

// True iff max(|ddr p|,|ddr f|) > theta*(baseline at t=0 + 1), or the CFL dt
// collapsed below the floor, or a state-invalid error was observed.
bool detect_blowup(const FieldState& s, const FieldState& initial, const EosSpec& eos,
                   const BlowupThresholds& th, double cfl = 0.4,
                   bool state_invalid_seen = false);

} // namespace axeuler
