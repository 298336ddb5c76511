#pragma once
// Reproducible scenario construction and the headline studies: lifespan
// scaling in epsilon, decay-rate measurement, convergence order, and the
// transport conservation audits.

#include "axeuler/runner.hpp"

#include <map>
#include <string>

namespace axeuler {

struct ScenarioSpec {
    EosSpec eos = EosSpec::chaplygin();
    double epsilon = 0.02;
    std::string profile = "bump";  // bump | irrotational | zero | seeded
    double r0 = 0.125;             // support radius of the data
    std::size_t n = 8192;
    double r_max = 0.0;            // 0: sized from t_end and the signal speed
    double t_end = 10.0;
    double cfl = 0.4;
    double diag_dt = 0.5;
    unsigned seed = 0;
    // minimum cells across the data support demanded of the grid
    double min_resolve_cells = 64.0;
};

// C-infinity bump exp(-1/(1-(r/r0)^2)) for r < r0, 0 outside.
double bump_profile(double r, double r0);

double auto_r_max(const ScenarioSpec& spec);
GridPtr scenario_grid(const ScenarioSpec& spec);

// rho0 = 1 + eps*b, f0 = eps*(r/r0)*b, g0 = eps*(r/r0)*b (zero for the
// irrotational variant); p derived per EOS. Also returns rho0.
std::pair<FieldState, RadialField> make_initial_data(const ScenarioSpec& spec,
                                                     const GridPtr& grid);

RunParams run_params_for(const ScenarioSpec& spec);
RunOutcome run_scenario(const ScenarioSpec& spec, const RunParams& params);
RunOutcome run_scenario(const ScenarioSpec& spec);

// ------------------------------------------------------------- lifespan

struct SweepRow {
    double epsilon = 0.0;
    double T = 0.0;  // blow-up time
    std::size_t n = 0;
    double theta = 0.0;
    double r_max = 0.0;
    int retries = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double slope = 0.0;      // d log T / d log eps
    double r_squared = 0.0;
    double tau0_sq = 0.0;    // median eps^2 T
};

struct SweepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fit alone (for synthetic injections): slope of log T vs log eps + median.
SweepResult fit_lifespan(std::vector<SweepRow> rows);

struct SweepOptions {
    double horizon_scale = 0.05;  // first t_end guess = scale / eps^2
    int max_retries = 3;
    int jobs = 1;
    double theta = 100.0;
};

SweepResult lifespan_sweep(const EosSpec& eos, const std::vector<double>& epsilons,
                           const ScenarioSpec& base, const SweepOptions& opt = {});

// ---------------------------------------------------------------- decay

struct DecayReport {
    RunStatus status = RunStatus::Completed;
    double window_lo = 0.0, window_hi = 0.0;
    // probe name -> fit (probes identically zero are skipped)
    std::map<std::string, FitResult> fits;
    EnergyLedger ledger;
};

DecayReport decay_study(const ScenarioSpec& spec, double window_lo = 20.0,
                        double window_hi = 0.0 /* 0: 0.9*t_end */);
std::map<std::string, FitResult> decay_fits(const EnergyLedger& ledger, double window_lo,
                                            double window_hi);

// ---------------------------------------------------------- convergence

struct ConvergenceResult {
    bool exact = false;  // all differences vanished (rest state)
    // field -> {L2 order, Linf order}
    std::map<std::string, std::pair<double, double>> orders;
    double min_order = 0.0;
};

ConvergenceResult convergence_study(const ScenarioSpec& spec, std::size_t n_base,
                                    DerivScheme scheme = DerivScheme::Centered4);

// --------------------------------------------------------- conservation

struct DriftReport {
    double mass_drift = 0.0;    // |m(t)-m(0)| max over rows
    double mass_scale = 0.0;    // |m(0)|
    double rg_drift = 0.0;      // relative
    double w_drift = 0.0;       // relative
};

DriftReport conservation_audit(const EnergyLedger& ledger);

} // namespace axeuler
