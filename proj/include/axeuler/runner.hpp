#pragma once
// Trajectory driver: CFL-limited RK4 marching with blow-up detection, a
// support monitor guarding the rest-state outer boundary, diagnostic ledger
// rows at a configurable cadence, and exact landing on snapshot times.

#include "axeuler/analysis.hpp"
#include "axeuler/dynamics.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace axeuler {

struct RunParams {
    double t_end = 10.0;
    double cfl = 0.4;
    // diagnostic cadence in time units; 0 means the step-based default
    // (every max(1, floor(0.1/dt)) steps)
    double diag_dt = 0.0;
    BlowupThresholds thresholds;
    int K = 2;
    DerivScheme scheme = DerivScheme::Centered4;
    std::vector<double> snapshot_times;
    bool keep_snapshots = false;
    std::function<void(const FieldState&, std::size_t)> on_snapshot;
    // ledger ghost-residual column via +-dt microsteps (Chaplygin only)
    bool ledger_ghost_residual = true;
    int support_margin_cells = 5;
    bool record_ledger = true;
};

enum class RunStatus { Completed, BlewUp, Aborted };

const char* run_status_name(RunStatus s);

struct GradientSample {
    double t = 0.0;
    double grad = 0.0;  // max(|ddr p|, |ddr f|)
};

struct RunOutcome {
    RunStatus status = RunStatus::Completed;
    double t_end_reached = 0.0;
    std::optional<double> blowup_time;
    std::vector<GradientSample> max_gradient_history;
    EnergyLedger ledger;
    std::vector<FieldState> snapshots;
    FieldState final_state;
    std::string message;
    std::size_t steps = 0;
};

RunOutcome run(const FieldState& initial, const EosSpec& eos, const RunParams& params);

// Largest sample radius where any field exceeds tol (0 when all below).
double support_radius(const FieldState& s, double tol);

} // namespace axeuler
