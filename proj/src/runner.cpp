#include "axeuler/runner.hpp"
#include "axeuler/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace axeuler {

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "Completed";
        case RunStatus::BlewUp: return "BlewUp";
        case RunStatus::Aborted: return "Aborted";
    }
    return "?";
}

double support_radius(const FieldState& s, double tol) {
    const auto& g = *s.p.grid;
    for (std::size_t j = g.n; j-- > 0;) {
        if (std::fabs(s.p[j]) > tol || std::fabs(s.f[j]) > tol || std::fabs(s.g[j]) > tol)
            return g.r[j];
    }
    return 0.0;
}

namespace {

std::size_t support_index(const FieldState& s, double tol) {
    const auto& g = *s.p.grid;
    for (std::size_t j = g.n; j-- > 0;) {
        if (std::fabs(s.p[j]) > tol || std::fabs(s.f[j]) > tol || std::fabs(s.g[j]) > tol)
            return j;
    }
    return 0;
}

bool all_finite(const FieldState& s) {
    for (const RadialField* f : {&s.p, &s.f, &s.g}) {
        for (std::size_t j = 0; j < f->size(); ++j) {
            if (!std::isfinite((*f)[j])) return false;
        }
    }
    return true;
}

double ledger_ghost_residual(const FieldState& s, const EosSpec& eos, double dt) {
    // dt -> 0 limit of the snapshot-based audit: bracket the state with one
    // RK4 microstep each way.
    try {
        FieldState prev = step_rk4(s, eos, -dt);
        FieldState next = step_rk4(s, eos, dt);
        prev.t = s.t - dt;
        next.t = s.t + dt;
        return ghost_residual_centered(prev, s, next);
    } catch (const StateInvalidError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

RunOutcome run(const FieldState& initial, const EosSpec& eos, const RunParams& params) {
    RunOutcome out;
    const auto& g = *initial.p.grid;
    const double h = g.h;

    double amp0 = 0.0;
    for (const RadialField* f : {&initial.p, &initial.f, &initial.g}) {
        amp0 = std::max(amp0, kernels::ops().max_abs(f->data(), f->size()));
    }
    const double supp_tol = 1e-10 * amp0;
    const double base_grad = max_gradient(initial);
    const double grad_limit = params.thresholds.theta * (base_grad + 1.0);
    const double dt_floor = params.thresholds.dt_floor_factor * h;

    std::vector<double> snaps = params.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;

    FieldState state = initial;
    std::size_t steps_since_diag = 0;
    double next_diag = (params.diag_dt > 0.0) ? params.diag_dt : 0.0;

    auto diagnostics = [&](const FieldState& s, double dt_hint) {
        if (params.record_ledger) {
            double resid = 0.0;
            if (params.ledger_ghost_residual && eos.is_chaplygin() && dt_hint > 0.0) {
                resid = ledger_ghost_residual(s, eos, dt_hint);
            }
            out.ledger.rows.push_back(compute_ledger_row(s, eos, params.K, resid));
        }
        out.max_gradient_history.push_back({s.t, max_gradient(s)});
    };

    auto take_snapshot = [&](const FieldState& s) {
        if (params.keep_snapshots) out.snapshots.push_back(s);
        if (params.on_snapshot) params.on_snapshot(s, next_snap);
        ++next_snap;
    };

    // t = 0 events
    while (next_snap < snaps.size() && snaps[next_snap] <= state.t) take_snapshot(state);
    diagnostics(state, cfl_dt(state, eos, params.cfl));

    while (state.t < params.t_end) {
        double dt = cfl_dt(state, eos, params.cfl);
        if (dt < dt_floor) {
            out.status = RunStatus::BlewUp;
            out.blowup_time = state.t;
            out.message = "CFL time step collapsed below the floor";
            break;
        }
        // land exactly on the next event
        double target = params.t_end;
        if (params.diag_dt > 0.0) target = std::min(target, next_diag);
        if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);
        bool landed = false;
        if (state.t + dt >= target - 1e-12 * std::max(1.0, std::fabs(target))) {
            dt = target - state.t;
            landed = true;
        }

        try {
            state = step_rk4(state, eos, dt, params.scheme);
        } catch (const StateInvalidError& e) {
            out.status = RunStatus::BlewUp;
            out.blowup_time = state.t;
            out.message = std::string("state invalid: ") + e.what();
            break;
        }
        if (landed) state.t = target;
        ++out.steps;
        ++steps_since_diag;

        // blow-up poll (gradient threshold / NaN)
        const double grad = max_gradient(state);
        if (!std::isfinite(grad)) {
            out.status = RunStatus::BlewUp;
            out.blowup_time = state.t;
            out.message = "non-finite gradient";
            break;
        }
        if (grad > grad_limit) {
            out.status = RunStatus::BlewUp;
            out.blowup_time = state.t;
            out.message = "gradient growth threshold crossed";
            break;
        }

        // support monitor
        if (supp_tol > 0.0) {
            const std::size_t si = support_index(state, supp_tol);
            if (si + static_cast<std::size_t>(params.support_margin_cells) >= g.n) {
                out.status = RunStatus::Aborted;
                out.message = "perturbation support reached the outer boundary margin";
                break;
            }
        }

        // diagnostics cadence
        bool do_diag = false;
        if (params.diag_dt > 0.0) {
            if (state.t >= next_diag - 1e-12 * std::max(1.0, next_diag)) {
                do_diag = true;
                next_diag += params.diag_dt;
            }
        } else {
            const std::size_t every =
                std::max<std::size_t>(1, static_cast<std::size_t>(0.1 / std::max(dt, 1e-300)));
            if (steps_since_diag >= every) do_diag = true;
        }
        if (do_diag) {
            if (!all_finite(state)) {
                out.status = RunStatus::BlewUp;
                out.blowup_time = state.t;
                out.message = "non-finite field values";
                break;
            }
            diagnostics(state, dt);
            steps_since_diag = 0;
        }
        while (next_snap < snaps.size() &&
               state.t >= snaps[next_snap] - 1e-12 * std::max(1.0, snaps[next_snap])) {
            take_snapshot(state);
        }
    }

    if (out.status == RunStatus::Completed) {
        if (!all_finite(state)) {
            out.status = RunStatus::BlewUp;
            out.blowup_time = state.t;
            out.message = "non-finite field values";
        } else if (out.ledger.rows.empty() || out.ledger.rows.back().t < state.t) {
            diagnostics(state, cfl_dt(state, eos, params.cfl));
        }
    }
    out.t_end_reached = state.t;
    out.final_state = std::move(state);
    return out;
}

} // namespace axeuler
