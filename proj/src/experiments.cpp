#include "axeuler/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace axeuler {

double bump_profile(double r, double r0) {
    const double x = r / r0;
    if (x >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - x * x));
}

double auto_r_max(const ScenarioSpec& spec) {
    const double c_max = 1.0 + 2.0 * spec.epsilon;
    return spec.r0 + 1.25 * c_max * spec.t_end + 1.0;
}

GridPtr scenario_grid(const ScenarioSpec& spec) {
    const double r_max = spec.r_max > 0.0 ? spec.r_max : auto_r_max(spec);
    return make_grid(r_max, spec.n);
}

std::pair<FieldState, RadialField> make_initial_data(const ScenarioSpec& spec,
                                                     const GridPtr& grid) {
    if (spec.r0 / grid->h < spec.min_resolve_cells)
        throw std::invalid_argument(
            "make_initial_data: grid resolves the data support with fewer than " +
            std::to_string(static_cast<int>(spec.min_resolve_cells)) + " cells");
    if (spec.epsilon < 0.0) throw std::invalid_argument("make_initial_data: epsilon < 0");

    double amp_rho = 1.0, amp_f = 1.0, amp_g = 1.0;
    if (spec.profile == "irrotational") {
        amp_g = 0.0;
    } else if (spec.profile == "zero") {
        amp_rho = amp_f = amp_g = 0.0;
    } else if (spec.profile == "seeded") {
        std::mt19937 rng(spec.seed);
        std::uniform_real_distribution<double> jitter(0.9, 1.1);
        amp_rho = jitter(rng);
        amp_f = jitter(rng);
        amp_g = jitter(rng);
    } else if (spec.profile != "bump") {
        throw std::invalid_argument("make_initial_data: unknown profile '" + spec.profile +
                                    "'");
    }

    FieldState s = make_state(grid, 0.0);
    RadialField rho0(grid, Parity::Even);
    const double eps = spec.epsilon;
    for (std::size_t j = 0; j < grid->n; ++j) {
        const double r = grid->r[j];
        const double b = bump_profile(r, spec.r0);
        rho0[j] = 1.0 + eps * amp_rho * b;
        s.f[j] = eps * amp_f * (r / spec.r0) * b;
        s.g[j] = eps * amp_g * (r / spec.r0) * b;
        if (spec.eos.is_chaplygin()) {
            s.p[j] = 1.0 / rho0[j] - 1.0;
        } else {
            s.p[j] = (b == 0.0) ? 0.0 : dot_c(spec.eos, rho0[j]);
        }
    }
    return {std::move(s), std::move(rho0)};
}

RunParams run_params_for(const ScenarioSpec& spec) {
    RunParams p;
    p.t_end = spec.t_end;
    p.cfl = spec.cfl;
    p.diag_dt = spec.diag_dt;
    return p;
}

RunOutcome run_scenario(const ScenarioSpec& spec, const RunParams& params) {
    GridPtr grid = scenario_grid(spec);
    auto [state, rho0] = make_initial_data(spec, grid);
    return run(state, spec.eos, params);
}

RunOutcome run_scenario(const ScenarioSpec& spec) {
    return run_scenario(spec, run_params_for(spec));
}

// ------------------------------------------------------------- lifespan

SweepResult fit_lifespan(std::vector<SweepRow> rows) {
    if (rows.size() < 2) throw SweepError("fit_lifespan: need at least 2 rows");
    SweepResult res;
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.epsilon > b.epsilon; });
    std::vector<std::pair<double, double>> series;
    std::vector<double> eps2T;
    for (const SweepRow& r : rows) {
        series.emplace_back(r.epsilon, r.T);
        eps2T.push_back(r.epsilon * r.epsilon * r.T);
    }
    // least squares of log T on log eps
    double sx = 0, sy = 0;
    for (auto& [e, T] : series) {
        sx += std::log(e);
        sy += std::log(T);
    }
    const double n = static_cast<double>(series.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto& [e, T] : series) {
        const double dx = std::log(e) - mx, dy = std::log(T) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    res.slope = sxy / sxx;
    res.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    std::sort(eps2T.begin(), eps2T.end());
    const std::size_t m = eps2T.size();
    res.tau0_sq = (m % 2 == 1) ? eps2T[m / 2] : 0.5 * (eps2T[m / 2 - 1] + eps2T[m / 2]);
    res.rows = std::move(rows);
    return res;
}

namespace {

SweepRow sweep_member(const EosSpec& eos, double eps, const ScenarioSpec& base,
                      const SweepOptions& opt, double horizon_scale) {
    SweepRow row;
    row.epsilon = eps;
    row.n = base.n;
    row.theta = opt.theta;
    ScenarioSpec spec = base;
    spec.eos = eos;
    spec.epsilon = eps;
    spec.t_end = horizon_scale / (eps * eps);
    // auto-sized horizons at fixed n can leave the bump under the default
    // 64-cell bar; 8 cells is the floor below which T_eps is meaningless
    spec.min_resolve_cells = std::min(spec.min_resolve_cells, 8.0);
    for (int attempt = 0;; ++attempt) {
        spec.r_max = spec.r0 + 1.5 * (1.0 + 2.0 * eps) * spec.t_end + 1.0;
        RunParams params = run_params_for(spec);
        params.thresholds.theta = opt.theta;
        params.record_ledger = false;  // sweep needs only T_eps
        params.diag_dt = 0.0;
        RunOutcome out = run_scenario(spec, params);
        row.retries = attempt;
        row.r_max = spec.r_max;
        if (out.status == RunStatus::BlewUp) {
            row.T = out.blowup_time.value();
            return row;
        }
        if (out.status == RunStatus::Aborted) {
            throw SweepError("lifespan_sweep: run aborted (eps=" + std::to_string(eps) +
                             "): " + out.message);
        }
        if (attempt >= opt.max_retries) {
            throw SweepError("lifespan_sweep: no blow-up by t=" + std::to_string(spec.t_end) +
                             " after retries (eps=" + std::to_string(eps) + ")");
        }
        spec.t_end *= 2.0;  // Completed without blow-up: double the horizon
    }
}

} // namespace

SweepResult lifespan_sweep(const EosSpec& eos, const std::vector<double>& epsilons,
                           const ScenarioSpec& base, const SweepOptions& opt) {
    if (eos.is_chaplygin())
        throw std::invalid_argument("lifespan_sweep: polytropic eos required");
    if (epsilons.size() < 4)
        throw std::invalid_argument("lifespan_sweep: need at least 4 epsilon values");
    const auto [lo, hi] = std::minmax_element(epsilons.begin(), epsilons.end());
    if (*hi / *lo < 4.0)
        throw std::invalid_argument("lifespan_sweep: epsilons must span a factor >= 4");

    std::vector<double> eps_sorted = epsilons;
    std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<>());

    std::vector<SweepRow> rows(eps_sorted.size());
    double horizon = opt.horizon_scale;
    // largest epsilon first, alone: its T calibrates the remaining horizons
    rows[0] = sweep_member(eos, eps_sorted[0], base, opt, horizon);
    horizon = 2.0 * rows[0].epsilon * rows[0].epsilon * rows[0].T;

    const int jobs = std::max(1, opt.jobs);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> cursor{1};
    std::vector<std::exception_ptr> errors(eps_sorted.size());
    auto work = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= eps_sorted.size()) return;
            try {
                rows[i] = sweep_member(eos, eps_sorted[i], base, opt, horizon);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        work();
    } else {
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return fit_lifespan(std::move(rows));
}

// ---------------------------------------------------------------- decay

std::map<std::string, FitResult> decay_fits(const EnergyLedger& ledger, double window_lo,
                                            double window_hi) {
    struct Probe {
        const char* name;
        double LedgerRow::* member;
    };
    static const Probe probes[] = {
        {"near_drvf", &LedgerRow::probe_near_drvf},
        {"near_wdrf", &LedgerRow::probe_near_wdrf},
        {"away_dtvv", &LedgerRow::probe_away_dtvv},
        {"away_divf", &LedgerRow::probe_away_divf},
        {"away_f", &LedgerRow::probe_away_f},
        {"dtG", &LedgerRow::probe_dtG},
    };
    std::map<std::string, FitResult> fits;
    for (const Probe& p : probes) {
        std::vector<std::pair<double, double>> series;
        bool any_nonzero = false;
        for (const LedgerRow& row : ledger.rows) {
            const double v = row.*(p.member);
            if (v != 0.0) any_nonzero = true;
            series.emplace_back(row.t, v);
        }
        if (!any_nonzero) continue;  // rest state: fit skipped
        fits[p.name] = fit_decay(series, window_lo, window_hi);
    }
    return fits;
}

DecayReport decay_study(const ScenarioSpec& spec, double window_lo, double window_hi) {
    if (!spec.eos.is_chaplygin())
        throw std::invalid_argument("decay_study: Chaplygin eos required");
    DecayReport report;
    report.window_lo = window_lo;
    report.window_hi = (window_hi > 0.0) ? window_hi : 0.9 * spec.t_end;
    RunOutcome out = run_scenario(spec);
    report.status = out.status;
    report.ledger = std::move(out.ledger);
    // a blow-up in a Chaplygin decay run is a finding, not an exception
    bool all_zero = true;
    for (const LedgerRow& row : report.ledger.rows) {
        if (row.E0 != 0.0) {
            all_zero = false;
            break;
        }
    }
    if (!all_zero) {
        report.fits = decay_fits(report.ledger, report.window_lo, report.window_hi);
    }
    return report;
}

// ---------------------------------------------------------- convergence

ConvergenceResult convergence_study(const ScenarioSpec& spec, std::size_t n_base,
                                    DerivScheme scheme) {
    ConvergenceResult res;
    const double r_max = spec.r_max > 0.0 ? spec.r_max : auto_r_max(spec);
    std::vector<FieldState> finals;
    std::vector<GridPtr> grids;
    for (std::size_t n : {n_base, 2 * n_base, 4 * n_base}) {
        ScenarioSpec s = spec;
        s.n = n;
        s.r_max = r_max;
        GridPtr grid = make_grid(r_max, n);
        auto [state, rho0] = make_initial_data(s, grid);
        RunParams params = run_params_for(s);
        params.scheme = scheme;
        params.record_ledger = false;
        RunOutcome out = run(state, s.eos, params);
        if (out.status != RunStatus::Completed)
            throw std::runtime_error(std::string("convergence_study: run did not complete: ") +
                                     out.message);
        finals.push_back(std::move(out.final_state));
        grids.push_back(grid);
    }

    struct FieldSel {
        const char* name;
        RadialField FieldState::* member;
    };
    static const FieldSel sel[] = {
        {"p", &FieldState::p}, {"f", &FieldState::f}, {"g", &FieldState::g}};
    bool all_zero = true;
    double min_order = 1e300;
    for (const FieldSel& fs : sel) {
        const RadialField& coarse = finals[0].*(fs.member);
        RadialField mid_on_coarse = restrict_to_coarse(finals[1].*(fs.member), grids[0]);
        RadialField fine_on_mid = restrict_to_coarse(finals[2].*(fs.member), grids[1]);
        RadialField d1 = fsub(coarse, mid_on_coarse);
        RadialField d2 = fsub(finals[1].*(fs.member), fine_on_mid);
        const double e1_l2 = weighted_lp_norm(d1, nullptr, NormP::L2);
        const double e2_l2 = weighted_lp_norm(d2, nullptr, NormP::L2);
        const double e1_li = weighted_lp_norm(d1, nullptr, NormP::LInf);
        const double e2_li = weighted_lp_norm(d2, nullptr, NormP::LInf);
        if (e1_l2 == 0.0 && e2_l2 == 0.0) continue;
        all_zero = false;
        const double o_l2 = std::log2(e1_l2 / e2_l2);
        const double o_li = std::log2(e1_li / e2_li);
        res.orders[fs.name] = {o_l2, o_li};
        min_order = std::min({min_order, o_l2, o_li});
    }
    res.exact = all_zero;
    res.min_order = all_zero ? 0.0 : min_order;
    return res;
}

// --------------------------------------------------------- conservation

DriftReport conservation_audit(const EnergyLedger& ledger) {
    DriftReport rep;
    if (ledger.rows.empty()) return rep;
    const LedgerRow& first = ledger.rows.front();
    rep.mass_scale = std::fabs(first.mass);
    const double rg0 = first.rg_sup, w0 = first.w_sup;
    for (const LedgerRow& row : ledger.rows) {
        rep.mass_drift = std::max(rep.mass_drift, std::fabs(row.mass - first.mass));
        if (rg0 > 0.0)
            rep.rg_drift = std::max(rep.rg_drift, std::fabs(row.rg_sup - rg0) / rg0);
        if (w0 > 0.0)
            rep.w_drift = std::max(rep.w_drift, std::fabs(row.w_sup - w0) / w0);
    }
    return rep;
}

} // namespace axeuler
