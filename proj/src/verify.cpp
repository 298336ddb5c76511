#include "axeuler/verify.hpp"

#include "axeuler/analysis.hpp"
#include "axeuler/experiments.hpp"
#include "axeuler/kernels.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace axeuler {

namespace {

struct Suite {
    std::vector<VerifyCheck> checks;
    void add(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    }
    void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
        try {
            auto [ok, detail] = fn();
            add(name, ok, detail);
        } catch (const std::exception& e) {
            add(name, false, std::string("exception: ") + e.what());
        }
    }
};

std::string num(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

FieldState gaussian_state(const GridPtr& g, double av, double af, double ag) {
    FieldState s = make_state(g);
    for (std::size_t j = 0; j < g->n; ++j) {
        const double r = g->r[j];
        const double e = std::exp(-r * r);
        s.p[j] = av * e;
        s.f[j] = af * r * e;
        s.g[j] = ag * r * e;
    }
    return s;
}

} // namespace

std::vector<VerifyCheck> run_verify_suite() {
    Suite suite;
    const EosSpec chap = EosSpec::chaplygin();

    suite.run("rest state is a bitwise fixed point", [&] {
        GridPtr g = make_grid(4.0, 256);
        FieldState s = make_state(g);
        FieldState s2 = step_rk4(s, chap, 1e-3);
        for (int i = 0; i < 50; ++i) s2 = step_rk4(s2, chap, 1e-3);
        bool ok = true;
        for (std::size_t j = 0; j < g->n; ++j) {
            ok = ok && s2.p[j] == 0.0 && s2.f[j] == 0.0 && s2.g[j] == 0.0;
        }
        return std::pair{ok, std::string()};
    });

    suite.run("g == 0 is preserved bitwise", [&] {
        GridPtr g = make_grid(4.0, 256);
        FieldState s = gaussian_state(g, 0.01, 0.01, 0.0);
        for (int i = 0; i < 50; ++i) s = step_rk4(s, chap, 1e-3);
        bool ok = true;
        for (std::size_t j = 0; j < g->n; ++j) ok = ok && s.g[j] == 0.0;
        return std::pair{ok, std::string()};
    });

    suite.run("Q forms agree to 1e-12 on random valid states", [&] {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> amp(-0.1, 0.1);
        GridPtr g = make_grid(4.0, 128);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            FieldState s = make_state(g);
            for (std::size_t j = 0; j < g->n; ++j) {
                const double r = g->r[j];
                const double e = std::exp(-r * r);
                s.p[j] = amp(rng) * e;
                s.f[j] = amp(rng) * r * e;
                s.g[j] = amp(rng) * r * e;
            }
            RadialField a1 = q1_direct(s), b1 = q1_null_form(s);
            RadialField a2 = q2_direct(s), b2 = q2_null_form(s);
            const double s1 = kernels::ops().max_abs(a1.data(), a1.size());
            const double s2 = kernels::ops().max_abs(a2.data(), a2.size());
            for (std::size_t j = 0; j < g->n; ++j) {
                if (s1 > 0) worst = std::max(worst, std::fabs(a1[j] - b1[j]) / s1);
                if (s2 > 0) worst = std::max(worst, std::fabs(a2[j] - b2[j]) / s2);
            }
        }
        return std::pair{worst <= 1e-12, "max rel diff " + num(worst)};
    });

    suite.run("cutoff partition chi0 + chi1 == 1 exactly", [&] {
        GridPtr g = make_grid(8.0, 512);
        for (double t : {0.0, 1.0, 7.3}) {
            CutoffPair c = cutoffs(g, t);
            for (std::size_t j = 0; j < g->n; ++j) {
                if (c.chi0[j] + c.chi1[j] != 1.0) return std::pair{false, "t=" + num(t)};
            }
        }
        return std::pair{true, std::string()};
    });

    suite.run("ghost weight: q' matches finite differences of q", [&] {
        double worst = 0.0;
        for (double s : {-50.0, -3.0, -0.7, 0.0, 0.4, 2.0, 9.0, 70.0}) {
            const double d = 1e-4;
            const double fd = (ghost_q(s + d) - ghost_q(s - d)) / (2 * d);
            worst = std::max(worst, std::fabs(fd - ghost_qprime(s)));
        }
        return std::pair{worst <= 1e-6, "max abs diff " + num(worst)};
    });

    suite.run("G transform: defining ODE residual on the Gaussian case", [&] {
        GridPtr g = make_grid(8.0, 4096);
        FieldState s = make_state(g);
        for (std::size_t j = 0; j < g->n; ++j) {
            const double r = g->r[j];
            s.g[j] = r * std::exp(-r * r);
        }
        RadialField G = compute_G(s);
        RadialField dG = ddr(G);
        double worst = 0.0;
        for (std::size_t j = 0; j < g->n; ++j) {
            const double resid = (1.0 + s.p[j]) * dG[j] + s.g[j] * s.g[j] * g->inv_r[j];
            worst = std::max(worst, std::fabs(resid));
        }
        return std::pair{worst <= 1e-6, "residual sup " + num(worst)};
    });

    suite.run("energy homogeneity under table scaling", [&] {
        GridPtr g = make_grid(6.0, 512);
        FieldState s = gaussian_state(g, 0.02, 0.015, 0.01);
        DerivativeTable tab = build_derivative_table(s, chap, 2);
        CutoffPair cut = cutoffs(g, s.t);
        const double e1 = energy_E(tab, 2), x1 = energy_X(tab, cut, 2),
                     y1 = energy_Y(tab, cut, 2), w1 = vorticity_W(tab, 1);
        DerivativeTable tab2 = tab;
        tab2.scale_all(3.0);
        const double e2 = energy_E(tab2, 2), x2 = energy_X(tab2, cut, 2),
                     y2 = energy_Y(tab2, cut, 2), w2 = vorticity_W(tab2, 1);
        double worst = 0.0;
        worst = std::max(worst, std::fabs(e2 - 3.0 * e1) / (3.0 * e1));
        worst = std::max(worst, std::fabs(x2 - 3.0 * x1) / (3.0 * x1));
        worst = std::max(worst, std::fabs(y2 - 3.0 * y1) / (3.0 * y1));
        worst = std::max(worst, std::fabs(w2 - 3.0 * w1) / (3.0 * w1));
        return std::pair{worst <= 1e-12, "max rel err " + num(worst)};
    });

    suite.run("commutation: S~ dr psi == dr S psi to stencil order", [&] {
        // psi = exp(-(r-1)^2) sampled with its exact time derivative 0.3*psi
        double err_coarse = 0.0, err_fine = 0.0;
        for (std::size_t n : {512u, 1024u}) {
            GridPtr g = make_grid(6.0, n);
            RadialField psi(g, Parity::Even), dtpsi(g, Parity::Even);
            for (std::size_t j = 0; j < n; ++j) {
                const double r = g->r[j];
                // symmetrized ring profile, genuinely even about r = 0
                psi[j] = std::exp(-4.0 * (r - 1.0) * (r - 1.0)) +
                         std::exp(-4.0 * (r + 1.0) * (r + 1.0));
                dtpsi[j] = 0.3 * psi[j];
            }
            const double t = 0.7;
            // lhs = (S+1) dr psi, with dt dr psi = dr dt psi
            RadialField drpsi = ddr(psi);
            RadialField ddr_dtpsi = ddr(dtpsi);
            RadialField d2 = ddr(drpsi);
            RadialField lhs(g, Parity::Odd);
            for (std::size_t j = 0; j < n; ++j) {
                lhs[j] = t * ddr_dtpsi[j] + g->r[j] * d2[j] + drpsi[j];
            }
            RadialField Spsi(g, Parity::Even);
            for (std::size_t j = 0; j < n; ++j)
                Spsi[j] = t * dtpsi[j] + g->r[j] * drpsi[j];
            RadialField rhsf = ddr(Spsi);
            double err = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                err = std::max(err, std::fabs(lhs[j] - rhsf[j]));
            if (n == 512u) err_coarse = err;
            else err_fine = err;
        }
        const double order = std::log2(err_coarse / err_fine);
        return std::pair{order >= 3.0, "observed order " + num(order)};
    });

    suite.run("conservation: rg and w sup-norm drift <= 1e-3 to t=2", [&] {
        ScenarioSpec spec;
        spec.eos = chap;
        spec.epsilon = 0.02;
        spec.n = 2048;
        spec.t_end = 2.0;
        spec.diag_dt = 0.25;
        RunOutcome out = run_scenario(spec);
        if (out.status != RunStatus::Completed) return std::pair{false, std::string("run failed")};
        DriftReport drift = conservation_audit(out.ledger);
        const bool ok = drift.rg_drift <= 1e-3 && drift.w_drift <= 1e-3;
        return std::pair{ok, "rg " + num(drift.rg_drift) + ", w " + num(drift.w_drift)};
    });

    suite.run("data size scales exactly linearly", [&] {
        ScenarioSpec spec;
        spec.eos = chap;
        spec.n = 1024;
        spec.r_max = 2.0;
        spec.epsilon = 1.0;
        GridPtr g = scenario_grid(spec);
        auto [s1, rho1] = make_initial_data(spec, g);
        spec.epsilon = 0.02;
        auto [s2, rho2] = make_initial_data(spec, g);
        const double e1 = data_size_epsilon(s1, rho1, 2);
        const double e2 = data_size_epsilon(s2, rho2, 2);
        const double rel = std::fabs(e2 - 0.02 * e1) / (0.02 * e1);
        return std::pair{rel <= 1e-12, "rel err " + num(rel)};
    });

    return suite.checks;
}

} // namespace axeuler
