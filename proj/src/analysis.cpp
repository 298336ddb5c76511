#include "axeuler/analysis.hpp"
#include "axeuler/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace axeuler {

// ---------------------------------------------------------------- cutoffs

double smoothstep_cubic(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * (3.0 - 2.0 * u);
}

double chi0_of_s(double s) { return smoothstep_cubic((0.5 - s) * 4.0); }

CutoffPair cutoffs(const GridPtr& g, double t) {
    CutoffPair out;
    out.t = t;
    out.chi0 = RadialField(g, Parity::Even);
    out.chi1 = RadialField(g, Parity::Even);
    const double inv_jt = 1.0 / jbracket(t);
    for (std::size_t j = 0; j < g->n; ++j) {
        const double c0 = chi0_of_s(g->r[j] * inv_jt);
        out.chi0[j] = c0;
        out.chi1[j] = 1.0 - c0;
    }
    return out;
}

// ------------------------------------------------------------ ghost weight

namespace {

// q(0) = -(sqrt(pi)/2) Gamma(1/8) / Gamma(5/8)
double ghost_q0() {
    static const double q0 =
        -0.5 * std::sqrt(std::numbers::pi) * std::tgamma(0.125) / std::tgamma(0.625);
    return q0;
}

constexpr double kGhostTableMax = 1.0e4;
constexpr double kGhostTableStep = 0.02;

// Asymptotic series of int_s^inf <sigma>^{-5/4} dsigma for s >= table edge.
double ghost_tail(double s) {
    const double s14 = std::pow(s, -0.25);
    const double s2 = 1.0 / (s * s);
    return s14 * (4.0 + s2 * (-5.0 / 18.0 + s2 * (65.0 / 544.0)));
}

struct GhostTable {
    std::vector<double> q;  // q at s_i = i*step, i = 0..N
    double step = kGhostTableStep;
    std::size_t N = 0;
};

const GhostTable& ghost_table() {
    static GhostTable tab;
    static std::once_flag once;
    std::call_once(once, [] {
        tab.N = static_cast<std::size_t>(std::llround(kGhostTableMax / kGhostTableStep));
        tab.q.resize(tab.N + 1);
        tab.q[0] = ghost_q0();
        // cumulative 4-point Gauss-Legendre per interval
        const double gx[2] = {0.3399810435848562648, 0.8611363115940525752};
        const double gw[2] = {0.6521451548625461426, 0.3478548451374538574};
        for (std::size_t i = 0; i < tab.N; ++i) {
            const double a = static_cast<double>(i) * tab.step;
            const double mid = a + 0.5 * tab.step;
            const double half = 0.5 * tab.step;
            double sum = 0.0;
            for (int k = 0; k < 2; ++k) {
                sum += gw[k] * (ghost_qprime(mid - half * gx[k]) +
                                ghost_qprime(mid + half * gx[k]));
            }
            tab.q[i + 1] = tab.q[i] + half * sum;
        }
    });
    return tab;
}

double ghost_q_pos(double s) {
    const GhostTable& tab = ghost_table();
    if (s >= kGhostTableMax) return -ghost_tail(s);
    const double x = s / tab.step;
    std::size_t i = static_cast<std::size_t>(x);
    if (i >= tab.N) i = tab.N - 1;
    const double u = x - static_cast<double>(i);
    const double s0 = static_cast<double>(i) * tab.step;
    const double hh = tab.step;
    const double y0 = tab.q[i], y1 = tab.q[i + 1];
    const double m0 = hh * ghost_qprime(s0), m1 = hh * ghost_qprime(s0 + hh);
    // cubic Hermite with exact endpoint slopes
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * m1;
}

} // namespace

double ghost_qprime(double s) { return std::pow(1.0 + s * s, -0.625); }

double ghost_q(double s) {
    // q' is even, so q(-s) = 2 q(0) - q(s).
    if (s >= 0.0) return ghost_q_pos(s);
    return 2.0 * ghost_q0() - ghost_q_pos(-s);
}

GhostWeight ghost_weight(const GridPtr& g, double t) {
    GhostWeight out;
    out.t = t;
    out.q = RadialField(g, Parity::Even);
    out.qprime = RadialField(g, Parity::Even);
    for (std::size_t j = 0; j < g->n; ++j) {
        const double s = g->r[j] - t;
        out.q[j] = ghost_q(s);
        out.qprime[j] = ghost_qprime(s);
    }
    return out;
}

// ------------------------------------------------------------ transforms

namespace {

// right-to-left cumulative trapezoid of integrand samples: out_j =
// int_{r_j}^inf I dr with a rest-state half cell beyond the last node.
RadialField cumtrapz_right(const GridPtr& g, const std::vector<double>& I) {
    RadialField out(g, Parity::Even);
    const double h = g->h;
    const std::size_t n = g->n;
    out[n - 1] = 0.25 * h * I[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) {
        out[j] = out[j + 1] + 0.5 * h * (I[j] + I[j + 1]);
    }
    return out;
}

std::vector<double> g_transform_integrand(const FieldState& s) {
    const std::size_t n = s.p.size();
    const auto& inv_r = s.p.grid->inv_r;
    std::vector<double> I(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double one_v = 1.0 + s.p[j];
        if (!(one_v > 0.0))
            throw StateInvalidError("compute_G: 1+v not positive", j, s.p.grid->r[j]);
        I[j] = s.g[j] * s.g[j] / one_v * inv_r[j];
    }
    return I;
}

} // namespace

RadialField compute_G(const FieldState& s) {
    return cumtrapz_right(s.p.grid, g_transform_integrand(s));
}

std::pair<RadialField, RadialField> decompose_v(const FieldState& s) {
    RadialField G = compute_G(s);
    RadialField vt = fsub(s.p, G);
    return {std::move(vt), std::move(G)};
}

RadialField specific_vorticity(const FieldState& s, const EosSpec& eos) {
    RadialField divg = div_radial(s.g);
    RadialField out(s.p.grid, Parity::Even);
    const std::size_t n = s.p.size();
    if (eos.is_chaplygin()) {
        for (std::size_t j = 0; j < n; ++j) out[j] = (1.0 + s.p[j]) * divg[j];
    } else {
        for (std::size_t j = 0; j < n; ++j)
            out[j] = divg[j] / rho_from_dot_c(eos, s.p[j]);
    }
    return out;
}

std::pair<RadialField, RadialField> riemann_invariants(const FieldState& s,
                                                       const EosSpec& eos) {
    if (eos.is_chaplygin())
        throw std::invalid_argument("riemann_invariants: polytropic eos required");
    RadialField zp(s.p.grid, Parity::Odd);
    RadialField zm(s.p.grid, Parity::Odd);
    for (std::size_t j = 0; j < s.p.size(); ++j) {
        zp[j] = s.f[j] + s.p[j];
        zm[j] = s.f[j] - s.p[j];
    }
    return {std::move(zp), std::move(zm)};
}

RadialField q1_direct(const FieldState& s) {
    RadialField dv = ddr(s.p), divf = div_radial(s.f);
    RadialField out(s.p.grid, Parity::Even);
    for (std::size_t j = 0; j < s.p.size(); ++j)
        out[j] = s.p[j] * divf[j] - s.f[j] * dv[j];
    return out;
}

RadialField q2_direct(const FieldState& s) {
    RadialField dv = ddr(s.p), df = ddr(s.f);
    const auto& inv_r = s.p.grid->inv_r;
    RadialField out(s.p.grid, Parity::Odd);
    for (std::size_t j = 0; j < s.p.size(); ++j)
        out[j] = s.p[j] * dv[j] - s.f[j] * df[j] + s.g[j] * s.g[j] * inv_r[j];
    return out;
}

RadialField q1_null_form(const FieldState& s) {
    RadialField dv = ddr(s.p), df = ddr(s.f);
    const auto& inv_r = s.p.grid->inv_r;
    RadialField out(s.p.grid, Parity::Even);
    for (std::size_t j = 0; j < s.p.size(); ++j) {
        const double dvf = dv[j] + df[j];
        out[j] = s.p[j] * dvf - (s.p[j] + s.f[j]) * dv[j] + s.p[j] * s.f[j] * inv_r[j];
    }
    return out;
}

RadialField q2_null_form(const FieldState& s) {
    RadialField dv = ddr(s.p), df = ddr(s.f);
    const auto& inv_r = s.p.grid->inv_r;
    RadialField out(s.p.grid, Parity::Odd);
    for (std::size_t j = 0; j < s.p.size(); ++j) {
        const double dvf = dv[j] + df[j];
        out[j] = s.p[j] * dvf - (s.p[j] + s.f[j]) * df[j] + s.g[j] * s.g[j] * inv_r[j];
    }
    return out;
}

// ------------------------------------------------------- derivative table

void DerivativeTable::scale_all(double c) {
    for (auto* fam : {&p, &f, &g, &G, &vt, &w}) {
        for (auto& fld : *fam) {
            for (std::size_t j = 0; j < fld.size(); ++j) fld[j] *= c;
        }
    }
}

namespace {

void check_order(int k, int K) {
    if (k > K) throw std::invalid_argument("derivative order exceeds table depth");
}

} // namespace

DerivativeTable build_derivative_table(const FieldState& s, const EosSpec& eos, int K) {
    if (K < 0 || K > kMaxDerivOrder)
        throw std::invalid_argument("build_derivative_table: unsupported order K");
    DerivativeTable tab;
    tab.grid = s.p.grid;
    tab.eos = eos;
    tab.t = s.t;
    tab.K = K;
    const std::size_t n = s.p.size();
    const auto& inv_r = tab.grid->inv_r;

    tab.p.push_back(s.p);
    tab.f.push_back(s.f);
    tab.g.push_back(s.g);

    if (K >= 1) {
        FieldTriple r1 = rhs(s, eos);
        tab.p.push_back(std::move(r1.p));
        tab.f.push_back(std::move(r1.f));
        tab.g.push_back(std::move(r1.g));
    }
    if (K >= 2) {
        // product-rule expansion of dt(rhs), inner dt from the level-1
        // entries, dr realized by ddr
        const RadialField dp0 = ddr(tab.p[0]), df0 = ddr(tab.f[0]), dg0 = ddr(tab.g[0]);
        const RadialField dp1 = ddr(tab.p[1]), df1 = ddr(tab.f[1]), dg1 = ddr(tab.g[1]);
        RadialField p2(tab.grid, Parity::Even);
        RadialField f2(tab.grid, Parity::Odd);
        RadialField g2(tab.grid, Parity::Odd);
        if (eos.is_chaplygin()) {
            for (std::size_t j = 0; j < n; ++j) {
                const double divf0 = df0[j] + tab.f[0][j] * inv_r[j];
                const double divf1 = df1[j] + tab.f[1][j] * inv_r[j];
                const double divg0 = dg0[j] + tab.g[0][j] * inv_r[j];
                const double divg1 = dg1[j] + tab.g[1][j] * inv_r[j];
                const double one_v = 1.0 + tab.p[0][j];
                p2[j] = tab.p[1][j] * divf0 + one_v * divf1 - tab.f[1][j] * dp0[j] -
                        tab.f[0][j] * dp1[j];
                f2[j] = tab.p[1][j] * dp0[j] + one_v * dp1[j] - tab.f[1][j] * df0[j] -
                        tab.f[0][j] * df1[j] + 2.0 * tab.g[0][j] * tab.g[1][j] * inv_r[j];
                if (eos.B != 1.0)
                    f2[j] += (eos.B - 1.0) * (tab.p[1][j] * dp0[j] + one_v * dp1[j]);
                g2[j] = -tab.f[1][j] * divg0 - tab.f[0][j] * divg1;
            }
        } else {
            const double mu = 0.5 * (eos.gamma - 1.0);
            for (std::size_t j = 0; j < n; ++j) {
                const double divf0 = df0[j] + tab.f[0][j] * inv_r[j];
                const double divf1 = df1[j] + tab.f[1][j] * inv_r[j];
                const double divg0 = dg0[j] + tab.g[0][j] * inv_r[j];
                const double divg1 = dg1[j] + tab.g[1][j] * inv_r[j];
                const double cs = 1.0 + mu * tab.p[0][j];
                p2[j] = -tab.f[1][j] * dp0[j] - tab.f[0][j] * dp1[j] -
                        mu * tab.p[1][j] * divf0 - cs * divf1;
                f2[j] = -tab.f[1][j] * df0[j] - tab.f[0][j] * df1[j] -
                        mu * tab.p[1][j] * dp0[j] - cs * dp1[j] +
                        2.0 * tab.g[0][j] * tab.g[1][j] * inv_r[j];
                g2[j] = -tab.f[1][j] * divg0 - tab.f[0][j] * divg1;
            }
        }
        tab.p.push_back(std::move(p2));
        tab.f.push_back(std::move(f2));
        tab.g.push_back(std::move(g2));
    }

    // transform G and its time derivatives (zero family for polytropic)
    if (eos.is_chaplygin()) {
        for (int k = 0; k <= K; ++k) {
            std::vector<double> I(n);
            for (std::size_t j = 0; j < n; ++j) {
                const double one_v = 1.0 + tab.p[0][j];
                if (!(one_v > 0.0))
                    throw StateInvalidError("derivative table: 1+v not positive", j,
                                            tab.grid->r[j]);
                const double iv = 1.0 / one_v;
                const double g0 = tab.g[0][j];
                if (k == 0) {
                    I[j] = g0 * g0 * iv * inv_r[j];
                } else if (k == 1) {
                    I[j] = (2.0 * g0 * tab.g[1][j] * iv -
                            g0 * g0 * tab.p[1][j] * iv * iv) *
                           inv_r[j];
                } else {
                    const double g1 = tab.g[1][j], g2v = tab.g[2][j];
                    const double v1 = tab.p[1][j], v2 = tab.p[2][j];
                    I[j] = ((2.0 * g1 * g1 + 2.0 * g0 * g2v) * iv -
                            (4.0 * g0 * g1 * v1 + g0 * g0 * v2) * iv * iv +
                            2.0 * g0 * g0 * v1 * v1 * iv * iv * iv) *
                           inv_r[j];
                }
            }
            tab.G.push_back(cumtrapz_right(tab.grid, I));
        }
    } else {
        for (int k = 0; k <= K; ++k) tab.G.push_back(zeros(tab.grid, Parity::Even));
    }
    for (int k = 0; k <= K; ++k) tab.vt.push_back(fsub(tab.p[k], tab.G[k]));

    // specific vorticity w = eta * (dr + 1/r) g with eta = 1/rho
    {
        std::vector<RadialField> divg;
        for (int k = 0; k <= K; ++k) divg.push_back(div_radial(tab.g[k]));
        std::vector<RadialField> eta;
        if (eos.is_chaplygin()) {
            RadialField e0(tab.grid, Parity::Even);
            for (std::size_t j = 0; j < n; ++j) e0[j] = 1.0 + tab.p[0][j];
            eta.push_back(std::move(e0));
            if (K >= 1) eta.push_back(tab.p[1]);
            if (K >= 2) eta.push_back(tab.p[2]);
        } else {
            const double mu = 0.5 * (eos.gamma - 1.0);
            RadialField e0(tab.grid, Parity::Even);
            RadialField e1(tab.grid, Parity::Even);
            RadialField e2(tab.grid, Parity::Even);
            for (std::size_t j = 0; j < n; ++j) {
                if (eos.gamma == 1.0) {
                    e0[j] = std::exp(-tab.p[0][j]);
                    if (K >= 1) e1[j] = -e0[j] * tab.p[1][j];
                    if (K >= 2)
                        e2[j] = e0[j] * (tab.p[1][j] * tab.p[1][j] - tab.p[2][j]);
                } else {
                    const double cs = 1.0 + mu * tab.p[0][j];
                    const double em = std::pow(cs, -1.0 / mu);
                    e0[j] = em;
                    if (K >= 1) e1[j] = -em / cs * tab.p[1][j];
                    if (K >= 2)
                        e2[j] = (1.0 + mu) * em / (cs * cs) * tab.p[1][j] * tab.p[1][j] -
                                em / cs * tab.p[2][j];
                }
            }
            eta.push_back(std::move(e0));
            if (K >= 1) eta.push_back(std::move(e1));
            if (K >= 2) eta.push_back(std::move(e2));
        }
        tab.w.push_back(fmul(eta[0], divg[0]));
        if (K >= 1) tab.w.push_back(fadd(fmul(eta[1], divg[0]), fmul(eta[0], divg[1])));
        if (K >= 2) {
            RadialField w2 = fmul(eta[2], divg[0]);
            w2 = fadd(w2, fscale(fmul(eta[1], divg[1]), 2.0));
            w2 = fadd(w2, fmul(eta[0], divg[2]));
            tab.w.push_back(std::move(w2));
        }
    }
    return tab;
}

std::vector<MultiIndex> multi_indices_up_to(int k) {
    std::vector<MultiIndex> out;
    for (int total = 0; total <= k; ++total) {
        for (int a1 = total; a1 >= 0; --a1) out.push_back({a1, total - a1});
    }
    return out;
}

namespace {

const std::vector<RadialField>& table_family(const DerivativeTable& tab, TableField fid) {
    switch (fid) {
        case TableField::P: return tab.p;
        case TableField::F: return tab.f;
        case TableField::Gfield: return tab.g;
        case TableField::GTransform: return tab.G;
        case TableField::VTilde: return tab.vt;
        case TableField::Vorticity: return tab.w;
    }
    throw std::invalid_argument("table_family: bad field id");
}

// S applied to a time-derivative stack: dt^j (S phi) = S(dt^j phi) + j dt^j phi.
std::vector<RadialField> apply_scaling_field(const std::vector<RadialField>& d, double t) {
    std::vector<RadialField> out;
    out.reserve(d.size() - 1);
    for (std::size_t j = 0; j + 1 < d.size(); ++j) {
        RadialField sj = ddr(d[j]);
        const auto& r = d[j].grid->r;
        for (std::size_t i = 0; i < sj.size(); ++i) {
            sj[i] = t * d[j + 1][i] + r[i] * sj[i] + static_cast<double>(j) * d[j][i];
        }
        sj.parity = d[j].parity;  // r*ddr preserves parity
        out.push_back(std::move(sj));
    }
    return out;
}

} // namespace

GammaSeq gamma_seq(const DerivativeTable& tab, TableField fid, MultiIndex a) {
    if (a.dt < 0 || a.s < 0 || a.order() > tab.K)
        throw std::invalid_argument("gamma_seq: order exceeds table depth");
    GammaSeq seq;
    seq.t = tab.t;
    seq.d = table_family(tab, fid);
    for (int i = 0; i < a.s; ++i) seq.d = apply_scaling_field(seq.d, tab.t);
    for (int i = 0; i < a.dt; ++i) seq.d.erase(seq.d.begin());
    return seq;
}

RadialField gamma_apply(const DerivativeTable& tab, TableField fid, MultiIndex a) {
    return gamma_seq(tab, fid, a).d[0];
}

// -------------------------------------------------------------- energies

double energy_E(const DerivativeTable& tab, int k) {
    check_order(k, tab.K);
    double total = 0.0;
    for (const MultiIndex& a : multi_indices_up_to(k)) {
        total += weighted_lp_norm(gamma_apply(tab, TableField::P, a), nullptr, NormP::L2);
        total += weighted_lp_norm(gamma_apply(tab, TableField::F, a), nullptr, NormP::L2);
        total += weighted_lp_norm(gamma_apply(tab, TableField::Gfield, a), nullptr, NormP::L2);
    }
    if (k >= 1) {
        for (const MultiIndex& b : multi_indices_up_to(k - 1)) {
            RadialField gb = gamma_apply(tab, TableField::Gfield, b);
            total += weighted_lp_norm(div_radial(gb), nullptr, NormP::L2);
        }
    }
    return total;
}

double energy_Y(const DerivativeTable& tab, const CutoffPair& cut, int k) {
    check_order(k, tab.K);
    if (k < 1) return 0.0;
    RadialField wgt(tab.grid, Parity::Even);
    for (std::size_t j = 0; j < wgt.size(); ++j) {
        wgt[j] = jbracket(tab.grid->r[j] - tab.t) * cut.chi1[j];
    }
    double total = 0.0;
    for (const MultiIndex& a : multi_indices_up_to(k - 1)) {
        for (TableField fid : {TableField::P, TableField::F}) {
            GammaSeq seq = gamma_seq(tab, fid, a);
            total += weighted_lp_norm(seq.d[1], &wgt, NormP::L2);        // dt Gamma^a
            total += weighted_lp_norm(ddr(seq.d[0]), &wgt, NormP::L2);   // dr Gamma^a
        }
    }
    return total;
}

double energy_X(const DerivativeTable& tab, const CutoffPair& cut, int k) {
    check_order(k, tab.K);
    if (k < 1) return 0.0;
    const RadialField& w0 = cut.chi0;
    double total = 0.0;
    for (const MultiIndex& a : multi_indices_up_to(k - 1)) {
        GammaSeq sv = gamma_seq(tab, TableField::VTilde, a);
        GammaSeq sf = gamma_seq(tab, TableField::F, a);
        total += weighted_lp_norm(sv.d[1], &w0, NormP::L2);
        total += weighted_lp_norm(ddr(sv.d[0]), &w0, NormP::L2);
        total += weighted_lp_norm(sf.d[1], &w0, NormP::L2);
        total += weighted_lp_norm(div_radial(sf.d[0]), &w0, NormP::L2);
    }
    if (k >= 2) {
        for (const MultiIndex& b : multi_indices_up_to(k - 2)) {
            RadialField vb = gamma_apply(tab, TableField::VTilde, b);
            RadialField fb = gamma_apply(tab, TableField::F, b);
            total += weighted_lp_norm(div_radial(ddr(vb)), &w0, NormP::L2);
            total += weighted_lp_norm(ddr(div_radial(fb)), &w0, NormP::L2);
        }
    }
    return jbracket(tab.t) * total;
}

double vorticity_W(const DerivativeTable& tab, int k) {
    check_order(k, tab.K);
    double total = 0.0;
    for (const MultiIndex& a : multi_indices_up_to(k)) {
        RadialField wa = gamma_apply(tab, TableField::Vorticity, a);
        total += weighted_lp_norm(wa, nullptr, NormP::L3);
        total += weighted_lp_norm(ddr(wa), nullptr, NormP::L3);
    }
    return total;
}

double data_size_epsilon(const FieldState& initial, const RadialField& rho0, int N_trunc) {
    if (N_trunc < 0 || N_trunc > kMaxDerivOrder)
        throw std::invalid_argument("data_size_epsilon: unsupported truncation order");
    const GridPtr& g = initial.p.grid;
    RadialField drho(g, Parity::Even);
    for (std::size_t j = 0; j < drho.size(); ++j) drho[j] = rho0[j] - 1.0;

    auto rddr = [](const RadialField& x) { return mul_r(ddr(x)); };

    double total = 0.0;
    // sum_{k<=N} ||(r dr)^k (rho0-1, u0)||_L2
    for (const RadialField* base :
         std::initializer_list<const RadialField*>{&drho, &initial.f, &initial.g}) {
        RadialField cur = *base;
        for (int k = 0; k <= N_trunc; ++k) {
            total += weighted_lp_norm(cur, nullptr, NormP::L2);
            if (k < N_trunc) cur = rddr(cur);
        }
    }
    // sum_{k+l<=N-2} ||(r dr)^k grad^l curl u0||_L3
    RadialField curl0 = div_radial(initial.g);
    for (int total_ord = 0; total_ord <= N_trunc - 2; ++total_ord) {
        for (int k = 0; k <= total_ord; ++k) {
            RadialField cur = curl0;
            for (int i = 0; i < total_ord - k; ++i) cur = ddr(cur);  // grad^l first
            for (int i = 0; i < k; ++i) cur = rddr(cur);
            total += weighted_lp_norm(cur, nullptr, NormP::L3);
        }
    }
    // sum_{k+l<=N-1} ||<r>(r dr)^k grad^l (grad rho0, div u0, curl u0)||_L2
    RadialField jb(g, Parity::Even);
    for (std::size_t j = 0; j < jb.size(); ++j) jb[j] = jbracket(g->r[j]);
    RadialField gradrho = ddr(drho);
    RadialField divu0 = div_radial(initial.f);
    for (const RadialField* base : {&gradrho, &divu0, &curl0}) {
        for (int total_ord = 0; total_ord <= N_trunc - 1; ++total_ord) {
            for (int k = 0; k <= total_ord; ++k) {
                RadialField cur = *base;
                for (int i = 0; i < total_ord - k; ++i) cur = ddr(cur);  // grad^l first
                for (int i = 0; i < k; ++i) cur = rddr(cur);
                total += weighted_lp_norm(cur, &jb, NormP::L2);
            }
        }
    }
    return total;
}

// ---------------------------------------------------------------- audits

double mass_perturbation(const FieldState& s, const EosSpec& eos) {
    const std::size_t n = s.p.size();
    std::vector<double> F(n);
    if (eos.is_chaplygin()) {
        for (std::size_t j = 0; j < n; ++j) F[j] = -s.p[j] / (1.0 + s.p[j]);
    } else {
        for (std::size_t j = 0; j < n; ++j) F[j] = rho_from_dot_c(eos, s.p[j]) - 1.0;
    }
    return integral_rdr(*s.p.grid, F);
}

namespace {

// int e^{q(r-t)} r (v^2 + f^2) dr for one state
double ghost_quadratic(const FieldState& s) {
    const auto& g = *s.p.grid;
    std::vector<double> F(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double eq = std::exp(ghost_q(g.r[j] - s.t));
        F[j] = eq * g.r[j] * (s.p[j] * s.p[j] + s.f[j] * s.f[j]);
    }
    return integral_dr(g, F);
}

} // namespace

double ghost_residual_centered(const FieldState& prev, const FieldState& cur,
                               const FieldState& next) {
    const auto& g = *cur.p.grid;
    const double hm = cur.t - prev.t;
    const double hp = next.t - cur.t;
    if (hm <= 0.0 || hp <= 0.0)
        throw std::invalid_argument("ghost_residual_centered: non-increasing times");

    const double Am = ghost_quadratic(prev);
    const double A0 = ghost_quadratic(cur);
    const double Ap = ghost_quadratic(next);
    // 3-point derivative on a nonuniform stencil
    const double dA =
        (Ap * hm * hm - Am * hp * hp + A0 * (hp * hp - hm * hm)) / (hp * hm * (hp + hm));

    RadialField Q1 = q1_direct(cur);
    RadialField Q2 = q2_direct(cur);
    std::vector<double> Fg(g.n), Fs(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double sarg = g.r[j] - cur.t;
        const double eq = std::exp(ghost_q(sarg));
        const double vf = cur.p[j] + cur.f[j];
        Fg[j] = ghost_qprime(sarg) * eq * g.r[j] * vf * vf;
        Fs[j] = 2.0 * eq * g.r[j] * (cur.p[j] * Q1[j] + cur.f[j] * Q2[j]);
    }
    const double ghost = integral_dr(g, Fg);
    const double source = integral_dr(g, Fs);
    // boundary flux of the identity; zero while the state is supported
    const std::size_t e = g.n - 1;
    const double flux =
        2.0 * std::exp(ghost_q(g.r[e] - cur.t)) * g.r[e] * cur.p[e] * cur.f[e];

    const double resid = dA + ghost - source - flux;
    double scale = std::fabs(dA);
    scale = std::max(scale, std::fabs(ghost));
    scale = std::max(scale, std::fabs(source));
    if (scale == 0.0) return 0.0;
    return std::fabs(resid) / scale;
}

std::vector<GhostAuditRow> ghost_energy_audit(const std::vector<FieldState>& snapshots,
                                              const EosSpec& eos) {
    if (!eos.is_chaplygin())
        throw std::invalid_argument("ghost_energy_audit: Chaplygin states required");
    if (snapshots.size() < 3)
        throw std::invalid_argument("ghost_energy_audit: need at least 3 snapshots");
    std::vector<GhostAuditRow> out;
    out.reserve(snapshots.size() - 2);
    for (std::size_t i = 1; i + 1 < snapshots.size(); ++i) {
        out.push_back({snapshots[i].t,
                       ghost_residual_centered(snapshots[i - 1], snapshots[i],
                                               snapshots[i + 1])});
    }
    return out;
}

// ------------------------------------------------------------- decay fit

FitResult fit_decay(const std::vector<std::pair<double, double>>& series,
                    double t_lo, double t_hi) {
    std::vector<double> xs, ys;
    int excluded = 0;
    for (const auto& [t, v] : series) {
        if (t < t_lo || t > t_hi) continue;
        if (!(v > 0.0)) {
            ++excluded;
            continue;
        }
        xs.push_back(std::log(t));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 10) throw FitError("fit_decay: fewer than 10 usable points in window");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    FitResult fit;
    fit.exponent = sxy / sxx;
    fit.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.n_used = static_cast<int>(xs.size());
    fit.n_excluded = excluded;
    return fit;
}

// ------------------------------------------------------------ ledger row

LedgerRow compute_ledger_row(const FieldState& s, const EosSpec& eos, int K,
                             double ghost_residual) {
    LedgerRow row;
    row.t = s.t;
    DerivativeTable tab = build_derivative_table(s, eos, K);
    CutoffPair cut = cutoffs(s.p.grid, s.t);

    row.E0 = energy_E(tab, 0);
    row.E1 = (K >= 1) ? energy_E(tab, 1) : 0.0;
    row.E2 = (K >= 2) ? energy_E(tab, 2) : 0.0;
    row.X1 = (K >= 1) ? energy_X(tab, cut, 1) : 0.0;
    row.X2 = (K >= 2) ? energy_X(tab, cut, 2) : 0.0;
    row.Y1 = (K >= 1) ? energy_Y(tab, cut, 1) : 0.0;
    row.Y2 = (K >= 2) ? energy_Y(tab, cut, 2) : 0.0;
    row.W0 = vorticity_W(tab, 0);
    row.mass = mass_perturbation(s, eos);
    row.rg_sup = weighted_lp_norm(mul_r(s.g), nullptr, NormP::LInf);
    row.w_sup = weighted_lp_norm(tab.w[0], nullptr, NormP::LInf);
    row.ghost_residual = ghost_residual;

    const auto& g = *s.p.grid;
    // dr(v+f) mixes parities; it is only ever sup-normed
    RadialField dvf = ddr(s.p);
    {
        RadialField df = ddr(s.f);
        for (std::size_t j = 0; j < g.n; ++j) dvf[j] += df[j];
    }
    row.probe_near_drvf = weighted_lp_norm(dvf, &cut.chi1, NormP::LInf);
    {
        RadialField wgt(s.p.grid, Parity::Even);
        for (std::size_t j = 0; j < g.n; ++j) {
            const double b = jbracket(g.r[j] - s.t);
            wgt[j] = cut.chi1[j] * b * std::sqrt(b);
        }
        row.probe_near_wdrf =
            weighted_lp_norm(ddr(s.f), &wgt, NormP::LInf) * std::sqrt(jbracket(s.t));
    }
    if (K >= 1) {
        row.probe_away_dtvv = weighted_lp_norm(tab.vt[1], &cut.chi0, NormP::LInf);
        row.probe_dtG = weighted_lp_norm(tab.G[1], nullptr, NormP::LInf);
    }
    row.probe_away_divf = weighted_lp_norm(div_radial(s.f), &cut.chi0, NormP::LInf);
    row.probe_away_f = weighted_lp_norm(s.f, &cut.chi0, NormP::LInf);
    return row;
}

} // namespace axeuler
