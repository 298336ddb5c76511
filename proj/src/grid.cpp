#include "axeuler/grid.hpp"
#include "axeuler/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace axeuler {

GridPtr make_grid(double r_max, std::size_t n) {
    if (r_max <= 0.0) throw std::domain_error("make_grid: r_max must be positive");
    if (n < 4) throw std::invalid_argument("make_grid: n too small");
    auto g = std::make_shared<RadialGrid>();
    g->n = n;
    g->h = r_max / static_cast<double>(n);
    g->r_max = r_max;
    g->r.resize(n);
    g->inv_r.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        g->r[j] = (static_cast<double>(j) + 0.5) * g->h;
        g->inv_r[j] = 1.0 / g->r[j];
    }
    return g;
}

RadialField::RadialField(GridPtr g, Parity p)
    : grid(std::move(g)), parity(p), a(grid->n, 0.0) {}

RadialField::RadialField(GridPtr g, Parity p, std::vector<double> samples)
    : grid(std::move(g)), parity(p), a(std::move(samples)) {
    if (a.size() != grid->n) throw std::invalid_argument("RadialField: sample count != grid size");
}

RadialField zeros(const GridPtr& g, Parity p) { return RadialField(g, p); }

double parity_sign(Parity p) { return p == Parity::Even ? 1.0 : -1.0; }

Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

RadialField ddr(const RadialField& f, DerivScheme scheme) {
    const std::size_t n = f.size();
    if (n < 5) throw std::invalid_argument("ddr: field shorter than the stencil width");
    RadialField out(f.grid, flip(f.parity));
    if (scheme == DerivScheme::Centered4) {
        kernels::ops().d1_center4(f.data(), out.data(), n, 1.0 / (12.0 * f.grid->h),
                                  parity_sign(f.parity));
    } else {
        kernels::d1_upwind1(f.data(), out.data(), n, 1.0 / f.grid->h, parity_sign(f.parity));
    }
    return out;
}

RadialField div_radial(const RadialField& f) {
    if (f.parity != Parity::Odd)
        throw std::invalid_argument("div_radial: odd-parity field required");
    RadialField out = ddr(f);
    const auto& inv_r = f.grid->inv_r;
    for (std::size_t j = 0; j < f.size(); ++j) out[j] += f[j] * inv_r[j];
    return out;
}

namespace {

// h * (3/4 F_0 + F_1 + ... + F_{n-2} + 3/4 F_{n-1}): composite trapezoid over
// the nodes plus the half cells [0, h/2] (F(0) = 0, the integrands carry an r
// factor) and [r_{n-1}, r_max] (rest-state extension).
double trapz_sum(const RadialGrid& g, double raw_sum, double F0, double Fn1) {
    return g.h * (raw_sum - 0.25 * (F0 + Fn1));
}

} // namespace

double weighted_lp_norm(const RadialField& f, const RadialField* weight, NormP p) {
    const std::size_t n = f.size();
    const double* w = nullptr;
    if (weight) {
        if (weight->size() != n) throw std::invalid_argument("weighted_lp_norm: size mismatch");
        for (std::size_t j = 0; j < n; ++j)
            if (weight->a[j] < 0.0)
                throw std::invalid_argument("weighted_lp_norm: negative weight sample");
        w = weight->data();
    }
    if (p == NormP::LInf) {
        if (!w) return kernels::ops().max_abs(f.data(), n);
        double m = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double y = std::fabs(f[j] * w[j]);
            if (y > m) m = y;
        }
        return m;
    }
    const auto& g = *f.grid;
    auto endval = [&](std::size_t j) {
        const double y = w ? f[j] * w[j] : f[j];
        const double ay = std::fabs(y);
        return (p == NormP::L2 ? ay * ay : ay * ay * ay) * g.r[j];
    };
    const double raw = (p == NormP::L2)
                           ? kernels::ops().sum_pow2(f.data(), w, g.r.data(), n)
                           : kernels::ops().sum_pow3(f.data(), w, g.r.data(), n);
    const double integral = 2.0 * std::numbers::pi * trapz_sum(g, raw, endval(0), endval(n - 1));
    return (p == NormP::L2) ? std::sqrt(integral) : std::cbrt(integral);
}

double integral_rdr(const RadialGrid& g, const std::vector<double>& F) {
    if (F.size() != g.n) throw std::invalid_argument("integral_rdr: size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) s += F[j] * g.r[j];
    return 2.0 * std::numbers::pi *
           trapz_sum(g, s, F.front() * g.r.front(), F.back() * g.r.back());
}

double integral_dr(const RadialGrid& g, const std::vector<double>& F) {
    if (F.size() != g.n) throw std::invalid_argument("integral_dr: size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) s += F[j];
    return trapz_sum(g, s, F.front(), F.back());
}

RadialField restrict_to_coarse(const RadialField& fine, const GridPtr& coarse) {
    const auto& gf = *fine.grid;
    const auto& gc = *coarse;
    if (gf.n != 2 * gc.n || std::fabs(gf.r_max - gc.r_max) > 1e-12 * gc.r_max)
        throw std::invalid_argument("restrict_to_coarse: grids are not 2x nested");
    RadialField out(coarse, fine.parity);
    const double sign = parity_sign(fine.parity);
    auto at = [&](std::ptrdiff_t j) -> double {
        if (j < 0) return sign * fine[static_cast<std::size_t>(-1 - j)];
        if (j >= static_cast<std::ptrdiff_t>(gf.n)) return 0.0;
        return fine[static_cast<std::size_t>(j)];
    };
    // coarse node j sits midway between fine nodes 2j and 2j+1; cubic
    // interpolation keeps the transfer at the scheme's order.
    for (std::size_t j = 0; j < gc.n; ++j) {
        const std::ptrdiff_t k = 2 * static_cast<std::ptrdiff_t>(j);
        out[j] = (-at(k - 1) + 9.0 * at(k) + 9.0 * at(k + 1) - at(k + 2)) / 16.0;
    }
    return out;
}

namespace {
void check_same(const RadialField& x, const RadialField& y) {
    if (x.size() != y.size() || x.grid.get() != y.grid.get())
        throw std::invalid_argument("field op: grid mismatch");
}
Parity mul_parity(Parity a, Parity b) {
    return a == b ? Parity::Even : Parity::Odd;
}
} // namespace

RadialField fadd(const RadialField& x, const RadialField& y) {
    check_same(x, y);
    if (x.parity != y.parity) throw std::invalid_argument("fadd: parity mismatch");
    RadialField out(x.grid, x.parity);
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + y[j];
    return out;
}

RadialField fsub(const RadialField& x, const RadialField& y) {
    check_same(x, y);
    if (x.parity != y.parity) throw std::invalid_argument("fsub: parity mismatch");
    RadialField out(x.grid, x.parity);
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - y[j];
    return out;
}

RadialField fmul(const RadialField& x, const RadialField& y) {
    check_same(x, y);
    RadialField out(x.grid, mul_parity(x.parity, y.parity));
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] * y[j];
    return out;
}

RadialField fscale(const RadialField& x, double c) {
    RadialField out(x.grid, x.parity);
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = c * x[j];
    return out;
}

RadialField mul_r(const RadialField& x) {
    RadialField out(x.grid, flip(x.parity));
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] * x.grid->r[j];
    return out;
}

RadialField div_r(const RadialField& x) {
    RadialField out(x.grid, flip(x.parity));
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] * x.grid->inv_r[j];
    return out;
}

} // namespace axeuler
