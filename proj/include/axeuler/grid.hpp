#pragma once
// Staggered radial grid r_j = (j+1/2)h, parity-aware finite differences, and
// weighted planar L^p quadrature. The staggering keeps every sample off the
// r = 0 coordinate singularity; fields carry their parity about r = 0 so
// derivative stencils can reflect ghost samples with the right sign.

#include <memory>
#include <vector>

namespace axeuler {

struct RadialGrid {
    std::size_t n = 0;
    double h = 0.0;
    double r_max = 0.0;
    std::vector<double> r;      // r_j = (j+1/2)h
    std::vector<double> inv_r;  // 1/r_j
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double r_max, std::size_t n);

enum class Parity { Even, Odd };
enum class DerivScheme { Centered4, Upwind1 };
enum class NormP { L2, L3, LInf };

struct RadialField {
    GridPtr grid;
    Parity parity = Parity::Even;
    std::vector<double> a;

    RadialField() = default;
    RadialField(GridPtr g, Parity p);
    RadialField(GridPtr g, Parity p, std::vector<double> samples);

    std::size_t size() const { return a.size(); }
    double* data() { return a.data(); }
    const double* data() const { return a.data(); }
    double operator[](std::size_t j) const { return a[j]; }
    double& operator[](std::size_t j) { return a[j]; }
};

RadialField zeros(const GridPtr& g, Parity p);
double parity_sign(Parity p);
Parity flip(Parity p);

// d/dr with 4th-order centered stencil; parity reflection at r = 0,
// rest-state (zero) ghosts beyond r_max. Output parity flips.
RadialField ddr(const RadialField& f, DerivScheme scheme = DerivScheme::Centered4);

// (d/dr + 1/r) applied to an odd field; the result is even.
RadialField div_radial(const RadialField& f);

// Planar L^p norm (2*pi*int |w*phi|^p r dr)^(1/p) for p = 2,3 by trapezoid
// quadrature with parity-closed half cells; max |w*phi| for p = inf.
// weight == nullptr means weight 1; weight samples must be >= 0.
double weighted_lp_norm(const RadialField& f, const RadialField* weight, NormP p);

// 2*pi*int F r dr for raw samples F_j (same trapezoid rule as the norms).
double integral_rdr(const RadialGrid& g, const std::vector<double>& F);
// plain int F dr
double integral_dr(const RadialGrid& g, const std::vector<double>& F);

// 4th-order restriction of a field on a 2x finer nested grid onto `coarse`.
RadialField restrict_to_coarse(const RadialField& fine, const GridPtr& coarse);

// Elementwise helpers (parities add/multiply as expected).
RadialField fadd(const RadialField& x, const RadialField& y);
RadialField fsub(const RadialField& x, const RadialField& y);
RadialField fmul(const RadialField& x, const RadialField& y);
RadialField fscale(const RadialField& x, double c);
// x * r and x / r (parity flips)
RadialField mul_r(const RadialField& x);
RadialField div_r(const RadialField& x);

} // namespace axeuler
