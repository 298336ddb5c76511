// Scalar reference kernels. The SIMD variants must match these bitwise for
// the elementwise kernels (same per-element operation order, no FMA), and to
// ~1 ulp relative for reductions (different association).

#include "axeuler/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace axeuler::kernels {

namespace {

// in[-1] and in[-2] mirror in[0], in[1] with the parity sign; in[n], in[n+1] are 0.
inline double ghost(const double* in, std::ptrdiff_t j, std::size_t n, double sign) {
    if (j < 0) return sign * in[-1 - j];
    if (j >= static_cast<std::ptrdiff_t>(n)) return 0.0;
    return in[j];
}

void d1_center4_scalar(const double* in, double* out, std::size_t n,
                       double inv_12h, double parity_sign) {
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
    std::ptrdiff_t j = 0;
    for (; j < sn && j < 2; ++j) {
        const double m2 = ghost(in, j - 2, n, parity_sign);
        const double m1 = ghost(in, j - 1, n, parity_sign);
        const double p1 = ghost(in, j + 1, n, parity_sign);
        const double p2 = ghost(in, j + 2, n, parity_sign);
        out[j] = (8.0 * (p1 - m1) - (p2 - m2)) * inv_12h;
    }
    for (; j < sn - 2; ++j) {
        out[j] = (8.0 * (in[j + 1] - in[j - 1]) - (in[j + 2] - in[j - 2])) * inv_12h;
    }
    for (; j < sn; ++j) {
        const double m2 = ghost(in, j - 2, n, parity_sign);
        const double m1 = ghost(in, j - 1, n, parity_sign);
        const double p1 = ghost(in, j + 1, n, parity_sign);
        const double p2 = ghost(in, j + 2, n, parity_sign);
        out[j] = (8.0 * (p1 - m1) - (p2 - m2)) * inv_12h;
    }
}

void axpy_scalar(const double* a, const double* b, double c, double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j] + c * b[j];
}

void combine4_scalar(const double* u, const double* k1, const double* k2,
                     const double* k3, const double* k4,
                     double c1, double c2, double c3, double c4,
                     double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = u[j] + (c1 * k1[j] + c2 * k2[j] + c3 * k3[j] + c4 * k4[j]);
    }
}

double max_abs_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = std::fabs(x[j]);
        if (a > m) m = a;
    }
    return m;
}

double min_val_scalar(const double* x, std::size_t n) {
    double m = x[0];
    for (std::size_t j = 1; j < n; ++j) {
        if (x[j] < m) m = x[j];
    }
    return m;
}

double max_signal_scalar(const double* f, const double* c, std::size_t n) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double s = std::fabs(f[j]) + c[j];
        if (s > m) m = s;
    }
    return m;
}

double sum_pow2_scalar(const double* x, const double* w, const double* rw, std::size_t n) {
    double s = 0.0;
    if (w) {
        for (std::size_t j = 0; j < n; ++j) {
            const double y = x[j] * w[j];
            s += y * y * rw[j];
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            s += x[j] * x[j] * rw[j];
        }
    }
    return s;
}

double sum_pow3_scalar(const double* x, const double* w, const double* rw, std::size_t n) {
    double s = 0.0;
    if (w) {
        for (std::size_t j = 0; j < n; ++j) {
            const double y = std::fabs(x[j] * w[j]);
            s += y * y * y * rw[j];
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const double y = std::fabs(x[j]);
            s += y * y * y * rw[j];
        }
    }
    return s;
}

void rhs_chaplygin_scalar(const double* v, const double* dv, const double* f,
                          const double* df, const double* g, const double* dg,
                          const double* inv_r,
                          double* out_v, double* out_f, double* out_g, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double one_v = 1.0 + v[j];
        const double divf = df[j] + f[j] * inv_r[j];
        out_v[j] = one_v * divf - f[j] * dv[j];
        out_f[j] = one_v * dv[j] - f[j] * df[j] + g[j] * g[j] * inv_r[j];
        out_g[j] = -f[j] * (dg[j] + g[j] * inv_r[j]);
    }
}

void rhs_polytropic_scalar(const double* c, const double* dc, const double* f,
                           const double* df, const double* g, const double* dg,
                           const double* inv_r, double mu,
                           double* out_c, double* out_f, double* out_g, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double cs = 1.0 + mu * c[j];
        const double divf = df[j] + f[j] * inv_r[j];
        out_c[j] = -f[j] * dc[j] - cs * divf;
        out_f[j] = -f[j] * df[j] - cs * dc[j] + g[j] * g[j] * inv_r[j];
        out_g[j] = -f[j] * (dg[j] + g[j] * inv_r[j]);
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops table = {
        d1_center4_scalar, axpy_scalar, combine4_scalar,
        max_abs_scalar,    min_val_scalar, max_signal_scalar,
        sum_pow2_scalar,   sum_pow3_scalar,
        rhs_chaplygin_scalar, rhs_polytropic_scalar,
    };
    return table;
}

void d1_upwind1(const double* in, double* out, std::size_t n,
                double inv_h, double parity_sign) {
    out[0] = (in[0] - parity_sign * in[0]) * inv_h;
    for (std::size_t j = 1; j < n; ++j) {
        out[j] = (in[j] - in[j - 1]) * inv_h;
    }
}

} // namespace axeuler::kernels
