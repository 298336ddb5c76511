// NEON (arm64) kernel variants, same contract as the AVX2 set: elementwise
// kernels keep the scalar operation order, reductions differ only in
// summation order.

#include "axeuler/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>
#include <cmath>
#include <cstddef>

namespace axeuler::kernels {

namespace {

inline double ghost(const double* in, std::ptrdiff_t j, std::size_t n, double sign) {
    if (j < 0) return sign * in[-1 - j];
    if (j >= static_cast<std::ptrdiff_t>(n)) return 0.0;
    return in[j];
}

void d1_center4_neon(const double* in, double* out, std::size_t n,
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
    const float64x2_t eight = vdupq_n_f64(8.0);
    const float64x2_t scale = vdupq_n_f64(inv_12h);
    for (; j + 2 <= sn - 2; j += 2) {
        const float64x2_t p1 = vld1q_f64(in + j + 1);
        const float64x2_t m1 = vld1q_f64(in + j - 1);
        const float64x2_t p2 = vld1q_f64(in + j + 2);
        const float64x2_t m2 = vld1q_f64(in + j - 2);
        const float64x2_t t = vsubq_f64(vmulq_f64(eight, vsubq_f64(p1, m1)),
                                        vsubq_f64(p2, m2));
        vst1q_f64(out + j, vmulq_f64(t, scale));
    }
    for (; j < sn; ++j) {
        const double m2 = ghost(in, j - 2, n, parity_sign);
        const double m1 = ghost(in, j - 1, n, parity_sign);
        const double p1 = ghost(in, j + 1, n, parity_sign);
        const double p2 = ghost(in, j + 2, n, parity_sign);
        out[j] = (8.0 * (p1 - m1) - (p2 - m2)) * inv_12h;
    }
}

void axpy_neon(const double* a, const double* b, double c, double* out, std::size_t n) {
    const float64x2_t vc = vdupq_n_f64(c);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        vst1q_f64(out + j, vaddq_f64(vld1q_f64(a + j), vmulq_f64(vc, vld1q_f64(b + j))));
    }
    for (; j < n; ++j) out[j] = a[j] + c * b[j];
}

void combine4_neon(const double* u, const double* k1, const double* k2,
                   const double* k3, const double* k4,
                   double c1, double c2, double c3, double c4,
                   double* out, std::size_t n) {
    const float64x2_t v1 = vdupq_n_f64(c1);
    const float64x2_t v2 = vdupq_n_f64(c2);
    const float64x2_t v3 = vdupq_n_f64(c3);
    const float64x2_t v4 = vdupq_n_f64(c4);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        float64x2_t acc = vmulq_f64(v1, vld1q_f64(k1 + j));
        acc = vaddq_f64(acc, vmulq_f64(v2, vld1q_f64(k2 + j)));
        acc = vaddq_f64(acc, vmulq_f64(v3, vld1q_f64(k3 + j)));
        acc = vaddq_f64(acc, vmulq_f64(v4, vld1q_f64(k4 + j)));
        vst1q_f64(out + j, vaddq_f64(vld1q_f64(u + j), acc));
    }
    for (; j < n; ++j) {
        out[j] = u[j] + (c1 * k1[j] + c2 * k2[j] + c3 * k3[j] + c4 * k4[j]);
    }
}

double max_abs_neon(const double* x, std::size_t n) {
    float64x2_t vm = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        vm = vmaxq_f64(vm, vabsq_f64(vld1q_f64(x + j)));
    }
    double m = vgetq_lane_f64(vm, 0);
    const double m1 = vgetq_lane_f64(vm, 1);
    if (m1 > m) m = m1;
    for (; j < n; ++j) {
        const double a = std::fabs(x[j]);
        if (a > m) m = a;
    }
    return m;
}

double min_val_neon(const double* x, std::size_t n) {
    double m = x[0];
    std::size_t j = 0;
    if (n >= 2) {
        float64x2_t vm = vld1q_f64(x);
        for (j = 2; j + 2 <= n; j += 2) {
            vm = vminq_f64(vm, vld1q_f64(x + j));
        }
        m = vgetq_lane_f64(vm, 0);
        const double m1 = vgetq_lane_f64(vm, 1);
        if (m1 < m) m = m1;
    }
    for (; j < n; ++j)
        if (x[j] < m) m = x[j];
    return m;
}

double max_signal_neon(const double* f, const double* c, std::size_t n) {
    float64x2_t vm = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        vm = vmaxq_f64(vm, vaddq_f64(vabsq_f64(vld1q_f64(f + j)), vld1q_f64(c + j)));
    }
    double m = vgetq_lane_f64(vm, 0);
    const double m1 = vgetq_lane_f64(vm, 1);
    if (m1 > m) m = m1;
    for (; j < n; ++j) {
        const double s = std::fabs(f[j]) + c[j];
        if (s > m) m = s;
    }
    return m;
}

double sum_pow2_neon(const double* x, const double* w, const double* rw, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        float64x2_t y = vld1q_f64(x + j);
        if (w) y = vmulq_f64(y, vld1q_f64(w + j));
        acc = vaddq_f64(acc, vmulq_f64(vmulq_f64(y, y), vld1q_f64(rw + j)));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; j < n; ++j) {
        const double y = w ? x[j] * w[j] : x[j];
        s += y * y * rw[j];
    }
    return s;
}

double sum_pow3_neon(const double* x, const double* w, const double* rw, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        float64x2_t y = vld1q_f64(x + j);
        if (w) y = vmulq_f64(y, vld1q_f64(w + j));
        y = vabsq_f64(y);
        acc = vaddq_f64(acc, vmulq_f64(vmulq_f64(vmulq_f64(y, y), y), vld1q_f64(rw + j)));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; j < n; ++j) {
        const double y = std::fabs(w ? x[j] * w[j] : x[j]);
        s += y * y * y * rw[j];
    }
    return s;
}

void rhs_chaplygin_neon(const double* v, const double* dv, const double* f,
                        const double* df, const double* g, const double* dg,
                        const double* inv_r,
                        double* out_v, double* out_f, double* out_g, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t vv = vld1q_f64(v + j);
        const float64x2_t vdv = vld1q_f64(dv + j);
        const float64x2_t vf = vld1q_f64(f + j);
        const float64x2_t vdf = vld1q_f64(df + j);
        const float64x2_t vg = vld1q_f64(g + j);
        const float64x2_t vdg = vld1q_f64(dg + j);
        const float64x2_t vir = vld1q_f64(inv_r + j);
        const float64x2_t onev = vaddq_f64(one, vv);
        const float64x2_t negf = vnegq_f64(vf);
        const float64x2_t divf = vaddq_f64(vdf, vmulq_f64(vf, vir));
        vst1q_f64(out_v + j, vsubq_f64(vmulq_f64(onev, divf), vmulq_f64(vf, vdv)));
        vst1q_f64(out_f + j, vaddq_f64(vsubq_f64(vmulq_f64(onev, vdv), vmulq_f64(vf, vdf)),
                                       vmulq_f64(vmulq_f64(vg, vg), vir)));
        const float64x2_t divg = vaddq_f64(vdg, vmulq_f64(vg, vir));
        vst1q_f64(out_g + j, vmulq_f64(negf, divg));
    }
    for (; j < n; ++j) {
        const double one_v = 1.0 + v[j];
        const double divf = df[j] + f[j] * inv_r[j];
        out_v[j] = one_v * divf - f[j] * dv[j];
        out_f[j] = one_v * dv[j] - f[j] * df[j] + g[j] * g[j] * inv_r[j];
        out_g[j] = -f[j] * (dg[j] + g[j] * inv_r[j]);
    }
}

void rhs_polytropic_neon(const double* c, const double* dc, const double* f,
                         const double* df, const double* g, const double* dg,
                         const double* inv_r, double mu,
                         double* out_c, double* out_f, double* out_g, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t vmu = vdupq_n_f64(mu);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t vc = vld1q_f64(c + j);
        const float64x2_t vdc = vld1q_f64(dc + j);
        const float64x2_t vf = vld1q_f64(f + j);
        const float64x2_t vdf = vld1q_f64(df + j);
        const float64x2_t vg = vld1q_f64(g + j);
        const float64x2_t vdg = vld1q_f64(dg + j);
        const float64x2_t vir = vld1q_f64(inv_r + j);
        const float64x2_t cs = vaddq_f64(one, vmulq_f64(vmu, vc));
        const float64x2_t negf = vnegq_f64(vf);
        const float64x2_t divf = vaddq_f64(vdf, vmulq_f64(vf, vir));
        vst1q_f64(out_c + j, vsubq_f64(vmulq_f64(negf, vdc), vmulq_f64(cs, divf)));
        vst1q_f64(out_f + j, vaddq_f64(vsubq_f64(vmulq_f64(negf, vdf), vmulq_f64(cs, vdc)),
                                       vmulq_f64(vmulq_f64(vg, vg), vir)));
        const float64x2_t divg = vaddq_f64(vdg, vmulq_f64(vg, vir));
        vst1q_f64(out_g + j, vmulq_f64(negf, divg));
    }
    for (; j < n; ++j) {
        const double cs = 1.0 + mu * c[j];
        const double divf = df[j] + f[j] * inv_r[j];
        out_c[j] = -f[j] * dc[j] - cs * divf;
        out_f[j] = -f[j] * df[j] - cs * dc[j] + g[j] * g[j] * inv_r[j];
        out_g[j] = -f[j] * (dg[j] + g[j] * inv_r[j]);
    }
}

} // namespace

const Ops& neon_ops() {
    static const Ops table = {
        d1_center4_neon, axpy_neon, combine4_neon,
        max_abs_neon,    min_val_neon, max_signal_neon,
        sum_pow2_neon,   sum_pow3_neon,
        rhs_chaplygin_neon, rhs_polytropic_neon,
    };
    return table;
}

} // namespace axeuler::kernels

#endif // aarch64
