// AVX2 kernel variants. Elementwise kernels keep the scalar operation order
// (mul/add, no FMA) so results match the reference bitwise; reductions use
// four lane accumulators and differ from scalar only by summation order.

#include "axeuler/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>
#include <cmath>
#include <cstddef>

namespace axeuler::kernels {

namespace {

inline double ghost(const double* in, std::ptrdiff_t j, std::size_t n, double sign) {
    if (j < 0) return sign * in[-1 - j];
    if (j >= static_cast<std::ptrdiff_t>(n)) return 0.0;
    return in[j];
}

void d1_center4_avx2(const double* in, double* out, std::size_t n,
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
    const __m256d eight = _mm256_set1_pd(8.0);
    const __m256d scale = _mm256_set1_pd(inv_12h);
    for (; j + 4 <= sn - 2; j += 4) {
        const __m256d p1 = _mm256_loadu_pd(in + j + 1);
        const __m256d m1 = _mm256_loadu_pd(in + j - 1);
        const __m256d p2 = _mm256_loadu_pd(in + j + 2);
        const __m256d m2 = _mm256_loadu_pd(in + j - 2);
        const __m256d t = _mm256_sub_pd(_mm256_mul_pd(eight, _mm256_sub_pd(p1, m1)),
                                        _mm256_sub_pd(p2, m2));
        _mm256_storeu_pd(out + j, _mm256_mul_pd(t, scale));
    }
    for (; j < sn; ++j) {
        const double m2 = ghost(in, j - 2, n, parity_sign);
        const double m1 = ghost(in, j - 1, n, parity_sign);
        const double p1 = ghost(in, j + 1, n, parity_sign);
        const double p2 = ghost(in, j + 2, n, parity_sign);
        out[j] = (8.0 * (p1 - m1) - (p2 - m2)) * inv_12h;
    }
}

void axpy_avx2(const double* a, const double* b, double c, double* out, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d va = _mm256_loadu_pd(a + j);
        const __m256d vb = _mm256_loadu_pd(b + j);
        _mm256_storeu_pd(out + j, _mm256_add_pd(va, _mm256_mul_pd(vc, vb)));
    }
    for (; j < n; ++j) out[j] = a[j] + c * b[j];
}

void combine4_avx2(const double* u, const double* k1, const double* k2,
                   const double* k3, const double* k4,
                   double c1, double c2, double c3, double c4,
                   double* out, std::size_t n) {
    const __m256d v1 = _mm256_set1_pd(c1);
    const __m256d v2 = _mm256_set1_pd(c2);
    const __m256d v3 = _mm256_set1_pd(c3);
    const __m256d v4 = _mm256_set1_pd(c4);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d acc = _mm256_mul_pd(v1, _mm256_loadu_pd(k1 + j));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v2, _mm256_loadu_pd(k2 + j)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v3, _mm256_loadu_pd(k3 + j)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v4, _mm256_loadu_pd(k4 + j)));
        _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_loadu_pd(u + j), acc));
    }
    for (; j < n; ++j) {
        out[j] = u[j] + (c1 * k1[j] + c2 * k2[j] + c3 * k3[j] + c4 * k4[j]);
    }
}

double max_abs_avx2(const double* x, std::size_t n) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d vm = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        vm = _mm256_max_pd(vm, _mm256_and_pd(absmask, _mm256_loadu_pd(x + j)));
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, vm);
    double m = lanes[0];
    for (int k = 1; k < 4; ++k)
        if (lanes[k] > m) m = lanes[k];
    for (; j < n; ++j) {
        const double a = std::fabs(x[j]);
        if (a > m) m = a;
    }
    return m;
}

double min_val_avx2(const double* x, std::size_t n) {
    double m = x[0];
    std::size_t j = 0;
    if (n >= 4) {
        __m256d vm = _mm256_loadu_pd(x);
        for (j = 4; j + 4 <= n; j += 4) {
            vm = _mm256_min_pd(vm, _mm256_loadu_pd(x + j));
        }
        double lanes[4];
        _mm256_storeu_pd(lanes, vm);
        m = lanes[0];
        for (int k = 1; k < 4; ++k)
            if (lanes[k] < m) m = lanes[k];
    }
    for (; j < n; ++j)
        if (x[j] < m) m = x[j];
    return m;
}

double max_signal_avx2(const double* f, const double* c, std::size_t n) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d vm = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d s = _mm256_add_pd(_mm256_and_pd(absmask, _mm256_loadu_pd(f + j)),
                                        _mm256_loadu_pd(c + j));
        vm = _mm256_max_pd(vm, s);
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, vm);
    double m = lanes[0];
    for (int k = 1; k < 4; ++k)
        if (lanes[k] > m) m = lanes[k];
    for (; j < n; ++j) {
        const double s = std::fabs(f[j]) + c[j];
        if (s > m) m = s;
    }
    return m;
}

double sum_pow2_avx2(const double* x, const double* w, const double* rw, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    if (w) {
        for (; j + 4 <= n; j += 4) {
            const __m256d y = _mm256_mul_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(w + j));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(y, y), _mm256_loadu_pd(rw + j)));
        }
    } else {
        for (; j + 4 <= n; j += 4) {
            const __m256d y = _mm256_loadu_pd(x + j);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(y, y), _mm256_loadu_pd(rw + j)));
        }
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; j < n; ++j) {
        const double y = w ? x[j] * w[j] : x[j];
        s += y * y * rw[j];
    }
    return s;
}

double sum_pow3_avx2(const double* x, const double* w, const double* rw, std::size_t n) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d y = _mm256_loadu_pd(x + j);
        if (w) y = _mm256_mul_pd(y, _mm256_loadu_pd(w + j));
        y = _mm256_and_pd(absmask, y);
        const __m256d y3 = _mm256_mul_pd(_mm256_mul_pd(y, y), y);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(y3, _mm256_loadu_pd(rw + j)));
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; j < n; ++j) {
        const double y = std::fabs(w ? x[j] * w[j] : x[j]);
        s += y * y * y * rw[j];
    }
    return s;
}

void rhs_chaplygin_avx2(const double* v, const double* dv, const double* f,
                        const double* df, const double* g, const double* dg,
                        const double* inv_r,
                        double* out_v, double* out_f, double* out_g, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d signmask = _mm256_set1_pd(-0.0);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d vv = _mm256_loadu_pd(v + j);
        const __m256d vdv = _mm256_loadu_pd(dv + j);
        const __m256d vf = _mm256_loadu_pd(f + j);
        const __m256d vdf = _mm256_loadu_pd(df + j);
        const __m256d vg = _mm256_loadu_pd(g + j);
        const __m256d vdg = _mm256_loadu_pd(dg + j);
        const __m256d vir = _mm256_loadu_pd(inv_r + j);
        const __m256d onev = _mm256_add_pd(one, vv);
        const __m256d negf = _mm256_xor_pd(vf, signmask);
        const __m256d divf = _mm256_add_pd(vdf, _mm256_mul_pd(vf, vir));
        _mm256_storeu_pd(out_v + j,
                         _mm256_sub_pd(_mm256_mul_pd(onev, divf), _mm256_mul_pd(vf, vdv)));
        _mm256_storeu_pd(out_f + j,
                         _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(onev, vdv),
                                                     _mm256_mul_pd(vf, vdf)),
                                       _mm256_mul_pd(_mm256_mul_pd(vg, vg), vir)));
        const __m256d divg = _mm256_add_pd(vdg, _mm256_mul_pd(vg, vir));
        _mm256_storeu_pd(out_g + j, _mm256_mul_pd(negf, divg));
    }
    for (; j < n; ++j) {
        const double one_v = 1.0 + v[j];
        const double divf = df[j] + f[j] * inv_r[j];
        out_v[j] = one_v * divf - f[j] * dv[j];
        out_f[j] = one_v * dv[j] - f[j] * df[j] + g[j] * g[j] * inv_r[j];
        out_g[j] = -f[j] * (dg[j] + g[j] * inv_r[j]);
    }
}

void rhs_polytropic_avx2(const double* c, const double* dc, const double* f,
                         const double* df, const double* g, const double* dg,
                         const double* inv_r, double mu,
                         double* out_c, double* out_f, double* out_g, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vmu = _mm256_set1_pd(mu);
    const __m256d signmask = _mm256_set1_pd(-0.0);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d vc = _mm256_loadu_pd(c + j);
        const __m256d vdc = _mm256_loadu_pd(dc + j);
        const __m256d vf = _mm256_loadu_pd(f + j);
        const __m256d vdf = _mm256_loadu_pd(df + j);
        const __m256d vg = _mm256_loadu_pd(g + j);
        const __m256d vdg = _mm256_loadu_pd(dg + j);
        const __m256d vir = _mm256_loadu_pd(inv_r + j);
        const __m256d cs = _mm256_add_pd(one, _mm256_mul_pd(vmu, vc));
        const __m256d negf = _mm256_xor_pd(vf, signmask);
        const __m256d divf = _mm256_add_pd(vdf, _mm256_mul_pd(vf, vir));
        _mm256_storeu_pd(out_c + j,
                         _mm256_sub_pd(_mm256_mul_pd(negf, vdc),
                                       _mm256_mul_pd(cs, divf)));
        _mm256_storeu_pd(out_f + j,
                         _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(negf, vdf),
                                                     _mm256_mul_pd(cs, vdc)),
                                       _mm256_mul_pd(_mm256_mul_pd(vg, vg), vir)));
        const __m256d divg = _mm256_add_pd(vdg, _mm256_mul_pd(vg, vir));
        _mm256_storeu_pd(out_g + j, _mm256_mul_pd(negf, divg));
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

const Ops& avx2_ops() {
    static const Ops table = {
        d1_center4_avx2, axpy_avx2, combine4_avx2,
        max_abs_avx2,    min_val_avx2, max_signal_avx2,
        sum_pow2_avx2,   sum_pow3_avx2,
        rhs_chaplygin_avx2, rhs_polytropic_avx2,
    };
    return table;
}

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2");
}

} // namespace axeuler::kernels

#endif // x86-64
