#pragma once
// Data-parallel inner loops: scalar reference kernels plus SIMD variants
// (AVX2 on x86-64, NEON on arm64) selected once at runtime by CPU probe.
//
// All arrays are length n unless noted. Staggered-grid boundary convention:
// left ghost samples mirror across r = 0 with a parity sign, right ghosts
// are the rest-state value 0.

#include <cstddef>

namespace axeuler::kernels {

enum class Backend { Scalar, Avx2, Neon };

// Backend chosen for this process (CPU probe, or the forced one).
Backend active_backend();
const char* backend_name(Backend b);

// Test hook: force a backend. Throws std::invalid_argument if the CPU
// cannot run it. Pass Scalar to get the reference path everywhere.
void force_backend(Backend b);
void reset_backend();

struct Ops {
    // 4th-order centered first derivative, spacing folded into inv_12h = 1/(12h).
    // parity_sign: +1 even input, -1 odd input (left ghost in[-1-k] = sign*in[k]).
    void (*d1_center4)(const double* in, double* out, std::size_t n,
                       double inv_12h, double parity_sign);

    // out = a + c*b
    void (*axpy)(const double* a, const double* b, double c, double* out, std::size_t n);

    // out = u + c1*k1 + c2*k2 + c3*k3 + c4*k4
    void (*combine4)(const double* u, const double* k1, const double* k2,
                     const double* k3, const double* k4,
                     double c1, double c2, double c3, double c4,
                     double* out, std::size_t n);

    double (*max_abs)(const double* x, std::size_t n);
    double (*min_val)(const double* x, std::size_t n);
    // max over j of |f_j| + c_j  (c_j >= 0: local signal speed)
    double (*max_signal)(const double* f, const double* c, std::size_t n);

    // sum over j of (x_j*w_j)^2 * rw_j   (w may be null: treated as 1)
    double (*sum_pow2)(const double* x, const double* w, const double* rw, std::size_t n);
    // sum over j of |x_j*w_j|^3 * rw_j
    double (*sum_pow3)(const double* x, const double* w, const double* rw, std::size_t n);

    // Pointwise RHS of the radial system, division-free (inv_r precomputed).
    //   out_v = (1+v)*(df + f/r) - f*dv
    //   out_f = (1+v)*dv - f*df + g^2/r
    //   out_g = -f*(dg + g/r)
    void (*rhs_chaplygin)(const double* v, const double* dv, const double* f,
                          const double* df, const double* g, const double* dg,
                          const double* inv_r,
                          double* out_v, double* out_f, double* out_g, std::size_t n);
    //   cs = 1 + mu*c,  mu = (gamma-1)/2
    //   out_c = -f*dc - cs*(df + f/r)
    //   out_f = -f*df - cs*dc + g^2/r
    //   out_g = -f*(dg + g/r)
    void (*rhs_polytropic)(const double* c, const double* dc, const double* f,
                           const double* df, const double* g, const double* dg,
                           const double* inv_r, double mu,
                           double* out_c, double* out_f, double* out_g, std::size_t n);
};

// Kernel table for the active backend.
const Ops& ops();

// Reference (scalar) table, always available.
const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
bool cpu_has_avx2();
#endif
#if defined(__aarch64__)
const Ops& neon_ops();
#endif

// First-order one-sided derivative (test hook for the convergence
// negative control; scalar only, not dispatched).
void d1_upwind1(const double* in, double* out, std::size_t n,
                double inv_h, double parity_sign);

} // namespace axeuler::kernels
