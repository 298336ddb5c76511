// Runtime backend selection. The probe runs once; force_backend is a test
// hook and also honored from AXEULER_KERNELS=scalar|avx2|neon for triage.

#include "axeuler/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace axeuler::kernels {

namespace {

Backend probe() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) return Backend::Avx2;
#elif defined(__aarch64__)
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

Backend env_or_probe() {
    if (const char* e = std::getenv("AXEULER_KERNELS")) {
        if (std::strcmp(e, "scalar") == 0) return Backend::Scalar;
#if defined(__x86_64__) || defined(_M_X64)
        if (std::strcmp(e, "avx2") == 0 && cpu_has_avx2()) return Backend::Avx2;
#endif
#if defined(__aarch64__)
        if (std::strcmp(e, "neon") == 0) return Backend::Neon;
#endif
    }
    return probe();
}

std::atomic<Backend> g_backend{env_or_probe()};

const Ops& table_for(Backend b) {
    switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: return avx2_ops();
#endif
#if defined(__aarch64__)
        case Backend::Neon: return neon_ops();
#endif
        default: return scalar_ops();
    }
}

} // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
        default: return "scalar";
    }
}

void force_backend(Backend b) {
    switch (b) {
        case Backend::Scalar: break;
        case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (cpu_has_avx2()) break;
#endif
            throw std::invalid_argument("kernels: avx2 backend not available on this CPU");
        case Backend::Neon:
#if defined(__aarch64__)
            break;
#else
            throw std::invalid_argument("kernels: neon backend not available on this CPU");
#endif
    }
    g_backend.store(b, std::memory_order_relaxed);
}

void reset_backend() { g_backend.store(env_or_probe(), std::memory_order_relaxed); }

const Ops& ops() { return table_for(active_backend()); }

} // namespace axeuler::kernels
