#include "naturisk/kernels.hpp"

#include "naturisk/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace naturisk::kernels {

#if defined(NATURISK_HAVE_AVX2)
extern const Ops avx2_ops;
#endif
#if defined(NATURISK_HAVE_NEON)
extern const Ops neon_ops;
#endif

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "?";
}

bool backend_available(Backend b) {
    switch (b) {
    case Backend::scalar:
        return true;
    case Backend::avx2:
#if defined(NATURISK_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Backend::neon:
#if defined(NATURISK_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const Ops* ops_for(Backend b) {
    if (!backend_available(b))
        return nullptr;
    switch (b) {
    case Backend::scalar:
        return &scalar_ops;
#if defined(NATURISK_HAVE_AVX2)
    case Backend::avx2:
        return &avx2_ops;
#endif
#if defined(NATURISK_HAVE_NEON)
    case Backend::neon:
        return &neon_ops;
#endif
    default:
        return nullptr;
    }
}

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("NATURISK_SIMD"); env && *env) {
        std::string v = env;
        if (v == "scalar")
            return Backend::scalar;
        if (v == "avx2" || v == "neon") {
            Backend b = v == "avx2" ? Backend::avx2 : Backend::neon;
            if (!backend_available(b))
                raise(Errc::config_error, "NATURISK_SIMD=" + v + " is not available on this machine");
            return b;
        }
        if (v != "auto")
            raise(Errc::config_error, "NATURISK_SIMD must be auto, scalar, avx2 or neon (got '" + v + "')");
    }
    if (backend_available(Backend::avx2))
        return Backend::avx2;
    if (backend_available(Backend::neon))
        return Backend::neon;
    return Backend::scalar;
}

std::atomic<int> g_backend{-1};

} // namespace

Backend active_backend() {
    int b = g_backend.load(std::memory_order_acquire);
    if (b < 0) {
        b = static_cast<int>(detect_backend());
        g_backend.store(b, std::memory_order_release);
    }
    return static_cast<Backend>(b);
}

void force_backend(Backend b) {
    if (!backend_available(b))
        raise(Errc::config_error, std::string("backend not available: ") + backend_name(b));
    g_backend.store(static_cast<int>(b), std::memory_order_release);
}

const Ops& ops() {
    return *ops_for(active_backend());
}

} // namespace naturisk::kernels
