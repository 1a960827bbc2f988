#pragma once

#include <cstddef>
#include <string_view>

namespace naturisk::kernels {

// Batch kernels behind the per-year loops. The scalar implementations are
// the reference; the AVX2/NEON variants must agree with them to a few ulps
// and are selected at runtime from CPU capabilities. NATURISK_SIMD
// (auto|scalar|avx2|neon) overrides the selection.
struct Ops {
    // out[i] = 1 - exp(-x[i])
    void (*one_minus_exp_neg)(const double* x, double* out, std::size_t n);
    // out[i] = ep[i] + (1 - ep[i]) / (1 + exp(-k*(ep[i] - x0)))
    void (*damage_curve)(const double* ep, double* out, std::size_t n, double k, double x0);
    // from clamped mean damage: p, tipping damage, and the capped index
    void (*tipping_chain)(const double* dbar, double* p, double* dtp, double* cdi, std::size_t n,
                          double pi);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // sum_i a[i] * b[i], fixed reduction order per backend
    double (*dot)(const double* a, const double* b, std::size_t n);
};

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);

// Backend resolved once per process (CPU detection + NATURISK_SIMD).
Backend active_backend();

// Kernel table for the active backend.
const Ops& ops();

// Test hooks.
bool backend_available(Backend b);
const Ops* ops_for(Backend b); // nullptr when unavailable
void force_backend(Backend b); // throws if unavailable

extern const Ops scalar_ops;

} // namespace naturisk::kernels
