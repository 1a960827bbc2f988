// NEON (AArch64) variants, mirroring the AVX2 lane math on 2-wide doubles.

#include "naturisk/kernels.hpp"

#include "naturisk/math.hpp"

#include <cmath>
#include <arm_neon.h>

namespace naturisk::kernels {

namespace {

inline float64x2_t exp2l(float64x2_t x) {
    const float64x2_t hi_cut = vdupq_n_f64(709.0);
    const float64x2_t lo_cut = vdupq_n_f64(-708.0);
    const float64x2_t log2e = vdupq_n_f64(1.4426950408889634074);
    const float64x2_t ln2_hi = vdupq_n_f64(6.93145751953125e-1);
    const float64x2_t ln2_lo = vdupq_n_f64(1.42860682030941723212e-6);

    const uint64x2_t mask_hi = vcgtq_f64(x, hi_cut);
    const uint64x2_t mask_lo = vcltq_f64(x, lo_cut);
    const float64x2_t xc = vminq_f64(vmaxq_f64(x, lo_cut), hi_cut);

    const float64x2_t n = vrndnq_f64(vmulq_f64(xc, log2e));
    float64x2_t r = vfmsq_f64(xc, n, ln2_hi); // xc - n*ln2_hi
    r = vfmsq_f64(r, n, ln2_lo);

    float64x2_t p = vdupq_n_f64(1.0 / 6227020800.0); // 1/13!
    p = vfmaq_f64(vdupq_n_f64(1.0 / 479001600.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 39916800.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 3628800.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 362880.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 40320.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 5040.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 720.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 120.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 24.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0 / 6.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(0.5), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0), p, r);

    const int64x2_t ni = vcvtnq_s64_f64(n);
    const int64x2_t bits = vshlq_n_s64(vaddq_s64(ni, vdupq_n_s64(1023)), 52);
    float64x2_t y = vmulq_f64(p, vreinterpretq_f64_s64(bits));

    y = vbslq_f64(mask_hi, vdupq_n_f64(HUGE_VAL), y);
    y = vbslq_f64(mask_lo, vdupq_n_f64(0.0), y);
    return y;
}

void one_minus_exp_neg_neon(const double* x, double* out, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(x + i);
        vst1q_f64(out + i, vsubq_f64(one, exp2l(vnegq_f64(v))));
    }
    for (; i < n; ++i)
        out[i] = 1.0 - std::exp(-x[i]);
}

void damage_curve_neon(const double* ep, double* out, std::size_t n, double k, double x0) {
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t vk = vdupq_n_f64(-k);
    const float64x2_t vx0 = vdupq_n_f64(x0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t e = vld1q_f64(ep + i);
        float64x2_t arg = vmulq_f64(vk, vsubq_f64(e, vx0));
        float64x2_t denom = vaddq_f64(one, exp2l(arg));
        float64x2_t d = vaddq_f64(e, vdivq_f64(vsubq_f64(one, e), denom));
        vst1q_f64(out + i, d);
    }
    for (; i < n; ++i)
        out[i] = math::damage(ep[i], k, x0);
}

void tipping_chain_neon(const double* dbar, double* p, double* dtp, double* cdi, std::size_t n,
                        double pi) {
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t ten = vdupq_n_f64(-10.0);
    const float64x2_t half = vdupq_n_f64(0.5);
    const float64x2_t vpi = vdupq_n_f64(pi);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vld1q_f64(dbar + i);
        float64x2_t rem = vsubq_f64(one, d);
        float64x2_t denom = vaddq_f64(one, exp2l(vmulq_f64(ten, vsubq_f64(d, half))));
        float64x2_t vp = vdivq_f64(rem, denom);
        float64x2_t vdtp = vmulq_f64(rem, vpi);
        float64x2_t vc = vminq_f64(one, vfmaq_f64(d, vp, vdtp));
        vst1q_f64(p + i, vp);
        vst1q_f64(dtp + i, vdtp);
        vst1q_f64(cdi + i, vc);
    }
    for (; i < n; ++i) {
        p[i] = math::tipping_probability(dbar[i]);
        dtp[i] = math::tipping_damage(dbar[i], pi);
        cdi[i] = math::degradation_index(dbar[i], p[i], dtp[i]);
    }
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i)
        y[i] += alpha * x[i];
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double sum = vaddvq_f64(acc);
    for (; i < n; ++i)
        sum += a[i] * b[i];
    return sum;
}

} // namespace

extern const Ops neon_ops = {
    one_minus_exp_neg_neon, damage_curve_neon, tipping_chain_neon, axpy_neon, dot_neon,
};

} // namespace naturisk::kernels
