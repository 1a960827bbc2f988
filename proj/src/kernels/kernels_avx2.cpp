// AVX2+FMA variants. Compiled with -mavx2 -mfma and only ever called after
// runtime CPU detection; keep every intrinsic inside this translation unit.

#include "naturisk/kernels.hpp"

#include "naturisk/math.hpp"

#include <cmath>
#include <immintrin.h>

namespace naturisk::kernels {

namespace {

// exp(x) for 4 lanes, ~1 ulp over [-708, 709]; saturates to 0 / +inf
// outside. Cephes-style reduction x = n*ln2 + r with a split ln2 constant,
// then a degree-13 Taylor polynomial on |r| <= ln2/2 and a 2^n exponent
// scale. Inputs must not be NaN.
inline __m256d exp4(__m256d x) {
    const __m256d hi_cut = _mm256_set1_pd(709.0);
    const __m256d lo_cut = _mm256_set1_pd(-708.0);
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

    const __m256d mask_hi = _mm256_cmp_pd(x, hi_cut, _CMP_GT_OQ);
    const __m256d mask_lo = _mm256_cmp_pd(x, lo_cut, _CMP_LT_OQ);
    const __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo_cut), hi_cut);

    const __m256d n =
        _mm256_round_pd(_mm256_mul_pd(xc, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, xc);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0); // 1/13!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    __m256d y = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));

    y = _mm256_blendv_pd(y, _mm256_set1_pd(HUGE_VAL), mask_hi);
    y = _mm256_blendv_pd(y, _mm256_setzero_pd(), mask_lo);
    return y;
}

void one_minus_exp_neg_avx2(const double* x, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d neg0 = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        __m256d e = exp4(_mm256_xor_pd(v, neg0));
        _mm256_storeu_pd(out + i, _mm256_sub_pd(one, e));
    }
    for (; i < n; ++i)
        out[i] = 1.0 - std::exp(-x[i]);
}

void damage_curve_avx2(const double* ep, double* out, std::size_t n, double k, double x0) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vk = _mm256_set1_pd(-k);
    const __m256d vx0 = _mm256_set1_pd(x0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d e = _mm256_loadu_pd(ep + i);
        __m256d arg = _mm256_mul_pd(vk, _mm256_sub_pd(e, vx0));
        __m256d denom = _mm256_add_pd(one, exp4(arg));
        __m256d d = _mm256_add_pd(e, _mm256_div_pd(_mm256_sub_pd(one, e), denom));
        _mm256_storeu_pd(out + i, d);
    }
    for (; i < n; ++i)
        out[i] = math::damage(ep[i], k, x0);
}

void tipping_chain_avx2(const double* dbar, double* p, double* dtp, double* cdi, std::size_t n,
                        double pi) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d ten = _mm256_set1_pd(-10.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d vpi = _mm256_set1_pd(pi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(dbar + i);
        __m256d rem = _mm256_sub_pd(one, d);
        __m256d denom = _mm256_add_pd(one, exp4(_mm256_mul_pd(ten, _mm256_sub_pd(d, half))));
        __m256d vp = _mm256_div_pd(rem, denom);
        __m256d vdtp = _mm256_mul_pd(rem, vpi);
        __m256d vc = _mm256_min_pd(one, _mm256_fmadd_pd(vp, vdtp, d));
        _mm256_storeu_pd(p + i, vp);
        _mm256_storeu_pd(dtp + i, vdtp);
        _mm256_storeu_pd(cdi + i, vc);
    }
    for (; i < n; ++i) {
        p[i] = math::tipping_probability(dbar[i]);
        dtp[i] = math::tipping_damage(dbar[i], pi);
        cdi[i] = math::degradation_index(dbar[i], p[i], dtp[i]);
    }
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, acc);
    }
    for (; i < n; ++i)
        y[i] += alpha * x[i];
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s2 = _mm_add_pd(lo, hi);
    double sum = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
    for (; i < n; ++i)
        sum += a[i] * b[i];
    return sum;
}

} // namespace

extern const Ops avx2_ops = {
    one_minus_exp_neg_avx2, damage_curve_avx2, tipping_chain_avx2, axpy_avx2, dot_avx2,
};

} // namespace naturisk::kernels
