#include "naturisk/kernels.hpp"

#include "naturisk/math.hpp"

#include <cmath>

namespace naturisk::kernels {

namespace {

void one_minus_exp_neg_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = 1.0 - std::exp(-x[i]);
}

void damage_curve_scalar(const double* ep, double* out, std::size_t n, double k, double x0) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = math::damage(ep[i], k, x0);
}

void tipping_chain_scalar(const double* dbar, double* p, double* dtp, double* cdi, std::size_t n,
                          double pi) {
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = math::tipping_probability(dbar[i]);
        dtp[i] = math::tipping_damage(dbar[i], pi);
        cdi[i] = math::degradation_index(dbar[i], p[i], dtp[i]);
    }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        y[i] += alpha * x[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

} // namespace

const Ops scalar_ops = {
    one_minus_exp_neg_scalar, damage_curve_scalar, tipping_chain_scalar, axpy_scalar, dot_scalar,
};

} // namespace naturisk::kernels
