// Copyright (c) 2026 ecd contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference implementations of the batch kernels. These are the
// semantics the SIMD variants are tested against.

#include "ecd/kernels.hpp"
#include "kernels_impl.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ecd::simd::scalar {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvTwoPi = 1.0 / kTwoPi;
constexpr double kInvPi = 1.0 / std::numbers::pi;
}  // namespace

void cardioid_base(const double* theta, const double* sin_theta, const double* cos_theta,
                   std::size_t n, double rho, double mu, double* out) {
    const double cm = std::cos(mu), sm = std::sin(mu);
    const double r = rho * kInvPi;
    for (std::size_t i = 0; i < n; ++i) {
        const double sin_shift = sin_theta[i] * cm - cos_theta[i] * sm;  // sin(theta - mu)
        out[i] = theta[i] * kInvTwoPi + r * (sin_shift + sm);
    }
}

void cardioid_pert(const double* sin_theta, const double* cos_theta,
                   std::size_t n, double rho, double mu, double* out) {
    const double cm = std::cos(mu), sm = std::sin(mu);
    for (std::size_t i = 0; i < n; ++i) {
        const double cos_shift = cos_theta[i] * cm + sin_theta[i] * sm;  // cos(theta - mu)
        out[i] = 1.0 + 2.0 * rho * cos_shift;
    }
}

LoglikSums loglik_sums(const double* theta, const double* sin_theta, const double* cos_theta,
                       std::size_t n, double rho, double mu) {
    const double cm = std::cos(mu), sm = std::sin(mu);
    const double r = rho * kInvPi;
    LoglikSums acc;
    acc.min_base = std::numeric_limits<double>::infinity();
    acc.max_base = -std::numeric_limits<double>::infinity();
    acc.min_pert = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double sin_shift = sin_theta[i] * cm - cos_theta[i] * sm;
        const double cos_shift = cos_theta[i] * cm + sin_theta[i] * sm;
        const double base = theta[i] * kInvTwoPi + r * (sin_shift + sm);
        const double pert = 1.0 + 2.0 * rho * cos_shift;
        acc.log_base_sum += std::log(base);
        acc.log_pert_sum += std::log(pert);
        acc.min_base = std::fmin(acc.min_base, base);
        acc.max_base = std::fmax(acc.max_base, base);
        acc.min_pert = std::fmin(acc.min_pert, pert);
    }
    if (n == 0) {
        acc.min_base = acc.max_base = acc.min_pert = 0.0;
    }
    return acc;
}

void pow_vec(const double* x, std::size_t n, double p, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i] > 0.0 ? x[i] : 0.0;
        out[i] = std::pow(v, p);
    }
}

void log_vec(const double* x, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

void exp_vec(const double* x, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

double sq_diff_sum(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace ecd::simd::scalar
