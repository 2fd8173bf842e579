// Copyright (c) 2026 ecd contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Batch kernels for the arithmetic inner loops shared by the distribution,
// estimation and goodness-of-fit code. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant selected at runtime.
// The two variants are equivalence-tested against each other; callers must
// not depend on bit-identical results across instruction sets.
#pragma once

#include <cstddef>

namespace ecd::simd {

/// Accumulated per-sample log-likelihood building blocks.
///
/// `log_base_sum` is the sum of log of the cardioid base values b_i and
/// `log_pert_sum` the sum of log(1 + 2*rho*cos(theta_i - mu)). The min/max
/// fields are the raw (unclamped) extrema so callers can reject parameter
/// points where a log would be taken of a non-positive value; when such a
/// point is hit the sums may be NaN or -inf and must be ignored.
struct LoglikSums {
    double log_base_sum = 0.0;
    double log_pert_sum = 0.0;
    double min_base = 0.0;
    double max_base = 0.0;
    double min_pert = 0.0;
};

// All array arguments are length n. sin_theta/cos_theta hold sin/cos of the
// corresponding theta entry; they are precomputed once per sample because the
// fitting loops re-evaluate these kernels for many (rho, mu) trial points.

/// out_i = theta_i/(2 pi) + (rho/pi) * (sin(theta_i - mu) + sin(mu)), unclamped.
void cardioid_base(const double* theta, const double* sin_theta, const double* cos_theta,
                   std::size_t n, double rho, double mu, double* out);

/// out_i = 1 + 2 rho cos(theta_i - mu).
void cardioid_pert(const double* sin_theta, const double* cos_theta,
                   std::size_t n, double rho, double mu, double* out);

/// Fused reduction of both log sums used by the EC and Cardioid likelihoods.
LoglikSums loglik_sums(const double* theta, const double* sin_theta, const double* cos_theta,
                       std::size_t n, double rho, double mu);

/// out_i = x_i^p for x_i >= 0 (negative inputs are treated as 0; 0^p = 0 for p > 0).
void pow_vec(const double* x, std::size_t n, double p, double* out);

/// Natural log / exponential applied elementwise.
void log_vec(const double* x, std::size_t n, double* out);
void exp_vec(const double* x, std::size_t n, double* out);

/// Sum of squared differences: sum_i (a_i - b_i)^2.
double sq_diff_sum(const double* a, const double* b, std::size_t n);

// ---------------------------------------------------------------------------
// Runtime dispatch
// ---------------------------------------------------------------------------

enum class Isa { scalar, avx2 };

/// Instruction set currently backing the kernels above.
Isa active();

/// True when the given variant can run on this machine (scalar always can).
bool supported(Isa isa);

/// Force a specific variant (throws std::runtime_error if unsupported).
/// Intended for tests and benchmarking; not safe to call concurrently with
/// kernel invocations. The ECD_ISA environment variable ("scalar"/"avx2")
/// selects the initial variant.
void force(Isa isa);

const char* isa_name(Isa isa);

}  // namespace ecd::simd
