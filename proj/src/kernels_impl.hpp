// Copyright (c) 2026 ecd contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Internal declarations of the per-ISA kernel entry points. The public API in
// ecd/kernels.hpp forwards to one of these namespaces through the dispatch
// table in kernels_dispatch.cpp.
#pragma once

#include "ecd/kernels.hpp"

#include <cstddef>

#define ECD_KERNEL_DECLS                                                                        \
    void cardioid_base(const double* theta, const double* sin_theta, const double* cos_theta,   \
                       std::size_t n, double rho, double mu, double* out);                      \
    void cardioid_pert(const double* sin_theta, const double* cos_theta,                        \
                       std::size_t n, double rho, double mu, double* out);                      \
    ::ecd::simd::LoglikSums loglik_sums(const double* theta, const double* sin_theta,           \
                                        const double* cos_theta, std::size_t n, double rho,     \
                                        double mu);                                             \
    void pow_vec(const double* x, std::size_t n, double p, double* out);                        \
    void log_vec(const double* x, std::size_t n, double* out);                                  \
    void exp_vec(const double* x, std::size_t n, double* out);                                  \
    double sq_diff_sum(const double* a, const double* b, std::size_t n);

namespace ecd::simd::scalar {
ECD_KERNEL_DECLS
}

#if defined(ECD_HAVE_AVX2)
namespace ecd::simd::avx2 {
ECD_KERNEL_DECLS
}
#endif

#undef ECD_KERNEL_DECLS
