// Copyright (c) 2026 ecd contributors.
// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA variants of the batch kernels. Compiled with -mavx2 -mfma on
// x86-64 only; selected at runtime by kernels_dispatch.cpp.
//
// log/exp are evaluated in-register. log reduces to m in [sqrt(1/2), sqrt(2))
// and sums the atanh series in s = (m-1)/(m+1); exp reduces against a split
// ln2 and evaluates the Taylor polynomial of degree 13. Both are accurate to
// a couple of ulp, which the kernel equivalence suite checks against libm.

#include "ecd/kernels.hpp"
#include "kernels_impl.hpp"

#if defined(ECD_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace ecd::simd::avx2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvTwoPi = 1.0 / kTwoPi;
constexpr double kInvPi = 1.0 / std::numbers::pi;

constexpr double kLn2Hi = 6.93147180369123816490e-01;  // low 28 bits zero
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kInvLn2 = 1.44269504088896338700e+00;
constexpr double kSqrt2 = 1.41421356237309514547e+00;

inline __m256d vset1(double v) { return _mm256_set1_pd(v); }

// Natural log, 4 lanes. x = 0 -> -inf, x < 0 or NaN -> NaN, +inf -> +inf.
inline __m256d vlog4(__m256d x) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d inf = vset1(std::numeric_limits<double>::infinity());

    // Rescale subnormals so the exponent-field extraction below is exact.
    const __m256d tiny = vset1(2.2250738585072014e-308);  // DBL_MIN
    const __m256d sub_mask = _mm256_and_pd(_mm256_cmp_pd(x, tiny, _CMP_LT_OQ),
                                           _mm256_cmp_pd(x, zero, _CMP_GT_OQ));
    const __m256d scaled = _mm256_mul_pd(x, vset1(0x1p54));
    __m256d xs = _mm256_blendv_pd(x, scaled, sub_mask);
    const __m256d e_adjust = _mm256_and_pd(sub_mask, vset1(54.0));

    const __m256i xi = _mm256_castpd_si256(xs);
    const __m256i exp_bits = _mm256_srli_epi64(xi, 52);
    const __m256i biased = _mm256_and_si256(exp_bits, _mm256_set1_epi64x(0x7FF));
    // Exponent as double via the 2^52 trick (biased < 2^31 so low lanes suffice).
    const __m256i mag = _mm256_add_epi64(biased, _mm256_set1_epi64x(0x4330000000000000LL));
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(mag), vset1(0x1p52 + 1023.0));
    e = _mm256_sub_pd(e, e_adjust);

    const __m256i mant = _mm256_or_si256(
        _mm256_and_si256(xi, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
        _mm256_set1_epi64x(0x3FF0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mant);  // [1, 2)

    const __m256d hi_mask = _mm256_cmp_pd(m, vset1(kSqrt2), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, vset1(0.5)), hi_mask);
    e = _mm256_add_pd(e, _mm256_and_pd(hi_mask, vset1(1.0)));

    const __m256d one = vset1(1.0);
    const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d t = _mm256_mul_pd(s, s);

    // q(t) = sum_{k>=1} 2 t^{k-1} / (2k+1); log m = 2s + s*t*q with t = s^2.
    __m256d q = vset1(2.0 / 23.0);
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 21.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 19.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 17.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 15.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 13.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 11.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 9.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 7.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 5.0));
    q = _mm256_fmadd_pd(q, t, vset1(2.0 / 3.0));

    const __m256d rem = _mm256_mul_pd(_mm256_mul_pd(s, t), q);
    __m256d result = _mm256_add_pd(_mm256_add_pd(s, s),
                                   _mm256_fmadd_pd(e, vset1(kLn2Lo), rem));
    result = _mm256_fmadd_pd(e, vset1(kLn2Hi), result);

    // Specials.
    const __m256d nan = vset1(std::numeric_limits<double>::quiet_NaN());
    const __m256d lt_zero = _mm256_cmp_pd(x, zero, _CMP_LT_OQ);
    const __m256d eq_zero = _mm256_cmp_pd(x, zero, _CMP_EQ_OQ);
    const __m256d is_nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
    const __m256d is_inf = _mm256_cmp_pd(x, inf, _CMP_EQ_OQ);
    result = _mm256_blendv_pd(result, _mm256_sub_pd(zero, inf), eq_zero);
    result = _mm256_blendv_pd(result, nan, _mm256_or_pd(lt_zero, is_nan));
    result = _mm256_blendv_pd(result, inf, is_inf);
    return result;
}

// exp, 4 lanes, full double range including gradual underflow.
inline __m256d vexp4(__m256d x) {
    const __m256d inf = vset1(std::numeric_limits<double>::infinity());
    const __m256d overflow = _mm256_cmp_pd(x, vset1(709.782712893384), _CMP_GT_OQ);
    const __m256d underflow = _mm256_cmp_pd(x, vset1(-745.2), _CMP_LT_OQ);
    const __m256d is_nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);

    const __m256d xc = _mm256_min_pd(_mm256_max_pd(x, vset1(-746.0)), vset1(710.0));
    const __m256d k = _mm256_round_pd(_mm256_mul_pd(xc, vset1(kInvLn2)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, vset1(kLn2Hi), xc);
    r = _mm256_fnmadd_pd(k, vset1(kLn2Lo), r);

    __m256d p = vset1(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, vset1(0.5));
    p = _mm256_fmadd_pd(p, r, vset1(1.0));
    p = _mm256_fmadd_pd(p, r, vset1(1.0));
    // p = 1 + r + r^2/2! ... built as 1 + r*(1 + r*(1/2 + ...)); the two
    // trailing fmadds fold the linear and constant terms.

    // 2^k split into two factors so the exponent fields never saturate and
    // subnormal results round correctly on the final multiply.
    const __m128i ki = _mm256_cvtpd_epi32(k);
    const __m128i k1_32 = _mm_srai_epi32(ki, 1);
    const __m128i k2_32 = _mm_sub_epi32(ki, k1_32);
    const __m256i bias = _mm256_set1_epi64x(1023);
    const __m256i s1 = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k1_32), bias), 52);
    const __m256i s2 = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k2_32), bias), 52);
    __m256d result = _mm256_mul_pd(_mm256_mul_pd(p, _mm256_castsi256_pd(s1)),
                                   _mm256_castsi256_pd(s2));

    result = _mm256_blendv_pd(result, inf, overflow);
    result = _mm256_blendv_pd(result, _mm256_setzero_pd(), underflow);
    result = _mm256_blendv_pd(result, x, is_nan);
    return result;
}

inline double hsum(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
}

inline double hmin(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::fmin(std::fmin(lanes[0], lanes[1]), std::fmin(lanes[2], lanes[3]));
}

inline double hmax(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
}

}  // namespace

void cardioid_base(const double* theta, const double* sin_theta, const double* cos_theta,
                   std::size_t n, double rho, double mu, double* out) {
    const double cm = std::cos(mu), sm = std::sin(mu);
    const __m256d vcm = vset1(cm), vsm = vset1(sm);
    const __m256d vr = vset1(rho * kInvPi), vi2p = vset1(kInvTwoPi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d st = _mm256_loadu_pd(sin_theta + i);
        const __m256d ct = _mm256_loadu_pd(cos_theta + i);
        const __m256d th = _mm256_loadu_pd(theta + i);
        const __m256d sshift = _mm256_fmsub_pd(st, vcm, _mm256_mul_pd(ct, vsm));
        const __m256d res = _mm256_fmadd_pd(th, vi2p,
                                            _mm256_mul_pd(vr, _mm256_add_pd(sshift, vsm)));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) {
        const double sshift = sin_theta[i] * cm - cos_theta[i] * sm;
        out[i] = theta[i] * kInvTwoPi + rho * kInvPi * (sshift + sm);
    }
}

void cardioid_pert(const double* sin_theta, const double* cos_theta,
                   std::size_t n, double rho, double mu, double* out) {
    const double cm = std::cos(mu), sm = std::sin(mu);
    const __m256d vcm = vset1(cm), vsm = vset1(sm);
    const __m256d v2r = vset1(2.0 * rho), one = vset1(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d st = _mm256_loadu_pd(sin_theta + i);
        const __m256d ct = _mm256_loadu_pd(cos_theta + i);
        const __m256d cshift = _mm256_fmadd_pd(ct, vcm, _mm256_mul_pd(st, vsm));
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(v2r, cshift, one));
    }
    for (; i < n; ++i) {
        const double cshift = cos_theta[i] * cm + sin_theta[i] * sm;
        out[i] = 1.0 + 2.0 * rho * cshift;
    }
}

LoglikSums loglik_sums(const double* theta, const double* sin_theta, const double* cos_theta,
                       std::size_t n, double rho, double mu) {
    const double cm = std::cos(mu), sm = std::sin(mu);
    const __m256d vcm = vset1(cm), vsm = vset1(sm);
    const __m256d vr = vset1(rho * kInvPi), vi2p = vset1(kInvTwoPi);
    const __m256d v2r = vset1(2.0 * rho), one = vset1(1.0);

    __m256d sum_lb = _mm256_setzero_pd(), sum_lp = _mm256_setzero_pd();
    __m256d vmin_b = vset1(std::numeric_limits<double>::infinity());
    __m256d vmax_b = vset1(-std::numeric_limits<double>::infinity());
    __m256d vmin_p = vset1(std::numeric_limits<double>::infinity());

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d st = _mm256_loadu_pd(sin_theta + i);
        const __m256d ct = _mm256_loadu_pd(cos_theta + i);
        const __m256d th = _mm256_loadu_pd(theta + i);
        const __m256d sshift = _mm256_fmsub_pd(st, vcm, _mm256_mul_pd(ct, vsm));
        const __m256d cshift = _mm256_fmadd_pd(ct, vcm, _mm256_mul_pd(st, vsm));
        const __m256d base = _mm256_fmadd_pd(th, vi2p,
                                             _mm256_mul_pd(vr, _mm256_add_pd(sshift, vsm)));
        const __m256d pert = _mm256_fmadd_pd(v2r, cshift, one);
        sum_lb = _mm256_add_pd(sum_lb, vlog4(base));
        sum_lp = _mm256_add_pd(sum_lp, vlog4(pert));
        vmin_b = _mm256_min_pd(vmin_b, base);
        vmax_b = _mm256_max_pd(vmax_b, base);
        vmin_p = _mm256_min_pd(vmin_p, pert);
    }

    LoglikSums acc;
    acc.log_base_sum = hsum(sum_lb);
    acc.log_pert_sum = hsum(sum_lp);
    acc.min_base = hmin(vmin_b);
    acc.max_base = hmax(vmax_b);
    acc.min_pert = hmin(vmin_p);
    for (; i < n; ++i) {
        const double sshift = sin_theta[i] * cm - cos_theta[i] * sm;
        const double cshift = cos_theta[i] * cm + sin_theta[i] * sm;
        const double base = theta[i] * kInvTwoPi + rho * kInvPi * (sshift + sm);
        const double pert = 1.0 + 2.0 * rho * cshift;
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
    if (p == 0.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 1.0;
        return;
    }
    const __m256d vp = vset1(p), zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_max_pd(_mm256_loadu_pd(x + i), zero);
        _mm256_storeu_pd(out + i, vexp4(_mm256_mul_pd(vp, vlog4(v))));
    }
    for (; i < n; ++i) {
        const double v = x[i] > 0.0 ? x[i] : 0.0;
        out[i] = std::pow(v, p);
    }
}

void log_vec(const double* x, std::size_t n, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, vlog4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::log(x[i]);
}

void exp_vec(const double* x, std::size_t n, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, vexp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::exp(x[i]);
}

double sq_diff_sum(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

}  // namespace ecd::simd::avx2

#endif  // ECD_HAVE_AVX2
