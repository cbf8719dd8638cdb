// AVX2 variants of the DP reduction kernels; this translation unit is
// compiled with -mavx2 and only linked on x86-64.  Semantics match the
// scalar reference bitwise: per-element one-add max reductions over
// finite/-inf inputs are associativity-safe.

#include "lstar/kernels.hpp"

#if defined(LSTAR_KERNELS_AVX2_TU) && defined(__AVX2__)

#include <immintrin.h>

#include <limits>

namespace lstar::kernels::avx2 {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double hmax(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d m = _mm_max_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(m, m);
    return _mm_cvtsd_f64(_mm_max_sd(m, swapped));
}

}  // namespace

double max_reduce(const double* a, std::size_t n) {
    std::size_t t = 0;
    double best = kNegInf;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(a);
        for (t = 4; t + 4 <= n; t += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + t));
        best = hmax(acc);
    }
    for (; t < n; ++t)
        if (a[t] > best) best = a[t];
    return best;
}

double max_plus(const double* a, const double* b, std::size_t n) {
    std::size_t t = 0;
    double best = kNegInf;
    if (n >= 4) {
        __m256d acc = _mm256_add_pd(_mm256_loadu_pd(a), _mm256_loadu_pd(b));
        for (t = 4; t + 4 <= n; t += 4) {
            __m256d v = _mm256_add_pd(_mm256_loadu_pd(a + t), _mm256_loadu_pd(b + t));
            acc = _mm256_max_pd(acc, v);
        }
        best = hmax(acc);
    }
    for (; t < n; ++t) {
        double v = a[t] + b[t];
        if (v > best) best = v;
    }
    return best;
}

double max_plus_indexed(const double* vals, const std::int32_t* idx, std::size_t count,
                        const double* base) {
    std::size_t t = 0;
    double best = kNegInf;
    if (count >= 4) {
        __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
        __m256d acc =
            _mm256_add_pd(_mm256_loadu_pd(vals), _mm256_i32gather_pd(base, ix, 8));
        for (t = 4; t + 4 <= count; t += 4) {
            ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + t));
            __m256d v =
                _mm256_add_pd(_mm256_loadu_pd(vals + t), _mm256_i32gather_pd(base, ix, 8));
            acc = _mm256_max_pd(acc, v);
        }
        best = hmax(acc);
    }
    for (; t < count; ++t) {
        double v = vals[t] + base[idx[t]];
        if (v > best) best = v;
    }
    return best;
}

}  // namespace lstar::kernels::avx2

#endif  // LSTAR_KERNELS_AVX2_TU && __AVX2__
