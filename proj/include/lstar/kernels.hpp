#pragma once

#include <cstddef>
#include <cstdint>

namespace lstar::kernels {

/// Hot inner loops of the DP engines: pure max / max-plus reductions over
/// doubles with -inf sentinels (never NaN).  Every element is produced by
/// at most one IEEE addition, so scalar and SIMD variants return bitwise
/// identical results; the equivalence is tested, not assumed.
struct Ops {
    /// max over a[0..n); -inf for n = 0.
    double (*max_reduce)(const double* a, std::size_t n);
    /// max over a[t] + b[t]; -inf for n = 0.
    double (*max_plus)(const double* a, const double* b, std::size_t n);
    /// max over vals[t] + base[idx[t]]; -inf for count = 0.
    double (*max_plus_indexed)(const double* vals, const std::int32_t* idx,
                               std::size_t count, const double* base);
};

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

/// True when the AVX2 variant is both compiled in and supported by the CPU.
bool avx2_available();

/// Currently selected implementation (auto-detected on first use).
const Ops& ops();
Backend active_backend();

/// Force a backend; throws contract_violation when unavailable.
/// Not meant to be called concurrently with running folds.
void select(Backend b);
void select_auto();

namespace scalar {
double max_reduce(const double* a, std::size_t n);
double max_plus(const double* a, const double* b, std::size_t n);
double max_plus_indexed(const double* vals, const std::int32_t* idx, std::size_t count,
                        const double* base);
}  // namespace scalar

#if defined(LSTAR_KERNELS_AVX2_TU)
namespace avx2 {
double max_reduce(const double* a, std::size_t n);
double max_plus(const double* a, const double* b, std::size_t n);
double max_plus_indexed(const double* vals, const std::int32_t* idx, std::size_t count,
                        const double* base);
}  // namespace avx2
#endif

}  // namespace lstar::kernels
