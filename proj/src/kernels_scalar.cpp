#include "lstar/kernels.hpp"

#include <limits>

namespace lstar::kernels::scalar {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double max_reduce(const double* a, std::size_t n) {
    double best = kNegInf;
    for (std::size_t t = 0; t < n; ++t)
        if (a[t] > best) best = a[t];
    return best;
}

double max_plus(const double* a, const double* b, std::size_t n) {
    double best = kNegInf;
    for (std::size_t t = 0; t < n; ++t) {
        double v = a[t] + b[t];
        if (v > best) best = v;
    }
    return best;
}

double max_plus_indexed(const double* vals, const std::int32_t* idx, std::size_t count,
                        const double* base) {
    double best = kNegInf;
    for (std::size_t t = 0; t < count; ++t) {
        double v = vals[t] + base[idx[t]];
        if (v > best) best = v;
    }
    return best;
}

}  // namespace lstar::kernels::scalar
