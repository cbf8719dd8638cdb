#include "lstar/kernels.hpp"

#include "lstar/errors.hpp"

namespace lstar::kernels {

namespace {

constexpr Ops kScalarOps{scalar::max_reduce, scalar::max_plus, scalar::max_plus_indexed};

#if defined(LSTAR_KERNELS_AVX2_TU)
constexpr Ops kAvx2Ops{avx2::max_reduce, avx2::max_plus, avx2::max_plus_indexed};
#endif

struct State {
    Backend backend;
    const Ops* ops;
};

State detect() {
#if defined(LSTAR_KERNELS_AVX2_TU)
    if (__builtin_cpu_supports("avx2")) return {Backend::avx2, &kAvx2Ops};
#endif
    return {Backend::scalar, &kScalarOps};
}

State& state() {
    static State s = detect();
    return s;
}

}  // namespace

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_available() {
#if defined(LSTAR_KERNELS_AVX2_TU)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops& ops() { return *state().ops; }

Backend active_backend() { return state().backend; }

void select(Backend b) {
    if (b == Backend::scalar) {
        state() = {Backend::scalar, &kScalarOps};
        return;
    }
#if defined(LSTAR_KERNELS_AVX2_TU)
    if (b == Backend::avx2 && avx2_available()) {
        state() = {Backend::avx2, &kAvx2Ops};
        return;
    }
#endif
    throw contract_violation("requested kernel backend is not available on this machine");
}

void select_auto() { state() = detect(); }

}  // namespace lstar::kernels
