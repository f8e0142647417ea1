#include "relay/simd_kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace relay::simd {

// ===========================================================================
// Scalar reference kernels
// ===========================================================================
// Reductions run four interleaved accumulators over blocks of four elements
// (lane j takes element 4k + j), tail elements continue the same lane
// pattern, and the final combine is (acc0 + acc1) + (acc2 + acc3). The AVX2
// variants reproduce this exact order.

namespace scalar {

void axpy(double* dst, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = std::fma(a, x[i], dst[i]);
    }
}

void axpby(double* dst, double a, const double* x, double b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = std::fma(a, x[i], b * dst[i]);
    }
}

void add_scalar(double* dst, const double* x, double b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = x[i] + b;
    }
}

void scale(double* dst, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] *= a;
    }
}

void min_inplace(double* vmin, const double* q, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i] < vmin[i]) {
            vmin[i] = q[i];
        }
    }
}

void min_update(double* vmin, double* amin, const double* q, double code, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i] < vmin[i]) {
            vmin[i] = q[i];
            amin[i] = code;
        }
    }
}

double sum(const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        acc[0] += x[i];
        acc[1] += x[i + 1];
        acc[2] += x[i + 2];
        acc[3] += x[i + 3];
    }
    for (std::size_t i = k; i < n; ++i) {
        acc[i - k] += x[i];
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        acc[0] = std::fma(x[i], y[i], acc[0]);
        acc[1] = std::fma(x[i + 1], y[i + 1], acc[1]);
        acc[2] = std::fma(x[i + 2], y[i + 2], acc[2]);
        acc[3] = std::fma(x[i + 3], y[i + 3], acc[3]);
    }
    for (std::size_t i = k; i < n; ++i) {
        acc[i - k] = std::fma(x[i], y[i], acc[i - k]);
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_gather(const double* x, const std::int32_t* idx, const double* w, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        acc[0] = std::fma(x[idx[i]], w[i], acc[0]);
        acc[1] = std::fma(x[idx[i + 1]], w[i + 1], acc[1]);
        acc[2] = std::fma(x[idx[i + 2]], w[i + 2], acc[2]);
        acc[3] = std::fma(x[idx[i + 3]], w[i + 3], acc[3]);
    }
    for (std::size_t i = k; i < n; ++i) {
        acc[i - k] = std::fma(x[idx[i]], w[i], acc[i - k]);
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double l1_diff(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        acc[0] += std::fabs(x[i] - y[i]);
        acc[1] += std::fabs(x[i + 1] - y[i + 1]);
        acc[2] += std::fabs(x[i + 2] - y[i + 2]);
        acc[3] += std::fabs(x[i + 3] - y[i + 3]);
    }
    for (std::size_t i = k; i < n; ++i) {
        acc[i - k] += std::fabs(x[i] - y[i]);
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        acc[0] = std::max(acc[0], std::fabs(x[i] - y[i]));
        acc[1] = std::max(acc[1], std::fabs(x[i + 1] - y[i + 1]));
        acc[2] = std::max(acc[2], std::fabs(x[i + 2] - y[i + 2]));
        acc[3] = std::max(acc[3], std::fabs(x[i + 3] - y[i + 3]));
    }
    for (std::size_t i = k; i < n; ++i) {
        acc[i - k] = std::max(acc[i - k], std::fabs(x[i] - y[i]));
    }
    return std::max(std::max(acc[0], acc[1]), std::max(acc[2], acc[3]));
}

}  // namespace scalar

// ===========================================================================
// Runtime dispatch
// ===========================================================================

namespace {

bool use_avx2() {
#if defined(RELAY_HAVE_AVX2_BUILD)
    const char* forced = std::getenv("RELAY_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
        return false;
    }
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const bool kUseAvx2 = use_avx2();

}  // namespace

#if defined(RELAY_HAVE_AVX2_BUILD)
#define RELAY_SELECT(fn) (kUseAvx2 ? static_cast<decltype(&scalar::fn)>(&avx2::fn) : &scalar::fn)
#else
#define RELAY_SELECT(fn) (&scalar::fn)
#endif

const AxpyFn axpy = RELAY_SELECT(axpy);
const AxpbyFn axpby = RELAY_SELECT(axpby);
const AddScalarFn add_scalar = RELAY_SELECT(add_scalar);
const ScaleFn scale = RELAY_SELECT(scale);
const MinInplaceFn min_inplace = RELAY_SELECT(min_inplace);
const MinUpdateFn min_update = RELAY_SELECT(min_update);
const SumFn sum = RELAY_SELECT(sum);
const DotFn dot = RELAY_SELECT(dot);
const DotGatherFn dot_gather = RELAY_SELECT(dot_gather);
const L1DiffFn l1_diff = RELAY_SELECT(l1_diff);
const MaxAbsDiffFn max_abs_diff = RELAY_SELECT(max_abs_diff);

#undef RELAY_SELECT

const char* active_backend() { return kUseAvx2 ? "avx2" : "scalar"; }

}  // namespace relay::simd
