#pragma once

#include <cstddef>
#include <cstdint>

// Vector kernels behind the solver's inner loops. Every kernel has a scalar
// reference implementation and, on x86-64 builds, an AVX2+FMA variant picked
// at runtime. Both variants perform the same IEEE operations in the same
// order (explicit fma, 4-lane accumulator split, fixed reduction tree), so
// their results are bit-identical; the equivalence tests assert exact
// equality, not a tolerance.
//
// Set RELAY_SIMD=scalar in the environment to force the scalar path.

namespace relay::simd {

// dst[i] += a * x[i]
using AxpyFn = void (*)(double* dst, double a, const double* x, std::size_t n);
// dst[i] = a * x[i] + b * dst[i]
using AxpbyFn = void (*)(double* dst, double a, const double* x, double b, std::size_t n);
// dst[i] = x[i] + b
using AddScalarFn = void (*)(double* dst, const double* x, double b, std::size_t n);
// dst[i] *= a
using ScaleFn = void (*)(double* dst, double a, std::size_t n);
// vmin[i] = min(vmin[i], q[i])
using MinInplaceFn = void (*)(double* vmin, const double* q, std::size_t n);
// where q[i] < vmin[i]: vmin[i] = q[i], amin[i] = code
using MinUpdateFn = void (*)(double* vmin, double* amin, const double* q, double code,
                             std::size_t n);
// sum_i x[i]
using SumFn = double (*)(const double* x, std::size_t n);
// sum_i x[i] * y[i]
using DotFn = double (*)(const double* x, const double* y, std::size_t n);
// sum_i x[idx[i]] * w[i]
using DotGatherFn = double (*)(const double* x, const std::int32_t* idx, const double* w,
                               std::size_t n);
// sum_i |x[i] - y[i]|
using L1DiffFn = double (*)(const double* x, const double* y, std::size_t n);
// max_i |x[i] - y[i]|
using MaxAbsDiffFn = double (*)(const double* x, const double* y, std::size_t n);

extern const AxpyFn axpy;
extern const AxpbyFn axpby;
extern const AddScalarFn add_scalar;
extern const ScaleFn scale;
extern const MinInplaceFn min_inplace;
extern const MinUpdateFn min_update;
extern const SumFn sum;
extern const DotFn dot;
extern const DotGatherFn dot_gather;
extern const L1DiffFn l1_diff;
extern const MaxAbsDiffFn max_abs_diff;

/// Name of the variant the dispatcher selected ("avx2" or "scalar").
const char* active_backend();

namespace scalar {
void axpy(double* dst, double a, const double* x, std::size_t n);
void axpby(double* dst, double a, const double* x, double b, std::size_t n);
void add_scalar(double* dst, const double* x, double b, std::size_t n);
void scale(double* dst, double a, std::size_t n);
void min_inplace(double* vmin, const double* q, std::size_t n);
void min_update(double* vmin, double* amin, const double* q, double code, std::size_t n);
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double dot_gather(const double* x, const std::int32_t* idx, const double* w, std::size_t n);
double l1_diff(const double* x, const double* y, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);
}  // namespace scalar

#if defined(RELAY_HAVE_AVX2_BUILD)
namespace avx2 {
void axpy(double* dst, double a, const double* x, std::size_t n);
void axpby(double* dst, double a, const double* x, double b, std::size_t n);
void add_scalar(double* dst, const double* x, double b, std::size_t n);
void scale(double* dst, double a, std::size_t n);
void min_inplace(double* vmin, const double* q, std::size_t n);
void min_update(double* vmin, double* amin, const double* q, double code, std::size_t n);
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double dot_gather(const double* x, const std::int32_t* idx, const double* w, std::size_t n);
double l1_diff(const double* x, const double* y, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace relay::simd
