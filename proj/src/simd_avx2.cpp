#include "relay/simd_kernels.hpp"

#if defined(RELAY_HAVE_AVX2_BUILD)

#include <immintrin.h>

#include <cmath>

// AVX2 + FMA variants. Lane j of a 256-bit accumulator holds element 4k + j,
// tails continue the same lane assignment in scalar code, and reductions
// combine as (lane0 + lane1) + (lane2 + lane3), matching the scalar
// reference bit for bit.

namespace relay::simd::avx2 {

namespace {

inline double reduce_add(__m256d acc, const double* tail_x, const double* tail_w,
                         std::size_t tail_n, bool fma_tail) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (std::size_t i = 0; i < tail_n; ++i) {
        lanes[i] = fma_tail ? std::fma(tail_x[i], tail_w[i], lanes[i]) : lanes[i] + tail_x[i];
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

void axpy(double* dst, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        const __m256d vd = _mm256_loadu_pd(dst + i);
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(va, vx, vd));
    }
    for (std::size_t i = k; i < n; ++i) {
        dst[i] = std::fma(a, x[i], dst[i]);
    }
}

void axpby(double* dst, double a, const double* x, double b, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        const __m256d vd = _mm256_mul_pd(vb, _mm256_loadu_pd(dst + i));
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(va, vx, vd));
    }
    for (std::size_t i = k; i < n; ++i) {
        dst[i] = std::fma(a, x[i], b * dst[i]);
    }
}

void add_scalar(double* dst, const double* x, double b, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(b);
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(x + i), vb));
    }
    for (std::size_t i = k; i < n; ++i) {
        dst[i] = x[i] + b;
    }
}

void scale(double* dst, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(va, _mm256_loadu_pd(dst + i)));
    }
    for (std::size_t i = k; i < n; ++i) {
        dst[i] *= a;
    }
}

void min_inplace(double* vmin, const double* q, std::size_t n) {
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        const __m256d vm = _mm256_loadu_pd(vmin + i);
        const __m256d vq = _mm256_loadu_pd(q + i);
        _mm256_storeu_pd(vmin + i, _mm256_min_pd(vm, vq));
    }
    for (std::size_t i = k; i < n; ++i) {
        if (q[i] < vmin[i]) {
            vmin[i] = q[i];
        }
    }
}

void min_update(double* vmin, double* amin, const double* q, double code, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(code);
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        const __m256d vm = _mm256_loadu_pd(vmin + i);
        const __m256d vq = _mm256_loadu_pd(q + i);
        const __m256d mask = _mm256_cmp_pd(vq, vm, _CMP_LT_OQ);
        _mm256_storeu_pd(vmin + i, _mm256_blendv_pd(vm, vq, mask));
        const __m256d va = _mm256_loadu_pd(amin + i);
        _mm256_storeu_pd(amin + i, _mm256_blendv_pd(va, vc, mask));
    }
    for (std::size_t i = k; i < n; ++i) {
        if (q[i] < vmin[i]) {
            vmin[i] = q[i];
            amin[i] = code;
        }
    }
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    return reduce_add(acc, x + k, nullptr, n - k, false);
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    return reduce_add(acc, x + k, y + k, n - k, true);
}

double dot_gather(const double* x, const std::int32_t* idx, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
        const __m256d vx = _mm256_i32gather_pd(x, vi, 8);
        acc = _mm256_fmadd_pd(vx, _mm256_loadu_pd(w + i), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (std::size_t i = k; i < n; ++i) {
        lanes[i - k] = std::fma(x[idx[i]], w[i], lanes[i - k]);
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double l1_diff(const double* x, const double* y, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (std::size_t i = k; i < n; ++i) {
        lanes[i - k] += std::fabs(x[i] - y[i]);
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    const std::size_t k = n & ~std::size_t{3};
    for (std::size_t i = 0; i < k; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (std::size_t i = k; i < n; ++i) {
        lanes[i - k] = std::max(lanes[i - k], std::fabs(x[i] - y[i]));
    }
    return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

}  // namespace relay::simd::avx2

#endif  // RELAY_HAVE_AVX2_BUILD
