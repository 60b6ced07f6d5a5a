// SPDX-License-Identifier: Apache-2.0
#include "mvhull/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#define MVHULL_AVX2 __attribute__((target("avx2")))

namespace mvhull::simd {

namespace {

static_assert(kLanes == 8, "one __m256i per lane block");

MVHULL_AVX2 inline __m256i load(const std::int32_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

MVHULL_AVX2 inline void store(std::int32_t* p, __m256i v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

MVHULL_AVX2 void oplus_rows_avx2(const std::int32_t* x, const std::int32_t* rows, std::size_t count,
                                 std::size_t stride, std::int32_t den, std::int32_t* out) {
    const __m256i vden = _mm256_set1_epi32(den);
    if (stride == kLanes) {
        const __m256i vx = load(x);
        for (std::size_t r = 0; r < count; ++r) {
            store(out + r * kLanes, _mm256_min_epi32(vden, _mm256_add_epi32(vx, load(rows + r * kLanes))));
        }
        return;
    }
    for (std::size_t r = 0; r < count; ++r) {
        const std::int32_t* y = rows + r * stride;
        std::int32_t* o = out + r * stride;
        for (std::size_t i = 0; i < stride; i += kLanes) {
            store(o + i, _mm256_min_epi32(vden, _mm256_add_epi32(load(x + i), load(y + i))));
        }
    }
}

MVHULL_AVX2 void complement_avx2(const std::int32_t* x, std::size_t m, std::size_t stride, std::int32_t den,
                                 std::int32_t* out) {
    const __m256i vden = _mm256_set1_epi32(den);
    const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
    for (std::size_t i = 0; i < stride; i += kLanes) {
        const __m256i limit = _mm256_set1_epi32(static_cast<std::int32_t>(m > i ? m - i : 0));
        const __m256i live = _mm256_cmpgt_epi32(limit, lane);
        store(out + i, _mm256_and_si256(live, _mm256_sub_epi32(vden, load(x + i))));
    }
}

MVHULL_AVX2 void support_within_rows_avx2(const std::int32_t* b, const std::int32_t* rows, std::size_t count,
                                          std::size_t stride, std::uint8_t* mask) {
    const __m256i zero = _mm256_setzero_si256();
    for (std::size_t r = 0; r < count; ++r) {
        const std::int32_t* a = rows + r * stride;
        __m256i any = zero;
        __m256i escape = zero;
        for (std::size_t i = 0; i < stride; i += kLanes) {
            const __m256i va = load(a + i);
            const __m256i a_nz = _mm256_xor_si256(_mm256_cmpeq_epi32(va, zero), _mm256_set1_epi32(-1));
            const __m256i b_z = _mm256_cmpeq_epi32(load(b + i), zero);
            any = _mm256_or_si256(any, a_nz);
            escape = _mm256_or_si256(escape, _mm256_and_si256(a_nz, b_z));
        }
        const bool nonzero = !_mm256_testz_si256(any, any);
        const bool inside = _mm256_testz_si256(escape, escape);
        mask[r] = nonzero && inside ? 1 : 0;
    }
}

MVHULL_AVX2 bool leq_avx2(const std::int32_t* a, const std::int32_t* b, std::size_t stride) {
    for (std::size_t i = 0; i < stride; i += kLanes) {
        const __m256i gt = _mm256_cmpgt_epi32(load(a + i), load(b + i));
        if (!_mm256_testz_si256(gt, gt)) return false;
    }
    return true;
}

}  // namespace

const GridKernels* avx2_kernels() noexcept {
    static const GridKernels k{
        "avx2", &oplus_rows_avx2, &complement_avx2, &support_within_rows_avx2, &leq_avx2,
    };
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &k : nullptr;
}

}  // namespace mvhull::simd

#else

namespace mvhull::simd {

const GridKernels* avx2_kernels() noexcept { return nullptr; }

}  // namespace mvhull::simd

#endif
