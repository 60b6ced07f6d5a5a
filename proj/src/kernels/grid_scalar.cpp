// SPDX-License-Identifier: Apache-2.0
#include "mvhull/kernels.hpp"

#include <algorithm>

namespace mvhull::simd {

namespace {

void oplus_rows_scalar(const std::int32_t* x, const std::int32_t* rows, std::size_t count, std::size_t stride,
                       std::int32_t den, std::int32_t* out) {
    for (std::size_t r = 0; r < count; ++r) {
        const std::int32_t* y = rows + r * stride;
        std::int32_t* o = out + r * stride;
        for (std::size_t i = 0; i < stride; ++i) o[i] = std::min(den, x[i] + y[i]);
    }
}

void complement_scalar(const std::int32_t* x, std::size_t m, std::size_t stride, std::int32_t den,
                       std::int32_t* out) {
    for (std::size_t i = 0; i < stride; ++i) out[i] = i < m ? den - x[i] : 0;
}

void support_within_rows_scalar(const std::int32_t* b, const std::int32_t* rows, std::size_t count,
                                std::size_t stride, std::uint8_t* mask) {
    for (std::size_t r = 0; r < count; ++r) {
        const std::int32_t* a = rows + r * stride;
        bool nonzero = false;
        bool inside = true;
        for (std::size_t i = 0; i < stride; ++i) {
            if (a[i] != 0) {
                nonzero = true;
                if (b[i] == 0) inside = false;
            }
        }
        mask[r] = nonzero && inside ? 1 : 0;
    }
}

bool leq_scalar(const std::int32_t* a, const std::int32_t* b, std::size_t stride) {
    for (std::size_t i = 0; i < stride; ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

}  // namespace

const GridKernels& scalar_kernels() noexcept {
    static const GridKernels k{
        "scalar", &oplus_rows_scalar, &complement_scalar, &support_within_rows_scalar, &leq_scalar,
    };
    return k;
}

}  // namespace mvhull::simd
