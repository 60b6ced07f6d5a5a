// SPDX-License-Identifier: Apache-2.0
#pragma once

// Integer grid kernels for MV-algebra elements.
//
// An element of a grid algebra with denominator d is stored as its vector of
// numerators in {0..d}, padded with zeros to a multiple of kLanes. Every
// kernel exists as a portable scalar reference and, on x86-64, an AVX2
// variant; `active()` picks one at runtime. Both variants must produce
// bit-identical results.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mvhull::simd {

inline constexpr std::size_t kLanes = 8;

constexpr std::size_t padded_stride(std::size_t m) noexcept {
    return (m + kLanes - 1) / kLanes * kLanes;
}

struct GridKernels {
    std::string_view name;

    /// out[r] = min(den, x + rows[r]) lane-wise, for r < count.
    void (*oplus_rows)(const std::int32_t* x, const std::int32_t* rows, std::size_t count,
                       std::size_t stride, std::int32_t den, std::int32_t* out);

    /// out = den - x on the first m lanes, 0 on padding.
    void (*complement)(const std::int32_t* x, std::size_t m, std::size_t stride, std::int32_t den,
                       std::int32_t* out);

    /// mask[r] = 1 iff rows[r] is nonzero and supp(rows[r]) is inside supp(b).
    void (*support_within_rows)(const std::int32_t* b, const std::int32_t* rows, std::size_t count,
                                std::size_t stride, std::uint8_t* mask);

    /// a <= b lane-wise.
    bool (*leq)(const std::int32_t* a, const std::int32_t* b, std::size_t stride);
};

const GridKernels& scalar_kernels() noexcept;

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2.
const GridKernels* avx2_kernels() noexcept;

/// AVX2 when available, scalar otherwise. Setting MVHULL_KERNELS=scalar in
/// the environment forces the reference path.
const GridKernels& active() noexcept;

}  // namespace mvhull::simd
