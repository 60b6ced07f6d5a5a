// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mvhull/kernels.hpp"
#include "support/oracles.hpp"

#include <vector>

using namespace mvhull::simd;

namespace {

struct Batch {
    std::size_t m, stride, count;
    std::int32_t den;
    std::vector<std::int32_t> x, rows;
};

// Random numerator rows with zeroed padding, as the algebra stores them.
Batch make_batch(std::mt19937_64& rng) {
    Batch b;
    b.m = static_cast<std::size_t>(mvtest::uniform(rng, 1, 29));
    b.stride = padded_stride(b.m);
    b.count = static_cast<std::size_t>(mvtest::uniform(rng, 0, 37));
    b.den = static_cast<std::int32_t>(mvtest::uniform(rng, 1, 60));
    auto fill = [&](std::vector<std::int32_t>& v, std::size_t n) {
        v.assign(n * b.stride, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t i = 0; i < b.m; ++i) {
                // Bias towards zeros so the support kernel sees both outcomes.
                const bool zero = mvtest::uniform(rng, 0, 2) == 0;
                v[r * b.stride + i] = zero ? 0 : static_cast<std::int32_t>(mvtest::uniform(rng, 0, b.den));
            }
    };
    fill(b.x, 1);
    fill(b.rows, b.count);
    return b;
}

// Reference semantics, written independently of both kernel variants.
std::vector<std::int32_t> ref_oplus(const Batch& b) {
    std::vector<std::int32_t> out(b.rows.size());
    for (std::size_t r = 0; r < b.count; ++r)
        for (std::size_t i = 0; i < b.stride; ++i)
            out[r * b.stride + i] = std::min(b.den, b.x[i] + b.rows[r * b.stride + i]);
    return out;
}

std::vector<std::uint8_t> ref_support(const Batch& b) {
    std::vector<std::uint8_t> out(b.count);
    for (std::size_t r = 0; r < b.count; ++r) {
        bool nonzero = false, inside = true;
        for (std::size_t i = 0; i < b.m; ++i) {
            const auto v = b.rows[r * b.stride + i];
            nonzero |= v != 0;
            if (v != 0 && b.x[i] == 0) inside = false;
        }
        out[r] = nonzero && inside;
    }
    return out;
}

void check_against_reference(const GridKernels& k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int iter = 0; iter < 400; ++iter) {
        const Batch b = make_batch(rng);

        std::vector<std::int32_t> sum(b.rows.size(), -1);
        k.oplus_rows(b.x.data(), b.rows.data(), b.count, b.stride, b.den, sum.data());
        CHECK(sum == ref_oplus(b));

        std::vector<std::int32_t> comp(b.stride, -1);
        k.complement(b.x.data(), b.m, b.stride, b.den, comp.data());
        for (std::size_t i = 0; i < b.stride; ++i) CHECK(comp[i] == (i < b.m ? b.den - b.x[i] : 0));

        std::vector<std::uint8_t> mask(b.count, 7);
        k.support_within_rows(b.x.data(), b.rows.data(), b.count, b.stride, mask.data());
        CHECK(mask == ref_support(b));

        for (std::size_t r = 0; r < b.count; ++r) {
            const std::int32_t* row = b.rows.data() + r * b.stride;
            bool le = true;
            for (std::size_t i = 0; i < b.stride; ++i) le &= row[i] <= b.x[i];
            CHECK(k.leq(row, b.x.data(), b.stride) == le);
        }
    }
}

}  // namespace

TEST_CASE("scalar kernels match the reference semantics") {
    check_against_reference(scalar_kernels(), 21);
}

TEST_CASE("avx2 kernels match the reference semantics") {
    const GridKernels* k = avx2_kernels();
    if (!k) {
        MESSAGE("AVX2 unavailable on this machine; only the scalar path is exercised");
        return;
    }
    check_against_reference(*k, 21);
}

TEST_CASE("scalar and avx2 kernels are bit-identical") {
    const GridKernels* v = avx2_kernels();
    if (!v) return;
    const GridKernels& s = scalar_kernels();
    std::mt19937_64 rng(22);
    for (int iter = 0; iter < 400; ++iter) {
        const Batch b = make_batch(rng);
        std::vector<std::int32_t> o1(b.rows.size()), o2(b.rows.size());
        s.oplus_rows(b.x.data(), b.rows.data(), b.count, b.stride, b.den, o1.data());
        v->oplus_rows(b.x.data(), b.rows.data(), b.count, b.stride, b.den, o2.data());
        CHECK(o1 == o2);
        std::vector<std::uint8_t> m1(b.count), m2(b.count);
        s.support_within_rows(b.x.data(), b.rows.data(), b.count, b.stride, m1.data());
        v->support_within_rows(b.x.data(), b.rows.data(), b.count, b.stride, m2.data());
        CHECK(m1 == m2);
    }
}

TEST_CASE("dispatch picks a valid variant") {
    const GridKernels& k = active();
    CHECK((k.name == "scalar" || k.name == "avx2"));
    CHECK(padded_stride(1) == 8);
    CHECK(padded_stride(8) == 8);
    CHECK(padded_stride(9) == 16);
}
