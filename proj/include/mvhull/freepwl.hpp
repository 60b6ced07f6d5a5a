// SPDX-License-Identifier: Apache-2.0
#pragma once

// One-variable continuous piecewise-linear functions [0,1] -> [0,1] with
// rational breakpoints. McNaughton functions (integer slopes and
// intercepts on every piece) are the free MV-algebra on one generator;
// rational-coefficient ones form the rational skeleton of its Riesz hull.

#include "mvhull/rational.hpp"
#include "mvhull/term.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mvhull::pwl {

class PWL {
public:
    /// Nodes must increase strictly from 0 to 1; values must lie in [0,1].
    /// The result is canonical: collinear interior nodes are removed.
    PWL(std::vector<Rat> nodes, std::vector<Rat> values);

    static PWL identity();
    static PWL constant(const Rat& c);
    /// "p/q:r/s p/q:r/s ..." (commas or whitespace between pairs).
    static PWL parse(std::string_view text);

    const std::vector<Rat>& nodes() const noexcept { return nodes_; }
    const std::vector<Rat>& values() const noexcept { return values_; }
    std::size_t pieces() const noexcept { return nodes_.size() - 1; }

    Rat operator()(const Rat& x) const;
    /// Slope and intercept of piece i (between nodes i and i+1).
    Rat slope(std::size_t i) const;
    Rat intercept(std::size_t i) const;

    std::string str() const;
    friend bool operator==(const PWL&, const PWL&) = default;

private:
    std::vector<Rat> nodes_;
    std::vector<Rat> values_;
};

PWL oplus(const PWL& f, const PWL& g);
PWL odot(const PWL& f, const PWL& g);
PWL neg(const PWL& f);
PWL meet(const PWL& f, const PWL& g);
PWL join(const PWL& f, const PWL& g);
/// q * f for q in [0,1].
PWL scalar(const Rat& q, const PWL& f);
/// n-fold truncated sum.
PWL nat_mul(std::uint32_t n, const PWL& f);

bool is_mcnaughton(const PWL& f);

/// Interprets a term in at most one variable (any name) as a function of x.
PWL term_to_pwl(const term::Term& t);

struct FareySubdivision {
    std::vector<Rat> nodes;

    /// |p_i q_{i+1} - p_{i+1} q_i| = 1 for consecutive nodes.
    bool unimodular() const;
};

/// Smallest ancestor-closed set of Stern-Brocot nodes containing every
/// input, plus 0 and 1.
FareySubdivision regular_refine(std::span<const Rat> breakpoints);

/// Full-height tent at node i: 1 there, 0 at the neighbouring nodes.
PWL hat(const FareySubdivision& s, std::size_t i);

struct Decomposition {
    FareySubdivision subdivision;
    /// One per node; the function's value there.
    std::vector<Rat> coefficients;

    /// Plain sum of coefficient * hat.
    PWL reconstruct() const;
    /// Same sum taken with truncated addition (+).
    PWL reconstruct_truncated() const;
};

Decomposition schauder_decompose(const PWL& f);

}  // namespace mvhull::pwl
