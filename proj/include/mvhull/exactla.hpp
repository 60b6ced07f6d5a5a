// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact linear algebra over Q and over subgroups of (1/den)Z^m.
//
// Everything here is integer or rational arithmetic; there is no floating
// point. The routines are sized for small ambient dimensions (m <= 8 or so):
// sign-region enumeration is exponential in m.

#include "mvhull/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mvhull::la {

using IntRow = std::vector<Int>;

/// Subgroup of Q^m presented as (1/den) * rowspace_Z(basis), with `basis` in
/// row Hermite normal form: pivots strictly increase left to right, pivot
/// entries are positive, entries above a pivot are reduced into [0, pivot).
/// `den` is minimal, so two equal lattices have identical representations.
class IntegerLattice {
public:
    /// Zero lattice in Q^m.
    explicit IntegerLattice(std::size_t m = 0) : dim_(m) {}

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    const Int& den() const noexcept { return den_; }
    const std::vector<IntRow>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// Basis row i as a rational vector (row / den).
    QVector basis_vector(std::size_t i) const;
    std::vector<QVector> basis_vectors() const;

    /// Lattice generated by this one together with `extra`.
    IntegerLattice extended(std::span<const QVector> extra) const;

    friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

private:
    friend IntegerLattice hnf_generate(std::span<const QVector>, std::size_t);

    std::size_t dim_ = 0;
    Int den_ = 1;
    std::vector<IntRow> basis_;
    std::vector<std::size_t> pivots_;
};

/// Subgroup of Q^m generated by `vectors`. An empty list yields the zero
/// lattice of dimension `m`; otherwise `m` must match the vector lengths
/// (pass 0 to take it from the first vector).
IntegerLattice hnf_generate(std::span<const QVector> vectors, std::size_t m = 0);

/// Integer coordinates of `v` over the HNF basis, or nullopt if v is not in L.
std::optional<std::vector<Int>> lattice_member(const IntegerLattice& lattice, const QVector& v);

/// Rational coordinates of `v` over `basis`, or nullopt if v is outside the
/// Q-span. Throws Invariant if `basis` is linearly dependent.
std::optional<std::vector<Rat>> span_solve(std::span<const QVector> basis, const QVector& v);

/// Reduced row echelon basis of the Q-span. Canonical: two generating sets
/// of the same subspace give identical output.
std::vector<QVector> rref_basis(std::span<const QVector> vectors, std::size_t m = 0);

/// Rank over Q.
std::size_t rank(std::span<const QVector> vectors);

enum class Sign : signed char { Neg = -1, Zero = 0, Pos = 1 };

char sign_char(Sign s) noexcept;

/// Open cell of a subspace V cut by the coordinate hyperplanes, full
/// dimensional relative to V.
struct SignRegion {
    std::vector<Sign> signs;
    /// Interior point of the cell, lying in V.
    QVector witness;

    std::string signature() const;
};

/// All full-dimensional cells of span(basis) under the arrangement
/// {x_i = 0}. Coordinates vanishing identically on the span carry Sign::Zero.
/// Regions are ordered lexicographically with + before -. The zero subspace
/// has no regions.
std::vector<SignRegion> sign_regions(std::span<const QVector> basis);

/// Exact feasibility of the strict homogeneous system a_j . t > 0 by
/// Fourier-Motzkin elimination. Returns an interior point when feasible.
std::optional<std::vector<Rat>> strict_cone_point(std::span<const std::vector<Rat>> constraints, std::size_t vars);

}  // namespace mvhull::la
