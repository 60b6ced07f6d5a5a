// SPDX-License-Identifier: Apache-2.0
#pragma once

// Riesz hulls of finite grid algebras.
//
// The hull is computed on the lattice-ordered group side. For an algebra A
// over m points, G = <A u {1}> is the l-subgroup of Q^m generated by A and
// the unit; the hull is Gamma_R(R (x) G, 1). No order completion is ever
// materialized: over a finite point set the real span of G is already
// closed under the lattice operations (x+ is linear on every sign region of
// the span, and G is closed under each of those linear projections), so
// it is a Riesz subspace containing A and generated by A, and hence is the
// Riesz hull up to isomorphism.
//
// Elements of the hull are exposed through its rational skeleton: rational
// vectors of the Q-span of G lying in [0,1]^m. Real-coefficient elements
// are coordinate tuples over `span_basis`; no irrational arithmetic exists.

#include "mvhull/exactla.hpp"
#include "mvhull/mvcore.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace mvhull::hull {

/// l-subgroup of Q^m with the constant-1 strong unit.
struct UnitalLGroup {
    mv::PointSet ambient;
    la::IntegerLattice lattice;
    QVector unit;
};

/// One vector added by the positive-part closure, with the data exhibiting
/// it as an l-group term: added = (base + factor*anchor)+ - factor*anchor+,
/// where base and anchor were already in the group.
struct ClosureStep {
    QVector base;
    QVector anchor;
    Int factor;
    QVector added;
};

struct LGroupTrace {
    std::vector<ClosureStep> steps;
    std::size_t rounds = 0;
};

/// P_sigma(v): keeps coordinates positive on the region, zeroes the rest.
QVector region_projection(const la::SignRegion& region, const QVector& v);

/// G = <A u {1}>: HNF of A u {1}, then saturation under P_sigma(b) over
/// every full-dimensional sign region sigma of the span and every basis
/// vector b until nothing new appears.
UnitalLGroup lgroup_generate(const mv::GridAlgebra& a, LGroupTrace* trace = nullptr);

/// Saturates an arbitrary subgroup of Q^m under the region projections.
/// The result is the l-subgroup generated by `start`.
la::IntegerLattice positive_part_closure(const la::IntegerLattice& start, LGroupTrace* trace = nullptr);

/// positive_part_closure for a subgroup that contains the unit.
UnitalLGroup lgroup_close(const mv::PointSet& points, const la::IntegerLattice& start, LGroupTrace* trace = nullptr);

/// Checks P_sigma(b) in H for every region and basis vector.
bool positive_part_closed(const la::IntegerLattice& lattice);

/// Gamma(G, 1) = G n [0,1]^m, enumerated by walking the HNF rows.
mv::GridAlgebra gamma_unit(const UnitalLGroup& g);

/// a = (a_1 + ... + a_n) / n with every a_i in the base algebra.
struct AverageCertificate {
    std::uint64_t n = 1;
    std::vector<QVector> parts;
};

/// G_d = Q-span of G, and A_d = G_d n [0,1]^m.
class DivisibleHull {
public:
    explicit DivisibleHull(UnitalLGroup base);

    const UnitalLGroup& base() const noexcept { return base_; }
    const std::vector<QVector>& span_basis() const noexcept { return span_basis_; }

    /// v in G_d.
    bool member(const QVector& v) const;

    /// Least n with n*v in G and the split a_i = ((n*v - (i-1)) v 0) ^ 1.
    /// Requires v in [0,1]^m; throws NotInHull when v is outside A_d.
    AverageCertificate decompose_average(const QVector& v) const;

    /// Gamma((1/k) G, 1): a finite subalgebra of A_d containing A.
    mv::GridAlgebra refinement(std::uint32_t k) const;

private:
    UnitalLGroup base_;
    std::vector<QVector> span_basis_;
};

class RieszHull {
public:
    const mv::GridAlgebra& base_algebra() const noexcept { return *base_; }
    std::shared_ptr<const mv::GridAlgebra> base_ptr() const noexcept { return base_; }
    const UnitalLGroup& lgroup() const noexcept { return lgroup_; }
    /// Canonical (reduced row echelon) Q-basis of the span of G.
    const std::vector<QVector>& span_basis() const noexcept { return span_basis_; }
    const QVector& unit() const noexcept { return lgroup_.unit; }
    std::size_t dim() const noexcept { return base_->dim(); }
    /// Points whose values determine a skeleton element (RREF pivots).
    std::vector<std::size_t> pivot_points() const;

    /// Rational coordinates over span_basis when v is in the Q-span.
    std::optional<std::vector<Rat>> coordinates(const QVector& v) const;
    /// v in the rational skeleton: in the Q-span and inside [0,1]^m.
    bool member(const QVector& v) const;

    // Skeleton operations; non-member operands raise NotInHull.
    QVector oplus(const QVector& a, const QVector& b) const;
    QVector neg(const QVector& a) const;
    /// q * a for a rational scalar q in [0,1].
    QVector scalar(const Rat& q, const QVector& a) const;

    /// Random skeleton element (deterministic given the generator state).
    QVector sample(std::mt19937_64& rng, bool nonzero) const;

private:
    friend RieszHull riesz_hull(std::shared_ptr<const mv::GridAlgebra> a);
    void require(const QVector& v) const;

    std::shared_ptr<const mv::GridAlgebra> base_;
    UnitalLGroup lgroup_;
    std::vector<QVector> span_basis_;
};

RieszHull riesz_hull(std::shared_ptr<const mv::GridAlgebra> a);
RieszHull riesz_hull(const mv::GridAlgebra& a);

/// Witness that the embedding of A in its hull is essential: a nonzero
/// a in A with a <= n*b. Picks the smallest support, then the
/// lexicographically smallest a; n is minimal.
struct EssentialWitness {
    QVector a;
    std::uint64_t n = 1;
};

EssentialWitness essential_witness(const RieszHull& hull, const QVector& b);

/// Map between skeletons given by precomposition with a point selection:
/// out[y] = v[pick[y]].
struct SkeletonMap {
    std::size_t source_dim = 0;
    std::vector<std::size_t> pick;

    QVector operator()(const QVector& v) const;
    /// this o inner.
    SkeletonMap after(const SkeletonMap& inner) const;
    friend bool operator==(const SkeletonMap&, const SkeletonMap&) = default;
};

/// MV-homomorphism from a grid algebra into the skeleton of a hull,
/// presented as a point map (target point -> source class).
struct HullHom {
    std::shared_ptr<const mv::GridAlgebra> source;
    std::shared_ptr<const RieszHull> target;
    std::vector<std::size_t> map;

    QVector apply(const QVector& a) const;
};

/// Throws NotHom unless every generator of the source lands in the target
/// skeleton.
void validate(const HullHom& f);

/// Extension of f to the whole hull of its source, by linear extension over
/// a Q-basis drawn from the source algebra itself. Agrees with the
/// precomposition extension exactly when the extension is unique.
class LinearExtension {
public:
    explicit LinearExtension(const HullHom& f);
    QVector operator()(const QVector& v) const;
    const std::vector<QVector>& basis() const noexcept { return basis_; }

private:
    std::vector<QVector> basis_;
    std::vector<QVector> images_;
};

struct Extension {
    HullHom hom;
    /// f_R on the skeleton of R(source).
    SkeletonMap map;
    /// Generator images f(g) in source order.
    std::vector<QVector> generator_images;
    bool restricts_to_f = false;
    bool scalar_compatible = false;
    /// The precomposition and linear-extension routes agree on the span basis.
    bool unique_on_span = false;
};

/// Unique extension f_R : R(A) -> V of f : A -> U(V). Checks f_R o iota = f
/// on every element of A, scalar compatibility on a seeded sample, and the
/// agreement of two independent constructions on the span basis.
Extension extend_hom(const HullHom& f, std::uint64_t seed = 0);

struct FunctorImage {
    std::shared_ptr<const RieszHull> source_hull;
    std::shared_ptr<const RieszHull> target_hull;
    SkeletonMap map;
    bool square_commutes = false;
    bool source_is_embedding = false;
    /// Rank of R(h) applied to span_basis of R(A), and dim R(A).
    std::size_t image_rank = 0;
    std::size_t source_rank = 0;
    bool injective = false;
};

/// R(h) = (iota_B o h)_R for h : A -> B.
FunctorImage hull_functor(const mv::PointMapHom& h);

struct AdjunctionReport {
    bool unit_ok = false;            // eta_A = iota_A lands in U(R(A))
    bool counit_ok = false;          // R(U(V)) and V have the same span
    bool triangle_left = false;      // eps_R(A) o R(eta_A) = id
    bool triangle_right = false;     // U(eps_V) o eta_U(V) = id
    bool idempotent = false;         // hull of Gamma(G_V) reproduces V's span
    bool homset_bijection = false;   // Hom(R(A), V) ~ Hom(A, U(V))
    std::size_t homs_checked = 0;

    bool all() const noexcept {
        return unit_ok && counit_ok && triangle_left && triangle_right && idempotent && homset_bijection;
    }
};

AdjunctionReport adjunction_check(std::shared_ptr<const mv::GridAlgebra> a, std::shared_ptr<const RieszHull> v,
                                  std::uint64_t seed = 0);

}  // namespace mvhull::hull
