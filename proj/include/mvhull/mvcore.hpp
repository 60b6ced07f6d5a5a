// SPDX-License-Identifier: Apache-2.0
#pragma once

// Finite semisimple MV-algebras realized as subalgebras of [0,1]^X for a
// finite point set X, with entries on the grid {0, 1/d, ..., 1}.
//
// Homomorphisms between such algebras are point maps: h(a) = a o map, where
// `map` sends each target point to a point class of the source. For finite
// function algebras every homomorphism into [0,1] is evaluation at a point
// class, so nothing is lost by this representation.

#include "mvhull/kernels.hpp"
#include "mvhull/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mvhull::mv {

class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<std::string> labels);

    /// x1, x2, ..., xm.
    static PointSet numbered(std::size_t m, const std::string& prefix = "x");

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::optional<std::size_t> index_of(const std::string& label) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::vector<std::string> labels_;
};

// Pointwise Lukasiewicz operations on [0,1]^m. Entries outside [0,1] raise
// a Domain error.
QVector oplus(const QVector& a, const QVector& b);
QVector odot(const QVector& a, const QVector& b);
QVector neg(const QVector& a);
QVector join(const QVector& a, const QVector& b);
QVector meet(const QVector& a, const QVector& b);
/// n-fold truncated sum: 0a = 0, na = (n-1)a (+) a.
QVector nat_mul(std::uint32_t n, const QVector& a);

/// Points grouped by "every element agrees". Classes are ordered by their
/// smallest member point.
struct PointClasses {
    std::vector<std::vector<std::size_t>> members;
    std::vector<std::size_t> class_of;

    std::size_t count() const noexcept { return members.size(); }
    std::size_t representative(std::size_t cls) const { return members[cls].front(); }
};

class GridAlgebra {
public:
    /// The MV-subalgebra of [0,1]^points generated by `generators`; every
    /// generator entry must lie on the grid {0, 1/den, ..., 1}.
    static GridAlgebra generate(PointSet points, std::int64_t den, std::vector<QVector> generators);

    /// Wraps an element set already known to be closed. The set is checked
    /// for closure under (+) and negation; a failure raises Invariant.
    static GridAlgebra from_closed_set(PointSet points, std::int64_t den, std::vector<QVector> elements);

    const PointSet& points() const noexcept { return points_; }
    std::size_t dim() const noexcept { return points_.size(); }
    std::int32_t den() const noexcept { return den_; }
    const std::vector<QVector>& generators() const noexcept { return generators_; }

    std::size_t size() const noexcept { return count_; }
    /// Elements in lexicographic order.
    QVector element(std::size_t i) const;
    std::vector<QVector> elements() const;
    bool contains(const QVector& v) const;

    /// Numerator row of element i (length stride(), zero padded).
    std::span<const std::int32_t> row(std::size_t i) const {
        return {cells_.data() + i * stride_, stride_};
    }
    std::span<const std::int32_t> cells() const noexcept { return cells_; }
    std::size_t stride() const noexcept { return stride_; }

    /// Numerator encoding of an arbitrary vector, or nullopt if it is off
    /// this algebra's grid.
    std::optional<std::vector<std::int32_t>> encode(const QVector& v) const;

    const PointClasses& classes() const noexcept { return classes_; }

private:
    GridAlgebra() = default;
    void finish(std::vector<std::int32_t> cells, std::size_t count);
    std::optional<std::size_t> find(std::span<const std::int32_t> key) const;

    PointSet points_;
    std::int32_t den_ = 1;
    std::vector<QVector> generators_;
    std::size_t stride_ = 0;
    std::size_t count_ = 0;
    std::vector<std::int32_t> cells_;
    PointClasses classes_;
};

/// Ideal {a : a(x) = 0 for every point x outside zero_classes}. The classes
/// listed are the ones collapsed to zero by the quotient. Sorted, unique.
struct IdealDescriptor {
    std::vector<std::size_t> zero_classes;

    bool contains(const GridAlgebra& a, const QVector& v) const;
    friend bool operator==(const IdealDescriptor&, const IdealDescriptor&) = default;
    friend auto operator<=>(const IdealDescriptor&, const IdealDescriptor&) = default;
};

struct Spectrum {
    PointClasses classes;
    /// maximal_ideals[c] is M_c = {a : a vanishes on class c}.
    std::vector<IdealDescriptor> maximal_ideals;
    /// Elements lying in every maximal ideal.
    std::vector<QVector> radical;
};

Spectrum max_spectrum(const GridAlgebra& a);

/// Chain lengths n_c with {a(x) : a in A} = {0, 1/n_c, ..., 1} for each
/// class c, in class order. Throws Invariant if |A| != prod(n_c + 1).
std::vector<std::int64_t> chain_decomposition(const GridAlgebra& a);

/// A/I, restricted to the points of the classes outside I.zero_classes.
/// Quotienting by the improper ideal raises Domain.
GridAlgebra quotient(const GridAlgebra& a, const IdealDescriptor& ideal);

struct PointMapHom {
    std::shared_ptr<const GridAlgebra> source;
    std::shared_ptr<const GridAlgebra> target;
    /// map[y] = source class assigned to target point y.
    std::vector<std::size_t> map;

    /// Image of a source-length vector: (a o map)(y) = a(rep(map[y])).
    QVector apply(const QVector& a) const;
};

/// Precomposition of a source vector with a class map, without requiring
/// the target to be a grid algebra.
QVector precompose(const PointClasses& source_classes, std::span<const std::size_t> map, const QVector& a);

struct HomCheck {
    bool is_embedding = false;
    bool is_essential = false;
};

/// Validates h (every generator lands in the target) and reports the
/// embedding and essentiality flags. Throws NotHom on an invalid map.
HomCheck hom_check(const PointMapHom& h);

/// g o h for h: A -> B, g: B -> C.
PointMapHom compose(const PointMapHom& g, const PointMapHom& h);

/// Identity homomorphism on A.
PointMapHom identity_hom(std::shared_ptr<const GridAlgebra> a);

}  // namespace mvhull::mv
