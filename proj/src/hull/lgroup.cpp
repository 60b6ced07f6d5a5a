// SPDX-License-Identifier: Apache-2.0
#include "mvhull/error.hpp"
#include "mvhull/hull.hpp"

#include <algorithm>

namespace mvhull::hull {

namespace {

// Least n > 0 with n*v in the lattice, for v in its Q-span.
Int clearing_multiple(const la::IntegerLattice& lattice, const QVector& v) {
    const auto basis = lattice.basis_vectors();
    const auto coords = la::span_solve(basis, v);
    if (!coords) fail(ErrorCode::Invariant, "region witness left the span of the lattice");
    Int n = 1;
    for (const auto& c : *coords) {
        const Int d = c.den();
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    }
    return n;
}

ClosureStep explain(const la::IntegerLattice& lattice, const la::SignRegion& region, const QVector& base,
                    QVector added) {
    const QVector anchor = Rat(clearing_multiple(lattice, region.witness), 1) * region.witness;
    // factor*|anchor_i| must exceed |base_i| on every coordinate the region does not kill.
    Int factor = 1;
    for (std::size_t i = 0; i < anchor.size(); ++i) {
        if (anchor[i].is_zero()) continue;
        const Int q = (abs(base[i]) / abs(anchor[i])).floor() + 1;
        if (q > factor) factor = q;
    }
    return {base, anchor, factor, std::move(added)};
}

}  // namespace

QVector region_projection(const la::SignRegion& region, const QVector& v) {
    if (region.signs.size() != v.size()) fail(ErrorCode::Domain, "region and vector lengths differ");
    QVector out = v;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (region.signs[i] != la::Sign::Pos) out[i] = Rat{};
    }
    return out;
}

bool positive_part_closed(const la::IntegerLattice& lattice) {
    const auto basis = lattice.basis_vectors();
    for (const auto& region : la::sign_regions(basis)) {
        for (const auto& b : basis) {
            if (!la::lattice_member(lattice, region_projection(region, b))) return false;
        }
    }
    return true;
}

la::IntegerLattice positive_part_closure(const la::IntegerLattice& start, LGroupTrace* trace) {
    la::IntegerLattice h = start;
    std::size_t rounds = 0;
    while (true) {
        ++rounds;
        const auto basis = h.basis_vectors();
        std::vector<QVector> additions;
        std::vector<ClosureStep> steps;
        for (const auto& region : la::sign_regions(basis)) {
            for (const auto& b : basis) {
                QVector p = region_projection(region, b);
                if (la::lattice_member(h, p)) continue;
                if (std::find(additions.begin(), additions.end(), p) != additions.end()) continue;
                if (trace) steps.push_back(explain(h, region, b, p));
                additions.push_back(std::move(p));
            }
        }
        if (additions.empty()) break;
        if (trace) {
            std::sort(steps.begin(), steps.end(),
                      [](const ClosureStep& x, const ClosureStep& y) { return x.added < y.added; });
            trace->steps.insert(trace->steps.end(), steps.begin(), steps.end());
        }
        std::sort(additions.begin(), additions.end());
        h = h.extended(additions);
    }
    if (trace) trace->rounds = rounds;
    return h;
}

UnitalLGroup lgroup_close(const mv::PointSet& points, const la::IntegerLattice& start, LGroupTrace* trace) {
    const std::size_t m = points.size();
    QVector one = QVector::constant(m, Rat(1));
    if (start.ambient_dim() != m || !la::lattice_member(start, one)) {
        fail(ErrorCode::Domain, "starting subgroup must live over the point set and contain the unit");
    }
    return {points, positive_part_closure(start, trace), std::move(one)};
}

UnitalLGroup lgroup_generate(const mv::GridAlgebra& a, LGroupTrace* trace) {
    std::vector<QVector> gens = a.elements();
    gens.push_back(QVector::constant(a.dim(), Rat(1)));
    return lgroup_close(a.points(), la::hnf_generate(gens, a.dim()), trace);
}

mv::GridAlgebra gamma_unit(const UnitalLGroup& g) {
    const la::IntegerLattice& lat = g.lattice;
    const std::size_t m = lat.ambient_dim();
    const std::size_t r = lat.rank();
    const Int& top = lat.den();
    if (!top.fits_sint_p()) fail(ErrorCode::Domain, "lattice scale too large for a grid algebra");

    std::vector<QVector> found;
    la::IntRow w(m, Int(0));
    auto in_range = [&](std::size_t from, std::size_t to) {
        for (std::size_t j = from; j < to; ++j) {
            if (w[j] < 0 || w[j] > top) return false;
        }
        return true;
    };
    auto walk = [&](auto&& self, std::size_t i) -> void {
        if (i == r) {
            QVector v(m);
            for (std::size_t j = 0; j < m; ++j) v[j] = Rat(w[j], top);
            found.push_back(std::move(v));
            return;
        }
        const auto& row = lat.basis()[i];
        const std::size_t p = lat.pivots()[i];
        const std::size_t next = i + 1 < r ? lat.pivots()[i + 1] : m;
        const Int& a = row[p];
        // w[p] + c*a in [0, top].
        const Int lo = Rat(-w[p], a).ceil();
        const Int hi = Rat(top - w[p], a).floor();
        for (Int c = lo; c <= hi; ++c) {
            for (std::size_t j = p; j < m; ++j) w[j] += c * row[j];
            if (in_range(p, next)) self(self, i + 1);
            for (std::size_t j = p; j < m; ++j) w[j] -= c * row[j];
        }
    };
    if (r == 0 || in_range(0, lat.pivots()[0])) walk(walk, 0);
    return mv::GridAlgebra::from_closed_set(g.ambient, top.get_si(), std::move(found));
}

DivisibleHull::DivisibleHull(UnitalLGroup base) : base_(std::move(base)) {
    const auto basis = base_.lattice.basis_vectors();
    span_basis_ = la::rref_basis(basis, base_.ambient.size());
}

bool DivisibleHull::member(const QVector& v) const {
    if (v.size() != base_.ambient.size()) fail(ErrorCode::Domain, "vector length does not match the point set");
    return la::span_solve(span_basis_, v).has_value();
}

AverageCertificate DivisibleHull::decompose_average(const QVector& v) const {
    if (v.size() != base_.ambient.size()) fail(ErrorCode::Domain, "vector length does not match the point set");
    if (!in_unit_cube(v)) fail(ErrorCode::Domain, "vector " + v.str() + " is outside [0,1]^m");
    const auto basis = base_.lattice.basis_vectors();
    const auto coords = la::span_solve(basis, v);
    if (!coords) fail(ErrorCode::NotInHull, "vector " + v.str() + " is not in the divisible hull");
    Int n = 1;
    for (const auto& c : *coords) {
        const Int d = c.den();
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    }
    if (!n.fits_ulong_p()) fail(ErrorCode::Domain, "averaging length does not fit in 64 bits");
    AverageCertificate cert;
    cert.n = n.get_ui();
    const QVector nv = Rat(n, 1) * v;
    for (std::uint64_t i = 1; i <= cert.n; ++i) {
        QVector part = nv;
        const Rat shift(static_cast<long>(i - 1));
        for (auto& x : part) x = min(Rat(1), max(Rat(0), x - shift));
        cert.parts.push_back(std::move(part));
    }
    return cert;
}

mv::GridAlgebra DivisibleHull::refinement(std::uint32_t k) const {
    if (k == 0) fail(ErrorCode::Domain, "refinement factor must be positive");
    auto basis = base_.lattice.basis_vectors();
    for (auto& b : basis) b *= Rat(1) / Rat(static_cast<long>(k));
    UnitalLGroup scaled{base_.ambient, la::hnf_generate(basis, base_.ambient.size()), base_.unit};
    return gamma_unit(scaled);
}

}  // namespace mvhull::hull
