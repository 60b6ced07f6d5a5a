// SPDX-License-Identifier: Apache-2.0
#include "mvhull/error.hpp"
#include "mvhull/hull.hpp"

#include <algorithm>

namespace mvhull::hull {

namespace {

Rat random_rat(std::mt19937_64& rng, long max_abs_num, long max_den) {
    const long num = static_cast<long>(rng() % static_cast<unsigned long>(2 * max_abs_num + 1)) - max_abs_num;
    const long den = static_cast<long>(rng() % static_cast<unsigned long>(max_den)) + 1;
    return Rat(Int(num), Int(den));
}

}  // namespace

RieszHull riesz_hull(std::shared_ptr<const mv::GridAlgebra> a) {
    if (!a) fail(ErrorCode::Domain, "missing algebra");
    RieszHull h;
    h.base_ = std::move(a);
    h.lgroup_ = lgroup_generate(*h.base_);
    h.span_basis_ = la::rref_basis(h.lgroup_.lattice.basis_vectors(), h.base_->dim());
    return h;
}

RieszHull riesz_hull(const mv::GridAlgebra& a) { return riesz_hull(std::make_shared<const mv::GridAlgebra>(a)); }

std::vector<std::size_t> RieszHull::pivot_points() const {
    std::vector<std::size_t> p;
    for (const auto& b : span_basis_) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!b[i].is_zero()) {
                p.push_back(i);
                break;
            }
        }
    }
    return p;
}

std::optional<std::vector<Rat>> RieszHull::coordinates(const QVector& v) const {
    if (v.size() != dim()) fail(ErrorCode::Domain, "vector length does not match the point set");
    return la::span_solve(span_basis_, v);
}

bool RieszHull::member(const QVector& v) const { return in_unit_cube(v) && coordinates(v).has_value(); }

void RieszHull::require(const QVector& v) const {
    if (!member(v)) fail(ErrorCode::NotInHull, "vector " + v.str() + " is not in the hull skeleton");
}

QVector RieszHull::oplus(const QVector& a, const QVector& b) const {
    require(a);
    require(b);
    return mv::oplus(a, b);
}

QVector RieszHull::neg(const QVector& a) const {
    require(a);
    return mv::neg(a);
}

QVector RieszHull::scalar(const Rat& q, const QVector& a) const {
    if (q.sign() < 0 || Rat(1) < q) fail(ErrorCode::Domain, "scalar " + q.str() + " is outside [0,1]");
    require(a);
    return q * a;
}

QVector RieszHull::sample(std::mt19937_64& rng, bool nonzero) const {
    while (true) {
        QVector x(dim());
        for (const auto& b : span_basis_) x += random_rat(rng, 6, 6) * b;
        QVector v(dim());
        switch (rng() % 3) {
            case 0: {  // |x| scaled into the unit cube
                Rat top;
                for (auto& e : x) {
                    e = abs(e);
                    top = max(top, e);
                }
                if (top.is_zero()) break;
                const Rat shrink = Rat(Int(static_cast<long>(rng() % 4 + 1)), Int(1));
                v = (Rat(1) / (top * shrink)) * x;
                break;
            }
            case 1:  // (x v 0) ^ 1
                for (std::size_t i = 0; i < x.size(); ++i) v[i] = min(Rat(1), max(Rat(0), x[i]));
                break;
            default: {  // rational combination of base elements
                const auto& base = *base_;
                const QVector e = base.element(rng() % base.size());
                const Rat q(Int(static_cast<long>(rng() % 12)), Int(static_cast<long>(rng() % 11 + 1)));
                v = min(q, Rat(1)) * e;
                break;
            }
        }
        if (nonzero && v.is_zero()) continue;
        return v;
    }
}

EssentialWitness essential_witness(const RieszHull& hull, const QVector& b) {
    if (b.size() != hull.dim()) fail(ErrorCode::Domain, "vector length does not match the point set");
    if (!hull.member(b)) fail(ErrorCode::NotInHull, "vector " + b.str() + " is not in the hull skeleton");
    if (b.is_zero()) fail(ErrorCode::Domain, "essential witness requires a nonzero vector");

    const mv::GridAlgebra& a = hull.base_algebra();
    std::vector<std::int32_t> support_mask(a.stride(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) support_mask[i] = b[i].is_zero() ? 0 : 1;
    std::vector<std::uint8_t> mask(a.size());
    simd::active().support_within_rows(support_mask.data(), a.cells().data(), a.size(), a.stride(), mask.data());

    std::size_t best = a.size();
    std::size_t best_support = 0;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (!mask[r]) continue;
        const auto row = a.row(r);
        const auto s = static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](auto x) { return x != 0; }));
        // Rows are in lexicographic order, so the first of a given support size wins.
        if (best == a.size() || s < best_support) {
            best = r;
            best_support = s;
        }
    }
    if (best == a.size()) fail(ErrorCode::Invariant, "no essential witness for " + b.str());

    EssentialWitness w;
    w.a = a.element(best);
    Int n = 1;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].is_zero()) continue;
        const Int need = (w.a[i] / b[i]).ceil();
        if (need > n) n = need;
    }
    w.n = n.get_ui();
    return w;
}

QVector SkeletonMap::operator()(const QVector& v) const {
    if (v.size() != source_dim) fail(ErrorCode::Domain, "vector length does not match the map source");
    QVector out(pick.size());
    for (std::size_t y = 0; y < pick.size(); ++y) out[y] = v[pick[y]];
    return out;
}

SkeletonMap SkeletonMap::after(const SkeletonMap& inner) const {
    if (inner.pick.size() != source_dim) fail(ErrorCode::NotHom, "skeleton maps are not composable");
    SkeletonMap out{inner.source_dim, {}};
    for (auto p : pick) out.pick.push_back(inner.pick[p]);
    return out;
}

QVector HullHom::apply(const QVector& a) const {
    if (a.size() != source->dim()) fail(ErrorCode::Domain, "vector length does not match the source algebra");
    return mv::precompose(source->classes(), map, a);
}

void validate(const HullHom& f) {
    if (!f.source || !f.target) fail(ErrorCode::NotHom, "homomorphism is missing an algebra");
    if (f.map.size() != f.target->dim()) {
        fail(ErrorCode::NotHom, "point map has " + std::to_string(f.map.size()) + " entries, target has " +
                                    std::to_string(f.target->dim()) + " points");
    }
    for (auto c : f.map) {
        if (c >= f.source->classes().count()) fail(ErrorCode::NotHom, "point map names an unknown source class");
    }
    for (const auto& g : f.source->generators()) {
        const QVector img = f.apply(g);
        if (!f.target->member(img)) {
            fail(ErrorCode::NotHom, "generator " + g.str() + " maps to " + img.str() + ", outside the target skeleton");
        }
    }
}

LinearExtension::LinearExtension(const HullHom& f) {
    validate(f);
    const mv::GridAlgebra& a = *f.source;
    std::vector<QVector> echelon;
    for (std::size_t i = 0; i < a.size(); ++i) {
        QVector e = a.element(i);
        std::vector<QVector> trial = echelon;
        trial.push_back(e);
        trial = la::rref_basis(trial, a.dim());
        if (trial.size() == echelon.size()) continue;
        echelon = std::move(trial);
        images_.push_back(f.apply(e));
        basis_.push_back(std::move(e));
    }
}

QVector LinearExtension::operator()(const QVector& v) const {
    const auto c = la::span_solve(basis_, v);
    if (!c) fail(ErrorCode::NotInHull, "vector " + v.str() + " is outside the span of the source algebra");
    QVector out(images_.empty() ? 0 : images_.front().size());
    for (std::size_t i = 0; i < basis_.size(); ++i) out += (*c)[i] * images_[i];
    return out;
}

Extension extend_hom(const HullHom& f, std::uint64_t seed) {
    validate(f);
    Extension ext;
    ext.hom = f;
    const mv::GridAlgebra& a = *f.source;
    ext.map.source_dim = a.dim();
    for (auto c : f.map) ext.map.pick.push_back(a.classes().representative(c));
    for (const auto& g : a.generators()) ext.generator_images.push_back(f.apply(g));

    ext.restricts_to_f = true;
    for (std::size_t i = 0; i < a.size() && ext.restricts_to_f; ++i) {
        const QVector e = a.element(i);
        ext.restricts_to_f = ext.map(e) == f.apply(e);
    }

    const RieszHull source_hull = riesz_hull(f.source);
    const RieszHull& target = *f.target;
    std::mt19937_64 rng(seed);
    ext.scalar_compatible = true;
    for (int trial = 0; trial < 32 && ext.scalar_compatible; ++trial) {
        const QVector v = source_hull.sample(rng, false);
        const QVector w = source_hull.sample(rng, false);
        const Rat q(Int(static_cast<long>(rng() % 13)), Int(12));
        const QVector fv = ext.map(v);
        ext.scalar_compatible = target.member(fv) && ext.map(source_hull.scalar(q, v)) == target.scalar(q, fv) &&
                                ext.map(source_hull.oplus(v, w)) == target.oplus(fv, ext.map(w)) &&
                                ext.map(source_hull.neg(v)) == target.neg(fv);
    }

    const LinearExtension linear(f);
    ext.unique_on_span = true;
    for (const auto& b : source_hull.span_basis()) {
        if (ext.map(b) != linear(b)) ext.unique_on_span = false;
    }
    return ext;
}

FunctorImage hull_functor(const mv::PointMapHom& h) {
    const mv::HomCheck check = mv::hom_check(h);
    FunctorImage out;
    out.source_hull = std::make_shared<const RieszHull>(riesz_hull(h.source));
    out.target_hull = std::make_shared<const RieszHull>(riesz_hull(h.target));
    const Extension ext = extend_hom(HullHom{h.source, out.target_hull, h.map});
    out.map = ext.map;

    out.square_commutes = true;
    for (std::size_t i = 0; i < h.source->size() && out.square_commutes; ++i) {
        const QVector e = h.source->element(i);
        out.square_commutes = out.map(e) == h.apply(e) && out.target_hull->member(out.map(e));
    }
    out.source_is_embedding = check.is_embedding;
    std::vector<QVector> images;
    for (const auto& b : out.source_hull->span_basis()) images.push_back(out.map(b));
    out.image_rank = la::rank(images);
    out.source_rank = out.source_hull->span_basis().size();
    out.injective = out.image_rank == out.source_rank;
    return out;
}

namespace {

SkeletonMap identity_map(std::size_t m) {
    SkeletonMap s{m, {}};
    for (std::size_t i = 0; i < m; ++i) s.pick.push_back(i);
    return s;
}

// Every map from target points to source classes, capped.
std::vector<std::vector<std::size_t>> all_point_maps(std::size_t classes, std::size_t points, std::size_t cap) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(points, 0);
    while (out.size() < cap) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < points && ++cur[i] == classes) cur[i++] = 0;
        if (i == points) break;
    }
    return out;
}

}  // namespace

AdjunctionReport adjunction_check(std::shared_ptr<const mv::GridAlgebra> a, std::shared_ptr<const RieszHull> v,
                                  std::uint64_t seed) {
    AdjunctionReport rep;
    const auto ra = std::make_shared<const RieszHull>(riesz_hull(a));
    std::mt19937_64 rng(seed);

    // Unit: iota_A lands in the skeleton of R(A).
    rep.unit_ok = true;
    for (std::size_t i = 0; i < a->size() && rep.unit_ok; ++i) rep.unit_ok = ra->member(a->element(i));

    // Counit: the hull of a finite generating subalgebra of U(V) is V itself.
    const auto uv = std::make_shared<const mv::GridAlgebra>(gamma_unit(v->lgroup()));
    const RieszHull ruv = riesz_hull(uv);
    rep.counit_ok = ruv.span_basis() == v->span_basis();

    // Idempotence on R(A).
    const auto ua = std::make_shared<const mv::GridAlgebra>(gamma_unit(ra->lgroup()));
    const RieszHull rua = riesz_hull(ua);
    rep.idempotent = rua.span_basis() == ra->span_basis() && ruv.span_basis() == v->span_basis();

    // Left triangle: eps_R(A) o R(eta_A) = id on R(A).
    {
        mv::PointMapHom eta{a, ua, a->classes().class_of};
        const FunctorImage r_eta = hull_functor(eta);
        const SkeletonMap eps = identity_map(a->dim());
        const SkeletonMap composite = eps.after(r_eta.map);
        rep.triangle_left = rep.idempotent && r_eta.square_commutes;
        for (const auto& b : ra->span_basis()) rep.triangle_left = rep.triangle_left && composite(b) == b;
        for (int t = 0; t < 64 && rep.triangle_left; ++t) {
            const QVector s = ra->sample(rng, false);
            rep.triangle_left = composite(s) == s && rua.member(r_eta.map(s));
        }
    }

    // Right triangle: U(eps_V) o eta_U(V) = id on U(V).
    {
        const SkeletonMap eta = identity_map(v->dim());
        const SkeletonMap eps = identity_map(v->dim());
        const SkeletonMap composite = eps.after(eta);
        rep.triangle_right = rep.counit_ok;
        for (const auto& b : v->span_basis()) rep.triangle_right = rep.triangle_right && composite(b) == b;
        for (int t = 0; t < 64 && rep.triangle_right; ++t) {
            const QVector s = v->sample(rng, false);
            rep.triangle_right = ruv.member(eta(s)) && v->member(eps(eta(s))) && composite(s) == s;
        }
    }

    // Hom(R(A), V) ~ Hom(A, U(V)): restriction along eta inverts extension.
    rep.homset_bijection = true;
    std::vector<std::vector<QVector>> seen;
    for (const auto& map : all_point_maps(a->classes().count(), v->dim(), 4096)) {
        HullHom f{a, v, map};
        try {
            validate(f);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NotHom) continue;
            throw;
        }
        const Extension ext = extend_hom(f, seed);
        bool ok = ext.restricts_to_f && ext.unique_on_span && ext.scalar_compatible;
        // Restrict f_R along eta and extend again: must give f_R back.
        HullHom back{a, v, {}};
        for (auto p : ext.map.pick) back.map.push_back(a->classes().class_of[p]);
        const Extension again = extend_hom(back, seed);
        std::vector<QVector> images;
        for (const auto& b : ra->span_basis()) {
            images.push_back(ext.map(b));
            ok = ok && again.map(b) == ext.map(b);
        }
        if (std::find(seen.begin(), seen.end(), images) != seen.end()) ok = false;
        seen.push_back(std::move(images));
        rep.homset_bijection = rep.homset_bijection && ok;
        ++rep.homs_checked;
    }
    return rep;
}

}  // namespace mvhull::hull
