// SPDX-License-Identifier: Apache-2.0
#include "mvhull/error.hpp"
#include "mvhull/mvcore.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mvhull::mv {

bool IdealDescriptor::contains(const GridAlgebra& a, const QVector& v) const {
    const auto& cls = a.classes();
    for (std::size_t p = 0; p < v.size(); ++p) {
        if (v[p].is_zero()) continue;
        if (!std::binary_search(zero_classes.begin(), zero_classes.end(), cls.class_of[p])) return false;
    }
    return true;
}

Spectrum max_spectrum(const GridAlgebra& a) {
    Spectrum s;
    s.classes = a.classes();
    const std::size_t n = s.classes.count();
    for (std::size_t c = 0; c < n; ++c) {
        IdealDescriptor m;
        for (std::size_t o = 0; o < n; ++o) {
            if (o != c) m.zero_classes.push_back(o);
        }
        s.maximal_ideals.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const QVector e = a.element(i);
        const bool everywhere = std::all_of(s.maximal_ideals.begin(), s.maximal_ideals.end(),
                                            [&](const IdealDescriptor& m) { return m.contains(a, e); });
        if (everywhere) s.radical.push_back(e);
    }
    return s;
}

std::vector<std::int64_t> chain_decomposition(const GridAlgebra& a) {
    const auto& cls = a.classes();
    std::vector<std::int64_t> out;
    Int product = 1;
    for (std::size_t c = 0; c < cls.count(); ++c) {
        const std::size_t p = cls.representative(c);
        std::set<std::int32_t> values;
        for (std::size_t r = 0; r < a.size(); ++r) values.insert(a.row(r)[p]);
        // {0, k, 2k, ..., den} with k = den / n.
        const std::int64_t n = static_cast<std::int64_t>(values.size()) - 1;
        bool chain = n >= 1 && a.den() % n == 0;
        if (chain) {
            const std::int32_t step = static_cast<std::int32_t>(a.den() / n);
            std::int32_t expect = 0;
            for (auto v : values) {
                chain = chain && v == expect;
                expect += step;
            }
        }
        if (!chain) {
            fail(ErrorCode::Invariant, "values at point '" + a.points().label(p) + "' do not form a full subchain");
        }
        out.push_back(n);
        product *= Int(n + 1);
    }
    if (product != Int(static_cast<unsigned long>(a.size()))) {
        fail(ErrorCode::Invariant, "algebra size " + std::to_string(a.size()) +
                                       " differs from the product of chain sizes " + product.get_str());
    }
    return out;
}

GridAlgebra quotient(const GridAlgebra& a, const IdealDescriptor& ideal) {
    const auto& cls = a.classes();
    for (auto c : ideal.zero_classes) {
        if (c >= cls.count()) fail(ErrorCode::Domain, "ideal names unknown class " + std::to_string(c));
    }
    std::vector<std::size_t> kept;
    for (std::size_t p = 0; p < a.dim(); ++p) {
        if (!std::binary_search(ideal.zero_classes.begin(), ideal.zero_classes.end(), cls.class_of[p])) {
            kept.push_back(p);
        }
    }
    if (kept.empty()) fail(ErrorCode::Domain, "quotient by an improper ideal");
    std::vector<std::string> labels;
    for (auto p : kept) labels.push_back(a.points().label(p));
    std::vector<QVector> gens;
    for (const auto& g : a.generators()) {
        QVector r(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) r[i] = g[kept[i]];
        gens.push_back(std::move(r));
    }
    return GridAlgebra::generate(PointSet(std::move(labels)), a.den(), std::move(gens));
}

QVector precompose(const PointClasses& source_classes, std::span<const std::size_t> map, const QVector& a) {
    QVector out(map.size());
    for (std::size_t y = 0; y < map.size(); ++y) {
        if (map[y] >= source_classes.count()) fail(ErrorCode::NotHom, "point map names an unknown source class");
        out[y] = a[source_classes.representative(map[y])];
    }
    return out;
}

QVector PointMapHom::apply(const QVector& a) const {
    if (a.size() != source->dim()) fail(ErrorCode::Domain, "vector length does not match the source algebra");
    return precompose(source->classes(), map, a);
}

HomCheck hom_check(const PointMapHom& h) {
    if (!h.source || !h.target) fail(ErrorCode::NotHom, "homomorphism is missing an algebra");
    const GridAlgebra& src = *h.source;
    const GridAlgebra& tgt = *h.target;
    if (h.map.size() != tgt.dim()) {
        fail(ErrorCode::NotHom, "point map has " + std::to_string(h.map.size()) + " entries, target has " +
                                    std::to_string(tgt.dim()) + " points");
    }
    for (auto c : h.map) {
        if (c >= src.classes().count()) fail(ErrorCode::NotHom, "point map names an unknown source class");
    }
    for (const auto& g : src.generators()) {
        const QVector img = h.apply(g);
        if (!tgt.contains(img)) {
            fail(ErrorCode::NotHom, "generator " + g.str() + " maps to " + img.str() + ", outside the target");
        }
    }
    HomCheck out;
    std::vector<bool> hit(src.classes().count(), false);
    for (auto c : h.map) hit[c] = true;
    out.is_embedding = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    if (!out.is_embedding) return out;

    // Essential iff every nonzero b dominates, up to a finite (+)-multiple,
    // a nonzero image element; on a finite grid that is support inclusion.
    std::vector<std::int32_t> image;
    std::size_t count = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const auto key = tgt.encode(h.apply(src.element(i)));
        if (!key) fail(ErrorCode::Invariant, "image element is off the target grid");
        image.insert(image.end(), key->begin(), key->end());
        ++count;
    }
    const simd::GridKernels& k = simd::active();
    std::vector<std::uint8_t> mask(count);
    out.is_essential = true;
    for (std::size_t r = 0; r < tgt.size() && out.is_essential; ++r) {
        const auto b = tgt.row(r);
        if (std::all_of(b.begin(), b.end(), [](std::int32_t x) { return x == 0; })) continue;
        k.support_within_rows(b.data(), image.data(), count, tgt.stride(), mask.data());
        out.is_essential = std::any_of(mask.begin(), mask.end(), [](std::uint8_t x) { return x != 0; });
    }
    return out;
}

PointMapHom compose(const PointMapHom& g, const PointMapHom& h) {
    if (!g.source || !h.target || g.source->dim() != h.target->dim() ||
        g.source->points() != h.target->points()) {
        fail(ErrorCode::NotHom, "homomorphisms are not composable");
    }
    const auto& mid = h.target->classes();
    PointMapHom out{h.source, g.target, {}};
    out.map.reserve(g.map.size());
    for (auto bc : g.map) out.map.push_back(h.map[mid.representative(bc)]);
    return out;
}

PointMapHom identity_hom(std::shared_ptr<const GridAlgebra> a) {
    PointMapHom h{a, a, {}};
    for (std::size_t p = 0; p < a->dim(); ++p) h.map.push_back(a->classes().class_of[p]);
    return h;
}

}  // namespace mvhull::mv
