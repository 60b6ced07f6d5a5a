// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mvhull/error.hpp"
#include "mvhull/mvcore.hpp"
#include "support/oracles.hpp"

#include <map>
#include <numeric>
#include <set>

using namespace mvhull;
using mv::GridAlgebra;
using mv::PointSet;

namespace {

QVector q(std::initializer_list<const char*> xs) {
    std::vector<Rat> e;
    for (const char* x : xs) e.push_back(Rat::parse(x));
    return QVector(std::move(e));
}

auto shared(GridAlgebra a) { return std::make_shared<const GridAlgebra>(std::move(a)); }

GridAlgebra six() { return GridAlgebra::generate(PointSet::numbered(2), 2, {q({"1/2", "0"})}); }
GridAlgebra diagonal() { return GridAlgebra::generate(PointSet({"y1", "y2"}), 2, {q({"1/2", "1/2"})}); }
GridAlgebra chain(std::int64_t n) {
    return GridAlgebra::generate(PointSet({"x"}), n, {QVector{Rat(Int(1), Int(n))}});
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Invariant;
}

// Every map from target points to source classes.
std::vector<std::vector<std::size_t>> all_maps(std::size_t target_points, std::size_t source_classes) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> m(target_points, 0);
    while (true) {
        out.push_back(m);
        std::size_t i = 0;
        while (i < m.size() && m[i] + 1 == source_classes) m[i++] = 0;
        if (i == m.size()) break;
        ++m[i];
    }
    return out;
}

std::optional<mv::PointMapHom> try_hom(std::shared_ptr<const GridAlgebra> s, std::shared_ptr<const GridAlgebra> t,
                                       std::vector<std::size_t> map) {
    mv::PointMapHom h{std::move(s), std::move(t), std::move(map)};
    try {
        (void)mv::hom_check(h);
    } catch (const Error&) {
        return std::nullopt;
    }
    return h;
}

// Essentiality straight from the definition: every nonzero b of the target
// dominates n*h(a) for some nonzero a of the source.
bool brute_essential(const mv::PointMapHom& h) {
    for (const auto& b : h.target->elements()) {
        if (b.is_zero()) continue;
        bool found = false;
        for (const auto& a : h.source->elements()) {
            const QVector ha = h.apply(a);
            if (ha.is_zero()) continue;
            for (std::uint32_t n = 1; n <= static_cast<std::uint32_t>(h.target->den()) && !found; ++n)
                found = pointwise_leq(ha, mv::nat_mul(n, b));
            if (found) break;
        }
        if (!found) return false;
    }
    return true;
}

bool brute_embedding(const mv::PointMapHom& h) {
    std::set<QVector> images;
    for (const auto& a : h.source->elements()) images.insert(h.apply(a));
    return images.size() == h.source->size();
}

}  // namespace

TEST_CASE("mv_ops examples") {
    CHECK(mv::oplus(q({"1/2"}), q({"3/4"})) == q({"1"}));
    CHECK(mv::neg(q({"1/3"})) == q({"2/3"}));
    CHECK(mv::nat_mul(3, q({"1/3", "0"})) == q({"1", "0"}));
    CHECK(mv::odot(q({"1/2"}), q({"3/4"})) == q({"1/4"}));
    CHECK(mv::join(q({"1/2", "0"}), q({"1/3", "1"})) == q({"1/2", "1"}));
    CHECK(mv::meet(q({"1/2", "0"}), q({"1/3", "1"})) == q({"1/3", "0"}));
    CHECK(mv::nat_mul(0, q({"1/3"})) == q({"0"}));
    CHECK(code_of([] { mv::oplus(q({"3/2"}), q({"0"})); }) == ErrorCode::Domain);
    CHECK(code_of([] { mv::neg(q({"-1/2"})); }) == ErrorCode::Domain);
}

TEST_CASE("generate_grid examples") {
    SUBCASE("diagonal") {
        auto a = diagonal();
        CHECK(a.elements() == std::vector<QVector>{q({"0", "0"}), q({"1/2", "1/2"}), q({"1", "1"})});
    }
    SUBCASE("six elements") {
        auto a = six();
        CHECK(a.elements() == std::vector<QVector>{q({"0", "0"}), q({"0", "1"}), q({"1/2", "0"}), q({"1/2", "1"}),
                                                   q({"1", "0"}), q({"1", "1"})});
    }
    SUBCASE("no generators") {
        auto a = GridAlgebra::generate(PointSet::numbered(3), 5, {});
        CHECK(a.elements() == std::vector<QVector>{q({"0", "0", "0"}), q({"1", "1", "1"})});
    }
    SUBCASE("off-grid generator") {
        CHECK(code_of([] { GridAlgebra::generate(PointSet::numbered(1), 2, {q({"1/3"})}); }) == ErrorCode::Domain);
    }
    SUBCASE("from_closed_set rejects open sets") {
        CHECK(code_of([] {
                  GridAlgebra::from_closed_set(PointSet::numbered(1), 2, {q({"0"}), q({"1/2"})});
              }) == ErrorCode::Invariant);
        auto a = GridAlgebra::from_closed_set(PointSet::numbered(2), 2, six().elements());
        CHECK(a.elements() == six().elements());
    }
}

TEST_CASE("spectrum, chains and radical examples") {
    SUBCASE("diagonal") {
        auto s = mv::max_spectrum(diagonal());
        CHECK(s.classes.count() == 1);
        CHECK(s.classes.members[0] == std::vector<std::size_t>{0, 1});
        REQUIRE(s.maximal_ideals.size() == 1);
        CHECK(s.maximal_ideals[0].zero_classes.empty());
        CHECK(s.radical == std::vector<QVector>{q({"0", "0"})});
        CHECK(mv::chain_decomposition(diagonal()) == std::vector<std::int64_t>{2});
    }
    SUBCASE("six elements") {
        auto s = mv::max_spectrum(six());
        CHECK(s.classes.count() == 2);
        CHECK(s.maximal_ideals.size() == 2);
        CHECK(mv::chain_decomposition(six()) == std::vector<std::int64_t>{2, 1});
    }
    SUBCASE("constants") {
        auto a = GridAlgebra::generate(PointSet::numbered(3), 4, {});
        auto s = mv::max_spectrum(a);
        CHECK(s.classes.count() == 1);
        CHECK(s.maximal_ideals.size() == 1);
        CHECK(mv::chain_decomposition(a) == std::vector<std::int64_t>{1});
    }
}

TEST_CASE("quotient examples") {
    auto a = six();
    const std::size_t c2 = a.classes().class_of[1];
    auto l2 = mv::quotient(a, {{c2}});
    CHECK(l2.dim() == 1);
    CHECK(l2.points().label(0) == "x1");
    CHECK(l2.elements() == chain(2).elements());

    CHECK(mv::quotient(a, {{}}).elements() == a.elements());
    CHECK(mv::quotient(diagonal(), mv::max_spectrum(diagonal()).maximal_ideals[0]).elements() ==
          diagonal().elements());
    CHECK(code_of([&] { mv::quotient(a, {{0, 1}}); }) == ErrorCode::Domain);
}

TEST_CASE("hom_check examples") {
    SUBCASE("chain into diagonal") {
        mv::PointMapHom h{shared(chain(2)), shared(diagonal()), {0, 0}};
        auto r = mv::hom_check(h);
        CHECK(r.is_embedding);
        CHECK(r.is_essential);
    }
    SUBCASE("projection onto a quotient") {
        auto a = six();
        auto b = mv::quotient(a, {{a.classes().class_of[1]}});
        mv::PointMapHom h{shared(a), shared(b), {a.classes().class_of[0]}};
        auto r = mv::hom_check(h);
        CHECK_FALSE(r.is_embedding);
        CHECK(h.apply(q({"0", "1"})) == q({"0"}));
    }
    SUBCASE("identity") {
        auto r = mv::hom_check(mv::identity_hom(shared(six())));
        CHECK(r.is_embedding);
        CHECK(r.is_essential);
    }
    SUBCASE("invalid map") {
        auto a = six();
        mv::PointMapHom h{shared(a), shared(diagonal()), {a.classes().class_of[0], a.classes().class_of[1]}};
        CHECK(code_of([&] { mv::hom_check(h); }) == ErrorCode::NotHom);
    }
}

TEST_CASE("MV axioms and the order characterization on grid elements") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 40; ++iter) {
        auto a = mvtest::random_algebra(rng);
        const auto elems = a.elements();
        auto pick = [&] { return elems[static_cast<std::size_t>(mvtest::uniform(rng, 0, elems.size() - 1))]; };
        const QVector zero = QVector::constant(a.dim(), Rat(0));
        for (int t = 0; t < 50; ++t) {
            const QVector x = pick(), y = pick(), z = pick();
            CHECK(mv::oplus(x, mv::oplus(y, z)) == mv::oplus(mv::oplus(x, y), z));
            CHECK(mv::oplus(x, y) == mv::oplus(y, x));
            CHECK(mv::oplus(x, zero) == x);
            CHECK(mv::neg(mv::neg(x)) == x);
            CHECK(mv::oplus(x, mv::neg(zero)) == mv::neg(zero));
            CHECK(mv::oplus(mv::neg(mv::oplus(mv::neg(x), y)), y) ==
                  mv::oplus(mv::neg(mv::oplus(mv::neg(y), x)), x));
            CHECK(pointwise_leq(x, y) == mv::odot(x, mv::neg(y)).is_zero());
            CHECK(a.contains(mv::oplus(x, y)));
            CHECK(a.contains(mv::neg(x)));
        }
    }
}

TEST_CASE("generate_grid equals the brute-force closure under six operations") {
    std::mt19937_64 rng(32);
    for (int iter = 0; iter < 60; ++iter) {
        auto a = mvtest::random_algebra(rng);
        const auto oracle = mvtest::brute_closure(a.dim(), a.generators());
        CHECK(std::vector<QVector>(oracle.begin(), oracle.end()) == a.elements());
        const auto n = mv::chain_decomposition(a);
        std::size_t prod = 1;
        for (auto k : n) prod *= static_cast<std::size_t>(k + 1);
        CHECK(prod == a.size());
    }
}

TEST_CASE("ideals are exactly the descriptor ideals") {
    std::mt19937_64 rng(33);
    int checked = 0;
    for (int iter = 0; iter < 200 && checked < 25; ++iter) {
        auto a = mvtest::random_algebra(rng);
        if (a.size() > 12) continue;
        ++checked;
        const auto elems = a.elements();
        const std::size_t k = a.classes().count();

        auto ideal_of = [&](const mv::IdealDescriptor& d) {
            std::set<QVector> s;
            for (const auto& e : elems)
                if (d.contains(a, e)) s.insert(e);
            return s;
        };
        std::map<std::set<QVector>, std::uint32_t> from_descriptors;
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            mv::IdealDescriptor d;
            for (std::size_t c = 0; c < k; ++c)
                if (mask >> c & 1u) d.zero_classes.push_back(c);
            from_descriptors[ideal_of(d)] = mask;
        }
        CHECK(from_descriptors.size() == (1u << k));  // distinct descriptors give distinct ideals

        const auto brute = mvtest::brute_ideals(elems);
        std::set<std::set<QVector>> brute_set(brute.begin(), brute.end());
        std::set<std::set<QVector>> desc_set;
        for (const auto& [s, mask] : from_descriptors) desc_set.insert(s);
        CHECK(brute_set == desc_set);

        // Union of zero_classes is the ideal sum, intersection the meet.
        for (const auto& [i1, m1] : from_descriptors) {
            for (const auto& [i2, m2] : from_descriptors) {
                std::set<QVector> sum;
                for (const auto& e : elems)
                    for (const auto& x : i1)
                        for (const auto& y : i2)
                            if (pointwise_leq(e, mvtest::v_oplus(x, y))) sum.insert(e);
                std::set<QVector> both;
                for (const auto& e : i1)
                    if (i2.count(e)) both.insert(e);
                CHECK(from_descriptors.at(sum) == (m1 | m2));
                CHECK(from_descriptors.at(both) == (m1 & m2));
            }
        }
    }
    CHECK(checked == 25);
}

TEST_CASE("every algebra is semisimple") {
    std::mt19937_64 rng(34);
    for (int iter = 0; iter < 40; ++iter) {
        auto a = mvtest::random_algebra(rng, {4, 6, 3});
        auto s = mv::max_spectrum(a);
        CHECK(s.radical == std::vector<QVector>{QVector::constant(a.dim(), Rat(0))});
        CHECK(s.maximal_ideals.size() == s.classes.count());
    }
}

TEST_CASE("homomorphisms into finite chains are evaluations at point classes") {
    std::mt19937_64 rng(35);
    int checked = 0;
    for (int iter = 0; iter < 300 && checked < 25; ++iter) {
        auto a = mvtest::random_algebra(rng);
        if (a.size() > 8) continue;
        ++checked;
        const auto elems = a.elements();
        for (std::int64_t d : {static_cast<std::int64_t>(a.den()), 2 * static_cast<std::int64_t>(a.den())}) {
            std::set<std::vector<Rat>> brute;
            for (auto& h : mvtest::brute_homs_to_chain(elems, d)) brute.insert(h);
            std::set<std::vector<Rat>> evals;
            for (std::size_t c = 0; c < a.classes().count(); ++c) {
                std::vector<Rat> h;
                for (const auto& e : elems) h.push_back(e[a.classes().representative(c)]);
                evals.insert(h);
            }
            CHECK(brute == evals);
        }
    }
    CHECK(checked == 25);
}

TEST_CASE("hom_check flags agree with the definitions") {
    std::mt19937_64 rng(36);
    int homs = 0, essential = 0;
    for (int iter = 0; iter < 150; ++iter) {
        auto a = shared(mvtest::random_algebra(rng, {2, 3, 1}));
        auto b = shared(mvtest::random_algebra(rng, {3, 3, 2}));
        for (const auto& map : all_maps(b->dim(), a->classes().count())) {
            auto h = try_hom(a, b, map);
            if (!h) continue;
            ++homs;
            auto r = mv::hom_check(*h);
            CHECK(r.is_embedding == brute_embedding(*h));
            if (r.is_embedding) CHECK(r.is_essential == brute_essential(*h));
            essential += r.is_essential;
        }
    }
    CHECK(homs > 100);
    CHECK(essential > 20);
}

TEST_CASE("an essential extension of an embedding forces embeddings") {
    // iota: A -> B essential, f_A: A -> C embedding, f_B o iota = f_A
    // implies f_B is an embedding.
    std::mt19937_64 rng(37);
    int instances = 0;
    for (int iter = 0; iter < 60; ++iter) {
        auto a = shared(mvtest::random_algebra(rng, {2, 2, 1}));
        auto b = shared(mvtest::random_algebra(rng, {3, 4, 2}));
        auto c = shared(mvtest::random_algebra(rng, {3, 4, 2}));
        for (const auto& im : all_maps(b->dim(), a->classes().count())) {
            auto iota = try_hom(a, b, im);
            if (!iota || !mv::hom_check(*iota).is_essential) continue;
            for (const auto& fm : all_maps(c->dim(), b->classes().count())) {
                auto fb = try_hom(b, c, fm);
                if (!fb) continue;
                const auto fa = mv::compose(*fb, *iota);
                if (!mv::hom_check(fa).is_embedding) continue;
                ++instances;
                CHECK(mv::hom_check(*fb).is_embedding);
                for (const auto& e : a->elements()) CHECK(fa.apply(e) == fb->apply(iota->apply(e)));
            }
        }
    }
    CHECK(instances > 20);
}
