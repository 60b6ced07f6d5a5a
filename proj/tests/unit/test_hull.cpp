// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mvhull/error.hpp"
#include "mvhull/hull.hpp"
#include "support/oracles.hpp"

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

std::shared_ptr<const GridAlgebra> shared(GridAlgebra a) { return std::make_shared<const GridAlgebra>(std::move(a)); }

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

QVector random_lattice_point(std::mt19937_64& rng, const la::IntegerLattice& l) {
    QVector v(l.ambient_dim());
    for (std::size_t i = 0; i < l.rank(); ++i) v += Rat(static_cast<long>(mvtest::uniform(rng, -4, 4))) * l.basis_vector(i);
    return v;
}

QVector vjoin(const QVector& x, const QVector& y) { return positive_part(x - y) + y; }
QVector vmeet(const QVector& x, const QVector& y) { return x - positive_part(x - y); }

// (base + N*anchor)+ - N*anchor+, recomputed from the raw definition.
QVector certificate_value(const hull::ClosureStep& s) {
    const Rat n(s.factor, Int(1));
    return positive_part(s.base + n * s.anchor) - n * positive_part(s.anchor);
}

}  // namespace

TEST_CASE("lgroup_generate examples") {
    SUBCASE("diagonal is already closed") {
        hull::LGroupTrace trace;
        auto g = hull::lgroup_generate(diagonal(), &trace);
        CHECK(g.lattice.den() == 2);
        CHECK(g.lattice.basis() == std::vector<la::IntRow>{{1, 1}});
        CHECK(trace.steps.empty());
        CHECK(trace.rounds == 1);
    }
    SUBCASE("anti-diagonal subgroup closes to the full grid") {
        std::vector<QVector> s{q({"1", "-1"})};
        hull::LGroupTrace trace;
        auto h = hull::positive_part_closure(la::hnf_generate(s), &trace);
        std::vector<QVector> z2{q({"1", "0"}), q({"0", "1"})};
        CHECK(h == la::hnf_generate(z2));
        bool adds_e1 = false;
        for (const auto& step : trace.steps) adds_e1 |= step.added == q({"1", "0"});
        CHECK(adds_e1);
    }
    SUBCASE("constants") {
        auto g = hull::lgroup_generate(GridAlgebra::generate(PointSet::numbered(3), 3, {}));
        CHECK(g.lattice.den() == 1);
        CHECK(g.lattice.basis() == std::vector<la::IntRow>{{1, 1, 1}});
    }
    SUBCASE("starting group must contain the unit") {
        std::vector<QVector> s{q({"1", "-1"})};
        CHECK(code_of([&] { hull::lgroup_close(PointSet::numbered(2), la::hnf_generate(s)); }) == ErrorCode::Domain);
    }
}

TEST_CASE("gamma_unit examples") {
    auto l_of = [](std::vector<QVector> s) {
        return hull::UnitalLGroup{PointSet::numbered(s.front().size()), la::hnf_generate(s), QVector::constant(s.front().size(), Rat(1))};
    };
    CHECK(hull::gamma_unit(l_of({q({"1/2", "1/2"})})).elements() == diagonal().elements());
    CHECK(hull::gamma_unit(l_of({q({"1", "1"})})).elements() == std::vector<QVector>{q({"0", "0"}), q({"1", "1"})});
    CHECK(hull::gamma_unit(l_of({q({"1/2", "0"}), q({"0", "1"})})).elements() == six().elements());
}

TEST_CASE("l-group round trip, closure and certificates on random algebras") {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 40; ++iter) {
        auto a = mvtest::random_algebra(rng);
        hull::LGroupTrace trace;
        auto g = hull::lgroup_generate(a, &trace);

        CHECK(hull::gamma_unit(g).elements() == a.elements());
        CHECK(hull::positive_part_closed(g.lattice));
        for (const auto& e : a.elements()) CHECK(la::lattice_member(g.lattice, e));

        for (const auto& step : trace.steps) {
            CHECK(certificate_value(step) == step.added);
            CHECK(la::lattice_member(g.lattice, step.base));
            CHECK(la::lattice_member(g.lattice, step.anchor));
        }
        for (int t = 0; t < 30; ++t) {
            const QVector x = random_lattice_point(rng, g.lattice);
            const QVector y = random_lattice_point(rng, g.lattice);
            CHECK(la::lattice_member(g.lattice, vjoin(x, y)));
            CHECK(la::lattice_member(g.lattice, vmeet(x, y)));
        }
    }
}

TEST_CASE("divisible hull examples") {
    hull::DivisibleHull d(hull::lgroup_generate(diagonal()));
    auto c = d.decompose_average(q({"1/3", "1/3"}));
    CHECK(c.n == 3);
    CHECK(c.parts == std::vector<QVector>{q({"1", "1"}), q({"0", "0"}), q({"0", "0"})});

    auto one = d.decompose_average(q({"1/2", "1/2"}));
    CHECK(one.n == 1);
    CHECK(one.parts == std::vector<QVector>{q({"1/2", "1/2"})});

    CHECK(code_of([&] { d.decompose_average(q({"1/3", "1/2"})); }) == ErrorCode::NotInHull);
    CHECK(code_of([&] { d.decompose_average(q({"4/3", "4/3"})); }) == ErrorCode::Domain);
    CHECK(d.member(q({"-7", "-7"})));
    CHECK_FALSE(d.member(q({"1", "0"})));
}

TEST_CASE("decompose_average certificates are exact and minimal") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 15; ++iter) {
        auto a = mvtest::random_algebra(rng);
        auto h = hull::riesz_hull(a);
        hull::DivisibleHull d(h.lgroup());
        for (int t = 0; t < 30; ++t) {
            const QVector v = h.sample(rng, false);
            const auto cert = d.decompose_average(v);
            REQUIRE(cert.parts.size() == cert.n);
            QVector sum(v.size());
            for (const auto& p : cert.parts) {
                CHECK(a.contains(p));
                sum += p;
            }
            CHECK(Rat(1) / Rat(static_cast<long>(cert.n)) * sum == v);
            // No smaller n puts n*v into G, hence no shorter average exists.
            for (std::uint64_t k = 1; k < cert.n; ++k)
                CHECK_FALSE(la::lattice_member(h.lgroup().lattice, Rat(static_cast<long>(k)) * v));
        }
    }
}

TEST_CASE("riesz_hull examples") {
    SUBCASE("diagonal") {
        auto h = hull::riesz_hull(diagonal());
        CHECK(h.span_basis() == std::vector<QVector>{q({"1", "1"})});
        CHECK(h.member(q({"2/7", "2/7"})));
        CHECK_FALSE(h.member(q({"1/3", "1/2"})));
        CHECK_FALSE(h.member(q({"3/2", "3/2"})));
        auto c = h.coordinates(q({"1/3", "1/3"}));
        REQUIRE(c);
        CHECK(*c == std::vector<Rat>{Rat(1, 3)});
    }
    SUBCASE("finite chains have the whole rational interval") {
        for (std::int64_t n = 1; n <= 6; ++n) {
            auto h = hull::riesz_hull(chain(n));
            CHECK(h.span_basis() == std::vector<QVector>{q({"1"})});
            CHECK(h.member(q({"3/11"})));
        }
    }
    SUBCASE("six elements") {
        auto h = hull::riesz_hull(six());
        CHECK(h.span_basis().size() == 2);
        CHECK(h.member(q({"1/5", "4/9"})));
    }
}

TEST_CASE("skeleton operations") {
    auto h = hull::riesz_hull(diagonal());
    CHECK(h.scalar(Rat(1, 3), q({"1/2", "1/2"})) == q({"1/6", "1/6"}));
    CHECK(h.member(q({"1/6", "1/6"})));
    CHECK(h.scalar(Rat(1), q({"2/5", "2/5"})) == q({"2/5", "2/5"}));
    CHECK(h.scalar(Rat(0), q({"2/5", "2/5"})) == q({"0", "0"}));
    CHECK(h.oplus(q({"2/3", "2/3"}), q({"1/2", "1/2"})) == q({"1", "1"}));
    CHECK(h.neg(q({"1/3", "1/3"})) == q({"2/3", "2/3"}));
    CHECK(code_of([&] { h.scalar(Rat(1, 2), q({"1", "0"})); }) == ErrorCode::NotInHull);
    CHECK(code_of([&] { h.oplus(q({"1", "0"}), q({"0", "0"})); }) == ErrorCode::NotInHull);
    CHECK(code_of([&] { h.scalar(Rat(3, 2), q({"0", "0"})); }) == ErrorCode::Domain);
}

TEST_CASE("Riesz MV axioms on the skeleton") {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 20; ++iter) {
        auto h = hull::riesz_hull(mvtest::random_algebra(rng));
        for (int t = 0; t < 50; ++t) {
            const QVector a = h.sample(rng, false), b = h.sample(rng, false);
            const Rat r = mvtest::random_rat(rng, 9), s = mvtest::random_rat(rng, 9);
            auto minus = [&](const QVector& x, const QVector& y) { return mv::odot(x, h.neg(y)); };
            CHECK(h.scalar(r, minus(a, b)) == minus(h.scalar(r, a), h.scalar(r, b)));
            CHECK(h.scalar(max(r - s, Rat(0)), a) == minus(h.scalar(r, a), h.scalar(s, a)));
            CHECK(h.scalar(r * s, a) == h.scalar(r, h.scalar(s, a)));
            CHECK(h.scalar(Rat(1), a) == a);
            CHECK(h.member(h.oplus(a, b)));
            CHECK(h.member(h.scalar(r, a)));
        }
    }
}

TEST_CASE("essential_witness examples") {
    auto w = hull::essential_witness(hull::riesz_hull(six()), q({"1/3", "0"}));
    CHECK(w.a == q({"1/2", "0"}));
    CHECK(w.n == 2);

    auto d = hull::essential_witness(hull::riesz_hull(diagonal()), q({"1/5", "1/5"}));
    CHECK(d.a == q({"1/2", "1/2"}));
    CHECK(d.n == 3);

    auto c = hull::essential_witness(hull::riesz_hull(GridAlgebra::generate(PointSet::numbered(2), 1, {})),
                                     q({"1", "1"}));
    CHECK(c.a == q({"1", "1"}));
    CHECK(c.n == 1);

    CHECK(code_of([] { hull::essential_witness(hull::riesz_hull(six()), q({"0", "0"})); }) == ErrorCode::Domain);
}

TEST_CASE("essential witnesses on random skeleton vectors") {
    std::mt19937_64 rng(44);
    for (int iter = 0; iter < 20; ++iter) {
        auto h = hull::riesz_hull(mvtest::random_algebra(rng));
        for (int t = 0; t < 100; ++t) {
            const QVector b = h.sample(rng, true);
            const auto w = hull::essential_witness(h, b);
            CHECK(h.base_algebra().contains(w.a));
            CHECK_FALSE(w.a.is_zero());
            CHECK(pointwise_leq(w.a, Rat(static_cast<long>(w.n)) * b));
            CHECK(pointwise_leq(w.a, mv::nat_mul(static_cast<std::uint32_t>(w.n), b)));
            if (w.n > 1) CHECK_FALSE(pointwise_leq(w.a, Rat(static_cast<long>(w.n - 1)) * b));
        }
    }
}

TEST_CASE("extension examples") {
    SUBCASE("chain into the diagonal hull") {
        auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(diagonal()));
        auto ext = hull::extend_hom({shared(chain(2)), v, {0, 0}});
        CHECK(ext.restricts_to_f);
        CHECK(ext.scalar_compatible);
        CHECK(ext.unique_on_span);
        std::mt19937_64 rng(45);
        for (int t = 0; t < 20; ++t) {
            const Rat r = mvtest::random_rat(rng, 20);
            CHECK(ext.map(QVector{r}) == QVector{r, r});
        }
    }
    SUBCASE("the embedding extends to the identity") {
        auto a = shared(six());
        auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(a));
        auto ext = hull::extend_hom({a, v, a->classes().class_of});
        std::mt19937_64 rng(46);
        for (int t = 0; t < 20; ++t) {
            const QVector s = v->sample(rng, false);
            CHECK(ext.map(s) == s);
        }
    }
    SUBCASE("two constructions agree") {
        auto a = shared(six());
        auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(chain(2)));
        auto ext = hull::extend_hom({a, v, {a->classes().class_of[0]}});
        hull::LinearExtension lin(ext.hom);
        std::mt19937_64 rng(47);
        auto ra = hull::riesz_hull(a);
        for (int t = 0; t < 40; ++t) {
            const QVector s = ra.sample(rng, false);
            CHECK(ext.map(s) == lin(s));
        }
    }
    SUBCASE("invalid maps are rejected") {
        auto a = shared(six());
        auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(diagonal()));
        CHECK(code_of([&] { hull::extend_hom({a, v, {0, 1}}); }) == ErrorCode::NotHom);
    }
}

TEST_CASE("functor examples and laws") {
    SUBCASE("identity") {
        auto a = shared(six());
        auto r = hull::hull_functor(mv::identity_hom(a));
        CHECK(r.map.pick == std::vector<std::size_t>{0, 1});
        CHECK(r.square_commutes);
    }
    SUBCASE("embedding of a chain into the diagonal") {
        auto r = hull::hull_functor({shared(chain(2)), shared(diagonal()), {0, 0}});
        CHECK(r.injective);
        CHECK(r.image_rank == 1);
        CHECK(r.source_rank == 1);
        CHECK(r.source_is_embedding);
    }
    SUBCASE("composition on random chains of maps") {
        std::mt19937_64 rng(48);
        int pairs = 0;
        for (int iter = 0; iter < 40; ++iter) {
            auto a = shared(mvtest::random_algebra(rng, {2, 3, 1}));
            auto b = shared(mvtest::random_algebra(rng, {3, 3, 1}));
            auto c = shared(mvtest::random_algebra(rng, {3, 3, 1}));
            std::vector<std::size_t> hm(b->dim()), gm(c->dim());
            for (auto& x : hm) x = static_cast<std::size_t>(mvtest::uniform(rng, 0, a->classes().count() - 1));
            for (auto& x : gm) x = static_cast<std::size_t>(mvtest::uniform(rng, 0, b->classes().count() - 1));
            mv::PointMapHom h{a, b, hm}, g{b, c, gm};
            try {
                (void)mv::hom_check(h);
                (void)mv::hom_check(g);
            } catch (const Error&) {
                continue;
            }
            ++pairs;
            const auto rh = hull::hull_functor(h);
            const auto rg = hull::hull_functor(g);
            const auto rgh = hull::hull_functor(mv::compose(g, h));
            CHECK(rgh.map == rg.map.after(rh.map));
            for (const auto& s : rh.source_hull->span_basis()) CHECK(rgh.map(s) == rg.map(rh.map(s)));
        }
        CHECK(pairs > 5);
    }
}

TEST_CASE("adjunction examples") {
    SUBCASE("random small algebras against their own hulls") {
        std::mt19937_64 rng(49);
        for (int iter = 0; iter < 10; ++iter) {
            auto a = shared(mvtest::random_algebra(rng, {2, 3, 1}));
            auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(a));
            auto rep = hull::adjunction_check(a, v, 7);
            CHECK(rep.all());
            CHECK(rep.homs_checked >= 1);
        }
    }
    SUBCASE("full grid") {
        auto a = shared(GridAlgebra::generate(PointSet::numbered(2), 3, {q({"1/3", "0"}), q({"0", "1/3"})}));
        auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(a));
        CHECK(v->span_basis() == std::vector<QVector>{q({"1", "0"}), q({"0", "1"})});
        CHECK(v->member(q({"1/7", "5/8"})));
        CHECK(hull::adjunction_check(a, v).all());
    }
    SUBCASE("constants") {
        auto a = shared(GridAlgebra::generate(PointSet::numbered(2), 1, {}));
        auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(a));
        CHECK(v->span_basis() == std::vector<QVector>{q({"1", "1"})});
        auto rep = hull::adjunction_check(a, v);
        CHECK(rep.all());
        CHECK(rep.homs_checked == 1);
    }
    SUBCASE("a hull against a different target") {
        auto a = shared(six());
        auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(chain(2)));
        auto rep = hull::adjunction_check(a, v);
        CHECK(rep.all());
        CHECK(rep.homs_checked == 2);
    }
}

TEST_CASE("hull characterizations") {
    std::mt19937_64 rng(50);
    for (int iter = 0; iter < 20; ++iter) {
        auto a = mvtest::random_algebra(rng);
        auto h = hull::riesz_hull(a);

        // The span of G is the span of A itself.
        CHECK(h.span_basis() == la::rref_basis(a.elements(), a.dim()));

        // The hull of A equals the hull of finite pieces of A_d.
        hull::DivisibleHull d(h.lgroup());
        for (std::uint32_t k = 2; k <= 4; ++k) {
            auto ak = d.refinement(k);
            for (const auto& e : a.elements()) CHECK(ak.contains(e));
            CHECK(hull::riesz_hull(ak).span_basis() == h.span_basis());
        }

        // The hull of its own unit interval reproduces it.
        auto again = hull::riesz_hull(hull::gamma_unit(h.lgroup()));
        CHECK(again.span_basis() == h.span_basis());

        // Equal skeletons force equal spans, and different spans show up
        // as a skeleton vector one side lacks.
        auto other = hull::riesz_hull(mvtest::random_algebra(rng, {a.dim(), 4, 2}));
        if (other.dim() != h.dim()) continue;
        bool same = true;
        for (int t = 0; t < 40 && same; ++t) {
            same = other.member(h.sample(rng, false)) && h.member(other.sample(rng, false));
        }
        for (const auto& b : h.span_basis()) {
            QVector s = b;
            for (auto& x : s) x = abs(x);
            same = same && other.member(s) == h.member(s);
        }
        CHECK(same == (other.span_basis() == h.span_basis()));
    }
}
