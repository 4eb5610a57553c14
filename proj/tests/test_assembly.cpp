#include <catch2/catch_amalgamated.hpp>

#include "delocx/assembly.hpp"

using namespace delocx;

namespace {

SimplicialComplex polygon(int n) {
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return SimplicialComplex(n, edges);
}
GComplex square_reflection() {
    return GComplex::from_generators(polygon(4), {{0, 3, 2, 1}});
}
GComplex square_rotation() {
    return GComplex::from_generators(polygon(4), {{2, 3, 0, 1}});
}
GComplex z2_on_point() {
    SimplicialComplex pt(1, {});
    FiniteGroup z2({{0, 1}, {1, 0}}, {1});
    return GComplex(pt, z2, {{0}, {0}});
}

CycMatrix scalar(const Cyclotomic& c) { return CycMatrix{{c}}; }

FlatEquivBundle sign_bundle_on_point() {
    return FlatEquivBundle::from_representation(z2_on_point(), 1,
                                                {scalar(Cyclotomic(Rat(-1)))});
}
FlatEquivBundle regular_bundle_on_point() {
    CycMatrix swap{{Cyclotomic(0), Cyclotomic(1)}, {Cyclotomic(1), Cyclotomic(0)}};
    return FlatEquivBundle::from_representation(z2_on_point(), 2, {swap});
}

} // namespace

TEST_CASE("bundle validation") {
    SECTION("trivial line bundle over any action is valid") {
        auto e = FlatEquivBundle::trivial_line(square_reflection());
        CHECK(validate_bundle(e).valid);
    }
    SECTION("sign representation over a fixed point is valid") {
        CHECK(validate_bundle(sign_bundle_on_point()).valid);
    }
    SECTION("corrupting one matrix produces a cocycle violation with witness") {
        auto bad = regular_bundle_on_point().with_corrupted_entry(
            1, 0, CycMatrix{{Cyclotomic(0), Cyclotomic(1)}, {Cyclotomic(2), Cyclotomic(0)}});
        auto report = validate_bundle(bad);
        CHECK_FALSE(report.valid);
        CHECK_FALSE(report.violations.empty());
    }
}

TEST_CASE("delocalized Chern character of flat bundles") {
    SECTION("trivial line bundle: ch^g = 1 on every nonempty fixed set") {
        auto e = FlatEquivBundle::trivial_line(square_reflection());
        auto ch = deloc_chern(e);
        REQUIRE(ch.parts.count(0) == 1);
        REQUIRE(ch.parts.count(1) == 1);
        for (const auto& [rep, graded] : ch.parts) {
            const auto& c = graded.at(0);
            for (const auto& [v, val] : c.values) CHECK(val == Cyclotomic(1));
        }
        // free rotation: the nonidentity class has empty fixed set, no part
        auto ch2 = deloc_chern(FlatEquivBundle::trivial_line(square_rotation()));
        CHECK(ch2.parts.count(1) == 0);
    }
    SECTION("regular representation over a point: ch^e = 2, ch^sigma = 0") {
        auto ch = deloc_chern(regular_bundle_on_point());
        CHECK(ch.parts.at(0).at(0).at(0) == Cyclotomic(2));
        // trace of the swap matrix is 0, so the sigma part is the zero cochain
        bool sigma_zero = !ch.parts.count(1) || !ch.parts.at(1).count(0) ||
                          ch.parts.at(1).at(0).is_zero();
        CHECK(sigma_zero);
    }
    SECTION("sign representation over a point: ch^e = 1, ch^sigma = -1") {
        auto ch = deloc_chern(sign_bundle_on_point());
        CHECK(ch.parts.at(0).at(0).at(0) == Cyclotomic(1));
        CHECK(ch.parts.at(1).at(0).at(0) == Cyclotomic(Rat(-1)));
    }
    SECTION("additivity under direct sum") {
        auto a = sign_bundle_on_point();
        auto b = regular_bundle_on_point();
        auto ch_sum = deloc_chern(a.direct_sum(b));
        auto ch_a = deloc_chern(a);
        auto ch_b = deloc_chern(b);
        for (Elem rep : {0, 1}) {
            Cyclotomic lhs = ch_sum.parts.count(rep) && ch_sum.parts.at(rep).count(0)
                                 ? ch_sum.parts.at(rep).at(0).at(0) : Cyclotomic(0);
            Cyclotomic ra = ch_a.parts.count(rep) && ch_a.parts.at(rep).count(0)
                                 ? ch_a.parts.at(rep).at(0).at(0) : Cyclotomic(0);
            Cyclotomic rb = ch_b.parts.count(rep) && ch_b.parts.at(rep).count(0)
                                 ? ch_b.parts.at(rep).at(0).at(0) : Cyclotomic(0);
            CHECK(lhs == ra + rb);
        }
    }
}

TEST_CASE("euler assembly characters") {
    SECTION("trivial group, trivial line: the Euler characteristic") {
        auto e = FlatEquivBundle::trivial_line(GComplex::with_trivial_group(polygon(4)));
        auto chi = euler_assembly(e);
        CHECK(chi.values.at(0) == Cyclotomic(0));   // circle

        SimplicialComplex sphere(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
        auto es = FlatEquivBundle::trivial_line(GComplex::with_trivial_group(sphere));
        CHECK(euler_assembly(es).values.at(0) == Cyclotomic(2));
    }
    SECTION("reflection on the circle, trivial line: (0, 2)") {
        auto e = FlatEquivBundle::trivial_line(square_reflection());
        auto chi = euler_assembly(e);
        CHECK(chi.values.at(0) == Cyclotomic(0));
        CHECK(chi.values.at(1) == Cyclotomic(2));
    }
    SECTION("sign bundle on a fixed point: (1, -1)") {
        auto chi = euler_assembly(sign_bundle_on_point());
        CHECK(chi.values.at(0) == Cyclotomic(1));
        CHECK(chi.values.at(1) == Cyclotomic(Rat(-1)));
    }
    SECTION("additivity") {
        auto a = sign_bundle_on_point();
        auto b = regular_bundle_on_point();
        auto chi = euler_assembly(a.direct_sum(b));
        CHECK(chi == euler_assembly(a) + euler_assembly(b));
    }
    SECTION("characters are class functions on a nonabelian group") {
        auto s3 = GComplex::from_generators(SimplicialComplex(3, {}),
                                            {{1, 0, 2}, {1, 2, 0}});
        auto e = FlatEquivBundle::trivial_line(s3);
        auto chi = euler_assembly(e);   // throws internally if not class-constant
        CHECK(chi.values.size() == 3);
        CHECK(chi.values.at(0) == Cyclotomic(3));   // identity: three points
    }
}

TEST_CASE("index pairing: both sides computed and compared exactly") {
    SECTION("reflection circle, trivial bundle, tau at the reflection: 2 == 2") {
        auto e = FlatEquivBundle::trivial_line(square_reflection());
        auto hp = burghelea_hp(e.base().group());
        auto report = index_pairing(e, hp.basis[1]);
        CHECK(report.lhs == Cyclotomic(2));
        CHECK(report.rhs == Cyclotomic(2));
        CHECK(report.equal);
    }
    SECTION("reflection circle, tau at the identity: 0 == 0") {
        auto e = FlatEquivBundle::trivial_line(square_reflection());
        auto hp = burghelea_hp(e.base().group());
        auto report = index_pairing(e, hp.basis[0]);
        CHECK(report.lhs == Cyclotomic(0));
        CHECK(report.rhs == Cyclotomic(0));
        CHECK(report.equal);
    }
    SECTION("free rotation, tau at the rotation: empty fixed set, 0 == 0") {
        auto e = FlatEquivBundle::trivial_line(square_rotation());
        auto hp = burghelea_hp(e.base().group());
        auto report = index_pairing(e, hp.basis[1]);
        CHECK(report.lhs == Cyclotomic(0));
        CHECK(report.rhs == Cyclotomic(0));
        CHECK(report.equal);
    }
    SECTION("zeta_4 line bundle on the free Z4 octagon") {
        auto oct = GComplex::from_generators(polygon(8), {{2, 3, 4, 5, 6, 7, 0, 1}});
        REQUIRE(oct.group().order() == 4);
        auto e = FlatEquivBundle::from_representation(oct, 1,
                                                      {scalar(Cyclotomic::zeta(4))});
        auto hp = burghelea_hp(oct.group());
        for (const auto& tau : hp.basis) {
            auto report = index_pairing(e, tau);
            CHECK(report.equal);
            CHECK(report.lhs == Cyclotomic(0));
        }
    }
}

TEST_CASE("induction compatibility against the character-theory oracle") {
    // S3 acting on 3 letters = cosets of an order-2 stabilizer H; the bundle
    // induced from the sign character of H must assemble to the induced
    // character (3, -1, 0) on (e, transpositions, 3-cycles).
    auto pg = group_from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
    const auto& g = pg.group;
    GComplex kg(SimplicialComplex(3, {}), g, pg.perms);

    // stabilizer of letter 2
    std::vector<Elem> stab;
    for (Elem x = 0; x < g.order(); ++x)
        if (pg.perms[x][2] == 2) stab.push_back(x);
    REQUIRE(stab.size() == 2);
    auto in_h = [&](Elem x) { return x == stab[0] || x == stab[1]; };
    auto sign_w = [&](Elem h) { return h == 0 ? Cyclotomic(1) : Cyclotomic(Rat(-1)); };

    // transversal: x_l moves letter 2 to l
    std::vector<Elem> transversal(3, -1);
    for (Elem x = 0; x < g.order(); ++x) {
        int l = pg.perms[x][2];
        if (transversal[l] < 0) transversal[l] = x;
    }

    // induced bundle: rho(a, l) = W(x_l a x_{l.a}^{-1})
    std::vector<std::vector<CycMatrix>> rho(g.order(), std::vector<CycMatrix>(3));
    for (Elem a = 0; a < g.order(); ++a)
        for (int l = 0; l < 3; ++l) {
            int la = pg.perms[a][l];
            Elem h = g.mul(g.mul(transversal[l], a), g.inv(transversal[la]));
            REQUIRE(in_h(h));
            rho[a][l] = scalar(sign_w(h));
        }
    FlatEquivBundle induced(kg, {1, 1, 1}, rho);
    REQUIRE(validate_bundle(induced).valid);
    auto chi = euler_assembly(induced);

    // brute-force Frobenius formula: chi(a) = (1/|H|) sum over x with
    // x a x^{-1} in H of sign(x a x^{-1})
    for (const auto& cls : conjugacy_classes(g)) {
        Cyclotomic expect(0);
        for (Elem x = 0; x < g.order(); ++x) {
            Elem conj = g.mul(g.mul(x, cls.representative), g.inv(x));
            if (in_h(conj)) expect += sign_w(conj);
        }
        expect = expect * Cyclotomic(Rat(1, 2));
        CHECK(chi.values.at(cls.representative) == expect);
    }
    CHECK(chi.values.at(0) == Cyclotomic(3));
}

TEST_CASE("chern_assembly_check summaries") {
    SECTION("empty corpus reports zero failures") {
        auto summary = chern_assembly_check({});
        CHECK(summary.total == 0);
        CHECK(summary.failures == 0);
    }
    SECTION("a corrupted bundle is flagged with a witness") {
        auto good = FlatEquivBundle::trivial_line(square_reflection());
        auto hp = burghelea_hp(good.base().group());
        auto bad = good.with_corrupted_entry(1, 1, scalar(Cyclotomic(3)));
        std::vector<IndexCorpusEntry> corpus;
        corpus.push_back(IndexCorpusEntry{"good", good, hp.basis[1]});
        corpus.push_back(IndexCorpusEntry{"bad", bad, hp.basis[1]});
        auto summary = chern_assembly_check(corpus);
        CHECK(summary.total == 2);
        CHECK(summary.failures == 1);
        REQUIRE(summary.witnesses.size() == 1);
        CHECK(summary.witnesses[0].find("bad") == 0);
    }
}
