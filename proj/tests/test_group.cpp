#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "delocx/group.hpp"

using namespace delocx;

namespace {

PermGroup s3() { return group_from_permutations(3, {{1, 0, 2}, {1, 2, 0}}); }
PermGroup z4() { return group_from_permutations(4, {{1, 2, 3, 0}}); }
PermGroup z2() { return group_from_permutations(2, {{1, 0}}); }

} // namespace

TEST_CASE("closure enumeration") {
    auto trivial = group_from_permutations(1, {});
    CHECK(trivial.group.order() == 1);

    CHECK(s3().group.order() == 6);
    CHECK(z4().group.order() == 4);

    CHECK_THROWS_AS(group_from_permutations(3, {{0, 0, 1}}), NotBijective);
    CHECK_THROWS_AS(group_from_permutations(2, {{1}}), NotBijective);
    CHECK_THROWS_AS(group_from_permutations(5, {{1, 2, 3, 4, 0}}, 3), ClosureCapExceeded);
}

TEST_CASE("group structure queries") {
    auto g = s3().group;
    CHECK(g.check_associative());
    CHECK(g.identity() == 0);
    CHECK(g.exponent() == 6);
    CHECK_FALSE(g.is_abelian());
    CHECK(z4().group.is_abelian());
    for (Elem x = 0; x < g.order(); ++x) {
        CHECK(g.mul(x, g.inv(x)) == 0);
        CHECK(g.mul(g.inv(x), x) == 0);
    }
}

TEST_CASE("conjugacy classes partition the group") {
    SECTION("trivial group has one class") {
        auto t = group_from_permutations(1, {});
        CHECK(conjugacy_classes(t.group).size() == 1);
    }
    SECTION("S3 has classes of sizes 1,2,3") {
        auto classes = conjugacy_classes(s3().group);
        REQUIRE(classes.size() == 3);
        std::vector<std::size_t> sizes;
        for (const auto& c : classes) sizes.push_back(c.members.size());
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
        CHECK(classes[0].members == std::vector<Elem>{0});
    }
    SECTION("abelian groups have singleton classes") {
        auto classes = conjugacy_classes(z4().group);
        CHECK(classes.size() == 4);
        for (const auto& c : classes) CHECK(c.members.size() == 1);
    }
    SECTION("classes are disjoint and covering, representatives minimal") {
        auto g = s3().group;
        std::vector<int> hits(g.order(), 0);
        for (const auto& c : conjugacy_classes(g)) {
            CHECK(c.representative == c.members.front());
            for (Elem m : c.members) ++hits[m];
        }
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("centralizers and orbit-stabilizer") {
    auto g = s3().group;
    CHECK(centralizer(g, 0).members.size() == static_cast<std::size_t>(g.order()));
    auto a = z4().group;
    for (Elem x = 0; x < a.order(); ++x)
        CHECK(centralizer(a, x).members.size() == static_cast<std::size_t>(a.order()));
    CHECK_THROWS_AS(centralizer(g, 17), ElementNotInGroup);

    // transposition in S3 has centralizer of order 2 containing e and itself
    for (const auto& c : conjugacy_classes(g)) {
        for (Elem m : c.members) {
            auto z = centralizer(g, m);
            CHECK(c.members.size() * z.members.size() == static_cast<std::size_t>(g.order()));
        }
        if (c.members.size() == 3) {   // the transpositions
            auto z = centralizer(g, c.representative);
            CHECK(z.members == std::vector<Elem>{0, c.representative});
        }
    }
}

TEST_CASE("burghelea dimensions agree with the HH0 oracle") {
    auto check_group = [](const FiniteGroup& g) {
        auto hp = burghelea_hp(g);
        int classes = static_cast<int>(conjugacy_classes(g).size());
        CHECK(hp.even_dim == classes);
        CHECK(hp.odd_dim == 0);
        CHECK(hh0_group_oracle(g) == classes);
    };
    check_group(group_from_permutations(1, {}).group);
    check_group(z2().group);
    check_group(z4().group);
    check_group(s3().group);
}

TEST_CASE("hh0 oracle cap") {
    CHECK_THROWS_AS(hh0_group_oracle(s3().group, 2), CapExceeded);
}

TEST_CASE("cyclic traces vanish on commutators") {
    auto g = s3().group;
    auto hp = burghelea_hp(g);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        GroupAlgebraElement a(g.order()), b(g.order());
        for (Elem x = 0; x < g.order(); ++x) {
            a[x] = Rat(coef(rng), 1 + (rng() % 3));
            b[x] = Rat(coef(rng), 1 + (rng() % 3));
        }
        auto ab = group_algebra_mul(g, a, b);
        auto ba = group_algebra_mul(g, b, a);
        for (const auto& tr : hp.basis)
            CHECK(tr.evaluate(ab) == tr.evaluate(ba));
    }
}

TEST_CASE("subgroup extraction") {
    auto g = s3().group;
    auto z = centralizer(g, conjugacy_classes(g)[1].representative);
    auto sub = subgroup_from_members(g, z.members);
    CHECK(sub.group.order() == static_cast<int>(z.members.size()));
    CHECK(sub.group.check_associative());
    CHECK(sub.to_parent[0] == 0);
}
