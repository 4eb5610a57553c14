#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "delocx/corpus.hpp"
#include "delocx/gcomplex.hpp"

using namespace delocx;

namespace {

// square boundary: vertices 0..3, edges of the 4-cycle
SimplicialComplex square_circle() {
    return SimplicialComplex(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

GComplex square_reflection() {
    // reflection across the 0-2 diagonal: 1 <-> 3
    return GComplex::from_generators(square_circle(), {{0, 3, 2, 1}});
}

GComplex square_rotation() {
    // 180 degree rotation: v -> v+2
    return GComplex::from_generators(square_circle(), {{2, 3, 0, 1}});
}

// minimal 7-vertex torus: faces {i,i+1,i+3} and {i,i+2,i+3} mod 7
SimplicialComplex torus7() {
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 7; ++i) {
        faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
        faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex(7, faces);
}

} // namespace

TEST_CASE("complex construction closes faces and counts") {
    auto k = square_circle();
    CHECK(k.dim() == 1);
    CHECK(k.count(0) == 4);
    CHECK(k.count(1) == 4);
    CHECK(k.euler_characteristic() == 0);

    auto t = torus7();
    CHECK(t.count(0) == 7);
    CHECK(t.count(1) == 21);
    CHECK(t.count(2) == 14);
    CHECK(t.euler_characteristic() == 0);

    CHECK_THROWS_AS(SimplicialComplex(3, {{0, 0, 1}}), InputError);
    CHECK_THROWS_AS(SimplicialComplex(2, {{0, 5}}), InputError);
}

TEST_CASE("validate_gcomplex") {
    SECTION("trivial group on any complex is valid and regular") {
        auto kg = GComplex::with_trivial_group(torus7());
        auto rep = validate_gcomplex(kg);
        CHECK(rep.valid);
        CHECK(rep.regular);
    }
    SECTION("square rotation is valid and regular") {
        auto rep = validate_gcomplex(square_rotation());
        CHECK(rep.valid);
        CHECK(rep.regular);
    }
    SECTION("swap of an edge's endpoints is a regularity violation") {
        SimplicialComplex seg(2, {{0, 1}});
        auto kg = GComplex::from_generators(seg, {{1, 0}});
        auto rep = validate_gcomplex(kg);
        CHECK_FALSE(rep.regular);
        CHECK_FALSE(rep.violations.empty());
    }
}

TEST_CASE("barycentric subdivision") {
    SECTION("single edge becomes a 3-vertex path") {
        SimplicialComplex seg(2, {{0, 1}});
        auto sd = barycentric_subdivide(GComplex::with_trivial_group(seg));
        CHECK(sd.complex().count(0) == 3);
        CHECK(sd.complex().count(1) == 2);
    }
    SECTION("square boundary subdivides to the 8-gon") {
        auto sd = barycentric_subdivide(square_rotation());
        CHECK(sd.complex().count(0) == 8);
        CHECK(sd.complex().count(1) == 8);
        auto rep = validate_gcomplex(sd);
        CHECK(rep.valid);
        CHECK(rep.regular);
    }
    SECTION("irregular actions become regular after two subdivisions") {
        std::vector<GComplex> irregular;
        irregular.push_back(GComplex::from_generators(SimplicialComplex(2, {{0, 1}}), {{1, 0}}));
        // reflection of the square across an edge axis: two edges setwise fixed
        irregular.push_back(GComplex::from_generators(square_circle(), {{1, 0, 3, 2}}));
        // transposition pair on the tetrahedron boundary
        irregular.push_back(GComplex::from_generators(
            SimplicialComplex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}),
            {{1, 0, 3, 2}}));
        for (const auto& kg : irregular) {
            CHECK_FALSE(validate_gcomplex(kg).regular);
            auto sd2 = barycentric_subdivide(barycentric_subdivide(kg));
            auto rep = validate_gcomplex(sd2);
            CHECK(rep.valid);
            CHECK(rep.regular);
        }
    }
    SECTION("torus subdivision keeps Euler characteristic") {
        auto sd = barycentric_subdivide(GComplex::with_trivial_group(torus7()));
        CHECK(sd.complex().euler_characteristic() == 0);
        CHECK(sd.complex().count(2) == 14 * 6);
    }
}

TEST_CASE("fixed subcomplexes") {
    SECTION("identity fixes everything") {
        auto kg = square_reflection();
        auto fix = fixed_subcomplex(kg, 0);
        CHECK(fix.complex.vertex_count() == 4);
        CHECK(fix.complex.count(1) == 4);
    }
    SECTION("reflection across a diagonal fixes two isolated vertices") {
        auto kg = square_reflection();
        auto fix = fixed_subcomplex(kg, 1);
        CHECK(fix.complex.vertex_count() == 2);
        CHECK(fix.complex.count(1) == 0);
        CHECK(fix.vertex_to_parent == std::vector<int>{0, 2});
        CHECK(fix.centralizer.group.order() == 2);
    }
    SECTION("180 degree rotation fixes nothing") {
        auto kg = square_rotation();
        auto fix = fixed_subcomplex(kg, 1);
        CHECK(fix.complex.is_empty());
    }
    SECTION("irregular action is rejected") {
        SimplicialComplex seg(2, {{0, 1}});
        auto kg = GComplex::from_generators(seg, {{1, 0}});
        CHECK_THROWS_AS(fixed_subcomplex(kg, 1), NotRegular);
    }
    SECTION("conjugate elements give translated fixed sets") {
        // D3 on the hexagon: rotation r: v+2, reflection s: v -> -v
        SimplicialComplex hex(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
        auto kg = GComplex::from_generators(hex, {{2, 3, 4, 5, 0, 1}, {0, 5, 4, 3, 2, 1}});
        REQUIRE(kg.group().order() == 6);
        auto rep = validate_gcomplex(kg);
        REQUIRE(rep.regular);
        for (Elem g = 0; g < 6; ++g)
            for (Elem h = 0; h < 6; ++h) {
                auto fix_g = fixed_subcomplex(kg, g);
                auto fix_conj = fixed_subcomplex(kg, kg.group().conj(g, h));
                // Fix(h^{-1} g h) = Fix(g) . h as vertex sets
                std::set<int> moved;
                for (int v : fix_g.vertex_to_parent) moved.insert(kg.vertex_image(h, v));
                std::set<int> conj(fix_conj.vertex_to_parent.begin(),
                                   fix_conj.vertex_to_parent.end());
                CHECK(moved == conj);
            }
    }
}

TEST_CASE("two subdivisions give regular actions across the whole corpus") {
    for (const auto& [name, kg] : corpus::builtin_actions()) {
        INFO(name);
        auto sd2 = barycentric_subdivide(barycentric_subdivide(kg));
        auto rep = validate_gcomplex(sd2);
        CHECK(rep.valid);
        CHECK(rep.regular);
    }
}

TEST_CASE("quotient complexes") {
    SECTION("trivial group gives the same complex") {
        auto q = quotient_complex(GComplex::with_trivial_group(square_circle()));
        CHECK(q.count(0) == 4);
        CHECK(q.count(1) == 4);
    }
    SECTION("two swapped points quotient to one point") {
        SimplicialComplex pts(2, {});
        auto kg = GComplex::from_generators(pts, {{1, 0}});
        auto q = quotient_complex(kg);
        CHECK(q.vertex_count() == 1);
    }
    SECTION("square/rotation collapses without subdivision, works after") {
        CHECK_THROWS_AS(quotient_complex(square_rotation()), NotSimplicialQuotient);
        auto sd = barycentric_subdivide(square_rotation());
        auto q = quotient_complex(sd);
        CHECK(q.count(0) == 4);
        CHECK(q.count(1) == 4);
        CHECK(q.euler_characteristic() == 0);   // a simplicial circle
    }
    SECTION("orbit bookkeeping matches quotient Euler characteristic") {
        auto sd = barycentric_subdivide(square_reflection());
        auto q = quotient_complex(sd);
        auto counts = simplex_orbit_counts(sd);
        long chi = 0;
        for (std::size_t qd = 0; qd < counts.size(); ++qd)
            chi += (qd % 2 == 0 ? 1 : -1) * counts[qd];
        CHECK(chi == q.euler_characteristic());
    }
}

TEST_CASE("orientations") {
    SECTION("triangle boundary circle with coherent signs") {
        SimplicialComplex tri(3, {{0, 1}, {1, 2}, {0, 2}});
        // orient 0->1->2->0: edges sorted lex: {0,1},{0,2},{1,2}
        CHECK(check_orientation(tri, Orientation{{1, -1, 1}}));
        CHECK_FALSE(check_orientation(tri, Orientation{{1, 1, 1}}));
    }
    SECTION("a cone is not pure after adding a dangling edge") {
        SimplicialComplex k(4, {{0, 1, 2}, {0, 3}});
        CHECK_THROWS_AS(check_orientation(k, Orientation{{1}}), NotPure);
    }
    SECTION("7-vertex torus carries a coherent orientation") {
        auto t = torus7();
        // orientation: +1 on every {i,i+1,i+3} face, -1 on every {i,i+2,i+3};
        // signs transported through the sorted storage order
        std::vector<int> signs(t.count(2), 0);
        for (int i = 0; i < 7; ++i) {
            std::vector<int> a{i, (i + 1) % 7, (i + 3) % 7};
            std::vector<int> b{i, (i + 2) % 7, (i + 3) % 7};
            int sa = detail::sort_sign(a, t.vertex_ranks());
            int sb = detail::sort_sign(b, t.vertex_ranks());
            signs[t.index_of(a)] = sa;
            signs[t.index_of(b)] = -sb;
        }
        CHECK(check_orientation(t, Orientation{signs}));
    }
    SECTION("tetrahedron boundary sphere with alternating signs") {
        SimplicialComplex s(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
        // the face omitting vertex j gets sign (-1)^j
        CHECK(check_orientation(s, Orientation{{-1, 1, -1, 1}}));
    }
}
