#pragma once

#include <string>
#include <vector>

#include "delocx/assembly.hpp"
#include "delocx/pairing.hpp"

namespace delocx::corpus {

// ---------------------------------------------------------------------------
// Complexes and orientations
// ---------------------------------------------------------------------------

inline SimplicialComplex point() { return SimplicialComplex(1, {}); }

inline SimplicialComplex points(int n) { return SimplicialComplex(n, {}); }

inline SimplicialComplex polygon(int n) {
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return SimplicialComplex(n, edges);
}

inline Orientation polygon_orientation(int n) {
    SimplicialComplex k = polygon(n);
    std::vector<int> signs(n, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<int> e{i, (i + 1) % n};
        int sign = detail::sort_sign(e, k.vertex_ranks());
        signs[k.index_of(e)] = sign;
    }
    return Orientation{signs};
}

/// The minimal 7-vertex torus: faces {i,i+1,i+3} and {i,i+2,i+3} mod 7.
inline SimplicialComplex torus7() {
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 7; ++i) {
        faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
        faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex(7, faces);
}

inline Orientation torus7_orientation() {
    auto t = torus7();
    std::vector<int> signs(t.count(2), 0);
    for (int i = 0; i < 7; ++i) {
        std::vector<int> a{i, (i + 1) % 7, (i + 3) % 7};
        std::vector<int> b{i, (i + 2) % 7, (i + 3) % 7};
        int sa = detail::sort_sign(a, t.vertex_ranks());
        int sb = detail::sort_sign(b, t.vertex_ranks());
        signs[t.index_of(a)] = sa;
        signs[t.index_of(b)] = -sb;
    }
    return Orientation{signs};
}

inline SimplicialComplex tetra_sphere() {
    return SimplicialComplex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline Orientation tetra_sphere_orientation() {
    // boundary of [0123]: face omitting vertex j carries sign (-1)^j
    auto s = tetra_sphere();
    std::vector<int> signs(4, 0);
    signs[s.index_of({1, 2, 3})] = 1;
    signs[s.index_of({0, 2, 3})] = -1;
    signs[s.index_of({0, 1, 3})] = 1;
    signs[s.index_of({0, 1, 2})] = -1;
    return Orientation{signs};
}

/// Octahedron boundary sphere. Vertices 0..5 are the unit vectors
/// +x,-x,+y,-y,+z,-z; faces pick one vertex from each axis.
inline SimplicialComplex octa_sphere() {
    std::vector<std::vector<int>> faces;
    for (int x : {0, 1})
        for (int y : {2, 3})
            for (int z : {4, 5}) faces.push_back({x, y, z});
    return SimplicialComplex(6, faces);
}

inline Orientation octa_sphere_orientation() {
    auto s = octa_sphere();
    auto axis_vec = [](int v) {
        static const int vecs[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                       {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
        return vecs[v];
    };
    std::vector<int> signs(s.count(2), 0);
    for (int i = 0; i < s.count(2); ++i) {
        const auto& f = s.simplices(2)[i];
        const int* a = axis_vec(f[0]);
        const int* b = axis_vec(f[1]);
        const int* c = axis_vec(f[2]);
        int det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                  a[2] * (b[0] * c[1] - b[1] * c[0]);
        signs[i] = det > 0 ? 1 : -1;
    }
    return Orientation{signs};
}

/// Two disjoint copies of a complex, the second with vertex ids shifted.
inline SimplicialComplex doubled(const SimplicialComplex& k) {
    const int n = k.vertex_count();
    std::vector<std::vector<int>> simplices;
    for (int q = 0; q <= k.dim(); ++q)
        for (const auto& s : k.simplices(q)) {
            simplices.push_back(s);
            std::vector<int> shifted = s;
            for (auto& v : shifted) v += n;
            simplices.push_back(std::move(shifted));
        }
    return SimplicialComplex(2 * n, simplices);
}

// ---------------------------------------------------------------------------
// Groups (as permutation groups, for the CLI samples and criterion 1)
// ---------------------------------------------------------------------------

inline PermGroup trivial_group() { return group_from_permutations(1, {}); }
inline PermGroup z2() { return group_from_permutations(2, {{1, 0}}); }
inline PermGroup z4() { return group_from_permutations(4, {{1, 2, 3, 0}}); }
inline PermGroup s3() { return group_from_permutations(3, {{1, 0, 2}, {1, 2, 0}}); }
inline PermGroup z7() { return group_from_permutations(7, {{1, 2, 3, 4, 5, 6, 0}}); }

/// Generator permutations of the quaternion group in its right-regular
/// representation on its 8 elements (1,-1,i,-i,j,-j,k,-k).
inline std::vector<std::vector<int>> q8_generator_perms() {
    // elements indexed 2*unit + (negative ? 1 : 0), units 1,i,j,k = 0..3
    auto unit_mul = [](int a, int b, int& sign) {
        static const int table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int signs[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
        sign = signs[a][b];
        return table[a][b];
    };
    auto mul = [&](int x, int y) {
        int ux = x / 2, sx = (x % 2) ? -1 : 1;
        int uy = y / 2, sy = (y % 2) ? -1 : 1;
        int sign;
        int u = unit_mul(ux, uy, sign);
        int total = sx * sy * sign;
        return 2 * u + (total < 0 ? 1 : 0);
    };
    std::vector<std::vector<int>> perms;
    for (int gen : {2, 4}) {   // i and j
        std::vector<int> p(8);
        for (int x = 0; x < 8; ++x) p[x] = mul(x, gen);
        perms.push_back(std::move(p));
    }
    return perms;
}

inline PermGroup q8() { return group_from_permutations(8, q8_generator_perms()); }

struct NamedGroup {
    std::string name;
    PermGroup pg;
};

inline std::vector<NamedGroup> builtin_groups() {
    std::vector<NamedGroup> out;
    out.push_back({"trivial", trivial_group()});
    out.push_back({"z2", z2()});
    out.push_back({"z4", z4()});
    out.push_back({"s3", s3()});
    out.push_back({"q8", q8()});
    return out;
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

inline GComplex circle_trivial(int n = 4) { return GComplex::with_trivial_group(polygon(n)); }
inline GComplex circle_reflection() {
    return GComplex::from_generators(polygon(4), {{0, 3, 2, 1}});
}
inline GComplex circle_rotation() {
    return GComplex::from_generators(polygon(4), {{2, 3, 0, 1}});
}
inline GComplex octagon_rot4() {
    return GComplex::from_generators(polygon(8), {{2, 3, 4, 5, 6, 7, 0, 1}});
}
inline GComplex octagon_rot2() {
    return GComplex::from_generators(polygon(8), {{4, 5, 6, 7, 0, 1, 2, 3}});
}
inline GComplex hexagon_d3() {
    return GComplex::from_generators(polygon(6), {{2, 3, 4, 5, 0, 1}, {0, 5, 4, 3, 2, 1}});
}
inline GComplex hexagon_z3() {
    return GComplex::from_generators(polygon(6), {{2, 3, 4, 5, 0, 1}});
}
inline GComplex hexagon_antipodal() {
    return GComplex::from_generators(polygon(6), {{3, 4, 5, 0, 1, 2}});
}
inline GComplex torus_z7() {
    return GComplex::from_generators(torus7(), {{1, 2, 3, 4, 5, 6, 0}});
}
inline GComplex octa_swap() {
    // exchange the antipodal pair on the x-axis; the equator square is fixed
    return GComplex::from_generators(octa_sphere(), {{1, 0, 2, 3, 4, 5}});
}
inline GComplex octa_antipodal() {
    return GComplex::from_generators(octa_sphere(), {{1, 0, 3, 2, 5, 4}});
}
inline GComplex two_circles_swap() {
    return GComplex::from_generators(doubled(polygon(4)),
                                     {{4, 5, 6, 7, 0, 1, 2, 3}});
}
inline GComplex two_tori_swap() {
    std::vector<int> swap_perm(14);
    for (int v = 0; v < 7; ++v) {
        swap_perm[v] = v + 7;
        swap_perm[v + 7] = v;
    }
    return GComplex::from_generators(doubled(torus7()), {swap_perm});
}
inline GComplex z2_point() {
    FiniteGroup g({{0, 1}, {1, 0}}, {1});
    return GComplex(point(), g, {{0}, {0}});
}
inline GComplex gset(int n, const std::vector<std::vector<int>>& gens) {
    return GComplex::from_generators(points(n), gens);
}

struct NamedAction {
    std::string name;
    GComplex action;
};

/// The regular-action corpus: every entry validates as regular and has a
/// simplicial quotient, so the three cohomology routes can be compared in
/// all degrees.
inline std::vector<NamedAction> builtin_actions() {
    std::vector<NamedAction> out;
    out.push_back({"point_trivial", GComplex::with_trivial_group(point())});
    out.push_back({"two_points_trivial", GComplex::with_trivial_group(points(2))});
    out.push_back({"triangle_trivial", circle_trivial(3)});
    out.push_back({"square_trivial", circle_trivial(4)});
    out.push_back({"hexagon_trivial", circle_trivial(6)});
    out.push_back({"torus_trivial", GComplex::with_trivial_group(torus7())});
    out.push_back({"tetra_sphere_trivial", GComplex::with_trivial_group(tetra_sphere())});
    out.push_back({"octa_sphere_trivial", GComplex::with_trivial_group(octa_sphere())});
    out.push_back({"circle_reflection", circle_reflection()});
    out.push_back({"circle_rotation_sd", barycentric_subdivide(circle_rotation())});
    out.push_back({"circle_reflection_sd", barycentric_subdivide(circle_reflection())});
    out.push_back({"edge_swap_sd2",
                   barycentric_subdivide(barycentric_subdivide(GComplex::from_generators(
                       SimplicialComplex(2, {{0, 1}}), {{1, 0}})))});
    out.push_back({"octagon_rot4_sd", barycentric_subdivide(octagon_rot4())});
    out.push_back({"octagon_rot2_sd", barycentric_subdivide(octagon_rot2())});
    out.push_back({"hexagon_d3", hexagon_d3()});
    out.push_back({"hexagon_z3_sd", barycentric_subdivide(hexagon_z3())});
    out.push_back({"hexagon_antipodal", hexagon_antipodal()});
    out.push_back({"octa_swap", octa_swap()});
    out.push_back({"octa_swap_sd", barycentric_subdivide(octa_swap())});
    out.push_back({"two_circles_swap", two_circles_swap()});
    out.push_back({"two_tori_swap", two_tori_swap()});
    out.push_back({"z2_point", z2_point()});
    out.push_back({"s3_points", gset(3, {{1, 0, 2}, {1, 2, 0}})});
    out.push_back({"z4_regular_points", gset(4, {{1, 2, 3, 0}})});
    out.push_back({"z2_mixed_points", gset(3, {{1, 0, 2}})});
    return out;
}

/// The right-regular action of a permutation group on its own elements.
inline GComplex regular_gset(const PermGroup& pg) {
    const auto& g = pg.group;
    std::vector<std::vector<int>> action(g.order(), std::vector<int>(g.order()));
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem x = 0; x < g.order(); ++x) action[a][x] = g.mul(x, a);
    return GComplex(points(g.order()), g, std::move(action));
}

/// Z4 acting on two points through its order-2 quotient.
inline GComplex z4_on_pair() {
    auto pg = z4();
    std::vector<std::vector<int>> action(4);
    for (Elem a = 0; a < 4; ++a)
        action[a] = (a % 2 == 0) ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
    return GComplex(points(2), pg.group, std::move(action));
}

/// S3 on the two cosets of its alternating subgroup (the sign action).
inline GComplex s3_on_cosets_of_a3() {
    auto pg = s3();
    std::vector<std::vector<int>> action(6);
    for (Elem a = 0; a < 6; ++a) {
        // parity of the underlying permutation of 3 letters
        const auto& p = pg.perms[a];
        int inversions = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (p[i] > p[j]) ++inversions;
        action[a] = (inversions % 2 == 0) ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
    }
    return GComplex(points(2), pg.group, std::move(action));
}

/// Finite G-sets for the groupoid HH0 oracle (criterion: at least 10).
inline std::vector<NamedAction> builtin_gsets() {
    std::vector<NamedAction> out;
    out.push_back({"z2_free_pair", gset(2, {{1, 0}})});
    out.push_back({"z2_two_fixed", GComplex(points(2), z2().group, {{0, 1}, {0, 1}})});
    out.push_back({"z2_mixed", gset(3, {{1, 0, 2}})});
    out.push_back({"z2_point", z2_point()});
    out.push_back({"z4_regular", gset(4, {{1, 2, 3, 0}})});
    out.push_back({"z4_on_pair", z4_on_pair()});
    out.push_back({"z3_regular", gset(3, {{1, 2, 0}})});
    out.push_back({"s3_natural", gset(3, {{1, 0, 2}, {1, 2, 0}})});
    out.push_back({"s3_regular", regular_gset(s3())});
    out.push_back({"s3_sign_cosets", s3_on_cosets_of_a3()});
    out.push_back({"q8_regular", regular_gset(q8())});
    out.push_back({"trivial_five", GComplex::with_trivial_group(points(5))});
    return out;
}

// ---------------------------------------------------------------------------
// Index-pairing corpus (12 entries)
// ---------------------------------------------------------------------------

inline CycMatrix scalar_matrix(const Cyclotomic& c) { return CycMatrix{{c}}; }

inline FlatEquivBundle sign_bundle_on_point() {
    return FlatEquivBundle::from_representation(z2_point(), 1,
                                                {scalar_matrix(Cyclotomic(Rat(-1)))});
}
inline FlatEquivBundle regular_bundle_on_point() {
    CycMatrix swap{{Cyclotomic(0), Cyclotomic(1)}, {Cyclotomic(1), Cyclotomic(0)}};
    return FlatEquivBundle::from_representation(z2_point(), 2, {swap});
}
inline FlatEquivBundle zeta4_line_on_octagon() {
    return FlatEquivBundle::from_representation(octagon_rot4(), 1,
                                                {scalar_matrix(Cyclotomic::zeta(4))});
}

/// The cyclic trace of the class containing x.
inline CyclicTrace trace_at(const FiniteGroup& g, Elem x) {
    for (const auto& cls : conjugacy_classes(g))
        for (Elem m : cls.members)
            if (m == x) return CyclicTrace{cls.representative, cls.members};
    throw ElementNotInGroup("no conjugacy class contains this element");
}

/// The 12-entry verification corpus for the Chern-assembly identity.
inline std::vector<IndexCorpusEntry> builtin_index_corpus() {
    std::vector<IndexCorpusEntry> out;
    {
        auto e = FlatEquivBundle::trivial_line(GComplex::with_trivial_group(point()));
        out.push_back({"point_trivial_e", e, trace_at(e.base().group(), 0)});
    }
    {
        auto e = regular_bundle_on_point();
        out.push_back({"z2_point_regular_e", e, trace_at(e.base().group(), 0)});
        out.push_back({"z2_point_regular_s", e, trace_at(e.base().group(), 1)});
    }
    {
        auto e = sign_bundle_on_point();
        out.push_back({"z2_point_sign_e", e, trace_at(e.base().group(), 0)});
        out.push_back({"z2_point_sign_s", e, trace_at(e.base().group(), 1)});
    }
    {
        auto e = FlatEquivBundle::trivial_line(circle_trivial(4));
        out.push_back({"circle_trivial_e", e, trace_at(e.base().group(), 0)});
    }
    {
        auto e = FlatEquivBundle::trivial_line(circle_reflection());
        out.push_back({"reflection_circle_e", e, trace_at(e.base().group(), 0)});
        out.push_back({"reflection_circle_s", e, trace_at(e.base().group(), 1)});
    }
    {
        auto e = FlatEquivBundle::trivial_line(circle_rotation());
        out.push_back({"rotation_circle_s", e, trace_at(e.base().group(), 1)});
    }
    {
        auto e = zeta4_line_on_octagon();
        out.push_back({"octagon_zeta4_g", e, trace_at(e.base().group(), 1)});
    }
    {
        auto e = FlatEquivBundle::trivial_line(gset(3, {{1, 0, 2}, {1, 2, 0}}));
        // tau at a transposition: the class of the first non-identity
        // generator image
        out.push_back({"s3_points_transposition", e, trace_at(e.base().group(), 1)});
    }
    {
        auto e = FlatEquivBundle::trivial_line(GComplex::with_trivial_group(tetra_sphere()));
        out.push_back({"sphere_trivial_e", e, trace_at(e.base().group(), 0)});
    }
    return out;
}

/// lhs values of the corpus entries, derived by hand from the fixed-simplex
/// counts and fiber traces; frozen for the acceptance suite.
inline std::vector<Rat> builtin_index_corpus_expected() {
    return {Rat(1), Rat(2), Rat(0), Rat(1), Rat(-1), Rat(0),
            Rat(0), Rat(2), Rat(0), Rat(0), Rat(1),  Rat(2)};
}

// ---------------------------------------------------------------------------
// Composable umkehr pairs
// ---------------------------------------------------------------------------

struct NamedMapPair {
    std::string name;
    UmkehrMap f;
    UmkehrMap g;
};

inline UmkehrMap identity_umkehr(const GComplex& kg,
                                 const std::map<Elem, Orientation>& orients) {
    std::vector<int> id(kg.complex().vertex_count());
    for (int v = 0; v < kg.complex().vertex_count(); ++v) id[v] = v;
    return UmkehrMap(kg, kg, id, orients, orients);
}

inline UmkehrMap circle_double_cover(int m) {
    auto src = GComplex::with_trivial_group(polygon(2 * m));
    auto tgt = GComplex::with_trivial_group(polygon(m));
    std::vector<int> f(2 * m);
    for (int v = 0; v < 2 * m; ++v) f[v] = v % m;
    return UmkehrMap(src, tgt, f, {{0, polygon_orientation(2 * m)}},
                     {{0, polygon_orientation(m)}});
}

inline UmkehrMap circle_to_point(int m) {
    auto src = GComplex::with_trivial_group(polygon(m));
    auto tgt = GComplex::with_trivial_group(point());
    return UmkehrMap(src, tgt, std::vector<int>(m, 0), {{0, polygon_orientation(m)}},
                     {{0, Orientation{{1}}}});
}

inline std::vector<NamedMapPair> builtin_composable_pairs() {
    std::vector<NamedMapPair> out;
    std::map<Elem, Orientation> circle4{{0, polygon_orientation(4)}};
    {
        auto id4 = identity_umkehr(circle_trivial(4), circle4);
        out.push_back({"identity_identity", id4, id4});
    }
    out.push_back({"double_cover_then_collapse", circle_double_cover(4), circle_to_point(4)});
    out.push_back({"double_cover_tower", circle_double_cover(8), circle_double_cover(4)});
    {
        // reflection-equivariant inclusion of the fixed points, then collapse
        FiniteGroup z2g({{0, 1}, {1, 0}}, {1});
        GComplex pts(points(2), z2g, {{0, 1}, {0, 1}});
        GComplex circle = circle_reflection();
        GComplex pt(point(), z2g, {{0}, {0}});
        std::map<Elem, Orientation> pts_or{{0, Orientation{{1, 1}}}, {1, Orientation{{1, 1}}}};
        std::map<Elem, Orientation> circle_or{{1, Orientation{{1, 1}}}};
        std::map<Elem, Orientation> pt_or{{0, Orientation{{1}}}, {1, Orientation{{1}}}};
        UmkehrMap include(pts, circle, {0, 2}, pts_or, circle_or);
        UmkehrMap collapse(circle, pt, {0, 0, 0, 0}, circle_or, pt_or);
        out.push_back({"fixed_points_then_collapse", include, collapse});
    }
    {
        // free Z2 G-set maps: 4 points (two orbits) -> 2 points -> fixed point
        GComplex four = gset(4, {{1, 0, 3, 2}});
        GComplex two = gset(2, {{1, 0}});
        GComplex pt = z2_point();
        auto all_plus = [](const GComplex& kg) {
            std::map<Elem, Orientation> o;
            for (const auto& cls : conjugacy_classes(kg.group())) {
                auto fix = fixed_subcomplex(kg, cls.representative);
                if (!fix.complex.is_empty())
                    o[cls.representative] =
                        Orientation{std::vector<int>(fix.complex.count(0), 1)};
            }
            return o;
        };
        UmkehrMap fold(four, two, {0, 1, 0, 1}, all_plus(four), all_plus(two));
        UmkehrMap collapse(two, pt, {0, 0}, all_plus(two), all_plus(pt));
        out.push_back({"gset_fold_then_collapse", fold, collapse});
    }
    {
        auto sphere = GComplex::with_trivial_group(tetra_sphere());
        std::map<Elem, Orientation> sphere_or{{0, tetra_sphere_orientation()}};
        auto id_sphere = identity_umkehr(sphere, sphere_or);
        auto tgt = GComplex::with_trivial_group(point());
        UmkehrMap collapse(sphere, tgt, {0, 0, 0, 0}, sphere_or, {{0, Orientation{{1}}}});
        out.push_back({"sphere_identity_then_collapse", id_sphere, collapse});
    }
    {
        auto rot = circle_rotation();
        std::map<Elem, Orientation> rot_or{{0, polygon_orientation(4)}};
        auto id_rot = identity_umkehr(rot, rot_or);
        out.push_back({"rotation_equivariant_identity", id_rot, id_rot});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pairing-perfection cases (criterion: circle, torus, 2-sphere, per
// admissible class)
// ---------------------------------------------------------------------------

struct PairingCase {
    std::string name;
    GComplex component;        // a fixed component with its centralizer action
    Orientation orientation;
};

inline std::vector<PairingCase> builtin_pairing_cases() {
    std::vector<PairingCase> out;
    out.push_back({"circle_trivial", circle_trivial(4), polygon_orientation(4)});
    out.push_back({"torus_trivial", GComplex::with_trivial_group(torus7()),
                   torus7_orientation()});
    out.push_back({"tetra_sphere_trivial", GComplex::with_trivial_group(tetra_sphere()),
                   tetra_sphere_orientation()});
    out.push_back({"octa_sphere_trivial", GComplex::with_trivial_group(octa_sphere()),
                   octa_sphere_orientation()});
    out.push_back({"rotation_circle_identity_class", circle_rotation(),
                   polygon_orientation(4)});
    {
        // reflection class of the reflection circle: two fixed points
        auto fix = fixed_subcomplex(circle_reflection(), 1);
        out.push_back({"reflection_fixed_points", fix.with_action, Orientation{{1, 1}}});
    }
    {
        // the equatorial circle fixed by the octahedron swap
        auto fix = fixed_subcomplex(octa_swap(), 1);
        std::vector<int> signs(fix.complex.count(1), 0);
        // equator 2-4-3-5: orient the 4-cycle coherently
        auto orient_edge = [&](int a, int b, int sgn) {
            std::vector<int> e{a, b};
            int s = detail::sort_sign(e, fix.complex.vertex_ranks());
            signs[fix.complex.index_of(e)] = s * sgn;
        };
        // fixed vertices are parent 2,3,4,5 -> local 0,1,2,3 (y-,y+,z-,z+)
        orient_edge(0, 2, 1);
        orient_edge(2, 1, 1);
        orient_edge(1, 3, 1);
        orient_edge(3, 0, 1);
        out.push_back({"octa_swap_equator", fix.with_action, Orientation{signs}});
    }
    return out;
}

} // namespace delocx::corpus
