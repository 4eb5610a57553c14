#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "delocx/group.hpp"

namespace delocx {

namespace detail {

/// Sorts `verts` in place by the rank order and returns the permutation sign,
/// or 0 if a vertex repeats (degenerate simplex).
inline int sort_sign(std::vector<int>& verts, const std::vector<int>& rank) {
    int sign = 1;
    for (std::size_t i = 1; i < verts.size(); ++i)
        for (std::size_t j = i; j > 0 && rank[verts[j]] < rank[verts[j - 1]]; --j) {
            std::swap(verts[j], verts[j - 1]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < verts.size(); ++i)
        if (verts[i] == verts[i - 1]) return 0;
    return sign;
}

} // namespace detail

/// Finite abstract simplicial complex. Simplices are stored per dimension as
/// vertex lists sorted by the complex's vertex order; the lists themselves
/// are ordered lexicographically, so indices are deterministic. Closed under
/// faces by construction; every vertex is a 0-simplex.
class SimplicialComplex {
public:
    /// Builds from any set of simplices (faces are added automatically).
    SimplicialComplex(int n_vertices, const std::vector<std::vector<int>>& simplices,
                      std::vector<int> vertex_order = {})
        : n_vertices_(n_vertices) {
        if (vertex_order.empty()) {
            rank_.resize(n_vertices_);
            for (int v = 0; v < n_vertices_; ++v) rank_[v] = v;
        } else {
            if (static_cast<int>(vertex_order.size()) != n_vertices_)
                throw InputError("vertex order has wrong length");
            rank_.assign(n_vertices_, -1);
            for (int pos = 0; pos < n_vertices_; ++pos) {
                int v = vertex_order[pos];
                if (v < 0 || v >= n_vertices_ || rank_[v] != -1)
                    throw InputError("vertex order is not a permutation");
                rank_[v] = pos;
            }
        }

        std::set<std::vector<int>> closed;
        for (int v = 0; v < n_vertices_; ++v) closed.insert({v});
        for (auto s : simplices) {
            int sign = detail::sort_sign(s, rank_);
            if (sign == 0) throw InputError("simplex with repeated vertex");
            for (int v : s)
                if (v < 0 || v >= n_vertices_) throw InputError("simplex vertex out of range");
            // all non-empty subsets, preserving sort order
            const std::size_t k = s.size();
            for (std::size_t mask = 1; mask < (1u << k); ++mask) {
                std::vector<int> face;
                for (std::size_t i = 0; i < k; ++i)
                    if (mask & (1u << i)) face.push_back(s[i]);
                closed.insert(std::move(face));
            }
        }
        for (auto& s : closed) {
            int q = static_cast<int>(s.size()) - 1;
            if (q >= static_cast<int>(by_dim_.size())) by_dim_.resize(q + 1);
            by_dim_[q].push_back(s);
        }
        for (auto& level : by_dim_)
            std::sort(level.begin(), level.end(),
                      [&](const std::vector<int>& a, const std::vector<int>& b) {
                          return rank_lex_less(a, b);
                      });
        for (int q = 0; q < static_cast<int>(by_dim_.size()); ++q)
            for (int i = 0; i < static_cast<int>(by_dim_[q].size()); ++i)
                index_[by_dim_[q][i]] = i;
    }

    static SimplicialComplex empty() { return SimplicialComplex(0, {}); }

    int vertex_count() const { return n_vertices_; }
    bool is_empty() const { return n_vertices_ == 0; }
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    int vertex_rank(int v) const { return rank_[v]; }
    const std::vector<int>& vertex_ranks() const { return rank_; }

    const std::vector<std::vector<int>>& simplices(int q) const {
        static const std::vector<std::vector<int>> none;
        if (q < 0 || q > dim()) return none;
        return by_dim_[q];
    }
    int count(int q) const { return static_cast<int>(simplices(q).size()); }

    /// Index of a simplex within its dimension, or -1.
    int index_of(const std::vector<int>& sorted_verts) const {
        auto it = index_.find(sorted_verts);
        return it == index_.end() ? -1 : it->second;
    }

    long total_simplices() const {
        long n = 0;
        for (const auto& level : by_dim_) n += static_cast<long>(level.size());
        return n;
    }

    long euler_characteristic() const {
        long chi = 0;
        for (int q = 0; q <= dim(); ++q) chi += (q % 2 == 0 ? 1 : -1) * count(q);
        return chi;
    }

    /// Connected component id per vertex (via 1-skeleton), ids dense and
    /// ordered by least vertex.
    std::vector<int> vertex_components() const {
        std::vector<int> comp(n_vertices_, -1);
        int next = 0;
        for (int v = 0; v < n_vertices_; ++v) {
            if (comp[v] != -1) continue;
            comp[v] = next;
            std::vector<int> stack{v};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (const auto& e : simplices(1)) {
                    int other = -1;
                    if (e[0] == x) other = e[1];
                    else if (e[1] == x) other = e[0];
                    if (other >= 0 && comp[other] == -1) {
                        comp[other] = next;
                        stack.push_back(other);
                    }
                }
            }
            ++next;
        }
        return comp;
    }

    bool rank_lex_less(const std::vector<int>& a, const std::vector<int>& b) const {
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            if (rank_[a[i]] != rank_[b[i]]) return rank_[a[i]] < rank_[b[i]];
        }
        return a.size() < b.size();
    }

private:
    int n_vertices_;
    std::vector<int> rank_;
    std::vector<std::vector<std::vector<int>>> by_dim_;
    std::map<std::vector<int>, int> index_;
};

/// Orientation data for a pure top-dimensional complex: one sign per top
/// simplex, aligned with simplices(dim). Always supplied, never inferred.
struct Orientation {
    std::vector<int> top_signs;
};

/// True iff the signed sum of top simplices has zero simplicial boundary,
/// i.e. the complex is a closed oriented pseudomanifold for these signs.
/// Throws NotPure when some maximal simplex is not top-dimensional.
inline bool check_orientation(const SimplicialComplex& k, const Orientation& o) {
    if (k.is_empty()) return true;
    const int d = k.dim();
    if (static_cast<int>(o.top_signs.size()) != k.count(d))
        throw NotOriented("orientation sign count does not match top simplices");
    // purity: every simplex of dimension < d must be a face of some (d)-simplex
    for (int q = 0; q < d; ++q) {
        for (const auto& s : k.simplices(q)) {
            bool covered = false;
            for (const auto& t : k.simplices(d)) {
                if (std::includes(t.begin(), t.end(), s.begin(), s.end(),
                                  [&](int a, int b) { return k.vertex_rank(a) < k.vertex_rank(b); }))
                    { covered = true; break; }
            }
            if (!covered) throw NotPure("complex is not pure top-dimensional");
        }
    }
    if (d == 0) return true;    // points have empty boundary
    std::map<int, Rat> boundary;   // (d-1)-simplex index -> coefficient
    for (int t = 0; t < k.count(d); ++t) {
        const auto& top = k.simplices(d)[t];
        for (int j = 0; j <= d; ++j) {
            std::vector<int> face;
            for (int i = 0; i <= d; ++i)
                if (i != j) face.push_back(top[i]);
            int idx = k.index_of(face);
            boundary[idx] += Rat(o.top_signs[t] * ((j % 2 == 0) ? 1 : -1));
        }
    }
    for (const auto& [idx, coef] : boundary)
        if (coef != 0) return false;
    return true;
}

/// A finite simplicial complex with a right action of a finite group:
/// act(g)[v] = v.g with v.(gh) = (v.g).h, matching the arrow conventions
/// s(m,g) = m.g, t(m,g) = m used throughout.
class GComplex {
public:
    GComplex(SimplicialComplex complex, FiniteGroup group,
             std::vector<std::vector<int>> action)
        : k_(std::move(complex)), g_(std::move(group)), act_(std::move(action)) {
        if (static_cast<int>(act_.size()) != g_.order())
            throw InputError("action table size does not match group order");
        for (const auto& p : act_)
            if (static_cast<int>(p.size()) != k_.vertex_count())
                throw InputError("action permutation has wrong length");
    }

    /// Action generated by the given vertex permutations: the group is the
    /// closure of the generators acting tautologically.
    static GComplex from_generators(SimplicialComplex complex,
                                    const std::vector<std::vector<int>>& gen_perms,
                                    std::size_t cap = 1000000) {
        auto pg = group_from_permutations(complex.vertex_count(), gen_perms, cap);
        return GComplex(std::move(complex), std::move(pg.group), std::move(pg.perms));
    }

    static GComplex with_trivial_group(SimplicialComplex complex) {
        std::vector<int> id(complex.vertex_count());
        for (int v = 0; v < complex.vertex_count(); ++v) id[v] = v;
        return GComplex(std::move(complex), FiniteGroup::trivial(), {id});
    }

    const SimplicialComplex& complex() const { return k_; }
    const FiniteGroup& group() const { return g_; }

    int vertex_image(Elem g, int v) const { return act_[g][v]; }

    /// Image of a q-simplex under g: (index in dimension q, orientation sign).
    std::pair<int, int> simplex_image(int q, int idx, Elem g) const {
        std::vector<int> verts = k_.simplices(q)[idx];
        for (auto& v : verts) v = act_[g][v];
        int sign = detail::sort_sign(verts, k_.vertex_ranks());
        if (sign == 0) return {-1, 0};
        int im = k_.index_of(verts);
        return {im, im < 0 ? 0 : sign};
    }

    const std::vector<std::vector<int>>& action_table() const { return act_; }

private:
    SimplicialComplex k_;
    FiniteGroup g_;
    std::vector<std::vector<int>> act_;
};

struct ValidationReport {
    bool valid = true;
    bool regular = true;
    std::vector<std::string> violations;

    void fail(std::string what) {
        valid = false;
        violations.push_back(std::move(what));
    }
};

/// Confirms the action axioms, simpliciality and regularity; lists every
/// violation instead of throwing.
inline ValidationReport validate_gcomplex(const GComplex& kg) {
    ValidationReport report;
    const auto& k = kg.complex();
    const auto& g = kg.group();

    // identity acts as identity
    for (int v = 0; v < k.vertex_count(); ++v)
        if (kg.vertex_image(g.identity(), v) != v) {
            report.fail("identity does not act trivially at vertex " + std::to_string(v));
            break;
        }
    // right-action law: v.(gh) == (v.g).h; one witness per element pair
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
            for (int v = 0; v < k.vertex_count(); ++v)
                if (kg.vertex_image(g.mul(a, b), v) !=
                    kg.vertex_image(b, kg.vertex_image(a, v))) {
                    report.fail("action law fails at (g=" + std::to_string(a) +
                                ", h=" + std::to_string(b) + ", v=" + std::to_string(v) + ")");
                    break;
                }
    // simpliciality: images of simplices are simplices
    for (int q = 0; q <= k.dim(); ++q)
        for (int i = 0; i < k.count(q); ++i)
            for (Elem a = 0; a < g.order(); ++a) {
                auto [im, sign] = kg.simplex_image(q, i, a);
                if (im < 0) {
                    report.fail("element " + std::to_string(a) +
                                " does not map simplex " + std::to_string(q) + ":" +
                                std::to_string(i) + " to a simplex");
                }
            }
    // regularity: setwise fixed => pointwise fixed
    for (int q = 1; q <= k.dim() && report.valid; ++q)
        for (int i = 0; i < k.count(q); ++i)
            for (Elem a = 1; a < g.order(); ++a) {
                auto [im, sign] = kg.simplex_image(q, i, a);
                if (im != i) continue;
                const auto& verts = k.simplices(q)[i];
                for (int v : verts)
                    if (kg.vertex_image(a, v) != v) {
                        report.regular = false;
                        report.fail("regularity: element " + std::to_string(a) +
                                    " fixes simplex " + std::to_string(q) + ":" +
                                    std::to_string(i) + " setwise but not pointwise");
                        break;
                    }
            }
    return report;
}

/// Barycentric subdivision with the induced action. New vertex ids enumerate
/// the old simplices by (dimension, index); flags become simplices. Two
/// applications always yield a regular action.
inline GComplex barycentric_subdivide(const GComplex& kg) {
    const auto& k = kg.complex();
    const auto& g = kg.group();

    std::vector<int> offset(k.dim() + 2, 0);
    for (int q = 0; q <= k.dim(); ++q) offset[q + 1] = offset[q] + k.count(q);
    const int n_new = offset[k.dim() + 1];
    auto vertex_id = [&](int q, int i) { return offset[q] + i; };

    // flags: strictly increasing chains of faces, built upward
    std::vector<std::vector<int>> flags;   // each flag as a list of new vertex ids
    // chains starting at each simplex: enumerate by extension over cofaces
    // start with singleton chains, extend chain whose top is (q,i) by any
    // coface (q',i') with q' > q and face relation
    struct ChainTop { int q, i; };
    std::vector<std::pair<std::vector<int>, ChainTop>> work;
    for (int q = 0; q <= k.dim(); ++q)
        for (int i = 0; i < k.count(q); ++i)
            work.push_back({{vertex_id(q, i)}, {q, i}});
    for (std::size_t head = 0; head < work.size(); ++head) {
        auto [chain, top] = work[head];
        flags.push_back(chain);
        const auto& top_verts = k.simplices(top.q)[top.i];
        for (int q2 = top.q + 1; q2 <= k.dim(); ++q2)
            for (int i2 = 0; i2 < k.count(q2); ++i2) {
                const auto& s2 = k.simplices(q2)[i2];
                if (std::includes(s2.begin(), s2.end(), top_verts.begin(), top_verts.end(),
                                  [&](int a, int b) { return k.vertex_rank(a) < k.vertex_rank(b); })) {
                    auto longer = chain;
                    longer.push_back(vertex_id(q2, i2));
                    work.push_back({std::move(longer), {q2, i2}});
                }
            }
    }

    SimplicialComplex sd(n_new, flags);

    std::vector<std::vector<int>> action(g.order(), std::vector<int>(n_new));
    for (Elem a = 0; a < g.order(); ++a)
        for (int q = 0; q <= k.dim(); ++q)
            for (int i = 0; i < k.count(q); ++i) {
                auto [im, sign] = kg.simplex_image(q, i, a);
                action[a][vertex_id(q, i)] = vertex_id(q, im);
            }
    return GComplex(std::move(sd), g, std::move(action));
}

/// The fixed-point subcomplex of one group element, with the residual action
/// of its centralizer.
struct FixedSubcomplex {
    Elem element;                       // in the parent group
    SimplicialComplex complex;          // re-indexed subcomplex
    std::vector<int> vertex_to_parent;  // sub vertex -> parent vertex
    Subgroup centralizer;               // as a FiniteGroup of its own
    GComplex with_action;               // complex carrying the centralizer action

    FixedSubcomplex(Elem e, SimplicialComplex c, std::vector<int> v2p, Subgroup z,
                    GComplex act)
        : element(e), complex(std::move(c)), vertex_to_parent(std::move(v2p)),
          centralizer(std::move(z)), with_action(std::move(act)) {}
};

inline FixedSubcomplex fixed_subcomplex(const GComplex& kg, Elem g) {
    auto report = validate_gcomplex(kg);
    if (!report.valid || !report.regular)
        throw NotRegular("fixed_subcomplex requires a valid regular action");
    const auto& k = kg.complex();
    if (g < 0 || g >= kg.group().order())
        throw ElementNotInGroup("fixed_subcomplex of foreign element");

    std::vector<int> to_parent;
    std::vector<int> from_parent(k.vertex_count(), -1);
    for (int v = 0; v < k.vertex_count(); ++v)
        if (kg.vertex_image(g, v) == v) {
            from_parent[v] = static_cast<int>(to_parent.size());
            to_parent.push_back(v);
        }
    std::vector<std::vector<int>> simplices;
    for (int q = 0; q <= k.dim(); ++q)
        for (const auto& s : k.simplices(q)) {
            bool fixed = true;
            for (int v : s)
                if (from_parent[v] < 0) { fixed = false; break; }
            if (!fixed) continue;
            std::vector<int> sub;
            for (int v : s) sub.push_back(from_parent[v]);
            simplices.push_back(std::move(sub));
        }
    SimplicialComplex sub(static_cast<int>(to_parent.size()), simplices);

    auto z = centralizer(kg.group(), g);
    auto zg = subgroup_from_members(kg.group(), z.members);
    std::vector<std::vector<int>> action(zg.group.order(),
                                         std::vector<int>(sub.vertex_count()));
    for (int zi = 0; zi < zg.group.order(); ++zi) {
        Elem h = zg.to_parent[zi];
        for (int v = 0; v < sub.vertex_count(); ++v)
            action[zi][v] = from_parent[kg.vertex_image(h, to_parent[v])];
    }
    GComplex with_action(sub, zg.group, std::move(action));
    return FixedSubcomplex(g, std::move(sub), std::move(to_parent), std::move(zg),
                           std::move(with_action));
}

/// Orbit-space complex: simplices are orbits of simplices. Throws
/// NotSimplicialQuotient when distinct orbits would collapse to the same
/// vertex set (subdivide first, as in the square-boundary/rotation example).
inline SimplicialComplex quotient_complex(const GComplex& kg) {
    auto report = validate_gcomplex(kg);
    if (!report.valid || !report.regular)
        throw NotRegular("quotient_complex requires a valid regular action");
    const auto& k = kg.complex();
    const auto& g = kg.group();

    // vertex orbits, labeled by least member, densely re-indexed
    std::vector<int> orbit_of(k.vertex_count(), -1);
    int n_orbits = 0;
    for (int v = 0; v < k.vertex_count(); ++v) {
        if (orbit_of[v] != -1) continue;
        for (Elem a = 0; a < g.order(); ++a) orbit_of[kg.vertex_image(a, v)] = n_orbits;
        ++n_orbits;
    }

    std::set<std::vector<int>> quotient_simplices;
    long orbit_count = 0;
    std::map<std::vector<int>, long> image_multiplicity;
    for (int q = 0; q <= k.dim(); ++q) {
        std::vector<char> seen(k.count(q), 0);
        for (int i = 0; i < k.count(q); ++i) {
            if (seen[i]) continue;
            for (Elem a = 0; a < g.order(); ++a) seen[kg.simplex_image(q, i, a).first] = 1;
            ++orbit_count;
            std::vector<int> image;
            for (int v : k.simplices(q)[i]) image.push_back(orbit_of[v]);
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end())
                throw NotSimplicialQuotient(
                    "simplex orbit collapses onto a repeated vertex; subdivide first");
            ++image_multiplicity[image];
            quotient_simplices.insert(std::move(image));
        }
    }
    for (const auto& [image, mult] : image_multiplicity)
        if (mult > 1)
            throw NotSimplicialQuotient(
                "two simplex orbits share a quotient vertex set; subdivide first");
    (void)orbit_count;
    return SimplicialComplex(n_orbits,
                             std::vector<std::vector<int>>(quotient_simplices.begin(),
                                                           quotient_simplices.end()));
}

/// Number of simplex orbits per dimension (bookkeeping for the Euler
/// characteristic consistency property).
inline std::vector<long> simplex_orbit_counts(const GComplex& kg) {
    const auto& k = kg.complex();
    const auto& g = kg.group();
    std::vector<long> counts(k.dim() + 1, 0);
    for (int q = 0; q <= k.dim(); ++q) {
        std::vector<char> seen(k.count(q), 0);
        for (int i = 0; i < k.count(q); ++i) {
            if (seen[i]) continue;
            for (Elem a = 0; a < g.order(); ++a) seen[kg.simplex_image(q, i, a).first] = 1;
            ++counts[q];
        }
    }
    return counts;
}

} // namespace delocx
