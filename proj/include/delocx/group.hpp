#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "delocx/cyclotomic.hpp"
#include "delocx/sparse.hpp"

namespace delocx {

using Elem = int;

/// Finite group given by its full multiplication table. Element 0 is the
/// identity. Immutable after construction.
class FiniteGroup {
public:
    FiniteGroup(std::vector<std::vector<Elem>> mul_table, std::vector<Elem> generators)
        : mul_(std::move(mul_table)), generators_(std::move(generators)) {
        const int n = static_cast<int>(mul_.size());
        inv_.assign(n, -1);
        for (Elem g = 0; g < n; ++g) {
            if (static_cast<int>(mul_[g].size()) != n)
                throw Error("multiplication table is not square");
            for (Elem h = 0; h < n; ++h)
                if (mul_[g][h] == 0) inv_[g] = h;
        }
        for (Elem g = 0; g < n; ++g) {
            if (inv_[g] < 0 || mul_[inv_[g]][g] != 0)
                throw Error("element without two-sided inverse");
            if (mul_[0][g] != g || mul_[g][0] != g)
                throw Error("element 0 is not a two-sided identity");
        }
        order_.assign(n, 0);
        for (Elem g = 0; g < n; ++g) {
            Elem x = g;
            int k = 1;
            while (x != 0) { x = mul_[x][g]; ++k; }
            order_[g] = k;
        }
        exponent_ = 1;
        for (Elem g = 0; g < n; ++g) exponent_ = std::lcm(exponent_, static_cast<long>(order_[g]));
    }

    static FiniteGroup trivial() { return FiniteGroup({{0}}, {}); }

    int order() const { return static_cast<int>(mul_.size()); }
    Elem identity() const { return 0; }
    Elem mul(Elem g, Elem h) const { return mul_[check(g)][check(h)]; }
    Elem inv(Elem g) const { return inv_[check(g)]; }
    Elem conj(Elem g, Elem h) const { return mul(mul(inv(h), g), h); }   // h^{-1} g h
    int element_order(Elem g) const { return order_[check(g)]; }
    long exponent() const { return exponent_; }
    const std::vector<Elem>& generators() const { return generators_; }
    bool is_abelian() const {
        for (Elem g = 0; g < order(); ++g)
            for (Elem h = 0; h < g; ++h)
                if (mul_[g][h] != mul_[h][g]) return false;
        return true;
    }

    /// Asserts full associativity; used by validation paths and tests.
    bool check_associative() const {
        for (Elem a = 0; a < order(); ++a)
            for (Elem b = 0; b < order(); ++b)
                for (Elem c = 0; c < order(); ++c)
                    if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) return false;
        return true;
    }

private:
    Elem check(Elem g) const {
        if (g < 0 || g >= order()) throw ElementNotInGroup("element id out of range");
        return g;
    }
    std::vector<std::vector<Elem>> mul_;
    std::vector<Elem> inv_;
    std::vector<Elem> generators_;
    std::vector<int> order_;
    long exponent_;
};

/// A permutation group together with the permutation realizing each element.
/// Permutations are right actions: perms[g][v] = v . g, and
/// v . (g h) = (v . g) . h.
struct PermGroup {
    FiniteGroup group;
    std::vector<std::vector<int>> perms;
};

/// Enumerates the closure of the given generator permutations (0-based image
/// arrays on `points` points). Element ids follow breadth-first discovery
/// order from the identity, which makes all downstream output deterministic.
inline PermGroup group_from_permutations(int points,
                                         const std::vector<std::vector<int>>& generators,
                                         std::size_t cap = 1000000) {
    for (const auto& p : generators) {
        if (static_cast<int>(p.size()) != points)
            throw NotBijective("generator acts on wrong number of points");
        std::vector<char> seen(points, 0);
        for (int v : p) {
            if (v < 0 || v >= points || seen[v])
                throw NotBijective("generator is not a bijection");
            seen[v] = 1;
        }
    }

    std::vector<int> id_perm(points);
    std::iota(id_perm.begin(), id_perm.end(), 0);

    std::vector<std::vector<int>> elems{id_perm};
    std::map<std::vector<int>, Elem> index{{id_perm, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& gen : generators) {
            // right action: (v . g) . gen
            std::vector<int> next(points);
            for (int v = 0; v < points; ++v) next[v] = gen[elems[head][v]];
            if (index.emplace(next, static_cast<Elem>(elems.size())).second) {
                elems.push_back(std::move(next));
                if (elems.size() > cap)
                    throw ClosureCapExceeded("group enumeration exceeded cap");
            }
        }
    }

    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<Elem>> mul(n, std::vector<Elem>(n));
    for (Elem g = 0; g < n; ++g) {
        for (Elem h = 0; h < n; ++h) {
            std::vector<int> prod(points);
            for (int v = 0; v < points; ++v) prod[v] = elems[h][elems[g][v]];
            mul[g][h] = index.at(prod);
        }
    }
    std::vector<Elem> gen_ids;
    for (const auto& gen : generators) gen_ids.push_back(index.at(gen));
    return PermGroup{FiniteGroup(std::move(mul), std::move(gen_ids)), std::move(elems)};
}

struct ConjugacyClass {
    Elem representative;            // minimal element id in the class
    std::vector<Elem> members;      // sorted
};

/// Partition of G into conjugacy classes, ordered by representative id.
/// The identity class {0} always comes first.
inline std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
    std::vector<char> seen(g.order(), 0);
    std::vector<ConjugacyClass> classes;
    for (Elem x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        std::vector<Elem> members;
        for (Elem h = 0; h < g.order(); ++h) {
            Elem y = g.conj(x, h);
            if (!seen[y]) { seen[y] = 1; members.push_back(y); }
        }
        std::sort(members.begin(), members.end());
        classes.push_back(ConjugacyClass{members.front(), std::move(members)});
    }
    return classes;
}

struct Centralizer {
    Elem element;
    std::vector<Elem> members;      // sorted subgroup {h : hg = gh}
};

inline Centralizer centralizer(const FiniteGroup& g, Elem x) {
    if (x < 0 || x >= g.order()) throw ElementNotInGroup("centralizer of foreign element");
    Centralizer c{x, {}};
    for (Elem h = 0; h < g.order(); ++h)
        if (g.mul(h, x) == g.mul(x, h)) c.members.push_back(h);
    return c;
}

/// A subgroup re-indexed as a FiniteGroup of its own, with both directions of
/// the element translation kept.
struct Subgroup {
    FiniteGroup group;
    std::vector<Elem> to_parent;    // subgroup id -> parent id
    std::vector<int> from_parent;   // parent id -> subgroup id or -1
};

inline Subgroup subgroup_from_members(const FiniteGroup& g, std::vector<Elem> members) {
    std::sort(members.begin(), members.end());
    std::vector<int> from_parent(g.order(), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
        from_parent[members[i]] = static_cast<int>(i);
    const int n = static_cast<int>(members.size());
    std::vector<std::vector<Elem>> mul(n, std::vector<Elem>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = from_parent[g.mul(members[i], members[j])];
            if (k < 0) throw Error("member set is not closed under multiplication");
            mul[i][j] = k;
        }
    std::vector<Elem> gens;
    for (int i = 1; i < n; ++i) gens.push_back(i);   // generous generating set
    return Subgroup{FiniteGroup(std::move(mul), std::move(gens)), std::move(members),
                    std::move(from_parent)};
}

/// Element of the rational group algebra Q[G], dense coefficient vector.
using GroupAlgebraElement = std::vector<Rat>;

inline GroupAlgebraElement group_algebra_mul(const FiniteGroup& g,
                                             const GroupAlgebraElement& a,
                                             const GroupAlgebraElement& b) {
    GroupAlgebraElement out(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
        if (a[x] == 0) continue;
        for (Elem y = 0; y < g.order(); ++y) {
            if (b[y] == 0) continue;
            out[g.mul(x, y)] += a[x] * b[y];
        }
    }
    return out;
}

/// The cyclic trace attached to a conjugacy class: sum of coefficients over
/// the class. Satisfies evaluate(a*b) == evaluate(b*a) exactly.
struct CyclicTrace {
    Elem class_rep;
    std::vector<Elem> members;

    Rat evaluate(const GroupAlgebraElement& a) const {
        Rat s = 0;
        for (Elem m : members) s += a[m];
        return s;
    }
};

/// HP of the group algebra in the finite-group, rational-coefficient
/// specialization: even part has one cyclic trace per conjugacy class, odd
/// part vanishes. (H^k(N_g; Q) = 0 for k > 0 when N_g is finite, by the
/// standard transfer argument; this collapse is relied on, not recomputed.)
struct HpGroupAlgebra {
    int even_dim;
    int odd_dim;
    std::vector<CyclicTrace> basis;
};

inline HpGroupAlgebra burghelea_hp(const FiniteGroup& g) {
    HpGroupAlgebra hp{0, 0, {}};
    for (const auto& c : conjugacy_classes(g))
        hp.basis.push_back(CyclicTrace{c.representative, c.members});
    hp.even_dim = static_cast<int>(hp.basis.size());
    return hp;
}

/// Independent oracle: dim(A/[A,A]) for A = Q[G], by exact rank of the span
/// of the commutators of basis elements.
inline int hh0_group_oracle(const FiniteGroup& g, std::size_t cap = 500) {
    const int n = g.order();
    if (static_cast<std::size_t>(n) > cap)
        throw CapExceeded("hh0_group_oracle: group order exceeds cap");
    SparseRationalMatrix commutators(n * n, n);
    int row = 0;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = x + 1; y < n; ++y) {
            Elem xy = g.mul(x, y);
            Elem yx = g.mul(y, x);
            if (xy == yx) continue;
            commutators.add_entry(row, xy, 1);
            commutators.add_entry(row, yx, -1);
            ++row;
        }
    return n - rank_q(commutators);
}

} // namespace delocx
