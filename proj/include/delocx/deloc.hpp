#pragma once

#include <future>
#include <map>
#include <vector>

#include "delocx/cochain.hpp"
#include "delocx/nerve.hpp"

namespace delocx {

// ---------------------------------------------------------------------------
// Inertia decomposition and delocalized cohomology.
//
// One component per conjugacy class [g]: the fixed subcomplex of g with the
// residual action of the centralizer. The delocalized groups are the sums of
// H^k over components, graded by parity.
// ---------------------------------------------------------------------------

struct InertiaComponent {
    Elem class_rep;
    std::vector<Elem> class_members;
    FixedSubcomplex fixed;
};

struct InertiaDecomposition {
    std::vector<InertiaComponent> components;   // ordered by class representative
};

inline InertiaDecomposition inertia(const GComplex& kg) {
    InertiaDecomposition out;
    for (const auto& cls : conjugacy_classes(kg.group()))
        out.components.push_back(InertiaComponent{
            cls.representative, cls.members, fixed_subcomplex(kg, cls.representative)});
    return out;
}

struct DelocDims {
    std::map<Elem, std::vector<int>> per_class;   // dims by degree 0..dim(M_g)
    int even = 0;
    int odd = 0;
};

/// Per-class, per-degree dimensions of H^k(M_g x| Gamma_g), computed via the
/// nerve double complex. Independent classes may be processed in parallel.
inline DelocDims deloc_cohomology(const GComplex& kg, int threads = 1) {
    auto dec = inertia(kg);
    std::vector<std::vector<int>> dims(dec.components.size());
    auto work = [&](std::size_t i) {
        const auto& comp = dec.components[i].fixed.with_action;
        std::vector<int> d;
        if (!comp.complex().is_empty())
            for (int k = 0; k <= comp.complex().dim(); ++k)
                d.push_back(total_cohomology(comp, k).dim);
        return d;
    };
    if (threads > 1) {
        std::vector<std::future<std::vector<int>>> futures;
        for (std::size_t i = 0; i < dec.components.size(); ++i)
            futures.push_back(std::async(std::launch::async, work, i));
        for (std::size_t i = 0; i < dec.components.size(); ++i) dims[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < dec.components.size(); ++i) dims[i] = work(i);
    }
    DelocDims out;
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        out.per_class[dec.components[i].class_rep] = dims[i];
        for (std::size_t k = 0; k < dims[i].size(); ++k)
            (k % 2 == 0 ? out.even : out.odd) += dims[i][k];
    }
    return out;
}

/// A delocalized class: per conjugacy class, a graded family of cochains on
/// the fixed subcomplex (invariant under the centralizer). Values live in
/// the cyclotomic field so that Chern components of bundles with character
/// values fit; purely rational classes are the common case.
struct DelocClass {
    int parity = 0;                                            // 0 even, 1 odd
    std::map<Elem, std::map<int, Cochain<Cyclotomic>>> parts;  // rep -> degree -> cochain

    void add_part(Elem rep, Cochain<Cyclotomic> c) {
        if (!c.is_zero()) {
            int degree = c.degree;
            parts[rep][degree] = std::move(c);
        }
    }
};

// ---------------------------------------------------------------------------
// Groupoid algebra of K x| G on vertices and the Tu-Xu trace.
// Arrows are (v, g) with source v.g and target v; the convolution is the
// the groupoid convolution: (a*b)(v,g) = sum over g = g1 g2 of
// a(v,g1) b(v.g1, g2).
// ---------------------------------------------------------------------------

struct GroupoidAlgebraElement {
    std::map<std::pair<int, Elem>, Cyclotomic> coeffs;   // (vertex, group elt) -> value

    void add(int v, Elem g, const Cyclotomic& c) {
        auto key = std::make_pair(v, g);
        auto& slot = coeffs[key];
        slot += c;
        if (slot.is_zero()) coeffs.erase(key);
    }
    bool is_zero() const { return coeffs.empty(); }
    friend bool operator==(const GroupoidAlgebraElement& a, const GroupoidAlgebraElement& b) {
        GroupoidAlgebraElement d = a;
        for (const auto& [key, v] : b.coeffs) d.add(key.first, key.second, Cyclotomic(0) - v);
        return d.is_zero();
    }
};

inline GroupoidAlgebraElement convolve(const GComplex& kg, const GroupoidAlgebraElement& a,
                                       const GroupoidAlgebraElement& b) {
    GroupoidAlgebraElement out;
    for (const auto& [ka, va] : a.coeffs) {
        const auto [v, g1] = ka;
        const int w = kg.vertex_image(g1, v);
        for (const auto& [kb, vb] : b.coeffs) {
            if (kb.first != w) continue;
            out.add(v, kg.group().mul(g1, kb.second), va * vb);
        }
    }
    return out;
}

/// Function on the inertia points {(v, g) : v.g = v}.
using InertiaFunction = std::map<std::pair<int, Elem>, Cyclotomic>;

/// The trace map: restrict to closed arrows, then sum all conjugation
/// pullbacks. The result is conjugation-invariant (asserted).
inline InertiaFunction tuxu_trace(const GComplex& kg, const GroupoidAlgebraElement& a) {
    const auto& g = kg.group();
    InertiaFunction out;
    for (const auto& [key, val] : a.coeffs) {
        const auto [x, h] = key;
        if (kg.vertex_image(h, x) != x) continue;   // i^* kills open arrows
        for (Elem gamma = 0; gamma < g.order(); ++gamma) {
            int y = kg.vertex_image(g.inv(gamma), x);
            Elem k = g.mul(g.mul(gamma, h), g.inv(gamma));
            auto& slot = out[{y, k}];
            slot += val;
            if (slot.is_zero()) out.erase({y, k});
        }
    }
    // conjugation invariance: Tr(t_mu(s)) == Tr(s) for all mu
    for (const auto& [key, val] : out) {
        const auto [y, k] = key;
        for (Elem mu = 0; mu < g.order(); ++mu) {
            auto it = out.find({kg.vertex_image(mu, y), g.conj(k, mu)});
            Cyclotomic other = (it == out.end()) ? Cyclotomic(0) : it->second;
            if (!(other == val))
                throw Error("tuxu_trace: conjugation invariance violated");
        }
    }
    return out;
}

/// Adapter: a (p=1, q=0) nerve cochain is a function on vertex arrows and
/// can be traced directly.
inline InertiaFunction tuxu_trace(const GComplex& kg, const DoubleCochain& c) {
    GroupoidAlgebraElement a;
    for (const auto& [pq, block] : c.blocks()) {
        if (pq != std::make_pair(1, 0))
            throw Error("tuxu_trace expects a (1,0) nerve cochain");
        for (const auto& [key, v] : block)
            a.add(key.first, static_cast<Elem>(key.second), Cyclotomic(v));
    }
    return tuxu_trace(kg, a);
}

/// Pullback of the trace along the closed embedding of the fixed set of g:
/// a centralizer-invariant function on Fix(g).
inline std::map<int, Cyclotomic> tr_g(const GComplex& kg, const GroupoidAlgebraElement& a,
                                      Elem g) {
    if (g < 0 || g >= kg.group().order())
        throw ElementNotInGroup("tr_g of foreign element");
    auto trace = tuxu_trace(kg, a);
    std::map<int, Cyclotomic> out;
    for (int v = 0; v < kg.complex().vertex_count(); ++v) {
        if (kg.vertex_image(g, v) != v) continue;
        auto it = trace.find({v, g});
        if (it != trace.end() && !it->second.is_zero()) out[v] = it->second;
    }
    return out;
}

/// Oracle: dim(A/[A,A]) for the convolution algebra of a 0-dimensional
/// action groupoid, by exact commutator rank. Must equal the number of
/// G-orbits of inertia points, i.e. the delocalized H^0 total.
inline int hh0_groupoid_oracle(const GComplex& kg, std::size_t cap = 2000) {
    const auto& k = kg.complex();
    if (k.dim() > 0)
        throw Error("hh0_groupoid_oracle expects a 0-dimensional complex");
    const auto& g = kg.group();
    const long arrows = static_cast<long>(k.vertex_count()) * g.order();
    if (arrows > static_cast<long>(cap))
        throw CapExceeded("hh0_groupoid_oracle: arrow count exceeds cap");

    auto arrow_id = [&](int v, Elem a) { return v * g.order() + a; };
    std::vector<std::vector<std::pair<int, int>>> rows;   // (column, +-1)
    for (int v = 0; v < k.vertex_count(); ++v)
        for (Elem a = 0; a < g.order(); ++a)
            for (int w = 0; w < k.vertex_count(); ++w)
                for (Elem b = 0; b < g.order(); ++b) {
                    if (arrow_id(v, a) >= arrow_id(w, b)) continue;   // antisymmetric
                    bool fwd = (w == kg.vertex_image(a, v));    // alpha*beta defined
                    bool bwd = (v == kg.vertex_image(b, w));    // beta*alpha defined
                    if (!fwd && !bwd) continue;
                    std::vector<std::pair<int, int>> row;
                    if (fwd) row.emplace_back(arrow_id(v, g.mul(a, b)), 1);
                    if (bwd) row.emplace_back(arrow_id(w, g.mul(b, a)), -1);
                    rows.push_back(std::move(row));
                }
    SparseRationalMatrix commutators(static_cast<int>(rows.size()),
                                     static_cast<int>(arrows));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, s] : rows[r])
            commutators.add_entry(static_cast<int>(r), c, Rat(s));
    return static_cast<int>(arrows) - rank_q(commutators);
}

/// Number of G-orbits of inertia points (the combinatorial count that the
/// groupoid HH0 oracle must reproduce).
inline int inertia_orbit_count(const GComplex& kg) {
    const auto& g = kg.group();
    std::map<std::pair<int, Elem>, char> seen;
    int orbits = 0;
    for (int v = 0; v < kg.complex().vertex_count(); ++v)
        for (Elem h = 0; h < g.order(); ++h) {
            if (kg.vertex_image(h, v) != v) continue;
            if (seen.count({v, h})) continue;
            for (Elem gamma = 0; gamma < g.order(); ++gamma)
                seen[{kg.vertex_image(gamma, v), g.conj(h, gamma)}] = 1;
            ++orbits;
        }
    return orbits;
}

} // namespace delocx
