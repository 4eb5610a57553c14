#pragma once

#include <optional>
#include <string>

#include "delocx/deloc.hpp"

namespace delocx {

// ---------------------------------------------------------------------------
// Invariant cochain cohomology with representatives. Over Q this computes
// H^*(M x| G) concretely as invariant simplicial cochains; the pairing and
// pushforward machinery below works with these representatives.
// ---------------------------------------------------------------------------

struct InvariantCohomology {
    int degree = 0;
    int dim = 0;
    std::vector<Cochain<Rat>> representatives;
};

namespace detail {

inline Cochain<Rat> expand_orbit_vector(const InvariantBasis& basis, int degree,
                                        const std::vector<std::pair<int, Rat>>& coords) {
    Cochain<Rat> c;
    c.degree = degree;
    for (const auto& [orbit, coef] : coords)
        for (const auto& [simplex, sign] : basis.vectors[orbit])
            c.add(simplex, coef * Rat(sign));
    return c;
}

inline bool is_invariant(const GComplex& kg, const Cochain<Rat>& c) {
    for (Elem g = 0; g < kg.group().order(); ++g)
        for (const auto& [s, v] : c.values) {
            auto [im, sign] = kg.simplex_image(c.degree, s, g);
            if (!(c.at(im) == Rat(sign) * v)) return false;
        }
    return true;
}

} // namespace detail

inline InvariantCohomology invariant_cohomology(const GComplex& kg, int degree) {
    InvariantCohomology out;
    out.degree = degree;
    const auto& k = kg.complex();
    if (k.is_empty() || degree < 0 || degree > k.dim()) return out;

    InvariantBasis basis_n = invariant_basis(kg, degree);
    const int n_orbits = static_cast<int>(basis_n.orbit_reps.size());

    std::vector<std::vector<std::pair<int, Rat>>> kernel;
    if (degree < k.dim()) {
        InvariantBasis basis_up = invariant_basis(kg, degree + 1);
        FractionFreeElimination elim(invariant_coboundary(kg, degree, basis_n, basis_up));
        kernel = elim.kernel_basis();
    } else {
        for (int i = 0; i < n_orbits; ++i)
            kernel.push_back({{i, Rat(1)}});
    }
    RankAccumulator modulo_boundaries(n_orbits);
    if (degree > 0) {
        InvariantBasis basis_down = invariant_basis(kg, degree - 1);
        SparseRationalMatrix d_prev = invariant_coboundary(kg, degree - 1, basis_down, basis_n);
        for (int col = 0; col < d_prev.cols(); ++col) {
            std::vector<std::pair<int, Rat>> vec;
            for (int row = 0; row < d_prev.rows(); ++row)
                for (const auto& [c, v] : d_prev.row(row))
                    if (c == col) vec.emplace_back(row, v);
            modulo_boundaries.add(vec);
        }
    }
    for (const auto& vec : kernel)
        if (modulo_boundaries.add(vec)) {
            out.representatives.push_back(detail::expand_orbit_vector(basis_n, degree, vec));
            ++out.dim;
        }
    return out;
}

/// Is the invariant cochain c the coboundary of an invariant cochain?
inline bool is_invariant_coboundary(const GComplex& kg, const Cochain<Rat>& c) {
    if (c.is_zero()) return true;
    if (c.degree == 0) return false;
    if (!detail::is_invariant(kg, c))
        throw Error("is_invariant_coboundary expects an invariant cochain");
    InvariantBasis basis_n = invariant_basis(kg, c.degree);
    InvariantBasis basis_down = invariant_basis(kg, c.degree - 1);
    std::vector<Rat> rhs(basis_n.orbit_reps.size());
    for (std::size_t i = 0; i < basis_n.orbit_reps.size(); ++i)
        rhs[i] = c.at(basis_n.orbit_reps[i]);
    auto solution = FractionFreeElimination::solve(
        invariant_coboundary(kg, c.degree - 1, basis_down, basis_n), rhs);
    return solution.has_value();
}

/// Equality of invariant cocycles as cohomology classes.
inline bool invariant_class_equal(const GComplex& kg, const Cochain<Rat>& a,
                                  const Cochain<Rat>& b) {
    if (a.degree != b.degree) return false;
    return is_invariant_coboundary(kg, a - b);
}

// ---------------------------------------------------------------------------
// Fundamental classes and the Poincare pairing.
// ---------------------------------------------------------------------------

struct FundamentalClass {
    Chain chain;   // signed sum of top simplices, zero boundary
};

inline FundamentalClass fundamental_class(const SimplicialComplex& k, const Orientation& o) {
    if (!check_orientation(k, o))
        throw NotOriented("orientation does not close: boundary of the top chain is nonzero");
    FundamentalClass fc;
    fc.chain.degree = k.dim();
    for (int t = 0; t < k.count(k.dim()); ++t)
        if (o.top_signs[t] != 0) fc.chain.add(t, Rat(o.top_signs[t]));
    return fc;
}

/// Does the group action preserve the oriented fundamental chain?
inline bool orientation_preserved(const GComplex& kg, const Orientation& o) {
    const auto& k = kg.complex();
    if (k.is_empty()) return true;
    const int d = k.dim();
    for (Elem g = 0; g < kg.group().order(); ++g)
        for (int t = 0; t < k.count(d); ++t) {
            auto [im, sign] = kg.simplex_image(d, t, g);
            if (o.top_signs[t] * sign != o.top_signs[im]) return false;
        }
    return true;
}

/// The groupoid Poincare pairing on a fixed component with its centralizer
/// action: (1/|Gamma_g|) <w cup c, [M_g]>.
inline Rat pd_pairing(const GComplex& component, const Orientation& o,
                      const Cochain<Rat>& w, const Cochain<Rat>& c) {
    const auto& k = component.complex();
    if (k.is_empty()) return 0;
    if (w.degree + c.degree != k.dim())
        throw DegreeMismatch("pairing degrees must sum to the component dimension");
    auto fc = fundamental_class(k, o);
    Rat value = evaluate(cup(k, w, c), fc.chain);
    return value / component.group().order();
}

/// Convenience overload: the classes live on the fixed subcomplex of `g`
/// inside `kg`.
inline Rat pd_pairing(const GComplex& kg, Elem g, const Orientation& fixed_orientation,
                      const Cochain<Rat>& w, const Cochain<Rat>& c) {
    auto fix = fixed_subcomplex(kg, g);
    return pd_pairing(fix.with_action, fixed_orientation, w, c);
}

struct GramReport {
    int degree = 0;
    int dim_left = 0;
    int dim_right = 0;
    bool perfect = false;   // square and full-rank
};

/// Gram matrices of the pairing H^k x H^{d-k} -> Q on a component.
inline GramReport pairing_gram(const GComplex& component, const Orientation& o, int k) {
    const int d = component.complex().dim();
    auto left = invariant_cohomology(component, k);
    auto right = invariant_cohomology(component, d - k);
    SparseRationalMatrix gram(left.dim, right.dim);
    for (int i = 0; i < left.dim; ++i)
        for (int j = 0; j < right.dim; ++j)
            gram.add_entry(i, j, pd_pairing(component, o, left.representatives[i],
                                            right.representatives[j]));
    GramReport report;
    report.degree = k;
    report.dim_left = left.dim;
    report.dim_right = right.dim;
    report.perfect = (left.dim == right.dim) && (rank_q(gram) == left.dim);
    return report;
}

// ---------------------------------------------------------------------------
// Umkehr (wrong-way) maps: f_! = PD_target^{-1} o f_* o PD_source per
// conjugacy class, with the degree shift dim(target) - dim(source).
// ---------------------------------------------------------------------------

/// An equivariant simplicial map with per-class orientation data on the
/// fixed subcomplexes of source and target.
class UmkehrMap {
public:
    UmkehrMap(GComplex source, GComplex target, std::vector<int> vertex_map,
              std::map<Elem, Orientation> source_orientations,
              std::map<Elem, Orientation> target_orientations)
        : src_(std::move(source)), tgt_(std::move(target)), f_(std::move(vertex_map)),
          src_or_(std::move(source_orientations)), tgt_or_(std::move(target_orientations)) {
        if (static_cast<int>(f_.size()) != src_.complex().vertex_count())
            throw InputError("vertex map has wrong length");
        const auto& g = src_.group();
        if (g.order() != tgt_.group().order())
            throw NotEquivariant("source and target carry different groups");
        for (Elem a = 0; a < g.order(); ++a)
            for (Elem b = 0; b < g.order(); ++b)
                if (g.mul(a, b) != tgt_.group().mul(a, b))
                    throw NotEquivariant("source and target group tables differ");
        for (Elem a = 0; a < g.order(); ++a)
            for (int v = 0; v < src_.complex().vertex_count(); ++v)
                if (f_[src_.vertex_image(a, v)] != tgt_.vertex_image(a, f_[v]))
                    throw NotEquivariant("vertex map does not commute with the action");
        // simplicial: images of simplices are simplices (possibly degenerate)
        for (int q = 0; q <= src_.complex().dim(); ++q)
            for (const auto& s : src_.complex().simplices(q)) {
                std::vector<int> image;
                for (int v : s) image.push_back(f_[v]);
                std::sort(image.begin(), image.end());
                image.erase(std::unique(image.begin(), image.end()), image.end());
                std::vector<int> sorted = image;
                int sign = detail::sort_sign(sorted, tgt_.complex().vertex_ranks());
                (void)sign;
                if (tgt_.complex().index_of(sorted) < 0)
                    throw ComplexMismatch("vertex map is not simplicial");
            }
    }

    const GComplex& source() const { return src_; }
    const GComplex& target() const { return tgt_; }
    const std::vector<int>& vertex_map() const { return f_; }
    const std::map<Elem, Orientation>& source_orientations() const { return src_or_; }
    const std::map<Elem, Orientation>& target_orientations() const { return tgt_or_; }

    /// Composition g o f (this = f).
    UmkehrMap then(const UmkehrMap& g) const {
        if (tgt_.complex().vertex_count() != g.src_.complex().vertex_count())
            throw ComplexMismatch("maps are not composable");
        std::vector<int> composed(f_.size());
        for (std::size_t v = 0; v < f_.size(); ++v)
            composed[v] = g.f_[static_cast<std::size_t>(f_[v])];
        return UmkehrMap(src_, g.tgt_, std::move(composed), src_or_, g.tgt_or_);
    }

    /// Per-class degree shift dim(target component) - dim(source component),
    /// on classes where both components are nonempty.
    std::map<Elem, int> degree_shifts() const {
        std::map<Elem, int> shifts;
        for (const auto& cls : conjugacy_classes(src_.group())) {
            auto fs = fixed_subcomplex(src_, cls.representative);
            auto ft = fixed_subcomplex(tgt_, cls.representative);
            if (fs.complex.is_empty() || ft.complex.is_empty()) continue;
            shifts[cls.representative] = ft.complex.dim() - fs.complex.dim();
        }
        return shifts;
    }

private:
    GComplex src_, tgt_;
    std::vector<int> f_;
    std::map<Elem, Orientation> src_or_, tgt_or_;
};

namespace detail {

struct ComponentData {
    FixedSubcomplex fixed;
    Orientation orientation;
    FundamentalClass fundamental;
};

/// Looks up and fully validates the orientation data of one class component;
/// nullopt for empty components.
inline std::optional<ComponentData> component_data(const GComplex& kg,
                                                   const std::map<Elem, Orientation>& orients,
                                                   Elem rep) {
    auto fix = fixed_subcomplex(kg, rep);
    if (fix.complex.is_empty()) return std::nullopt;
    auto it = orients.find(rep);
    if (it == orients.end())
        throw OrientationMissing("no orientation supplied for the class of element " +
                                 std::to_string(rep));
    FundamentalClass fc = fundamental_class(fix.complex, it->second);
    if (!orientation_preserved(fix.with_action, it->second))
        throw OrientationMissing("orientation of the fixed component of element " +
                                 std::to_string(rep) +
                                 " is not preserved by the centralizer");
    return ComponentData{std::move(fix), it->second, std::move(fc)};
}

/// True when the class component either is empty or carries a valid,
/// centralizer-preserved orientation.
inline bool component_admissible(const GComplex& kg,
                                 const std::map<Elem, Orientation>& orients, Elem rep) {
    auto fix = fixed_subcomplex(kg, rep);
    if (fix.complex.is_empty()) return true;
    auto it = orients.find(rep);
    if (it == orients.end()) return false;
    if (static_cast<int>(it->second.top_signs.size()) !=
        fix.complex.count(fix.complex.dim()))
        return false;
    try {
        if (!check_orientation(fix.complex, it->second)) return false;
    } catch (const Error&) {
        return false;
    }
    return orientation_preserved(fix.with_action, it->second);
}

/// Vertex map between fixed components induced by an equivariant map.
inline std::vector<int> induced_component_map(const UmkehrMap& f, const FixedSubcomplex& fs,
                                              const FixedSubcomplex& ft) {
    std::vector<int> tgt_from_parent(f.target().complex().vertex_count(), -1);
    for (std::size_t i = 0; i < ft.vertex_to_parent.size(); ++i)
        tgt_from_parent[ft.vertex_to_parent[i]] = static_cast<int>(i);
    std::vector<int> out(fs.vertex_to_parent.size());
    for (std::size_t i = 0; i < fs.vertex_to_parent.size(); ++i) {
        int image = f.vertex_map()[fs.vertex_to_parent[i]];
        if (tgt_from_parent[image] < 0)
            throw NotEquivariant("map does not send the fixed set into the fixed set");
        out[i] = tgt_from_parent[image];
    }
    return out;
}

/// Reynolds projection onto invariant cochains.
inline Cochain<Rat> reynolds(const GComplex& kg, const Cochain<Rat>& c) {
    Cochain<Rat> total;
    total.degree = c.degree;
    const auto& k = kg.complex();
    for (Elem g = 0; g < kg.group().order(); ++g) {
        Cochain<Rat> moved = pullback(k, k, kg.action_table()[g], c);
        total = total + moved;
    }
    return Rat(1, kg.group().order()) * total;
}

/// Solves eta cap [M] = chain modulo boundaries on the target component,
/// subject to eta being a cocycle. Returns the invariant representative.
inline Cochain<Rat> pd_inverse(const GComplex& comp, const FundamentalClass& fc,
                               const Chain& target_chain, int cohomological_degree) {
    const auto& k = comp.complex();
    const int d = k.dim();
    const int chain_degree = d - cohomological_degree;
    const int n_cochains = k.count(cohomological_degree);
    const int n_fillers = (chain_degree + 1 <= d) ? k.count(chain_degree + 1) : 0;
    const int n_cocycle_rows = (cohomological_degree < d) ? k.count(cohomological_degree + 1) : 0;
    SparseRationalMatrix system(k.count(chain_degree) + n_cocycle_rows,
                                n_cochains + n_fillers);
    for (int j = 0; j < n_cochains; ++j) {
        Cochain<Rat> unit;
        unit.degree = cohomological_degree;
        unit.values[j] = 1;
        for (const auto& [idx, coef] : cap(k, unit, fc.chain).coeffs)
            system.add_entry(idx, j, coef);
        // cocycle constraint rows: d(eta) = 0
        for (const auto& [idx, coef] : coboundary(k, unit).values)
            system.add_entry(k.count(chain_degree) + idx, j, coef);
    }
    for (int j = 0; j < n_fillers; ++j) {
        Chain unit;
        unit.degree = chain_degree + 1;
        unit.coeffs[j] = 1;
        for (const auto& [idx, coef] : boundary(k, unit).coeffs)
            system.add_entry(idx, n_cochains + j, coef);
    }
    std::vector<Rat> rhs(k.count(chain_degree) + n_cocycle_rows);
    for (const auto& [idx, coef] : target_chain.coeffs) rhs[idx] = coef;
    auto solution = FractionFreeElimination::solve(system, rhs);
    if (!solution)
        throw Error("Poincare duality solve failed: pushed chain is not dual to a cocycle");
    Cochain<Rat> eta;
    eta.degree = cohomological_degree;
    for (int j = 0; j < n_cochains; ++j)
        if ((*solution)[j] != 0) eta.values[j] = (*solution)[j];
    // project to invariants; the class survives because the fundamental
    // chain and the pushed chain are invariant
    Cochain<Rat> eta_inv = reynolds(comp, eta);
    Chain check = cap(k, eta_inv, fc.chain);
    Chain residual = check;
    residual.degree = check.degree;
    for (const auto& [idx, coef] : target_chain.coeffs) residual.add(idx, -coef);
    if (!residual.is_zero()) {
        // residual must be a boundary
        SparseRationalMatrix bnd(k.count(chain_degree), n_fillers);
        for (int j = 0; j < n_fillers; ++j) {
            Chain unit;
            unit.degree = chain_degree + 1;
            unit.coeffs[j] = 1;
            for (const auto& [idx, coef] : boundary(k, unit).coeffs)
                bnd.add_entry(idx, j, coef);
        }
        std::vector<Rat> res(k.count(chain_degree));
        for (const auto& [idx, coef] : residual.coeffs) res[idx] = coef;
        if (!FractionFreeElimination::solve(bnd, res))
            throw NotEquivariant("invariant projection left a non-exact residual");
    }
    return eta_inv;
}

} // namespace detail

/// Pushforward of one class component: PD, push the chain, PD-invert.
inline Cochain<Rat> umkehr_component(const UmkehrMap& f, Elem rep, const Cochain<Rat>& w) {
    if (w.is_zero()) return Cochain<Rat>{};
    auto src = detail::component_data(f.source(), f.source_orientations(), rep);
    auto tgt = detail::component_data(f.target(), f.target_orientations(), rep);
    if (!src || !tgt)
        throw OrientationMissing("umkehr on an empty component with nonzero class");
    const auto& ks = src->fixed.complex;
    const auto& kt = tgt->fixed.complex;
    Chain c = cap(ks, w, src->fundamental.chain);
    auto component_map = detail::induced_component_map(f, src->fixed, tgt->fixed);
    Chain pushed = push_chain(ks, kt, component_map, c);
    const int target_degree = kt.dim() - c.degree;
    if (target_degree < 0 || target_degree > kt.dim()) {
        if (!pushed.is_zero())
            throw Error("pushed chain survives outside the target degree range");
        return Cochain<Rat>{};
    }
    return detail::pd_inverse(tgt->fixed.with_action, tgt->fundamental, pushed, target_degree);
}

/// Full delocalized pushforward. Entries must be rational-valued. Per
/// component degree shifts are recorded by degree_shifts(); when the image
/// parts land in mixed parities the mismatch is flagged, not reconciled.
inline DelocClass umkehr(const UmkehrMap& f, const DelocClass& x) {
    DelocClass out;
    int image_parity = -1;
    for (const auto& [rep, graded] : x.parts) {
        for (const auto& [degree, part] : graded) {
            Cochain<Rat> w;
            w.degree = degree;
            for (const auto& [s, v] : part.values) w.values[s] = v.to_rational();
            Cochain<Rat> image = umkehr_component(f, rep, w);
            if (image.is_zero()) continue;
            if (image_parity < 0) image_parity = image.degree % 2;
            else if (image_parity != image.degree % 2)
                throw Error("umkehr image has mixed parity across components");
            Cochain<Cyclotomic> lifted;
            lifted.degree = image.degree;
            for (const auto& [s, v] : image.values) lifted.values[s] = Cyclotomic(v);
            out.add_part(rep, std::move(lifted));
        }
    }
    if (image_parity >= 0) {
        out.parity = image_parity;
    } else {
        auto shifts = f.degree_shifts();
        int shift = shifts.empty() ? 0 : shifts.begin()->second;
        out.parity = ((x.parity + shift) % 2 + 2) % 2;
    }
    return out;
}

/// Is the class defined for this map: both fixed components empty or
/// equivariantly oriented.
inline bool class_admissible(const UmkehrMap& f, Elem rep) {
    return detail::component_admissible(f.source(), f.source_orientations(), rep) &&
           detail::component_admissible(f.target(), f.target_orientations(), rep);
}

struct FunctorialityReport {
    bool all_equal = true;
    int classes_checked = 0;
    int classes_skipped = 0;
    int comparisons = 0;
    std::vector<std::string> discrepancies;
};

/// Exact check of (g o f)_! == g_! o f_! on a spanning set of invariant
/// cohomology classes, per admissible conjugacy class.
inline FunctorialityReport check_functoriality(const UmkehrMap& f, const UmkehrMap& g) {
    FunctorialityReport report;
    UmkehrMap composed = f.then(g);
    for (const auto& cls : conjugacy_classes(f.source().group())) {
        const Elem rep = cls.representative;
        auto fs = fixed_subcomplex(f.source(), rep);
        if (fs.complex.is_empty()) continue;
        if (!class_admissible(f, rep) || !class_admissible(g, rep) ||
            !class_admissible(composed, rep)) {
            ++report.classes_skipped;
            continue;
        }
        ++report.classes_checked;
        for (int k = 0; k <= fs.complex.dim(); ++k) {
            auto basis = invariant_cohomology(fs.with_action, k);
            for (int b = 0; b < basis.dim; ++b) {
                const auto& w = basis.representatives[b];
                Cochain<Rat> via_composed = umkehr_component(composed, rep, w);
                Cochain<Rat> step1 = umkehr_component(f, rep, w);
                Cochain<Rat> via_steps = umkehr_component(g, rep, step1);
                ++report.comparisons;
                bool equal;
                if (via_composed.is_zero() && via_steps.is_zero()) {
                    equal = true;
                } else if (via_composed.degree != via_steps.degree &&
                           !via_composed.is_zero() && !via_steps.is_zero()) {
                    equal = false;
                } else {
                    auto ft = fixed_subcomplex(g.target(), rep);
                    Cochain<Rat> diff = via_composed;
                    if (via_composed.is_zero()) diff.degree = via_steps.degree;
                    for (const auto& [s, v] : via_steps.values) diff.add(s, -v);
                    equal = is_invariant_coboundary(ft.with_action, diff);
                }
                if (!equal) {
                    report.all_equal = false;
                    report.discrepancies.push_back(
                        "class " + std::to_string(rep) + " degree " + std::to_string(k) +
                        " basis " + std::to_string(b));
                }
            }
        }
    }
    return report;
}

/// Projection formula f_!(f^*(a) cup b) == a cup f_!(b), checked on spanning
/// classes per admissible component.
struct ProjectionFormulaReport {
    bool all_equal = true;
    int comparisons = 0;
    std::vector<std::string> discrepancies;
};

inline ProjectionFormulaReport check_projection_formula(const UmkehrMap& f) {
    ProjectionFormulaReport report;
    for (const auto& cls : conjugacy_classes(f.source().group())) {
        const Elem rep = cls.representative;
        if (!class_admissible(f, rep)) continue;
        auto fs = fixed_subcomplex(f.source(), rep);
        auto ft = fixed_subcomplex(f.target(), rep);
        if (fs.complex.is_empty() || ft.complex.is_empty()) continue;
        auto component_map = detail::induced_component_map(f, fs, ft);
        for (int ka = 0; ka <= ft.complex.dim(); ++ka) {
            auto basis_a = invariant_cohomology(ft.with_action, ka);
            for (int kb = 0; kb <= fs.complex.dim(); ++kb) {
                auto basis_b = invariant_cohomology(fs.with_action, kb);
                for (const auto& a : basis_a.representatives)
                    for (const auto& b : basis_b.representatives) {
                        Cochain<Rat> fa = pullback(fs.complex, ft.complex, component_map, a);
                        Cochain<Rat> lhs_arg = cup(fs.complex, fa, b);
                        Cochain<Rat> lhs = umkehr_component(f, rep, lhs_arg);
                        Cochain<Rat> fb = umkehr_component(f, rep, b);
                        // cup products of invariant cochains are invariant only
                        // up to coboundary; project back before comparing
                        Cochain<Rat> rhs = fb.is_zero()
                                               ? Cochain<Rat>{}
                                               : detail::reynolds(ft.with_action,
                                                                  cup(ft.complex, a, fb));
                        ++report.comparisons;
                        bool equal;
                        if (lhs.is_zero() && rhs.is_zero()) {
                            equal = true;
                        } else {
                            Cochain<Rat> diff = lhs;
                            if (lhs.is_zero()) diff.degree = rhs.degree;
                            for (const auto& [s, v] : rhs.values) diff.add(s, -v);
                            equal = is_invariant_coboundary(ft.with_action, diff);
                        }
                        if (!equal) {
                            report.all_equal = false;
                            report.discrepancies.push_back(
                                "class " + std::to_string(rep) + " degrees (" +
                                std::to_string(ka) + "," + std::to_string(kb) + ")");
                        }
                    }
            }
        }
    }
    return report;
}

} // namespace delocx
