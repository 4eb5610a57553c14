#pragma once

#include <string>
#include <vector>

#include "delocx/deloc.hpp"

namespace delocx {

using CycMatrix = std::vector<std::vector<Cyclotomic>>;

inline CycMatrix cyc_identity(int n) {
    CycMatrix m(n, std::vector<Cyclotomic>(n));
    for (int i = 0; i < n; ++i) m[i][i] = Cyclotomic(1);
    return m;
}

inline CycMatrix cyc_mul(const CycMatrix& a, const CycMatrix& b) {
    const int rows = static_cast<int>(a.size());
    const int inner = static_cast<int>(b.size());
    const int cols = inner ? static_cast<int>(b[0].size()) : 0;
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != inner)
            throw InvalidBundle("matrix dimension mismatch in product");
    CycMatrix out(rows, std::vector<Cyclotomic>(cols));
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < inner; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline bool cyc_equal(const CycMatrix& a, const CycMatrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (!(a[i][j] == b[i][j])) return false;
    }
    return true;
}

inline Cyclotomic cyc_trace(const CycMatrix& m) {
    Cyclotomic t(0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i >= m[i].size()) throw InvalidBundle("trace of a non-square matrix");
        t += m[i][i];
    }
    return t;
}

/// Flat equivariant bundle over a G-complex: per-vertex fibers (dimension
/// locally constant) and transport matrices rho(g, v): F_v -> F_{v.g}
/// obeying the right-action cocycle rho(gh, v) = rho(h, v.g) rho(g, v).
class FlatEquivBundle {
public:
    FlatEquivBundle(GComplex base, std::vector<int> fiber_dims,
                    std::vector<std::vector<CycMatrix>> rho)
        : base_(std::move(base)), fibers_(std::move(fiber_dims)), rho_(std::move(rho)) {
        if (static_cast<int>(fibers_.size()) != base_.complex().vertex_count())
            throw InvalidBundle("fiber dimension list has wrong length");
        if (static_cast<int>(rho_.size()) != base_.group().order())
            throw InvalidBundle("rho table does not cover the group");
        for (const auto& per_vertex : rho_)
            if (static_cast<int>(per_vertex.size()) != base_.complex().vertex_count())
                throw InvalidBundle("rho table does not cover the vertices");
    }

    /// Constant fiber dimension, rho given on the group generators only;
    /// extended to the whole group along the right-action cocycle.
    static FlatEquivBundle from_generator_matrices(
        GComplex base, int fiber_dim,
        const std::vector<std::vector<CycMatrix>>& generator_rho) {
        const auto& g = base.group();
        const int nv = base.complex().vertex_count();
        if (generator_rho.size() != g.generators().size())
            throw InvalidBundle("one matrix family per generator required");
        std::vector<std::vector<CycMatrix>> rho(
            g.order(), std::vector<CycMatrix>(nv));
        std::vector<char> known(g.order(), 0);
        for (int v = 0; v < nv; ++v) rho[g.identity()][v] = cyc_identity(fiber_dim);
        known[g.identity()] = 1;
        // breadth-first closure over the group, mirroring its enumeration
        std::vector<Elem> queue{g.identity()};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Elem x = queue[head];
            for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
                Elem s = g.generators()[gi];
                Elem next = g.mul(x, s);
                if (known[next]) continue;
                for (int v = 0; v < nv; ++v)
                    rho[next][v] = cyc_mul(generator_rho[gi][base.vertex_image(x, v)],
                                           rho[x][v]);
                known[next] = 1;
                queue.push_back(next);
            }
        }
        for (std::size_t x = 0; x < known.size(); ++x)
            if (!known[x]) throw InvalidBundle("generators do not generate the group");
        return FlatEquivBundle(std::move(base), std::vector<int>(nv, fiber_dim),
                               std::move(rho));
    }

    /// Bundle with the same matrix at every vertex (a representation-style
    /// bundle); matrices are given per generator and must extend to a
    /// consistent cocycle (checked by validate_bundle).
    static FlatEquivBundle from_representation(GComplex base, int fiber_dim,
                                               const std::vector<CycMatrix>& generator_matrices) {
        const int nv = base.complex().vertex_count();
        std::vector<std::vector<CycMatrix>> generator_rho;
        for (const auto& m : generator_matrices)
            generator_rho.push_back(std::vector<CycMatrix>(nv, m));
        return from_generator_matrices(std::move(base), fiber_dim, generator_rho);
    }

    static FlatEquivBundle trivial_line(GComplex base) {
        const int nv = base.complex().vertex_count();
        std::vector<std::vector<CycMatrix>> rho(
            base.group().order(), std::vector<CycMatrix>(nv, cyc_identity(1)));
        return FlatEquivBundle(std::move(base), std::vector<int>(nv, 1), std::move(rho));
    }

    const GComplex& base() const { return base_; }
    int fiber_dim(int v) const { return fibers_[v]; }
    const CycMatrix& rho(Elem g, int v) const { return rho_[g][v]; }

    /// Direct sum with another bundle over the same base.
    FlatEquivBundle direct_sum(const FlatEquivBundle& other) const {
        const int nv = base_.complex().vertex_count();
        if (other.base_.complex().vertex_count() != nv ||
            other.base_.group().order() != base_.group().order())
            throw ComplexMismatch("direct sum over different bases");
        std::vector<int> dims(nv);
        for (int v = 0; v < nv; ++v) dims[v] = fibers_[v] + other.fibers_[v];
        std::vector<std::vector<CycMatrix>> rho(base_.group().order(),
                                                std::vector<CycMatrix>(nv));
        for (Elem g = 0; g < base_.group().order(); ++g)
            for (int v = 0; v < nv; ++v) {
                const int n1 = fibers_[v], n2 = other.fibers_[v];
                const int m1 = fibers_[base_.vertex_image(g, v)];
                const int m2 = other.fibers_[base_.vertex_image(g, v)];
                CycMatrix block(m1 + m2, std::vector<Cyclotomic>(n1 + n2));
                for (int i = 0; i < m1; ++i)
                    for (int j = 0; j < n1; ++j) block[i][j] = rho_[g][v][i][j];
                for (int i = 0; i < m2; ++i)
                    for (int j = 0; j < n2; ++j)
                        block[m1 + i][n1 + j] = other.rho_[g][v][i][j];
                rho[g][v] = std::move(block);
            }
        return FlatEquivBundle(base_, std::move(dims), std::move(rho));
    }

    /// Returns a copy with one transport matrix overwritten (for constructing
    /// failure witnesses in tests and corpus checks).
    FlatEquivBundle with_corrupted_entry(Elem g, int v, CycMatrix m) const {
        auto rho = rho_;
        rho[g][v] = std::move(m);
        return FlatEquivBundle(base_, fibers_, std::move(rho));
    }

private:
    GComplex base_;
    std::vector<int> fibers_;
    std::vector<std::vector<CycMatrix>> rho_;
};

struct BundleReport {
    bool valid = true;
    std::vector<std::string> violations;

    void fail(std::string what) {
        valid = false;
        violations.push_back(std::move(what));
    }
};

/// Exhaustive cocycle check: rho(e) = id, rho(gh, v) == rho(h, v.g) rho(g, v),
/// fiber dimensions locally constant, matrix shapes consistent.
inline BundleReport validate_bundle(const FlatEquivBundle& e) {
    BundleReport report;
    const auto& kg = e.base();
    const auto& g = kg.group();
    const int nv = kg.complex().vertex_count();

    auto comp = kg.complex().vertex_components();
    for (int v = 0; v < nv; ++v)
        for (int w = 0; w < v; ++w)
            if (comp[v] == comp[w] && e.fiber_dim(v) != e.fiber_dim(w)) {
                report.fail("fiber dimension jumps within a connected component");
                break;
            }

    for (int v = 0; v < nv; ++v)
        if (!cyc_equal(e.rho(g.identity(), v), cyc_identity(e.fiber_dim(v))))
            report.fail("rho(identity) is not the identity at vertex " + std::to_string(v));

    for (Elem a = 0; a < g.order(); ++a)
        for (int v = 0; v < nv; ++v) {
            const auto& m = e.rho(a, v);
            const int target = kg.vertex_image(a, v);
            if (static_cast<int>(m.size()) != e.fiber_dim(target) ||
                (m.size() && static_cast<int>(m[0].size()) != e.fiber_dim(v)))
                report.fail("rho(" + std::to_string(a) + ", " + std::to_string(v) +
                            ") has inconsistent shape");
        }
    if (!report.valid) return report;

    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
            for (int v = 0; v < nv; ++v) {
                auto lhs = e.rho(g.mul(a, b), v);
                auto rhs = cyc_mul(e.rho(b, kg.vertex_image(a, v)), e.rho(a, v));
                if (!cyc_equal(lhs, rhs)) {
                    report.fail("cocycle identity fails at (g=" + std::to_string(a) +
                                ", h=" + std::to_string(b) + ", v=" + std::to_string(v) + ")");
                    return report;   // first witness is enough
                }
            }
    return report;
}

/// Delocalized Chern character of a flat bundle: on each fixed-point
/// component of g the locally constant function x -> trace(rho(g, x)),
/// placed in degree 0; higher components vanish rationally for flat bundles.
inline DelocClass deloc_chern(const FlatEquivBundle& e) {
    auto report = validate_bundle(e);
    if (!report.valid)
        throw InvalidBundle("deloc_chern: " + report.violations.front());
    const auto& kg = e.base();

    DelocClass ch;
    ch.parity = 0;
    for (const auto& cls : conjugacy_classes(kg.group())) {
        auto fix = fixed_subcomplex(kg, cls.representative);
        if (fix.complex.is_empty()) continue;
        Cochain<Cyclotomic> c;
        c.degree = 0;
        std::vector<Cyclotomic> value_at(fix.complex.vertex_count());
        for (int v = 0; v < fix.complex.vertex_count(); ++v)
            value_at[v] = cyc_trace(e.rho(cls.representative, fix.vertex_to_parent[v]));
        // local constancy of the trace on each component of the fixed set
        auto comps = fix.complex.vertex_components();
        for (int v = 0; v < fix.complex.vertex_count(); ++v)
            for (int w = 0; w < v; ++w)
                if (comps[v] == comps[w] && !(value_at[v] == value_at[w]))
                    throw InvalidBundle(
                        "trace of rho is not locally constant on the fixed set of " +
                        std::to_string(cls.representative));
        for (int v = 0; v < fix.complex.vertex_count(); ++v)
            if (!value_at[v].is_zero()) c.values[v] = value_at[v];
        ch.add_part(cls.representative, std::move(c));
    }
    return ch;
}

} // namespace delocx
