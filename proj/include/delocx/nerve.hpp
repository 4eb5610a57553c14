#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "delocx/gcomplex.hpp"
#include "delocx/sparse.hpp"

namespace delocx {

// ---------------------------------------------------------------------------
// Nerve levels of the action groupoid K x| G.
//
// Level p of the nerve is (simplices of K) x G^p: a p-tuple (g_1,...,g_p)
// over a simplex x describes the composable arrows
// (x, g_1), (x.g_1, g_2), ..., matching s(m,g) = m.g, t(m,g) = m.
// A (p,q)-cochain assigns an exact rational to each (q-simplex, p-tuple).
// ---------------------------------------------------------------------------

inline std::uint64_t pack_tuple(const std::vector<Elem>& tuple, int group_order) {
    std::uint64_t packed = 0;
    for (auto it = tuple.rbegin(); it != tuple.rend(); ++it)
        packed = packed * static_cast<std::uint64_t>(group_order) +
                 static_cast<std::uint64_t>(*it);
    return packed;
}

inline std::vector<Elem> unpack_tuple(std::uint64_t packed, int p, int group_order) {
    std::vector<Elem> tuple(p);
    for (int i = 0; i < p; ++i) {
        tuple[i] = static_cast<Elem>(packed % static_cast<std::uint64_t>(group_order));
        packed /= static_cast<std::uint64_t>(group_order);
    }
    return tuple;
}

/// Sparse cochain on the nerve double complex: blocks indexed by (p, q),
/// entries by (q-simplex index, packed group tuple).
class DoubleCochain {
public:
    using Key = std::pair<int, std::uint64_t>;           // (simplex, tuple)
    using Block = std::map<Key, Rat>;

    void add(int p, int q, int simplex, std::uint64_t tuple, const Rat& v) {
        if (v == 0) return;
        auto& slot = blocks_[{p, q}][{simplex, tuple}];
        slot += v;
        if (slot == 0) blocks_[{p, q}].erase({simplex, tuple});
    }
    Rat at(int p, int q, int simplex, std::uint64_t tuple) const {
        auto bit = blocks_.find({p, q});
        if (bit == blocks_.end()) return 0;
        auto eit = bit->second.find({simplex, tuple});
        return eit == bit->second.end() ? Rat(0) : eit->second;
    }
    const std::map<std::pair<int, int>, Block>& blocks() const { return blocks_; }
    bool is_zero() const {
        for (const auto& [pq, block] : blocks_)
            for (const auto& [key, v] : block)
                if (v != 0) return false;
        return true;
    }

    friend DoubleCochain operator+(const DoubleCochain& a, const DoubleCochain& b) {
        DoubleCochain out = a;
        for (const auto& [pq, block] : b.blocks_)
            for (const auto& [key, v] : block)
                out.add(pq.first, pq.second, key.first, key.second, v);
        return out;
    }
    friend DoubleCochain operator-(const DoubleCochain& a, const DoubleCochain& b) {
        DoubleCochain out = a;
        for (const auto& [pq, block] : b.blocks_)
            for (const auto& [key, v] : block)
                out.add(pq.first, pq.second, key.first, key.second, -v);
        return out;
    }

private:
    std::map<std::pair<int, int>, Block> blocks_;
};

/// Horizontal differential: the alternating sum of pullbacks along the nerve
/// face maps, sending level-p blocks to level p+1. Face 0 moves the simplex
/// by the first group coordinate (with its orientation sign); inner faces
/// split a product; the last face forgets the tail. Satisfies d_h o d_h = 0.
inline DoubleCochain horizontal_differential(const GComplex& kg, const DoubleCochain& c) {
    const int n = kg.group().order();
    DoubleCochain out;
    for (const auto& [pq, block] : c.blocks()) {
        const auto [p, q] = pq;
        for (const auto& [key, v] : block) {
            const auto [simplex, packed] = key;
            auto tuple = unpack_tuple(packed, p, n);
            // face 0: (sigma; g_1, rest) pulls back from (sigma.g_1; rest);
            // preimages of `simplex` under the motion by g_1
            for (Elem g1 = 0; g1 < n; ++g1) {
                auto [pre, sign] = kg.simplex_image(q, simplex, kg.group().inv(g1));
                if (pre < 0) continue;
                std::vector<Elem> bigger(tuple.size() + 1);
                bigger[0] = g1;
                std::copy(tuple.begin(), tuple.end(), bigger.begin() + 1);
                out.add(p + 1, q, pre, pack_tuple(bigger, n), Rat(sign) * v);
            }
            // inner faces i = 1..p: split tuple[i-1] into a*b
            for (int i = 1; i <= p; ++i) {
                const Rat sv = (i % 2 == 0) ? v : -v;
                for (Elem a = 0; a < n; ++a) {
                    Elem b = kg.group().mul(kg.group().inv(a), tuple[i - 1]);
                    std::vector<Elem> bigger(tuple.size() + 1);
                    std::copy(tuple.begin(), tuple.begin() + (i - 1), bigger.begin());
                    bigger[i - 1] = a;
                    bigger[i] = b;
                    std::copy(tuple.begin() + i, tuple.end(), bigger.begin() + i + 1);
                    out.add(p + 1, q, simplex, pack_tuple(bigger, n), sv);
                }
            }
            // face p+1: append an arbitrary last coordinate
            {
                const Rat sv = ((p + 1) % 2 == 0) ? v : -v;
                for (Elem g = 0; g < n; ++g) {
                    std::vector<Elem> bigger(tuple);
                    bigger.push_back(g);
                    out.add(p + 1, q, simplex, pack_tuple(bigger, n), sv);
                }
            }
        }
    }
    return out;
}

/// Vertical differential: the simplicial coboundary on the complex factor,
/// using the global vertex order for signs. Satisfies d o d = 0.
inline DoubleCochain vertical_differential(const GComplex& kg, const DoubleCochain& c) {
    const auto& k = kg.complex();
    DoubleCochain out;
    for (const auto& [pq, block] : c.blocks()) {
        const auto [p, q] = pq;
        if (q + 1 > k.dim()) continue;
        // scatter: every (q+1)-simplex collects from its faces
        for (int t = 0; t < k.count(q + 1); ++t) {
            const auto& verts = k.simplices(q + 1)[t];
            for (int j = 0; j <= q + 1; ++j) {
                std::vector<int> face;
                for (int i = 0; i <= q + 1; ++i)
                    if (i != j) face.push_back(verts[i]);
                int fi = k.index_of(face);
                for (const auto& [key, v] : block) {
                    if (key.first != fi) continue;
                    out.add(p, q + 1, t, key.second, (j % 2 == 0) ? v : -v);
                }
            }
        }
    }
    return out;
}

/// Total differential delta(w) = d_h(w) + (-1)^p d_v(w) on each block.
inline DoubleCochain total_differential(const GComplex& kg, const DoubleCochain& c) {
    DoubleCochain out = horizontal_differential(kg, c);
    for (const auto& [pq, block] : c.blocks()) {
        const auto [p, q] = pq;
        DoubleCochain single;
        for (const auto& [key, v] : block) single.add(p, q, key.first, key.second, v);
        DoubleCochain dv = vertical_differential(kg, single);
        for (const auto& [pq2, block2] : dv.blocks())
            for (const auto& [key, v] : block2)
                out.add(pq2.first, pq2.second, key.first, key.second,
                        (p % 2 == 0) ? v : -v);
    }
    return out;
}

/// Ordered basis of the total-degree-n cochain space, truncated to the
/// columns p <= n+1 that a degree-n computation can ever touch.
class TotalLevelBasis {
public:
    TotalLevelBasis(const GComplex& kg, int n) : n_(n) {
        const auto& k = kg.complex();
        const int g = kg.group().order();
        for (int p = 0; p <= n; ++p) {
            int q = n - p;
            if (q < 0 || q > k.dim()) continue;
            std::uint64_t tuples = 1;
            for (int i = 0; i < p; ++i) tuples *= static_cast<std::uint64_t>(g);
            blocks_.push_back(BlockInfo{p, q, offset_, k.count(q), tuples});
            offset_ += static_cast<long>(k.count(q)) * static_cast<long>(tuples);
        }
    }

    long size() const { return offset_; }

    long position(int p, int q, int simplex, std::uint64_t tuple) const {
        for (const auto& b : blocks_)
            if (b.p == p && b.q == q)
                return b.offset + static_cast<long>(simplex) * static_cast<long>(b.tuples) +
                       static_cast<long>(tuple);
        return -1;
    }

    std::tuple<int, int, int, std::uint64_t> item(long pos) const {
        for (const auto& b : blocks_) {
            long block_size = static_cast<long>(b.simplices) * static_cast<long>(b.tuples);
            if (pos < b.offset + block_size) {
                long local = pos - b.offset;
                return {b.p, b.q, static_cast<int>(local / static_cast<long>(b.tuples)),
                        static_cast<std::uint64_t>(local % static_cast<long>(b.tuples))};
            }
        }
        throw Error("basis position out of range");
    }

    /// Flattens a DoubleCochain into coordinates on this basis; entries
    /// outside the tracked blocks must be absent.
    std::vector<std::pair<int, Rat>> coordinates(const DoubleCochain& c) const {
        std::vector<std::pair<int, Rat>> out;
        for (const auto& [pq, block] : c.blocks())
            for (const auto& [key, v] : block) {
                long pos = position(pq.first, pq.second, key.first, key.second);
                if (pos < 0) throw Error("cochain outside the truncated basis");
                out.emplace_back(static_cast<int>(pos), v);
            }
        return out;
    }

    DoubleCochain cochain(const std::vector<std::pair<int, Rat>>& coords) const {
        DoubleCochain c;
        for (const auto& [pos, v] : coords) {
            auto [p, q, simplex, tuple] = item(pos);
            c.add(p, q, simplex, tuple, v);
        }
        return c;
    }

private:
    struct BlockInfo {
        int p, q;
        long offset;
        int simplices;
        std::uint64_t tuples;
    };
    int n_;
    long offset_ = 0;
    std::vector<BlockInfo> blocks_;
};

/// The total differential C^n -> C^{n+1} as a sparse matrix over the
/// truncated bases.
inline SparseRationalMatrix total_differential_matrix(const GComplex& kg,
                                                      const TotalLevelBasis& from,
                                                      const TotalLevelBasis& to) {
    SparseRationalMatrix m(static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (long col = 0; col < from.size(); ++col) {
        auto [p, q, simplex, tuple] = from.item(col);
        DoubleCochain unit;
        unit.add(p, q, simplex, tuple, 1);
        DoubleCochain image = total_differential(kg, unit);
        for (const auto& [pos, v] : to.coordinates(image))
            m.add_entry(pos, static_cast<int>(col), v);
    }
    return m;
}

struct CohomologyResult {
    int dim = 0;
    std::vector<DoubleCochain> representatives;
};

/// H^n of the total complex of the nerve double complex (exact; the degree-n
/// computation only ever involves columns p <= n+1).
inline CohomologyResult total_cohomology(const GComplex& kg, int n) {
    auto report = validate_gcomplex(kg);
    if (!report.valid || !report.regular)
        throw NotRegular("total_cohomology requires a valid regular action");
    const auto& k = kg.complex();
    if (k.is_empty()) return {};
    if (n < 0 || n > k.dim() + 1)
        throw DegreeOutOfRange("total degree must lie in [0, dim K + 1]");

    TotalLevelBasis level_n(kg, n), level_up(kg, n + 1);
    SparseRationalMatrix d_n = total_differential_matrix(kg, level_n, level_up);
    FractionFreeElimination elim_n(d_n);

    CohomologyResult result;
    RankAccumulator modulo_boundaries(static_cast<int>(level_n.size()));
    if (n > 0) {
        TotalLevelBasis level_down(kg, n - 1);
        for (long col = 0; col < level_down.size(); ++col) {
            auto [p, q, simplex, tuple] = level_down.item(col);
            DoubleCochain unit;
            unit.add(p, q, simplex, tuple, 1);
            modulo_boundaries.add(level_n.coordinates(total_differential(kg, unit)));
        }
    }
    for (auto& vec : elim_n.kernel_basis()) {
        if (modulo_boundaries.add(vec)) {
            result.representatives.push_back(level_n.cochain(vec));
            ++result.dim;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Invariant-cochain machinery. For finite groups and rational coefficients
// the cohomology of the invariant subcomplex computes H^*(K x| G); this is
// both an oracle for the nerve computation and the concrete model used by
// the pairing module.
// ---------------------------------------------------------------------------

/// Basis of G-invariant q-cochains: one generator per simplex orbit. Each
/// generator has coefficient sign(g, rep) at rep.g; regularity makes this
/// well defined.
struct InvariantBasis {
    std::vector<int> orbit_reps;                 // representative simplex per orbit
    std::vector<std::map<int, int>> vectors;     // orbit -> {simplex -> sign}
};

inline InvariantBasis invariant_basis(const GComplex& kg, int q) {
    const auto& k = kg.complex();
    const auto& g = kg.group();
    InvariantBasis basis;
    std::vector<char> seen(k.count(q), 0);
    for (int i = 0; i < k.count(q); ++i) {
        if (seen[i]) continue;
        std::map<int, int> vec;
        for (Elem a = 0; a < g.order(); ++a) {
            auto [im, sign] = kg.simplex_image(q, i, a);
            seen[im] = 1;
            auto it = vec.find(im);
            if (it == vec.end()) vec[im] = sign;
            else if (it->second != sign)
                throw NotRegular("orbit carries an orientation-reversing stabilizer");
        }
        basis.orbit_reps.push_back(i);
        basis.vectors.push_back(std::move(vec));
    }
    return basis;
}

/// Coboundary matrix restricted to invariant cochains, in orbit bases.
inline SparseRationalMatrix invariant_coboundary(const GComplex& kg, int q,
                                                 const InvariantBasis& from,
                                                 const InvariantBasis& to) {
    const auto& k = kg.complex();
    SparseRationalMatrix m(static_cast<int>(to.orbit_reps.size()),
                           static_cast<int>(from.orbit_reps.size()));
    for (std::size_t col = 0; col < from.vectors.size(); ++col) {
        // d(basis vector), then read off at each target representative
        std::map<int, Rat> image;
        for (int t = 0; t < k.count(q + 1); ++t) {
            const auto& verts = k.simplices(q + 1)[t];
            Rat acc = 0;
            for (int j = 0; j <= q + 1; ++j) {
                std::vector<int> face;
                for (int i = 0; i <= q + 1; ++i)
                    if (i != j) face.push_back(verts[i]);
                auto it = from.vectors[col].find(k.index_of(face));
                if (it != from.vectors[col].end())
                    acc += Rat((j % 2 == 0) ? it->second : -it->second);
            }
            if (acc != 0) image[t] = acc;
        }
        for (std::size_t row = 0; row < to.orbit_reps.size(); ++row) {
            auto it = image.find(to.orbit_reps[row]);
            if (it != image.end())
                m.add_entry(static_cast<int>(row), static_cast<int>(col), it->second);
        }
    }
    return m;
}

/// Oracle: dimension of H^n of the G-invariant simplicial cochain complex.
inline int invariant_oracle(const GComplex& kg, int n) {
    auto report = validate_gcomplex(kg);
    if (!report.valid || !report.regular)
        throw NotRegular("invariant_oracle requires a valid regular action");
    const auto& k = kg.complex();
    if (k.is_empty() || n < 0 || n > k.dim()) return 0;

    InvariantBasis basis_n = invariant_basis(kg, n);
    int dim = static_cast<int>(basis_n.orbit_reps.size());
    if (n < k.dim()) {
        InvariantBasis basis_up = invariant_basis(kg, n + 1);
        dim -= rank_q(invariant_coboundary(kg, n, basis_n, basis_up));
    }
    if (n > 0) {
        InvariantBasis basis_down = invariant_basis(kg, n - 1);
        dim -= rank_q(invariant_coboundary(kg, n - 1, basis_down, basis_n));
    }
    return dim;
}

/// Ordinary simplicial cohomology dimension (used as the quotient-space
/// oracle; deliberately a separate, direct code path).
inline int simplicial_cohomology_dim(const SimplicialComplex& k, int n) {
    if (k.is_empty() || n < 0 || n > k.dim()) return 0;
    auto coboundary = [&](int q) {
        SparseRationalMatrix m(k.count(q + 1), k.count(q));
        for (int t = 0; t < k.count(q + 1); ++t) {
            const auto& verts = k.simplices(q + 1)[t];
            for (int j = 0; j <= q + 1; ++j) {
                std::vector<int> face;
                for (int i = 0; i <= q + 1; ++i)
                    if (i != j) face.push_back(verts[i]);
                m.add_entry(t, k.index_of(face), (j % 2 == 0) ? 1 : -1);
            }
        }
        return m;
    };
    int dim = k.count(n);
    if (n < k.dim()) dim -= rank_q(coboundary(n));
    if (n > 0) dim -= rank_q(coboundary(n - 1));
    return dim;
}

} // namespace delocx
