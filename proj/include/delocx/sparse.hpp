#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "delocx/rational.hpp"

namespace delocx {

/// Sparse matrix with exact rational entries. Entries are accumulated with
/// add_entry and may appear in any order; duplicates sum.
class SparseRationalMatrix {
public:
    SparseRationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add_entry(int r, int c, const Rat& v) {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw Error("sparse matrix index out of bounds");
        if (v != 0) row_data_[r].emplace_back(c, v);
    }

    /// Row r as a sorted, duplicate-free list of (col, value).
    std::vector<std::pair<int, Rat>> row(int r) const {
        auto entries = row_data_[r];
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Rat>> out;
        for (auto& [c, v] : entries) {
            if (!out.empty() && out.back().first == c) out.back().second += v;
            else out.emplace_back(c, v);
        }
        std::erase_if(out, [](const auto& e) { return e.second == 0; });
        return out;
    }

    std::size_t entry_count() const {
        std::size_t n = 0;
        for (const auto& r : row_data_) n += r.size();
        return n;
    }

private:
    int rows_, cols_;
    std::vector<std::vector<std::pair<int, Rat>>> row_data_;
};

/// Fraction-free (division-deferred) Gaussian elimination over the integers
/// after per-row denominator clearing, with Markowitz-style pivot selection.
/// Provides exact rank, kernel basis and linear solves for the whole library.
class FractionFreeElimination {
public:
    /// Eliminates immediately. When pivot_col_limit >= 0, pivots are chosen
    /// only among columns < limit (used for augmented-system solves).
    explicit FractionFreeElimination(const SparseRationalMatrix& m, int pivot_col_limit = -1)
        : cols_(m.cols()), pivot_col_limit_(pivot_col_limit) {
        for (int r = 0; r < m.rows(); ++r) {
            auto entries = m.row(r);
            if (entries.empty()) continue;
            // clear denominators; scaling a row does not change rank/kernel
            Int scale = 1;
            for (const auto& [c, v] : entries) scale = boost::multiprecision::lcm(scale, rat_den(v));
            Row row;
            row.reserve(entries.size());
            for (const auto& [c, v] : entries)
                row.emplace_back(c, rat_num(v) * (scale / rat_den(v)));
            active_.push_back(std::move(row));
        }
        eliminate();
    }

    int rank() const { return static_cast<int>(pivots_.size()); }

    /// Basis of the right kernel {x : A x = 0}, one sparse rational vector
    /// per free column, in ascending free-column order (deterministic).
    std::vector<std::vector<std::pair<int, Rat>>> kernel_basis() const {
        std::vector<char> is_pivot(cols_, 0);
        for (const auto& p : pivots_) is_pivot[p.col] = 1;
        std::vector<std::vector<std::pair<int, Rat>>> basis;
        for (int f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            basis.push_back(back_substitute(f));
        }
        return basis;
    }

    /// Solves A x = b exactly (free variables set to 0). Returns nullopt when
    /// the system is inconsistent.
    static std::optional<std::vector<Rat>> solve(const SparseRationalMatrix& a,
                                                 const std::vector<Rat>& b) {
        // augment b as an extra column that is never chosen as pivot
        SparseRationalMatrix aug(a.rows(), a.cols() + 1);
        for (int r = 0; r < a.rows(); ++r) {
            for (const auto& [c, v] : a.row(r)) aug.add_entry(r, c, v);
            if (b[static_cast<std::size_t>(r)] != 0)
                aug.add_entry(r, a.cols(), b[static_cast<std::size_t>(r)]);
        }
        FractionFreeElimination elim(aug, /*pivot_col_limit=*/a.cols());
        // inconsistent iff some fully reduced row is supported only on column a.cols()
        for (const auto& row : elim.active_)
            if (!row.empty())
                return std::nullopt;
        auto x = elim.back_substitute(a.cols());
        // back_substitute(f) returns the kernel vector with x_f = 1; the
        // solution of A x = -(column f) is its negation restricted to < cols
        std::vector<Rat> out(a.cols());
        for (const auto& [c, v] : x)
            if (c < a.cols()) out[c] = -v;
        return out;
    }

private:
    struct Row : std::vector<std::pair<int, Int>> {
        using std::vector<std::pair<int, Int>>::vector;
    };
    struct Pivot {
        int col;
        Row row;       // state of the pivot row at elimination time
        Int value;     // pivot entry
        Int prev;      // pivot value of the previous step (Bareiss divisor)
    };

    int cols_;
    std::vector<Row> active_;
    std::vector<Pivot> pivots_;
    int pivot_col_limit_ = -1;   // pivots restricted to columns < limit (if >= 0)

    void eliminate() {
        Int prev = 1;
        while (true) {
            // column fill counts over active rows
            std::vector<int> col_count(cols_, 0);
            for (const auto& row : active_)
                for (const auto& [c, v] : row) ++col_count[c];

            // Markowitz-style pivot: minimize (row_nnz - 1) * (col_nnz - 1),
            // ties broken by (row index, column index) for determinism.
            long best_score = -1;
            std::size_t best_row = 0;
            int best_col = -1;
            for (std::size_t r = 0; r < active_.size(); ++r) {
                const auto& row = active_[r];
                if (row.empty()) continue;
                for (const auto& [c, v] : row) {
                    if (pivot_col_limit_ >= 0 && c >= pivot_col_limit_) continue;
                    long score = static_cast<long>(row.size() - 1) * (col_count[c] - 1);
                    if (best_score < 0 || score < best_score) {
                        best_score = score;
                        best_row = r;
                        best_col = c;
                    }
                }
            }
            if (best_col < 0) break;

            Row pivot_row = std::move(active_[best_row]);
            active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(best_row));
            Int pivot_val = 0;
            for (const auto& [c, v] : pivot_row)
                if (c == best_col) { pivot_val = v; break; }

            // one-step Bareiss update: row' = (pivot*row - coef*pivot_row)/prev
            for (auto& row : active_) {
                Int coef = 0;
                for (const auto& [c, v] : row)
                    if (c == best_col) { coef = v; break; }
                if (coef == 0) {
                    // Bareiss still rescales untouched rows: row' = pivot*row/prev
                    for (auto& [c, v] : row) { v *= pivot_val; v /= prev; }
                    continue;
                }
                Row merged;
                merged.reserve(row.size() + pivot_row.size());
                auto it_a = row.begin();
                auto it_b = pivot_row.begin();
                while (it_a != row.end() || it_b != pivot_row.end()) {
                    if (it_b == pivot_row.end() || (it_a != row.end() && it_a->first < it_b->first)) {
                        Int v = it_a->second * pivot_val;
                        v /= prev;
                        if (v != 0) merged.emplace_back(it_a->first, std::move(v));
                        ++it_a;
                    } else if (it_a == row.end() || it_b->first < it_a->first) {
                        Int v = -(it_b->second * coef);
                        v /= prev;
                        if (v != 0) merged.emplace_back(it_b->first, std::move(v));
                        ++it_b;
                    } else {
                        Int v = it_a->second * pivot_val - it_b->second * coef;
                        v /= prev;
                        if (v != 0) merged.emplace_back(it_a->first, std::move(v));
                        ++it_a;
                        ++it_b;
                    }
                }
                row = std::move(merged);
            }

            pivots_.push_back(Pivot{best_col, std::move(pivot_row), pivot_val, prev});
            prev = pivots_.back().value;
        }
    }

    /// Kernel vector with free coordinate f set to 1, found by rational
    /// back-substitution over the recorded pivot rows (reverse order).
    std::vector<std::pair<int, Rat>> back_substitute(int f) const {
        std::vector<Rat> x(cols_);
        std::vector<char> known(cols_, 0);
        x[f] = 1;
        known[f] = 1;
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            Rat acc = 0;
            for (const auto& [c, v] : it->row) {
                if (c == it->col) continue;
                if (known[c] && x[c] != 0) acc += Rat(v) * x[c];
            }
            x[it->col] = -acc / Rat(it->value);
            known[it->col] = 1;
        }
        std::vector<std::pair<int, Rat>> out;
        for (int c = 0; c < cols_; ++c)
            if (known[c] && x[c] != 0) out.emplace_back(c, x[c]);
        return out;
    }
};

/// Exact rank over Q.
inline int rank_q(const SparseRationalMatrix& m) {
    return FractionFreeElimination(m).rank();
}

/// Incremental exact rank of a growing set of sparse rational vectors.
/// Used to pick cohomology representatives modulo coboundaries and to test
/// class equalities. Rows are kept mutually reduced.
class RankAccumulator {
public:
    explicit RankAccumulator(int dim) : dim_(dim) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    /// True if v was independent of the stored span (and is now included).
    bool add(std::vector<std::pair<int, Rat>> v) {
        normalize(v);
        for (const auto& row : rows_) reduce_by(v, row);
        if (v.empty()) return false;
        Rat lead = v.front().second;
        for (auto& [c, val] : v) val /= lead;
        rows_.push_back(std::move(v));
        return true;
    }

    /// Membership test without inserting.
    bool contains(std::vector<std::pair<int, Rat>> v) const {
        normalize(v);
        for (const auto& row : rows_) reduce_by(v, row);
        return v.empty();
    }

private:
    using Vec = std::vector<std::pair<int, Rat>>;
    int dim_;
    std::vector<Vec> rows_;   // each with leading coefficient 1, sorted by col

    static void normalize(Vec& v) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Vec out;
        for (auto& [c, val] : v) {
            if (!out.empty() && out.back().first == c) out.back().second += val;
            else out.emplace_back(c, val);
        }
        std::erase_if(out, [](const auto& e) { return e.second == 0; });
        v = std::move(out);
    }

    static void reduce_by(Vec& v, const Vec& row) {
        if (v.empty() || row.empty()) return;
        Rat coef = 0;
        for (const auto& [c, val] : v)
            if (c == row.front().first) { coef = val; break; }
            else if (c > row.front().first) break;
        if (coef == 0) return;
        Vec merged;
        merged.reserve(v.size() + row.size());
        auto it_a = v.begin();
        auto it_b = row.begin();
        while (it_a != v.end() || it_b != row.end()) {
            if (it_b == row.end() || (it_a != v.end() && it_a->first < it_b->first)) {
                merged.push_back(*it_a++);
            } else if (it_a == v.end() || it_b->first < it_a->first) {
                Rat nv = -coef * it_b->second;
                if (nv != 0) merged.emplace_back(it_b->first, std::move(nv));
                ++it_b;
            } else {
                Rat nv = it_a->second - coef * it_b->second;
                if (nv != 0) merged.emplace_back(it_a->first, std::move(nv));
                ++it_a;
                ++it_b;
            }
        }
        v = std::move(merged);
    }
};

} // namespace delocx
