#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

/// Sparse matrix over Q. Only nonzero entries are stored.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("SparseMatrix: negative dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

    void set(int r, int c, const Rational& v) {
        check_index(r, c);
        if (v == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    Rational get(int r, int c) const {
        check_index(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    static SparseMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        int n_cols = rows.empty() ? 0 : static_cast<int>(rows.front().size());
        SparseMatrix m(static_cast<int>(rows.size()), n_cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(rows[r].size()) != n_cols)
                throw std::invalid_argument("SparseMatrix::from_rows: ragged rows");
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                if (rows[r][c] != 0)
                    m.entries_[{static_cast<int>(r), static_cast<int>(c)}] = rows[r][c];
        }
        return m;
    }

    std::vector<std::vector<Rational>> to_rows() const {
        std::vector<std::vector<Rational>> rows(
            static_cast<std::size_t>(rows_),
            std::vector<Rational>(static_cast<std::size_t>(cols_), Rational(0)));
        for (const auto& [rc, v] : entries_)
            rows[static_cast<std::size_t>(rc.first)][static_cast<std::size_t>(rc.second)] = v;
        return rows;
    }

private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("SparseMatrix: index out of bounds");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::map<std::pair<int, int>, Rational> entries_;
};

inline SparseMatrix transpose(const SparseMatrix& m) {
    SparseMatrix t(m.cols(), m.rows());
    for (const auto& [rc, v] : m.entries())
        t.set(rc.second, rc.first, v);
    return t;
}

namespace detail {

// Row of a sparse matrix: (column, value) pairs sorted by column.
using SparseRow = std::vector<std::pair<int, Rational>>;

inline SparseRow row_axpy(const SparseRow& a, const Rational& lambda, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else if (a[i].first > b[j].first) {
            Rational v = lambda * b[j].second;
            if (v != 0)
                out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Rational v = a[i].second + lambda * b[j].second;
            if (v != 0)
                out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i)
        out.push_back(a[i]);
    for (; j < b.size(); ++j) {
        Rational v = lambda * b[j].second;
        if (v != 0)
            out.emplace_back(b[j].first, std::move(v));
    }
    return out;
}

struct Echelon {
    std::map<int, SparseRow> pivots;  // leading column -> pivot row
    int rank = 0;
};

// Fraction-full Gaussian elimination. Columns are processed in order;
// among the rows competing for a column the one with the smallest
// bit-length leading entry is kept as pivot.
inline Echelon echelonize(std::vector<SparseRow> rows) {
    Echelon e;
    std::map<int, std::vector<SparseRow>> pending;
    for (auto& r : rows)
        if (!r.empty())
            pending[r.front().first].push_back(std::move(r));

    while (!pending.empty()) {
        auto it = pending.begin();
        int col = it->first;
        std::vector<SparseRow> bucket = std::move(it->second);
        pending.erase(it);

        auto piv = e.pivots.find(col);
        std::size_t start = 0;
        if (piv == e.pivots.end()) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < bucket.size(); ++k)
                if (bit_length(bucket[k].front().second) <
                    bit_length(bucket[best].front().second))
                    best = k;
            std::swap(bucket[0], bucket[best]);
            piv = e.pivots.emplace(col, std::move(bucket[0])).first;
            ++e.rank;
            start = 1;
        }
        const SparseRow& pivot_row = piv->second;
        const Rational& pivot_val = pivot_row.front().second;
        for (std::size_t k = start; k < bucket.size(); ++k) {
            Rational factor = -bucket[k].front().second / pivot_val;
            SparseRow reduced = row_axpy(bucket[k], factor, pivot_row);
            if (!reduced.empty())
                pending[reduced.front().first].push_back(std::move(reduced));
        }
    }
    return e;
}

inline std::vector<SparseRow> matrix_rows(const SparseMatrix& m) {
    std::vector<SparseRow> rows(static_cast<std::size_t>(m.rows()));
    for (const auto& [rc, v] : m.entries())
        rows[static_cast<std::size_t>(rc.first)].emplace_back(rc.second, v);
    return rows;  // entries() is ordered, so each row is sorted by column
}

}  // namespace detail

/// Rank over Q, exact.
inline int rank(const SparseMatrix& m) {
    return detail::echelonize(detail::matrix_rows(m)).rank;
}

/// Basis of the right null space { v : m v = 0 }. Size = cols - rank.
inline std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m) {
    detail::Echelon e = detail::echelonize(detail::matrix_rows(m));

    // Back-substitute to reduced echelon form, pivots normalized to 1.
    for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
        detail::SparseRow& row = it->second;
        for (std::size_t k = 1; k < row.size();) {
            auto later = e.pivots.find(row[k].first);
            if (later != e.pivots.end() && later->first > it->first) {
                Rational factor = -row[k].second / later->second.front().second;
                row = detail::row_axpy(row, factor, later->second);
                k = 1;  // row changed, rescan
            } else {
                ++k;
            }
        }
        Rational lead = row.front().second;
        if (lead != 1)
            for (auto& [c, v] : row)
                v /= lead;
    }

    std::vector<std::vector<Rational>> basis;
    for (int col = 0; col < m.cols(); ++col) {
        if (e.pivots.count(col))
            continue;
        std::vector<Rational> v(static_cast<std::size_t>(m.cols()), Rational(0));
        v[static_cast<std::size_t>(col)] = 1;
        for (const auto& [pcol, row] : e.pivots) {
            for (const auto& [c, val] : row)
                if (c == col)
                    v[static_cast<std::size_t>(pcol)] = -val;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Coefficients expressing `target` in the span of `vectors`, or nullopt.
/// Exact: a returned combination reproduces target with zero residual.
inline std::optional<std::vector<Rational>> solve_in_span(
    const std::vector<std::vector<Rational>>& vectors,
    const std::vector<Rational>& target) {
    const std::size_t len = target.size();
    for (const auto& v : vectors)
        if (v.size() != len)
            throw std::invalid_argument("solve_in_span: vector length mismatch");

    const std::size_t k = vectors.size();
    // Augmented rows [v_i | e_i]; row operations keep the invariant
    // left = (right part) . vectors.
    std::vector<std::vector<Rational>> rows;
    rows.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Rational> row(len + k, Rational(0));
        std::copy(vectors[i].begin(), vectors[i].end(), row.begin());
        row[len + i] = 1;
        rows.push_back(std::move(row));
    }

    std::map<std::size_t, std::vector<Rational>> pivots;  // pivot col -> row
    auto reduce = [&](std::vector<Rational>& row) {
        for (const auto& [pcol, prow] : pivots) {
            if (row[pcol] == 0)
                continue;
            Rational factor = row[pcol] / prow[pcol];
            for (std::size_t c = 0; c < row.size(); ++c)
                if (prow[c] != 0)
                    row[c] -= factor * prow[c];
        }
    };
    for (auto& row : rows) {
        reduce(row);
        for (std::size_t c = 0; c < len; ++c) {
            if (row[c] != 0) {
                pivots.emplace(c, std::move(row));
                break;
            }
        }
    }

    std::vector<Rational> t(len + k, Rational(0));
    std::copy(target.begin(), target.end(), t.begin());
    reduce(t);
    for (std::size_t c = 0; c < len; ++c)
        if (t[c] != 0)
            return std::nullopt;
    std::vector<Rational> coeffs(k);
    for (std::size_t i = 0; i < k; ++i)
        coeffs[i] = -t[len + i];
    return coeffs;
}

/// Incremental row-space tracker: add vectors one at a time and learn
/// whether each one enlarged the span.
class RowSpan {
public:
    explicit RowSpan(std::size_t width) : width_(width) {}

    std::size_t width() const { return width_; }
    std::size_t rank() const { return pivots_.size(); }

    /// Returns true if v was independent of the rows added so far.
    bool add(std::vector<Rational> v) {
        if (v.size() != width_)
            throw std::invalid_argument("RowSpan::add: width mismatch");
        reduce(v);
        for (std::size_t c = 0; c < width_; ++c) {
            if (v[c] != 0) {
                Rational lead = v[c];
                for (auto& x : v)
                    x /= lead;
                pivots_.emplace(c, std::move(v));
                return true;
            }
        }
        return false;
    }

    bool contains(std::vector<Rational> v) const {
        if (v.size() != width_)
            throw std::invalid_argument("RowSpan::contains: width mismatch");
        reduce(v);
        return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
    }

private:
    void reduce(std::vector<Rational>& v) const {
        for (const auto& [pcol, prow] : pivots_) {
            if (v[pcol] == 0)
                continue;
            Rational factor = v[pcol];
            for (std::size_t c = 0; c < width_; ++c)
                if (prow[c] != 0)
                    v[c] -= factor * prow[c];
        }
    }

    std::size_t width_;
    std::map<std::size_t, std::vector<Rational>> pivots_;
};

}  // namespace sullivan
