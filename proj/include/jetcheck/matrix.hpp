#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "jetcheck/errors.hpp"
#include "jetcheck/rational.hpp"

namespace jetcheck {

// Dense matrix over the rationals. Row/column indices in the public pattern
// types are 1-based (matching how selections are reported); element access
// here is 0-based.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        RationalMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw invalid_input("matrix rows have unequal lengths");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> row(std::size_t i) const {
        return std::vector<Rational>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    std::vector<Rational> col(std::size_t j) const {
        std::vector<Rational> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
        return out;
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

// A selection of rows and columns, 1-based and strictly increasing.
struct SubmatrixPattern {
    std::vector<int> rows;
    std::vector<int> cols;

    bool operator==(const SubmatrixPattern& o) const { return rows == o.rows && cols == o.cols; }
};

inline std::vector<int> all_indices(std::size_t count) {
    std::vector<int> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<int>(i + 1);
    return out;
}

inline void validate_pattern(const SubmatrixPattern& p, std::size_t rows, std::size_t cols) {
    const auto check = [](const std::vector<int>& idx, std::size_t limit, const char* what) {
        int prev = 0;
        for (int i : idx) {
            if (i <= prev || static_cast<std::size_t>(i) > limit)
                throw invalid_input(std::string("pattern ") + what +
                                    " must be strictly increasing and within the matrix");
            prev = i;
        }
    };
    check(p.rows, rows, "rows");
    check(p.cols, cols, "cols");
}

inline RationalMatrix extract(const RationalMatrix& m, const SubmatrixPattern& p) {
    validate_pattern(p, m.rows(), m.cols());
    RationalMatrix out(p.rows.size(), p.cols.size());
    for (std::size_t i = 0; i < p.rows.size(); ++i)
        for (std::size_t j = 0; j < p.cols.size(); ++j)
            out.at(i, j) = m.at(static_cast<std::size_t>(p.rows[i] - 1),
                                static_cast<std::size_t>(p.cols[j] - 1));
    return out;
}

// Incremental row-space basis kept in echelon form with unit leading entries.
// insert() reports whether the vector enlarged the span.
class RowSpanBasis {
public:
    bool insert(std::vector<Rational> v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational& piv = v[lead_[k]];
            if (piv != 0) {
                const Rational f = piv;
                for (std::size_t j = lead_[k]; j < v.size(); ++j) v[j] -= f * rows_[k][j];
            }
        }
        std::size_t lead = v.size();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) { lead = j; break; }
        if (lead == v.size()) return false;
        const Rational f = v[lead];
        for (std::size_t j = lead; j < v.size(); ++j) v[j] /= f;
        // Keep earlier rows reduced above the new pivot so later inserts only
        // need one elimination pass.
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational g = rows_[k][lead];
            if (g != 0)
                for (std::size_t j = lead; j < v.size(); ++j) rows_[k][j] -= g * v[j];
        }
        rows_.push_back(std::move(v));
        lead_.push_back(lead);
        return true;
    }

    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> lead_;
};

inline std::size_t rank(const RationalMatrix& m) {
    RowSpanBasis basis;
    for (std::size_t i = 0; i < m.rows(); ++i) basis.insert(m.row(i));
    return basis.size();
}

// Determinant by fraction-free Bareiss elimination on a denominator-cleared
// integer copy. det of the empty 0x0 matrix is 1.
inline Rational det(const RationalMatrix& m) {
    if (m.rows() != m.cols())
        throw invalid_input("determinant requires a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;

    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer d = 1;
        for (std::size_t j = 0; j < n; ++j)
            d = boost::multiprecision::lcm(d, denominator(m.at(i, j)));
        scale *= d;
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& e = m.at(i, j);
            a[i][j] = numerator(e) * (d / denominator(e));
        }
    }

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return make_rational(sign * a[n - 1][n - 1], scale);
}

// Reduced row echelon form; returns the reduced matrix and the pivot columns
// (0-based, increasing).
inline std::pair<RationalMatrix, std::vector<std::size_t>> rref(const RationalMatrix& m) {
    RationalMatrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < r.cols() && lead_row < r.rows(); ++col) {
        std::size_t piv = lead_row;
        while (piv < r.rows() && r.at(piv, col) == 0) ++piv;
        if (piv == r.rows()) continue;
        for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(lead_row, j), r.at(piv, j));
        const Rational f = r.at(lead_row, col);
        for (std::size_t j = col; j < r.cols(); ++j) r.at(lead_row, j) /= f;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == lead_row) continue;
            const Rational g = r.at(i, col);
            if (g != 0)
                for (std::size_t j = col; j < r.cols(); ++j) r.at(i, j) -= g * r.at(lead_row, j);
        }
        pivots.push_back(col);
        ++lead_row;
    }
    return {r, pivots};
}

// Basis of {x : Mx = 0}, one vector per free column.
inline std::vector<std::vector<Rational>> null_space_basis(const RationalMatrix& m) {
    const auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols());
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r.at(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Row preorder on patterns: compare selection sizes, then selected row
// indices componentwise against the first entries of the other selection.
inline bool preorder_rows(const SubmatrixPattern& a, const SubmatrixPattern& b) {
    if (a.rows.size() > b.rows.size()) return false;
    for (std::size_t k = 0; k < a.rows.size(); ++k)
        if (a.rows[k] > b.rows[k]) return false;
    return true;
}

inline bool preorder_cols(const SubmatrixPattern& a, const SubmatrixPattern& b) {
    if (a.cols.size() > b.cols.size()) return false;
    for (std::size_t k = 0; k < a.cols.size(); ++k)
        if (a.cols[k] > b.cols[k]) return false;
    return true;
}

} // namespace jetcheck
