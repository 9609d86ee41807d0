#pragma once

#include <vector>

#include "jetcheck/errors.hpp"
#include "jetcheck/matrix.hpp"

namespace jetcheck {

// 1-based indices of the rows that are linearly independent of all earlier
// rows. A row counts as selected exactly when it enlarges the span of its
// predecessors; in particular a leading zero row is never selected.
inline std::vector<int> greedy_row_basis(const RationalMatrix& m) {
    std::vector<int> out;
    RowSpanBasis basis;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (basis.insert(m.row(i))) out.push_back(static_cast<int>(i + 1));
    return out;
}

inline std::vector<int> greedy_col_basis(const RationalMatrix& m) {
    std::vector<int> out;
    RowSpanBasis basis;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (basis.insert(m.col(j))) out.push_back(static_cast<int>(j + 1));
    return out;
}

// Row-selected submatrix: keep every column, keep the greedy row basis.
inline SubmatrixPattern v_construction(const RationalMatrix& m) {
    return SubmatrixPattern{greedy_row_basis(m), all_indices(m.cols())};
}

// Column-selected submatrix: keep every row, keep the greedy column basis.
inline SubmatrixPattern h_construction(const RationalMatrix& m) {
    return SubmatrixPattern{all_indices(m.rows()), greedy_col_basis(m)};
}

// The minimal non-singular submatrix: apply the row selection, then the
// column selection. The two compositions must agree; computing both and
// comparing is cheap and catches elimination bugs immediately.
inline SubmatrixPattern minimal_submatrix(const RationalMatrix& m) {
    const std::vector<int> rows_first = greedy_row_basis(m);
    const std::vector<int> cols_after =
        greedy_col_basis(extract(m, SubmatrixPattern{rows_first, all_indices(m.cols())}));

    const std::vector<int> cols_first = greedy_col_basis(m);
    const std::vector<int> rows_after =
        greedy_row_basis(extract(m, SubmatrixPattern{all_indices(m.rows()), cols_first}));

    if (rows_first != rows_after || cols_after != cols_first)
        throw invariant_violation("row-then-column and column-then-row selections disagree");
    return SubmatrixPattern{rows_first, cols_after};
}

namespace detail {

inline std::vector<std::vector<int>> subsets_of_size(int universe, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick;
    const auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(pick.size()) == k) {
            out.push_back(pick);
            return;
        }
        for (int v = next; v <= universe - (k - static_cast<int>(pick.size())) + 1; ++v) {
            pick.push_back(v);
            self(self, v + 1);
            pick.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

} // namespace detail

// Independent oracle for minimal_submatrix: enumerate every non-singular
// square submatrix of size rank(m) and verify that exactly one of them
// precedes all the others in both the row and the column preorder. Square
// submatrices larger than rank(m) are singular and excluded; over them the
// componentwise preorder has no common minimum once a dependent row or
// column sits above the selected ones.
inline SubmatrixPattern brute_force_minimal(const RationalMatrix& m) {
    if (m.rows() > 7 || m.cols() > 7)
        throw invalid_input("brute_force_minimal is limited to 7x7 inputs");
    const std::size_t target = rank(m);

    std::vector<SubmatrixPattern> full_rank;
    const int k = static_cast<int>(target);
    const auto row_sets = detail::subsets_of_size(static_cast<int>(m.rows()), k);
    const auto col_sets = detail::subsets_of_size(static_cast<int>(m.cols()), k);
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) {
            SubmatrixPattern p{rs, cs};
            if (rank(extract(m, p)) == target) full_rank.push_back(std::move(p));
        }

    std::vector<SubmatrixPattern> minimal;
    for (const auto& cand : full_rank) {
        bool ok = true;
        for (const auto& other : full_rank)
            if (!preorder_rows(cand, other) || !preorder_cols(cand, other)) { ok = false; break; }
        if (ok) minimal.push_back(cand);
    }
    if (minimal.size() != 1)
        throw invariant_violation("expected exactly one minimal full-rank submatrix, found " +
                                  std::to_string(minimal.size()));
    return minimal.front();
}

} // namespace jetcheck
