#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "jetcheck/errors.hpp"
#include "jetcheck/jets.hpp"
#include "jetcheck/matrix.hpp"
#include "jetcheck/minimal.hpp"
#include "jetcheck/multiindex.hpp"
#include "jetcheck/rng.hpp"

namespace jetcheck {

// A point of the top-level fiber together with the data that pins down the
// stratum question there: the p-jet a, a tangent subspace V at a, and the
// order-(p+1) point z0 above a.
struct StratumInstance {
    Jet a;
    TangentSubspace V;
    FiberPoint z0;
};

inline void validate_instance(const StratumInstance& inst) {
    validate_jet(inst.a);
    validate_fiber(inst.z0);
    if (inst.z0.n != inst.a.n || inst.z0.q != inst.a.q || inst.z0.p != inst.a.p)
        throw invalid_input("jet and fiber point live over different spaces");
    const JetLayout layout(inst.a.n, inst.a.q, inst.a.p);
    if (inst.V.ambient_dim() != static_cast<std::size_t>(layout.dims().dim_jet))
        throw invalid_input("tangent subspace has the wrong ambient dimension");
}

// Number of rows above the top derivative level: the dimension of the next
// lower jet space (the base dimension itself when p = 0).
inline std::int64_t rows_below_top(const JetDims& dims) {
    return dims.dim_jet - dims.dim_fiber[static_cast<std::size_t>(dims.p)];
}

// The matrix whose columns are the V basis followed by the holonomic frame of
// (a, z), written in jet coordinates. Its rank measures how much of the
// tangent space the subspace and the frame span together; only the bottom
// block (top-level rows against frame columns) depends on z.
inline RationalMatrix assemble_matrix(const Jet& a, const TangentSubspace& V,
                                      const FiberPoint& z) {
    const JetLayout layout(a.n, a.q, a.p);
    const std::size_t dim = static_cast<std::size_t>(layout.dims().dim_jet);
    if (V.ambient_dim() != dim)
        throw invalid_input("tangent subspace has the wrong ambient dimension");
    const auto frame = jet_frame(a, z);
    const std::size_t m = V.dim();
    RationalMatrix M(dim, m + static_cast<std::size_t>(a.n));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < dim; ++i) M.at(i, k) = V.basis[k][i];
    for (std::size_t j = 0; j < static_cast<std::size_t>(a.n); ++j)
        for (std::size_t i = 0; i < dim; ++i) M.at(i, m + j) = frame[j][i];
    return M;
}

// The rows above the top level do not involve z, so they are checked at any
// fiber point; spanning them is what makes the top-level block carry the
// whole question.
inline bool check_hypothesis(const Jet& a, const TangentSubspace& V) {
    const JetLayout layout(a.n, a.q, a.p);
    const RationalMatrix M = assemble_matrix(a, V, zero_fiber(a.n, a.q, a.p));
    const std::int64_t below = rows_below_top(layout.dims());
    SubmatrixPattern top;
    for (int i = 1; i <= below; ++i) top.rows.push_back(i);
    top.cols = all_indices(M.cols());
    return rank(extract(M, top)) == static_cast<std::size_t>(below);
}

struct Classification {
    std::int64_t rank = 0;
    bool in_Z = false;
};

namespace detail {
inline Classification classify_unchecked(const Jet& a, const TangentSubspace& V,
                                         const FiberPoint& z) {
    const JetLayout layout(a.n, a.q, a.p);
    const std::int64_t r = static_cast<std::int64_t>(rank(assemble_matrix(a, V, z)));
    return Classification{r, r < layout.dims().dim_jet};
}
} // namespace detail

inline Classification classify(const Jet& a, const TangentSubspace& V, const FiberPoint& z) {
    if (!check_hypothesis(a, V))
        throw precondition_error(
            "the projection of V and the frame to the lower jet space is not surjective");
    return detail::classify_unchecked(a, V, z);
}

// Number of local equations cut out by the stratum of corank data (c, r):
// theta = n + 1 - c + 2 (dim - 1 - r), where dim is the p-jet dimension and
// c = dim - m.
inline std::int64_t theta_count(int n, int q, int p, std::int64_t c, std::int64_t r) {
    const JetDims dims = jet_dims(n, q, p);
    if (c < 1 || c >= dims.dim_jet)
        throw invalid_input("theta_count: need 1 <= c < jet dimension");
    const std::int64_t m = dims.dim_jet - c;
    if (r < m || r >= dims.dim_jet)
        throw invalid_input("theta_count: rank must lie in [dim - c, dim - 1]");
    return n + 1 - c + 2 * (dims.dim_jet - 1 - r);
}

inline SubmatrixPattern complement_pattern(const SubmatrixPattern& p, std::size_t rows,
                                           std::size_t cols) {
    validate_pattern(p, rows, cols);
    SubmatrixPattern out;
    for (int i = 1; i <= static_cast<int>(rows); ++i)
        if (!std::binary_search(p.rows.begin(), p.rows.end(), i)) out.rows.push_back(i);
    for (int j = 1; j <= static_cast<int>(cols); ++j)
        if (!std::binary_search(p.cols.begin(), p.cols.end(), j)) out.cols.push_back(j);
    return out;
}

// Walk the complement along its first row, then down its last column. With
// |rows| = a and |cols| = b this visits a + b - 1 couples, each sharing an
// edge with the next.
inline std::vector<std::pair<int, int>> staircase_path(const SubmatrixPattern& hat) {
    if (hat.rows.empty() && hat.cols.empty())
        throw precondition_error("empty complement: the point lies in no proper stratum");
    std::vector<std::pair<int, int>> path;
    if (hat.rows.empty() || hat.cols.empty()) return path;
    for (int j : hat.cols) path.emplace_back(hat.rows.front(), j);
    for (std::size_t k = 1; k < hat.rows.size(); ++k)
        path.emplace_back(hat.rows[k], hat.cols.back());
    return path;
}

struct VerificationReport {
    int n = 0, q = 0, p = 0;
    std::int64_t m = 0, c = 0, rank = 0, theta = 0;
    SubmatrixPattern mstar, hat;
    std::vector<std::pair<int, int>> path;
    Rational det_mstar;
    RationalMatrix jacobian_block;
    std::int64_t jacobian_rank = 0;
    bool vanishing_minors_ok = false;
    bool path_vars_distinct_ok = false;
    bool semiperimeter_ok = false;
    bool diagonal_ok = false;
    bool uppertriangle_zero_ok = false;
    bool pass = false;
};

namespace detail {

// Insert one extra index into a sorted selection.
inline std::vector<int> with_index(const std::vector<int>& sorted, int extra) {
    std::vector<int> out = sorted;
    out.insert(std::upper_bound(out.begin(), out.end(), extra), extra);
    return out;
}

// Which top-level variable sits in cell (i, j) of the assembled matrix:
// row i names a coordinate y^s_alpha with |alpha| = p, frame column j names a
// base direction, and the entry is the fiber variable y^s_{alpha + delta}.
struct CellVariables {
    const JetLayout& layout;
    std::int64_t below;
    std::int64_t m;

    bool in_top_block(int i, int j) const { return i > below && j > m; }

    std::size_t fiber_var(int i, int j) const {
        const JetCoordinate& coord =
            layout.level(layout.p())[static_cast<std::size_t>(i - below - 1)];
        const int axis = static_cast<int>(j - m);
        return layout.fiber_index(coord.s, add_delta(coord.alpha, axis));
    }
};

// Gradient of det(M[pattern]) with respect to every fiber variable, evaluated
// at the fiber point M was assembled with. Only top-block cells carry a
// variable, each with coefficient one, so the derivative is a sum of signed
// minors over the cells holding that variable.
inline std::vector<Rational> minor_det_gradient(const RationalMatrix& M,
                                                const SubmatrixPattern& pattern,
                                                const CellVariables& cells,
                                                std::size_t fiber_dim) {
    std::vector<Rational> grad(fiber_dim, Rational(0));
    for (std::size_t ri = 0; ri < pattern.rows.size(); ++ri) {
        if (pattern.rows[ri] <= cells.below) continue;
        for (std::size_t ci = 0; ci < pattern.cols.size(); ++ci) {
            if (pattern.cols[ci] <= cells.m) continue;
            SubmatrixPattern minor;
            for (std::size_t k = 0; k < pattern.rows.size(); ++k)
                if (k != ri) minor.rows.push_back(pattern.rows[k]);
            for (std::size_t k = 0; k < pattern.cols.size(); ++k)
                if (k != ci) minor.cols.push_back(pattern.cols[k]);
            const Rational cof = det(extract(M, minor));
            const bool negative = ((ri + ci) % 2) != 0;
            grad[cells.fiber_var(pattern.rows[ri], pattern.cols[ci])] +=
                negative ? -cof : cof;
        }
    }
    return grad;
}

} // namespace detail

// Run every finite check behind the stratum normal form at one instance:
// rank and theta bookkeeping, the minimal non-singular submatrix and its
// complement, vanishing of all bordered minors at z0, and the staircase
// Jacobian being lower-triangular with unit-size diagonal +-det(M*).
inline VerificationReport verify_core(const StratumInstance& inst) {
    validate_instance(inst);
    if (!check_hypothesis(inst.a, inst.V))
        throw precondition_error(
            "the projection of V and the frame to the lower jet space is not surjective");

    const JetLayout layout(inst.a.n, inst.a.q, inst.a.p);
    const JetDims& dims = layout.dims();
    const std::int64_t below = rows_below_top(dims);

    VerificationReport rep;
    rep.n = inst.a.n; rep.q = inst.a.q; rep.p = inst.a.p;
    rep.m = static_cast<std::int64_t>(inst.V.dim());
    rep.c = dims.dim_jet - rep.m;

    const RationalMatrix M = assemble_matrix(inst.a, inst.V, inst.z0);
    rep.rank = static_cast<std::int64_t>(rank(M));
    if (rep.rank == dims.dim_jet)
        throw precondition_error("the point is transverse: it lies in no proper stratum");
    rep.theta = theta_count(inst.a.n, inst.a.q, inst.a.p, rep.c, rep.rank);

    rep.mstar = minimal_submatrix(M);
    if (static_cast<std::int64_t>(rep.mstar.rows.size()) != rep.rank)
        throw invariant_violation("minimal submatrix size differs from the rank");
    rep.det_mstar = det(extract(M, rep.mstar));
    if (rep.det_mstar == 0)
        throw invariant_violation("minimal submatrix is singular");

    rep.hat = complement_pattern(rep.mstar, M.rows(), M.cols());
    for (int i : rep.hat.rows)
        if (i <= below)
            throw invariant_violation("complement rows reach above the top-level block");
    for (int j : rep.hat.cols)
        if (j <= rep.m)
            throw invariant_violation("complement columns reach into the subspace block");

    rep.path = staircase_path(rep.hat);
    rep.semiperimeter_ok =
        rep.theta == static_cast<std::int64_t>(rep.hat.rows.size() + rep.hat.cols.size()) - 1 &&
        rep.theta == static_cast<std::int64_t>(rep.path.size());

    rep.vanishing_minors_ok = true;
    for (int i : rep.hat.rows)
        for (int j : rep.hat.cols) {
            const SubmatrixPattern bordered{detail::with_index(rep.mstar.rows, i),
                                            detail::with_index(rep.mstar.cols, j)};
            if (det(extract(M, bordered)) != 0) rep.vanishing_minors_ok = false;
        }

    const detail::CellVariables cells{layout, below, rep.m};
    std::vector<std::size_t> path_vars;
    for (const auto& [i, j] : rep.path) path_vars.push_back(cells.fiber_var(i, j));
    {
        auto sorted = path_vars;
        std::sort(sorted.begin(), sorted.end());
        rep.path_vars_distinct_ok =
            std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }

    const std::size_t fiber_dim = layout.fiber_value_count();
    RationalMatrix jacobian(rep.path.size(), fiber_dim);
    rep.jacobian_block = RationalMatrix(rep.path.size(), rep.path.size());
    for (std::size_t t = 0; t < rep.path.size(); ++t) {
        const SubmatrixPattern bordered{detail::with_index(rep.mstar.rows, rep.path[t].first),
                                        detail::with_index(rep.mstar.cols, rep.path[t].second)};
        const auto grad = detail::minor_det_gradient(M, bordered, cells, fiber_dim);
        for (std::size_t v = 0; v < fiber_dim; ++v) jacobian.at(t, v) = grad[v];
        for (std::size_t u = 0; u < rep.path.size(); ++u)
            rep.jacobian_block.at(t, u) = grad[path_vars[u]];
    }
    rep.jacobian_rank = static_cast<std::int64_t>(rank(jacobian));

    rep.diagonal_ok = true;
    rep.uppertriangle_zero_ok = true;
    for (std::size_t t = 0; t < rep.path.size(); ++t) {
        const Rational& d = rep.jacobian_block.at(t, t);
        if (d != rep.det_mstar && d != -rep.det_mstar) rep.diagonal_ok = false;
        for (std::size_t u = t + 1; u < rep.path.size(); ++u)
            if (rep.jacobian_block.at(t, u) != 0) rep.uppertriangle_zero_ok = false;
    }

    rep.pass = rep.vanishing_minors_ok && rep.path_vars_distinct_ok && rep.semiperimeter_ok &&
               rep.diagonal_ok && rep.uppertriangle_zero_ok && rep.jacobian_rank == rep.theta;
    return rep;
}

// Canonical instance sitting in the corank-c stratum: the zero jet and zero
// fiber point, with V spanned by all base directions, every lower-level
// coordinate direction, and all but the last c top-level coordinate
// directions. The assembled matrix then has rank dim - c at z0 = 0.
inline StratumInstance degenerate_witness(int n, int q, int p, int c) {
    if (n < 1 || q < 1 || p < 1)
        throw invalid_input("degenerate_witness: need n >= 1, q >= 1, p >= 1");
    const JetLayout layout(n, q, p);
    const JetDims& dims = layout.dims();
    if (c < 1 || c > n)
        throw invalid_input("degenerate_witness: need 1 <= c <= n");
    const std::int64_t top = dims.dim_fiber[static_cast<std::size_t>(p)];

    std::vector<std::vector<Rational>> basis;
    const auto unit = [&](std::size_t pos) {
        std::vector<Rational> v(static_cast<std::size_t>(dims.dim_jet));
        v[pos] = 1;
        return v;
    };
    for (int j = 0; j < n; ++j) basis.push_back(unit(static_cast<std::size_t>(j)));
    for (int k = 0; k < p; ++k)
        for (const auto& coord : layout.level(k))
            basis.push_back(unit(static_cast<std::size_t>(n) +
                                 layout.jet_index(coord.s, coord.alpha)));
    const auto& top_level = layout.level(p);
    for (std::int64_t t = 0; t < top - c; ++t)
        basis.push_back(unit(static_cast<std::size_t>(n) +
                             layout.jet_index(top_level[static_cast<std::size_t>(t)].s,
                                              top_level[static_cast<std::size_t>(t)].alpha)));

    return StratumInstance{zero_jet(n, q, p), TangentSubspace::make(std::move(basis)),
                           zero_fiber(n, q, p)};
}

// Replace the basis of V by a random unimodular integer combination. The
// spanned subspace is unchanged, so ranks, theta, and the verification
// verdict must not change; only the concrete selections may.
inline TangentSubspace rotate_basis(const TangentSubspace& V, std::uint64_t seed) {
    Rng rng(seed);
    auto basis = V.basis;
    const std::size_t m = basis.size();
    const int ops = 24;
    for (int t = 0; t < ops; ++t) {
        const std::size_t k = rng.below(m);
        switch (rng.below(3)) {
        case 0: {
            if (m == 1) break;
            std::size_t l = rng.below(m - 1);
            if (l >= k) ++l;
            std::swap(basis[k], basis[l]);
            break;
        }
        case 1:
            for (auto& v : basis[k]) v = -v;
            break;
        default: {
            if (m == 1) break;
            std::size_t l = rng.below(m - 1);
            if (l >= k) ++l;
            const long long scale = rng.coin() ? rng.int_in(1, 2) : rng.int_in(-2, -1);
            for (std::size_t i = 0; i < basis[k].size(); ++i)
                basis[k][i] += Rational(scale) * basis[l][i];
            break;
        }
        }
    }
    return TangentSubspace::make(std::move(basis));
}

} // namespace jetcheck
