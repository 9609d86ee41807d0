#pragma once

#include <cstdint>
#include <vector>

#include "jetcheck/errors.hpp"
#include "jetcheck/matrix.hpp"

namespace jetcheck {

// Finite model of a linear setup l : F x X -> R^c, given as a c x (f_dim + n)
// matrix with the F-block columns first. The operator of interest is the
// F-projection k restricted to K = ker l.
struct LinearSetup {
    int f_dim = 0;
    int n = 0;
    int c = 0;
    RationalMatrix L;
};

inline void validate_setup(const LinearSetup& s) {
    if (s.f_dim < 0 || s.n < 0 || s.c < 1)
        throw invalid_input("linear setup needs f_dim >= 0, n >= 0, c >= 1");
    if (s.L.rows() != static_cast<std::size_t>(s.c) ||
        s.L.cols() != static_cast<std::size_t>(s.f_dim + s.n))
        throw invalid_input("setup matrix must be c x (f_dim + n)");
}

struct IndexReport {
    std::int64_t ker_dim = 0;
    std::int64_t coker_dim = 0;
    std::int64_t index = 0;
    bool k_onto = false;
    bool l0_onto = false;
};

// Kernel and cokernel of the projection K -> F. Requires l onto (rank c);
// then dim K = f_dim + n - c, the image of the projection has the rank of
// the F-part of any kernel basis, and the X-block alone decides whether the
// projection is onto.
inline IndexReport fredholm_index(const LinearSetup& s) {
    validate_setup(s);
    if (rank(s.L) != static_cast<std::size_t>(s.c))
        throw precondition_error("setup matrix is not surjective");

    const auto kernel = null_space_basis(s.L);
    RationalMatrix f_part(kernel.size(), static_cast<std::size_t>(s.f_dim));
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(s.f_dim); ++j)
            f_part.at(i, j) = kernel[i][j];
    const std::int64_t image_dim = static_cast<std::int64_t>(rank(f_part));

    IndexReport rep;
    rep.ker_dim = static_cast<std::int64_t>(kernel.size()) - image_dim;
    rep.coker_dim = s.f_dim - image_dim;
    rep.index = rep.ker_dim - rep.coker_dim;
    rep.k_onto = rep.coker_dim == 0;

    // Independent route: elements of K with zero F-part correspond to the
    // kernel of the X-block, and the X-block being onto is equivalent to the
    // projection being onto.
    SubmatrixPattern x_cols;
    x_cols.rows = all_indices(s.L.rows());
    for (int j = s.f_dim + 1; j <= s.f_dim + s.n; ++j) x_cols.cols.push_back(j);
    const std::size_t x_rank = rank(extract(s.L, x_cols));
    if (rep.ker_dim != s.n - static_cast<std::int64_t>(x_rank))
        throw invariant_violation("kernel dimension disagrees between the two computations");
    rep.l0_onto = x_rank == static_cast<std::size_t>(s.c);
    return rep;
}

// Codimension bookkeeping for the three ways a constraint is transported.
// Each transport subtracts the dimension it quotients away; the precondition
// keeps the result a positive codimension.
inline std::int64_t codim_pushforward(std::int64_t d, std::int64_t i) {
    if (d < i + 1)
        throw precondition_error("pushforward needs codimension at least i + 1");
    return d - i;
}

inline std::int64_t codim_pullback(std::int64_t d, std::int64_t k) {
    if (k > d - 1)
        throw precondition_error("pullback needs k at most codimension - 1");
    return d - k;
}

inline std::int64_t codim_jet_avoidance(std::int64_t d, std::int64_t n) {
    if (n >= d)
        throw precondition_error("avoidance needs base dimension below the codimension");
    return d - n;
}

} // namespace jetcheck
