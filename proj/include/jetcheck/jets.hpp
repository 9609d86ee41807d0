#pragma once

#include <map>
#include <utility>
#include <vector>

#include "jetcheck/errors.hpp"
#include "jetcheck/matrix.hpp"
#include "jetcheck/multiindex.hpp"
#include "jetcheck/polynomial.hpp"

namespace jetcheck {

// Serialization order used for every vector and matrix in jet coordinates:
// the n base directions first, then the fiber coordinates level by level
// (derivative order 0, 1, ..., p), each level in the coordinate order of
// level_coordinates (s descending, then alpha lexicographically descending).
class JetLayout {
public:
    JetLayout(int n, int q, int p) : dims_(jet_dims(n, q, p)) {
        for (int k = 0; k <= p + 1; ++k) {
            levels_.push_back(level_coordinates(n, q, k));
            for (const auto& coord : levels_.back()) {
                if (k <= p)
                    jet_index_[{coord.s, coord.alpha}] = jet_size_++;
                else
                    fiber_index_[{coord.s, coord.alpha}] = fiber_size_++;
            }
        }
    }

    const JetDims& dims() const { return dims_; }
    int n() const { return dims_.n; }
    int q() const { return dims_.q; }
    int p() const { return dims_.p; }

    // Coordinates of one derivative level, 0 <= k <= p+1.
    const std::vector<JetCoordinate>& level(int k) const {
        return levels_.at(static_cast<std::size_t>(k));
    }

    // Number of y-coordinates in the jet (levels 0..p) and in the fiber
    // above it (level p+1).
    std::size_t jet_value_count() const { return jet_size_; }
    std::size_t fiber_value_count() const { return fiber_size_; }

    // Offset of y^s_alpha among the jet's y-coordinates (0-based).
    std::size_t jet_index(int s, const MultiIndex& alpha) const {
        const auto it = jet_index_.find({s, alpha});
        if (it == jet_index_.end()) throw invalid_input("no such jet coordinate");
        return it->second;
    }

    // Offset of y^s_alpha among the level-(p+1) fiber coordinates (0-based).
    std::size_t fiber_index(int s, const MultiIndex& alpha) const {
        const auto it = fiber_index_.find({s, alpha});
        if (it == fiber_index_.end()) throw invalid_input("no such fiber coordinate");
        return it->second;
    }

private:
    JetDims dims_;
    std::vector<std::vector<JetCoordinate>> levels_;
    std::map<std::pair<int, MultiIndex>, std::size_t> jet_index_;
    std::map<std::pair<int, MultiIndex>, std::size_t> fiber_index_;
    std::size_t jet_size_ = 0, fiber_size_ = 0;
};

// A p-jet at the origin: all derivative values y^s_alpha, |alpha| <= p, in
// serialization order.
struct Jet {
    int n = 1, q = 1, p = 0;
    std::vector<Rational> values;
};

// The order-(p+1) data sitting above a p-jet: values y^s_alpha, |alpha| = p+1.
struct FiberPoint {
    int n = 1, q = 1, p = 0;
    std::vector<Rational> values;
};

inline void validate_jet(const Jet& a) {
    const JetLayout layout(a.n, a.q, a.p);
    if (a.values.size() != layout.jet_value_count())
        throw invalid_input("jet carries the wrong number of values");
}

inline void validate_fiber(const FiberPoint& z) {
    const JetLayout layout(z.n, z.q, z.p);
    if (z.values.size() != layout.fiber_value_count())
        throw invalid_input("fiber point carries the wrong number of values");
}

inline Jet zero_jet(int n, int q, int p) {
    const JetLayout layout(n, q, p);
    return Jet{n, q, p, std::vector<Rational>(layout.jet_value_count())};
}

inline FiberPoint zero_fiber(int n, int q, int p) {
    const JetLayout layout(n, q, p);
    return FiberPoint{n, q, p, std::vector<Rational>(layout.fiber_value_count())};
}

inline const Rational& jet_value(const JetLayout& layout, const Jet& a, int s,
                                 const MultiIndex& alpha) {
    return a.values[layout.jet_index(s, alpha)];
}

inline const Rational& fiber_value(const JetLayout& layout, const FiberPoint& z, int s,
                                   const MultiIndex& alpha) {
    return z.values[layout.fiber_index(s, alpha)];
}

// p-jet of a polynomial map at the origin: y^s_alpha = alpha! * c^s_alpha.
inline Jet prolong(const PolynomialMap& f, int p) {
    if (p < 0) throw invalid_input("prolong: p must be >= 0");
    if (f.degree < p)
        throw insufficient_degree("polynomial degree below the requested jet order");
    const JetLayout layout(f.n, f.q, p);
    Jet a{f.n, f.q, p, std::vector<Rational>(layout.jet_value_count())};
    for (int k = 0; k <= p; ++k)
        for (const auto& coord : layout.level(k))
            a.values[layout.jet_index(coord.s, coord.alpha)] =
                derivative_at_zero(f, coord.s, coord.alpha);
    return a;
}

// The p-jet together with the order-(p+1) derivative data of f at 0.
inline std::pair<Jet, FiberPoint> split_jet_and_fiber(const PolynomialMap& f, int p) {
    if (p < 0) throw invalid_input("split_jet_and_fiber: p must be >= 0");
    if (f.degree < p + 1)
        throw insufficient_degree("polynomial degree too small to carry order-(p+1) data");
    const JetLayout layout(f.n, f.q, p);
    FiberPoint z{f.n, f.q, p, std::vector<Rational>(layout.fiber_value_count())};
    for (const auto& coord : layout.level(p + 1))
        z.values[layout.fiber_index(coord.s, coord.alpha)] =
            derivative_at_zero(f, coord.s, coord.alpha);
    return {prolong(f, p), z};
}

// Directions spanned by moving the base point of the (p-1)-truncation: the
// j-th vector has x-block delta_j and y^s_alpha-block y^s_{alpha+delta_j}(a)
// for |alpha| <= p-1. For p = 0 the vectors are the base directions
// themselves. Depends only on the jet a, not on any higher-order data.
inline std::vector<std::vector<Rational>> e_vectors(const Jet& a) {
    validate_jet(a);
    const JetLayout layout(a.n, a.q, a.p);
    const std::size_t y_size =
        a.p == 0 ? 0 : JetLayout(a.n, a.q, a.p - 1).jet_value_count();
    std::vector<std::vector<Rational>> out;
    for (int j = 1; j <= a.n; ++j) {
        std::vector<Rational> v(static_cast<std::size_t>(a.n) + y_size);
        v[static_cast<std::size_t>(j - 1)] = 1;
        std::size_t pos = static_cast<std::size_t>(a.n);
        for (int k = 0; k + 1 <= a.p; ++k)
            for (const auto& coord : layout.level(k))
                v[pos++] = jet_value(layout, a, coord.s, add_delta(coord.alpha, j));
        out.push_back(std::move(v));
    }
    return out;
}

// The holonomic frame of the pair (a, z): e_vectors extended across the top
// level, where the missing order-(p+1) values come from z.
inline std::vector<std::vector<Rational>> jet_frame(const Jet& a, const FiberPoint& z) {
    validate_jet(a);
    validate_fiber(z);
    if (z.n != a.n || z.q != a.q || z.p != a.p)
        throw invalid_input("jet and fiber point live over different spaces");
    const JetLayout layout(a.n, a.q, a.p);
    std::vector<std::vector<Rational>> out;
    for (int j = 1; j <= a.n; ++j) {
        std::vector<Rational> v(static_cast<std::size_t>(layout.dims().dim_jet));
        v[static_cast<std::size_t>(j - 1)] = 1;
        std::size_t pos = static_cast<std::size_t>(a.n);
        for (int k = 0; k <= a.p; ++k)
            for (const auto& coord : layout.level(k)) {
                const MultiIndex shifted = add_delta(coord.alpha, j);
                v[pos++] = (k == a.p) ? fiber_value(layout, z, coord.s, shifted)
                                      : jet_value(layout, a, coord.s, shifted);
            }
        out.push_back(std::move(v));
    }
    return out;
}

// A linearly independent family of tangent vectors in jet coordinates.
struct TangentSubspace {
    std::vector<std::vector<Rational>> basis;

    static TangentSubspace make(std::vector<std::vector<Rational>> vectors) {
        if (vectors.empty())
            throw invalid_input("tangent subspace needs at least one basis vector");
        for (const auto& v : vectors)
            if (v.size() != vectors.front().size() || v.empty())
                throw invalid_input("tangent basis vectors have unequal dimensions");
        if (rank(RationalMatrix::from_rows(vectors)) != vectors.size())
            throw invalid_input("tangent basis vectors are linearly dependent");
        return TangentSubspace{std::move(vectors)};
    }

    std::size_t dim() const { return basis.size(); }
    std::size_t ambient_dim() const { return basis.empty() ? 0 : basis.front().size(); }
};

} // namespace jetcheck
