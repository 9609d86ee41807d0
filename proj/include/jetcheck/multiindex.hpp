#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "jetcheck/errors.hpp"
#include "jetcheck/rational.hpp"

namespace jetcheck {

// A multi-index is a tuple of n nonnegative exponents; its order is the sum.
using MultiIndex = std::vector<int>;

inline int order_of(const MultiIndex& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

inline void validate_multiindex(const MultiIndex& alpha) {
    if (alpha.empty())
        throw invalid_input("multi-index must have at least one entry");
    for (int a : alpha)
        if (a < 0) throw invalid_input("multi-index entries must be nonnegative");
}

enum class Ordering { precedes, equal, follows };

// Order on equal-length, equal-order multi-indices: the lexicographically
// larger one comes first. So for n=2, order 2: (2,0), (1,1), (0,2).
inline Ordering compare_alpha(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size())
        throw invalid_input("cannot compare multi-indices of different dimension");
    if (order_of(a) != order_of(b))
        throw invalid_input("cannot compare multi-indices of different order");
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return Ordering::precedes;
        if (a[k] < b[k]) return Ordering::follows;
    }
    return Ordering::equal;
}

// One jet coordinate y^s_alpha: target component s (1-based), derivative
// multi-index alpha.
struct JetCoordinate {
    int s = 1;
    MultiIndex alpha;

    bool operator==(const JetCoordinate& o) const { return s == o.s && alpha == o.alpha; }
};

// Total order on coordinates of one level: larger s first, then compare_alpha.
inline Ordering compare_coordinates(const JetCoordinate& a, const JetCoordinate& b) {
    if (a.s < 1 || b.s < 1)
        throw invalid_input("jet coordinate component index must be >= 1");
    if (a.s > b.s) return Ordering::precedes;
    if (a.s < b.s) return Ordering::follows;
    return compare_alpha(a.alpha, b.alpha);
}

inline bool coordinate_precedes(const JetCoordinate& a, const JetCoordinate& b) {
    return compare_coordinates(a, b) == Ordering::precedes;
}

// All multi-indices of dimension n and order `level`, listed in the order
// above (lexicographically descending).
inline std::vector<MultiIndex> enumerate_multiindices(int n, int level) {
    if (n < 1) throw invalid_input("enumerate_multiindices: n must be >= 1");
    if (level < 0) throw invalid_input("enumerate_multiindices: order must be >= 0");
    std::vector<MultiIndex> out;
    MultiIndex current(static_cast<std::size_t>(n), 0);
    const auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n - 1) {
            current[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(current);
            return;
        }
        for (int a = remaining; a >= 0; --a) {
            current[static_cast<std::size_t>(pos)] = a;
            self(self, pos + 1, remaining - a);
        }
    };
    rec(rec, 0, level);
    return out;
}

// All coordinates y^s_alpha with |alpha| = level, in the order above
// (s descending, then alpha descending).
inline std::vector<JetCoordinate> level_coordinates(int n, int q, int level) {
    if (q < 1) throw invalid_input("level_coordinates: q must be >= 1");
    std::vector<JetCoordinate> out;
    const auto alphas = enumerate_multiindices(n, level);
    for (int s = q; s >= 1; --s)
        for (const auto& alpha : alphas)
            out.push_back(JetCoordinate{s, alpha});
    return out;
}

inline Integer binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

struct JetDims {
    int n = 0, q = 0, p = 0;
    // Dimension of the p-jet space: n + q * C(n+p, n).
    std::int64_t dim_jet = 0;
    // dim_fiber[k] = q * C(n+k-1, k), the number of new coordinates at
    // derivative order k, for k = 0..p+1.
    std::vector<std::int64_t> dim_fiber;
};

namespace detail {
inline std::int64_t to_int64(const Integer& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max())
        throw arithmetic_error(std::string(what) + " exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}
} // namespace detail

inline JetDims jet_dims(int n, int q, int p) {
    if (n < 1 || q < 1 || p < 0)
        throw invalid_input("jet_dims: need n >= 1, q >= 1, p >= 0");
    JetDims d;
    d.n = n; d.q = q; d.p = p;
    d.dim_jet = detail::to_int64(Integer(n) + q * binomial(n + p, n), "jet dimension");
    for (int k = 0; k <= p + 1; ++k)
        d.dim_fiber.push_back(detail::to_int64(q * binomial(n + k - 1, k), "fiber dimension"));
    return d;
}

// alpha + delta_j for a 1-based axis j.
inline MultiIndex add_delta(const MultiIndex& alpha, int j) {
    validate_multiindex(alpha);
    if (j < 1 || j > static_cast<int>(alpha.size()))
        throw invalid_input("add_delta: axis out of range");
    MultiIndex out = alpha;
    ++out[static_cast<std::size_t>(j - 1)];
    return out;
}

} // namespace jetcheck
