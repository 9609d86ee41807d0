#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "jetcheck/errors.hpp"
#include "jetcheck/multiindex.hpp"
#include "jetcheck/rational.hpp"

namespace jetcheck {

// A polynomial map R^n -> R^q with rational coefficients, stored sparsely as
// c^s_alpha for the monomial x^alpha of component s. Zero coefficients may be
// omitted.
struct PolynomialMap {
    int n = 1, q = 1, degree = 0;
    std::map<std::pair<int, MultiIndex>, Rational> coeffs;

    PolynomialMap() = default;
    PolynomialMap(int n_, int q_, int degree_) : n(n_), q(q_), degree(degree_) {
        if (n < 1 || q < 1 || degree < 0)
            throw invalid_input("polynomial map needs n >= 1, q >= 1, degree >= 0");
    }

    void set_coeff(int s, const MultiIndex& alpha, const Rational& value) {
        validate_key(s, alpha);
        if (value == 0)
            coeffs.erase({s, alpha});
        else
            coeffs[{s, alpha}] = value;
    }

    Rational coeff(int s, const MultiIndex& alpha) const {
        validate_key(s, alpha);
        const auto it = coeffs.find({s, alpha});
        return it == coeffs.end() ? Rational(0) : it->second;
    }

    std::vector<Rational> eval(const std::vector<Rational>& x) const {
        if (static_cast<int>(x.size()) != n)
            throw invalid_input("evaluation point has wrong dimension");
        std::vector<Rational> out(static_cast<std::size_t>(q), Rational(0));
        for (const auto& [key, c] : coeffs) {
            Rational term = c;
            for (int i = 0; i < n; ++i)
                for (int e = 0; e < key.second[static_cast<std::size_t>(i)]; ++e)
                    term *= x[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(key.first - 1)] += term;
        }
        return out;
    }

    // d/dx_axis, axis 1-based.
    PolynomialMap partial(int axis) const {
        if (axis < 1 || axis > n) throw invalid_input("partial: axis out of range");
        PolynomialMap out(n, q, degree == 0 ? 0 : degree - 1);
        for (const auto& [key, c] : coeffs) {
            const int e = key.second[static_cast<std::size_t>(axis - 1)];
            if (e == 0) continue;
            MultiIndex alpha = key.second;
            --alpha[static_cast<std::size_t>(axis - 1)];
            out.coeffs[{key.first, alpha}] += c * e;
        }
        for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
            it = (it->second == 0) ? out.coeffs.erase(it) : std::next(it);
        return out;
    }

private:
    void validate_key(int s, const MultiIndex& alpha) const {
        if (s < 1 || s > q) throw invalid_input("polynomial component index out of range");
        if (static_cast<int>(alpha.size()) != n)
            throw invalid_input("monomial multi-index has wrong dimension");
        validate_multiindex(alpha);
        if (order_of(alpha) > degree)
            throw invalid_input("monomial exceeds the declared degree bound");
    }
};

inline Integer factorial_of(const MultiIndex& alpha) {
    Integer out = 1;
    for (int a : alpha)
        for (int i = 2; i <= a; ++i) out *= i;
    return out;
}

// The derivative value del_alpha f^s (0) = alpha! * c^s_alpha.
inline Rational derivative_at_zero(const PolynomialMap& f, int s, const MultiIndex& alpha) {
    return Rational(factorial_of(alpha)) * f.coeff(s, alpha);
}

// Univariate polynomial, coefficient of x^k at index k.
struct Poly {
    std::vector<Rational> c;

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    Rational eval(const Rational& x) const {
        Rational out = 0;
        for (std::size_t k = c.size(); k-- > 0;) out = out * x + c[k];
        return out;
    }
};

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) out.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) out.c[k] += b.c[k];
    out.trim();
    return out;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    if (a.is_zero() || b.is_zero()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    out.trim();
    return out;
}

inline Poly poly_neg(const Poly& a) {
    Poly out = a;
    for (auto& v : out.c) v = -v;
    return out;
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer v) {
    if (v < 0) v = -v;
    if (v > Integer("1000000000000"))
        throw unsupported_instance("coefficient too large for exact rational root search");
    std::vector<Integer> small, large;
    for (Integer i = 1; i * i <= v; ++i) {
        if (v % i == 0) {
            small.push_back(i);
            if (i * i != v) large.push_back(v / i);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace detail

// All rational roots of a nonzero univariate polynomial, each listed once,
// sorted increasing. Rational root theorem on the denominator-cleared
// primitive part.
inline std::vector<Rational> rational_roots(Poly p) {
    p.trim();
    if (p.is_zero())
        throw invalid_input("rational_roots of the zero polynomial");
    std::vector<Rational> roots;

    std::size_t low = 0;
    while (low < p.c.size() && p.c[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low == p.c.size() - 1) {
        // Pure monomial a*x^low: 0 is the only root.
        return roots;
    }

    Integer den = 1;
    for (std::size_t k = low; k < p.c.size(); ++k)
        den = boost::multiprecision::lcm(den, denominator(p.c[k]));
    std::vector<Integer> a(p.c.size() - low);
    for (std::size_t k = low; k < p.c.size(); ++k) {
        const Rational& r = p.c[k];
        a[k - low] = numerator(r) * (den / denominator(r));
    }
    Integer content = 0;
    for (const Integer& v : a) content = boost::multiprecision::gcd(content, v);
    for (Integer& v : a) v /= content;

    const auto ps = detail::positive_divisors(a.front());
    const auto qs = detail::positive_divisors(a.back());
    for (const Integer& pv : ps)
        for (const Integer& qv : qs)
            for (int sign : {1, -1}) {
                const Rational cand = make_rational(sign * pv, qv);
                if (p.eval(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace jetcheck
