#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>

#include "jetcheck/errors.hpp"

namespace jetcheck {

// Exact arithmetic used everywhere. cpp_rational keeps values in lowest terms
// with a positive denominator, which the serialization below relies on.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw invalid_input("rational with zero denominator");
    // The (num, den) constructor rejects negative denominators; division
    // canonicalizes both sign and gcd.
    return Rational(num) / Rational(den);
}

// Accepts "a" or "a/b" with optional leading '-' on a; nothing else.
inline Rational parse_rational(const std::string& text) {
    const auto bad = [&]() -> Rational {
        throw invalid_input("bad rational literal: '" + text + "'");
    };
    std::size_t pos = 0;
    auto read_int = [&](bool allow_sign) -> Integer {
        std::size_t start = pos;
        if (allow_sign && pos < text.size() && text[pos] == '-') ++pos;
        std::size_t digits_from = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits_from) bad();
        return Integer(text.substr(start, pos - start));
    };
    Integer num = read_int(true);
    Integer den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_int(false);
    }
    if (pos != text.size()) bad();
    return make_rational(num, den);
}

inline std::string to_string(const Rational& r) {
    const Integer num = numerator(r);
    const Integer den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace jetcheck
