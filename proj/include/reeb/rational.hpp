#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "reeb/errors.hpp"

namespace reeb {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int int_pow10(unsigned n) {
    Int r = 1;
    for (unsigned i = 0; i < n; ++i) r *= 10;
    return r;
}

/// Parses "p", "-p", or "p/q" (q > 0 after normalization) into an exact
/// rational. Throws ParseError on anything else.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw ParseError("not a rational: \"" + std::string(text) + "\""); };
    if (text.empty()) fail();
    std::size_t slash = text.find('/');
    auto parse_int = [&](std::string_view part) -> Int {
        if (part.empty()) fail();
        std::size_t i = 0;
        bool negative = part[0] == '-';
        if (part[0] == '-' || part[0] == '+') i = 1;
        if (i == part.size()) fail();
        Int v = 0;
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') fail();
            v = v * 10 + (part[i] - '0');
        }
        return negative ? Int(-v) : v;
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator: \"" + std::string(text) + "\"");
    return Rational(num, den);
}

/// Canonical form: lowest terms, "p" when the denominator is 1, else "p/q".
inline std::string format_rational(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

struct ParsedDecimal {
    Rational value;
    unsigned fractional_digits = 0;
};

/// Parses a plain decimal string like "1.4142" or "3" into an exact rational,
/// remembering how many fractional digits the string carried.
inline ParsedDecimal parse_decimal(std::string_view text) {
    auto fail = [&] { throw ParseError("not a decimal: \"" + std::string(text) + "\""); };
    if (text.empty()) fail();
    std::size_t i = 0;
    bool negative = false;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        i = 1;
    }
    Int digits = 0;
    unsigned frac = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) fail();
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits = digits * 10 + (c - '0');
            seen_digit = true;
            if (seen_dot) ++frac;
        } else {
            fail();
        }
    }
    if (!seen_digit) fail();
    if (seen_dot && frac == 0) fail();
    Rational value(digits, int_pow10(frac));
    if (negative) value = -value;
    return {value, frac};
}

/// Fixed-point decimal rendering with the given number of fractional digits,
/// rounded to nearest (ties away from zero). Deterministic, no floating point.
inline std::string decimal_string(const Rational& q, unsigned fractional_digits) {
    Int scale = int_pow10(fractional_digits);
    Int num = numerator(q) * scale;
    Int den = denominator(q);
    bool negative = num < 0;
    if (negative) num = -num;
    Int quotient = num / den;
    Int remainder = num % den;
    if (2 * remainder >= den) ++quotient;
    std::string digits = quotient.str();
    if (digits.size() <= fractional_digits)
        digits.insert(0, fractional_digits + 1 - digits.size(), '0');
    std::string out;
    if (negative) out += '-';
    out += digits.substr(0, digits.size() - fractional_digits);
    if (fractional_digits > 0) {
        out += '.';
        out += digits.substr(digits.size() - fractional_digits);
    }
    return out;
}

/// Largest T such that every q_i / T is a positive integer:
/// gcd of the numerators over the lcm of the denominators.
inline Rational rational_gcd(std::span<const Rational> qs) {
    if (qs.empty()) throw NonPositiveInput("rational_gcd: empty input");
    Int num = 0, den = 1;
    for (const Rational& q : qs) {
        if (q <= 0) throw NonPositiveInput("rational_gcd: input " + format_rational(q) + " not positive");
        num = gcd(num, numerator(q));
        den = lcm(den, denominator(q));
    }
    return Rational(num, den);
}

/// Smallest T such that every T / q_i is a positive integer:
/// lcm of the numerators over the gcd of the denominators.
inline Rational rational_lcm(std::span<const Rational> qs) {
    if (qs.empty()) throw NonPositiveInput("rational_lcm: empty input");
    Int num = 1, den = 0;
    for (const Rational& q : qs) {
        if (q <= 0) throw NonPositiveInput("rational_lcm: input " + format_rational(q) + " not positive");
        num = lcm(num, numerator(q));
        den = gcd(den, denominator(q));
    }
    return Rational(num, den);
}

inline Rational rational_gcd(std::initializer_list<Rational> qs) {
    return rational_gcd(std::span<const Rational>(qs.begin(), qs.size()));
}

inline Rational rational_lcm(std::initializer_list<Rational> qs) {
    return rational_lcm(std::span<const Rational>(qs.begin(), qs.size()));
}

inline bool is_positive_integer(const Rational& q) { return q > 0 && denominator(q) == 1; }

}  // namespace reeb
