#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "nbtail/errors.hpp"

namespace nbtail {

/// Arbitrary-size rational, always held in reduced form with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// The exact dyadic value of a finite double.
inline Rational exact_rational(double x) {
    if (!std::isfinite(x)) detail::fail_domain("exact_rational", "value must be finite");
    return Rational(x);
}

/// floor(x) for a rational x >= 0.
inline BigInt floor_nonneg(const Rational& x) {
    return boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
}

/// Parses "a/b", an integer, or a plain decimal ("0.125", "1e-3") exactly.
inline Rational parse_rational(std::string_view text) {
    const std::string s(text);
    auto bad = [&] { detail::fail_domain("parse_rational", "cannot parse '" + s + "'"); };
    if (s.empty()) bad();

    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const Rational num = parse_rational(s.substr(0, slash));
        const Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) detail::fail_domain("parse_rational", "zero denominator in '" + s + "'");
        return num / den;
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    BigInt digits = 0;
    int scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c >= '0' && c <= '9') {
            digits = digits * 10 + (c - '0');
            any_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) bad();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') bad();
        std::size_t used = 0;
        int exponent = 0;
        try {
            exponent = std::stoi(s.substr(i + 1), &used);
        } catch (const std::exception&) {
            bad();
        }
        if (used != s.size() - i - 1) bad();
        scale += exponent;
    }
    Rational value(digits);
    const BigInt ten_power = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(scale)));
    if (scale >= 0) {
        value *= ten_power;
    } else {
        value /= ten_power;
    }
    return negative ? Rational(-value) : value;
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline std::string to_string(const Rational& x) { return x.str(); }

}  // namespace nbtail
