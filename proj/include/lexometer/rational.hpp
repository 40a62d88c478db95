// Copyright 2026 The Lexometer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "lexometer/errors.hpp"

namespace lexometer {

/// Exact rational used for every derived quantity (ratios, growth, chars per
/// word). Values are rounded only when rendered.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class RoundingMode { HalfUp, HalfEven };

inline BigInt pow10(unsigned digits) {
    BigInt p = 1;
    for (unsigned i = 0; i < digits; ++i) p *= 10;
    return p;
}

/// Rounds |value| * 10^digits to an integer (ties away from zero for HalfUp,
/// to even for HalfEven) and reapplies the sign. The result is the scaled
/// integer, i.e. 1.235 at 2 digits yields 124.
inline BigInt round_scaled(const Rational& value, unsigned digits,
                           RoundingMode mode = RoundingMode::HalfUp) {
    Rational scaled = value * Rational(pow10(digits));
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    BigInt num = boost::multiprecision::numerator(scaled);
    BigInt den = boost::multiprecision::denominator(scaled);
    BigInt q = num / den;
    BigInt r = num % den;
    BigInt twice = r * 2;
    if (twice > den) {
        ++q;
    } else if (twice == den) {
        if (mode == RoundingMode::HalfUp || (q % 2) != 0) ++q;
    }
    return negative ? BigInt(-q) : q;
}

inline Rational round_to(const Rational& value, unsigned digits,
                         RoundingMode mode = RoundingMode::HalfUp) {
    return Rational(round_scaled(value, digits, mode), pow10(digits));
}

/// Fixed-point rendering with exactly `digits` decimals ("-7.58", "6.09994").
inline std::string to_fixed(const Rational& value, unsigned digits,
                            RoundingMode mode = RoundingMode::HalfUp) {
    BigInt scaled = round_scaled(value, digits, mode);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.str();
    if (digits > 0) {
        if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, 1, '.');
    }
    if (negative) s.insert(0, 1, '-');
    return s;
}

/// Rounds half-up to an integer.
inline std::int64_t round_to_integer(const Rational& value) {
    return round_scaled(value, 0).convert_to<std::int64_t>();
}

/// Parses a plain decimal literal ("6.09994", "-0.64", "17") exactly.
inline Rational parse_decimal(std::string_view text) {
    if (text.empty()) throw InputError("empty decimal literal");
    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        i = 1;
    }
    BigInt num = 0;
    unsigned frac_digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else {
            throw InputError("malformed decimal literal '" + std::string(text) + "'");
        }
    }
    if (!seen_digit) throw InputError("malformed decimal literal '" + std::string(text) + "'");
    Rational r(num, pow10(frac_digits));
    return negative ? Rational(-r) : r;
}

}  // namespace lexometer
