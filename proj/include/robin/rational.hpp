#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace robin {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// base^exp for integer exponents of either sign (base != 0 when exp < 0).
inline Rat rat_pow(const Rat& base, long exp) {
    if (exp == 0) return Rat(1);
    if (base == 0 && exp < 0) throw std::domain_error("rat_pow: zero base with negative exponent");
    Rat result(1);
    Rat b = base;
    unsigned long k = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    while (k > 0) {
        if (k & 1) result *= b;
        b *= b;
        k >>= 1;
    }
    return exp < 0 ? Rat(1) / result : result;
}

/// Renders "num/den", or just "num" when the denominator is 1.
inline std::string rat_to_string(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) {
        s += '/';
        s += denominator(x).str();
    }
    return s;
}

/// Parses "a/b" or "a" with optional leading '-'.
inline Rat rat_from_string(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(BigInt(std::string(text)));
        BigInt num{std::string(text.substr(0, slash))};
        BigInt den{std::string(text.substr(slash + 1))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + std::string(text));
    }
}

inline double rat_to_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace robin
