#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "error.hpp"

namespace tricell {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw ConstraintError("zero denominator");
    return Rational(Integer(num), Integer(den));
}

/// "p/q" in lowest terms, or "p" when q == 1.
inline std::string to_string(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

/// Accepts "p", "p/q" and "-p/q".
inline Rational parse_rational(std::string_view text) {
    const auto bad = [&] { return ConstraintError("not a rational number: '" + std::string(text) + "'"); };
    const auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s)
            if (ch < '0' || ch > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_int(num_text)) throw bad();
    Integer num(std::string(num_text.front() == '+' ? num_text.substr(1) : num_text));
    if (slash == std::string_view::npos) return Rational(num);
    const auto den_text = text.substr(slash + 1);
    if (!is_int(den_text) || den_text.front() == '-' || den_text.front() == '+') throw bad();
    Integer den{std::string(den_text)};
    if (den == 0) throw bad();
    return Rational(num, den);
}

inline int sign_of(const Rational& r) { return r.sign(); }

}  // namespace tricell
