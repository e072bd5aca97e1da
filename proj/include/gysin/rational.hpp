#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "gysin/errors.hpp"

namespace gysin {

using BigInt = mpz_class;
/// GMP keeps mpq values canonical (lowest terms, positive denominator) after
/// every arithmetic operation.
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ContractViolation("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

namespace detail {
inline BigInt parse_bigint(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) throw ContractViolation("empty integer literal");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw ContractViolation("bad integer literal '" + std::string(s) + "'");
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return BigInt(digits, 10);
}
}  // namespace detail

/// Accepts "p", "-p" and "p/q".
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(detail::parse_bigint(text));
    return make_rational(detail::parse_bigint(text.substr(0, slash)),
                         detail::parse_bigint(text.substr(slash + 1)));
}

inline BigInt factorial(long n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

}  // namespace gysin
