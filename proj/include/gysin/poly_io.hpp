#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gysin/sparse_poly.hpp"

namespace gysin {

/// Terms in graded lexicographic order: higher weighted degree first, ties
/// broken by the exponent vector compared lexicographically, larger first.
/// Every serializer goes through this so output is byte-stable.
template <class Coeff>
std::vector<std::pair<Exponents, Coeff>> graded_terms(const BasicSparsePoly<Coeff>& p) {
    std::vector<std::pair<Exponents, Coeff>> out(p.terms().begin(), p.terms().end());
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        int da = p.weighted_degree_of(a.first);
        int db = p.weighted_degree_of(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    return out;
}

namespace detail {

inline std::string monomial_text(const VarSet& vars, const Exponents& e) {
    std::string out;
    for (int i = 0; i < vars.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars.name(i);
        if (e[i] != 1) out += '^' + std::to_string(e[i]);
    }
    return out;
}

inline std::string monomial_latex(const VarSet& vars, const Exponents& e) {
    std::string out;
    for (int i = 0; i < vars.size(); ++i) {
        if (e[i] == 0) continue;
        Var v = vars.var(i);
        std::string idx = std::to_string(v.index);
        out += std::string(1, prefix(v.kind)) + "_" + (idx.size() > 1 ? "{" + idx + "}" : idx);
        if (e[i] != 1) {
            std::string p = std::to_string(e[i]);
            out += "^" + (p.size() > 1 ? "{" + p + "}" : p);
        }
    }
    return out;
}

/// Join signed terms as "a - b + c"; `render` returns (abs coefficient text,
/// monomial text). The "1*" prefix is dropped for non-constant monomials.
template <class Coeff, class Render>
std::string join_terms(const BasicSparsePoly<Coeff>& p, Render render, std::string_view times) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : graded_terms(p)) {
        bool negative = c < 0;
        Coeff magnitude = negative ? Coeff(-c) : c;
        auto [coeff_text, mono] = render(e, magnitude);
        std::string body;
        if (mono.empty())
            body = coeff_text;
        else if (magnitude == 1)
            body = mono;
        else
            body = coeff_text + std::string(times) + mono;
        if (first)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

inline std::string coeff_text(const Rational& q) { return to_string(q); }
inline std::string coeff_text(long long v) { return std::to_string(v); }

inline std::string coeff_latex(const Rational& q) {
    if (is_integer(q)) return to_string(q);
    return "\\frac{" + to_string(BigInt(q.get_num())) + "}{" + to_string(BigInt(q.get_den())) + "}";
}

}  // namespace detail

/// Plain text, e.g. "-5*s1*s2 + s3"; parse_poly reads it back.
template <class Coeff>
std::string to_text(const BasicSparsePoly<Coeff>& p) {
    return detail::join_terms(
        p,
        [&](const Exponents& e, const Coeff& c) {
            return std::make_pair(detail::coeff_text(c), detail::monomial_text(p.vars(), e));
        },
        "*");
}

template <class Coeff>
std::ostream& operator<<(std::ostream& os, const BasicSparsePoly<Coeff>& p) {
    return os << to_text(p);
}

/// LaTeX with juxtaposed factors, e.g. "14 c_1^3 - 14 c_1c_2".
inline std::string to_latex(const SparsePoly& p) {
    return detail::join_terms(
        p,
        [&](const Exponents& e, const Rational& c) {
            return std::make_pair(detail::coeff_latex(c), detail::monomial_latex(p.vars(), e));
        },
        " ");
}

/// Positive integer content times the primitive part, e.g.
/// "90720*(-s1^3 - 2*s1*s2)". Falls back to to_text when the content is 1 or
/// the polynomial is a single term or has non-integer coefficients.
inline std::string to_text_factored(const SparsePoly& p) {
    if (p.size() < 2) return to_text(p);
    BigInt content = 0;
    for (const auto& [e, c] : p.terms()) {
        if (!is_integer(c)) return to_text(p);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
    }
    if (content == 1) return to_text(p);
    SparsePoly primitive = p;
    primitive *= Rational(BigInt(1), content);
    return to_string(content) + "*(" + to_text(primitive) + ")";
}

inline std::string to_latex_factored(const SparsePoly& p) {
    if (p.size() < 2) return to_latex(p);
    BigInt content = 0;
    for (const auto& [e, c] : p.terms()) {
        if (!is_integer(c)) return to_latex(p);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
    }
    if (content == 1) return to_latex(p);
    SparsePoly primitive = p;
    primitive *= Rational(BigInt(1), content);
    return to_string(content) + " \\left(" + to_latex(primitive) + "\\right)";
}

namespace detail {

struct ParsedTerm {
    Rational coeff;
    std::vector<std::pair<Var, int>> powers;
};

class PolyParser {
public:
    explicit PolyParser(std::string_view text) {
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
    }

    std::vector<ParsedTerm> parse() {
        if (src_.empty()) throw ContractViolation("empty polynomial text");
        std::vector<ParsedTerm> terms;
        bool first = true;
        while (pos_ < src_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            terms.push_back(parse_term(sign));
            first = false;
        }
        return terms;
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ContractViolation("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg +
                                " in '" + src_ + "'");
    }

    std::string digits() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    ParsedTerm parse_term(int sign) {
        ParsedTerm term{Rational(sign), {}};
        bool need_factor = true;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string num = digits();
            Rational c(BigInt(num, 10));
            if (peek() == '/') {
                ++pos_;
                std::string den = digits();
                if (den.empty()) fail("missing denominator");
                c = make_rational(BigInt(num, 10), BigInt(den, 10));
            }
            term.coeff *= c;
            need_factor = false;
            if (peek() != '*') return term;
            ++pos_;
            need_factor = true;
        }
        while (need_factor) {
            term.powers.push_back(parse_power());
            if (peek() != '*') break;
            ++pos_;
        }
        return term;
    }

    std::pair<Var, int> parse_power() {
        VarKind kind;
        switch (peek()) {
            case 'c': kind = VarKind::Chern; break;
            case 's': kind = VarKind::Segre; break;
            case 't': kind = VarKind::Root; break;
            case 'u': kind = VarKind::Formal; break;
            default: fail("expected a variable c<j>, s<j>, t<j> or u<j>");
        }
        ++pos_;
        std::string idx = digits();
        if (idx.empty() || std::stoi(idx) < 1) fail("variable index must be a positive integer");
        int exponent = 1;
        if (peek() == '^') {
            ++pos_;
            int esign = 1;
            if (peek() == '-') {
                esign = -1;
                ++pos_;
            }
            std::string e = digits();
            if (e.empty()) fail("missing exponent");
            exponent = esign * std::stoi(e);
        }
        return {Var{kind, std::stoi(idx)}, exponent};
    }

    std::string src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse into a given ring; every variable must belong to it.
inline SparsePoly parse_poly(std::string_view text, const VarSet& vars) {
    SparsePoly out(vars);
    for (auto& term : detail::PolyParser(text).parse()) {
        Exponents e(vars.size(), 0);
        for (const auto& [v, k] : term.powers) {
            auto pos = vars.position(v);
            if (!pos)
                throw ContractViolation("variable " + std::string(1, prefix(v.kind)) + std::to_string(v.index) +
                                        " is not in " + describe(vars));
            e[*pos] += k;
        }
        out.add_term(std::move(e), term.coeff);
    }
    return out;
}

/// Parse and build the smallest ring containing the variables used, with
/// families in the order roots, Segre, Chern, formal. At least one variable of
/// `fallback` is kept when the text is a constant.
inline SparsePoly parse_poly(std::string_view text, VarKind fallback = VarKind::Chern) {
    auto terms = detail::PolyParser(text).parse();
    std::map<VarKind, int> counts;
    bool laurent = false;
    for (const auto& t : terms)
        for (const auto& [v, k] : t.powers) {
            counts[v.kind] = std::max(counts[v.kind], v.index);
            laurent |= k < 0;
        }
    if (counts.empty()) counts[fallback] = 1;
    std::vector<VarGroup> groups;
    for (VarKind kind : {VarKind::Root, VarKind::Segre, VarKind::Chern, VarKind::Formal})
        if (counts.count(kind)) groups.push_back({kind, counts[kind]});
    return parse_poly(text, VarSet(std::move(groups), laurent));
}

}  // namespace gysin
