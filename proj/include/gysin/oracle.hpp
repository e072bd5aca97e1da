#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "gysin/charclasses.hpp"
#include "gysin/errors.hpp"
#include "gysin/flag.hpp"
#include "gysin/sparse_poly.hpp"

namespace gysin {

/// The roots xi_i are Chern roots of the dual bundle, so
/// c_j(E) = kDualRootSign^j * e_j(xi). Pinned by the projective and
/// Grassmannian golden values; a test guards it.
inline constexpr int kDualRootSign = -1;

namespace detail {

inline int permutation_sign(const std::vector<int>& perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

/// Exact division by (t_j - t_i), i < j, by synthetic division in t_j with
/// root t_i. Throws InternalError on a nonzero remainder.
inline SparsePoly divide_by_root_difference(SparsePoly p, int i, int j) {
    const auto& vars = p.vars();
    SparsePoly quotient(vars);
    while (!p.is_zero()) {
        // term with the largest t_j exponent
        auto lead = std::max_element(p.terms().begin(), p.terms().end(), [&](const auto& a, const auto& b) {
            if (a.first[j] != b.first[j]) return a.first[j] < b.first[j];
            return a.first < b.first;
        });
        Exponents e = lead->first;
        const Rational c = lead->second;
        if (e[j] == 0) throw InternalError("antisymmetrized numerator is not divisible by the Vandermonde");
        --e[j];
        quotient.add_term(e, c);
        // subtract c * t^e * (t_j - t_i)
        Exponents hi = e, lo = e;
        ++hi[j];
        ++lo[i];
        p.add_term(std::move(hi), -c);
        p.add_term(std::move(lo), c);
    }
    return quotient;
}

}  // namespace detail

/// sum_{w in S_r} sgn(w) w(F~) divided by prod_{i<j} (xi_j - xi_i).
inline SparsePoly antisymmetrize_and_divide(const SparsePoly& ftilde, int r) {
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    SparsePoly numerator(ftilde.vars());
    do {
        auto moved = permute_roots(ftilde, perm);
        if (detail::permutation_sign(perm) > 0)
            numerator += moved;
        else
            numerator -= moved;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) numerator = detail::divide_by_root_difference(std::move(numerator), i, j);
    return numerator;
}

/// Complete-flag push-forward of a root polynomial via the Jacobi symmetrizer,
/// returned in the Segre basis with truncation max(k, 0).
inline CharPoly symmetrizer_pushforward(const SparsePoly& ftilde, int r) {
    if (!(ftilde.vars() == VarSet::roots(r)))
        throw ContractViolation("symmetrizer_pushforward: expected a polynomial in t1..t" + std::to_string(r));
    const auto deg = ftilde.homogeneous_degree();
    if (!ftilde.is_zero() && !deg) throw ContractViolation("symmetrizer_pushforward: input is not homogeneous");
    const int k = deg ? *deg - r * (r - 1) / 2 : 0;
    if (k < 0 || ftilde.is_zero()) return CharPoly::zero(Basis::Segre, std::max(k, 0), std::max(k, 0));

    const SparsePoly quotient = antisymmetrize_and_divide(ftilde, r);
    CharPoly in_roots = roots_to_chern(quotient, r, k);  // throws if not symmetric
    if (kDualRootSign < 0 && k % 2) in_roots = CharPoly(Basis::Chern, k, -in_roots.poly());
    return segre_chern_convert(in_roots, Basis::Segre, r, k);
}

/// Monomial restricting to the point class on the fibre of the complete flag
/// bundle over the partial one: in block j, occupying roots p+1..p+b,
/// xi_{p+2}^1 xi_{p+3}^2 ... xi_{p+b}^{b-1}.
inline SparsePoly staircase_class(const FlagType& flag) {
    Exponents e(flag.rank(), 0);
    for (int j = 1; j <= flag.blocks(); ++j) {
        auto [lo, hi] = flag.block_roots(j);
        for (int i = lo; i <= hi; ++i) e[i - 1] = i - lo;
    }
    return SparsePoly::monomial(VarSet::roots(flag.rank()), std::move(e));
}

/// Partial-flag push-forward through the complete flag bundle (projection
/// formula): symmetrize F~ times the staircase class.
inline CharPoly oracle_pushforward(const FlagType& flag, const SparsePoly& ftilde) {
    if (ftilde.is_zero()) return CharPoly::zero(Basis::Segre, 0, 0);
    return symmetrizer_pushforward(ftilde * staircase_class(flag), flag.rank());
}

/// Value of a Chern-basis polynomial on the split bundle A^{m_1} + ... + A^{m_r},
/// i.e. with c_j replaced by e_j(m_1, ..., m_r).
inline Rational split_bundle_eval(const CharPoly& p, const std::vector<int>& m) {
    if (p.basis() != Basis::Chern) throw ContractViolation("split_bundle_eval: expects the Chern basis");
    const int r = p.nvars();
    if (static_cast<int>(m.size()) != r) throw ContractViolation("split_bundle_eval: need one integer per root");
    // e_j(m) by the usual recurrence
    std::vector<Rational> e(r + 1, 0);
    e[0] = 1;
    for (int x : m)
        for (int j = r; j >= 1; --j) e[j] += e[j - 1] * x;
    Rational total = 0;
    for (const auto& [exps, c] : p.poly().terms()) {
        Rational term = c;
        for (int j = 0; j < r; ++j)
            for (int q = 0; q < exps[j]; ++q) term *= e[j + 1];
        total += term;
    }
    return total;
}

}  // namespace gysin
