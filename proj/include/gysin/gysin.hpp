#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gysin/charclasses.hpp"
#include "gysin/errors.hpp"
#include "gysin/flag.hpp"
#include "gysin/partition.hpp"
#include "gysin/sparse_poly.hpp"

namespace gysin {

enum class Provenance { DpGeneral, GrassmannianClosedForm, Symmetrizer };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::DpGeneral: return "dp-general";
        case Provenance::GrassmannianClosedForm: return "grassmannian-closed-form";
        case Provenance::Symmetrizer: return "symmetrizer-oracle";
    }
    return "?";
}

/// The universal push-forward polynomial in its three representations. When
/// the source degree is below the relative dimension, `degree` is negative and
/// all three are zero.
struct PushforwardResult {
    int rank = 0;
    int degree = 0;
    CharPoly segre_form;
    CharPoly chern_form;
    SchurExpansion schur;
    Provenance provenance = Provenance::DpGeneral;

    [[nodiscard]] bool is_zero() const { return chern_form.is_zero(); }
};

/// Weight source: c_1(Q^a)^power with a block-constant.
struct WeightSource {
    WeightVector weight;
    int power = 0;
};

/// General source: F(u_1..u_m) evaluated at u_j = c_1(Q_j).
struct PolySource {
    SparsePoly poly;
};

struct PushforwardRequest {
    FlagType flag;
    std::variant<WeightSource, PolySource> source;
    /// Segre truncation (base dimension bound); defaults to the degree k.
    std::optional<int> truncation;
};

namespace detail {

/// -(t_lo + ... + t_hi) scaled by `scale`.
inline SparsePoly block_class(const VarSet& roots, std::pair<int, int> block, const Rational& scale) {
    SparsePoly out(roots);
    for (int i = block.first; i <= block.second; ++i)
        out.add_term([&] {
            Exponents e(roots.size(), 0);
            e[i - 1] = 1;
            return e;
        }(), -scale);
    return out;
}

/// Bundle a Segre-basis answer with its Chern and Schur forms.
inline PushforwardResult finish(int r, int k, int n, SparsePoly segre, Provenance provenance) {
    PushforwardResult out;
    out.rank = r;
    out.degree = k;
    out.provenance = provenance;
    const int kk = std::max(k, 0);
    out.segre_form = CharPoly(Basis::Segre, kk, std::move(segre));
    out.chern_form = segre_chern_convert(out.segre_form, Basis::Chern, r, n);
    out.schur = schur_expand(out.chern_form, r, kk);
    return out;
}

}  // namespace detail

/// (-sum_j a_{s_j} (t_{s_{j-1}+1} + ... + t_{s_j}))^power over RootVars(r).
inline SparsePoly build_ftilde_weight(const FlagType& flag, const WeightVector& a, int power) {
    if (static_cast<int>(a.a.size()) != flag.rank()) throw ContractViolation("weight length does not match rank");
    if (!a.block_constant)
        throw ContractViolation("weight is not constant on the blocks of flag (" + flag.to_string() + ")");
    if (power < 0) throw ContractViolation("power must be nonnegative");
    const auto roots = VarSet::roots(flag.rank());
    SparsePoly linear(roots);
    for (int j = 1; j <= flag.blocks(); ++j)
        linear += detail::block_class(roots, flag.block_roots(j), Rational(a.block_weight(flag, j)));
    return pow(linear, power);
}

/// F(u_1, ..., u_m) with u_j replaced by -(t_{s_{j-1}+1} + ... + t_{s_j}).
inline SparsePoly build_ftilde_general(const FlagType& flag, const SparsePoly& F) {
    const auto& groups = F.vars().groups();
    if (groups.size() != 1 || groups[0].kind != VarKind::Formal || F.vars().laurent())
        throw ContractViolation("build_ftilde_general: F must be a polynomial in u1..um");
    if (groups[0].count != flag.blocks())
        throw ContractViolation("build_ftilde_general: F has " + std::to_string(groups[0].count) +
                                " variables but the flag has " + std::to_string(flag.blocks()) + " blocks");
    if (!F.is_zero() && !F.homogeneous_degree()) throw ContractViolation("build_ftilde_general: F is not homogeneous");
    const auto roots = VarSet::roots(flag.rank());
    Bindings<Rational> b;
    for (int j = 1; j <= flag.blocks(); ++j)
        b.emplace(Var{VarKind::Formal, j}, detail::block_class(roots, flag.block_roots(j), Rational(1)));
    return substitute(F, b, roots);
}

/// [t^ell] ( F~(t) prod_i (1 + sum_{j=1}^n s_j t_i^{-j}) prod_{i<j} (t_i - t_j) ).
///
/// F~ * Vandermonde is expanded first; each of its monomials t^mu then meets
/// exactly one term of every Segre factor, s_{mu_i - ell_i}, so the triple
/// product is never materialized.
inline PushforwardResult dp_pushforward(const FlagType& flag, const SparsePoly& ftilde,
                                        std::optional<int> truncation = std::nullopt) {
    const int r = flag.rank();
    if (!(ftilde.vars() == VarSet::roots(r)))
        throw ContractViolation("dp_pushforward: F~ must be a polynomial in t1..t" + std::to_string(r));
    const int d = flag.relative_dimension();
    std::optional<int> deg = ftilde.homogeneous_degree();
    if (!ftilde.is_zero() && !deg) throw ContractViolation("dp_pushforward: F~ is not homogeneous");
    const int k = deg ? *deg - d : 0;
    const int n = truncation.value_or(std::max(k, 0));
    if (n < 0) throw ContractViolation("dp_pushforward: truncation must be nonnegative");
    if (k > n)
        throw ContractViolation("dp_pushforward: degree k=" + std::to_string(k) + " exceeds truncation n=" +
                                std::to_string(n));
    const auto segre = VarSet::segre(n);
    SparsePoly out(segre);
    if (k < 0 || ftilde.is_zero()) return detail::finish(r, k, n, std::move(out), Provenance::DpGeneral);

    const auto& ell = flag.ell();
    const SparsePoly body = ftilde * vandermonde(r);
    Exponents se(n, 0);
    for (const auto& [mu, c] : body.terms()) {
        std::fill(se.begin(), se.end(), 0);
        bool hit = true;
        for (int i = 0; i < r && hit; ++i) {
            const int j = mu[i] - ell[i];
            if (j < 0 || j > n)
                hit = false;
            else if (j > 0)
                ++se[j - 1];
        }
        if (hit) out.add_term(se, c);
    }
    if (!out.is_homogeneous(k)) throw InternalError("dp_pushforward: result is not homogeneous of degree k");
    return detail::finish(r, k, n, std::move(out), Provenance::DpGeneral);
}

/// The same coefficient extraction done the slow way: build the full Laurent
/// product with eager Segre truncation and read off t^ell with coefficient_of.
/// Kept as a second route for tests.
inline SparsePoly dp_pushforward_expanded(const FlagType& flag, const SparsePoly& ftilde, int n) {
    const int r = flag.rank();
    const VarSet ring = VarSet::roots(r).adjoin(VarSet::segre(n)).as_laurent();
    const std::pair<VarKind, int> limit{VarKind::Segre, n};
    auto lift = [&](const SparsePoly& p) {
        SparsePoly out(ring);
        for (const auto& [e, c] : p.terms()) {
            Exponents x(ring.size(), 0);
            std::copy(e.begin(), e.end(), x.begin());
            out.add_term(std::move(x), c);
        }
        return out;
    };
    SparsePoly acc = lift(ftilde) * lift(vandermonde(r));
    for (int i = 1; i <= r; ++i) {
        SparsePoly series = SparsePoly::one(ring);
        for (int j = 1; j <= n; ++j) {
            Exponents e(ring.size(), 0);
            e[i - 1] = -j;
            e[r + j - 1] = 1;
            series.add_term(std::move(e), Rational(1));
        }
        acc = SparsePoly::multiply(acc, series, limit);
    }
    return coefficient_of(acc, flag.ell());
}

inline PushforwardResult dp_pushforward(const PushforwardRequest& req) {
    return std::visit(
        [&](const auto& src) {
            using T = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<T, WeightSource>)
                return dp_pushforward(req.flag, build_ftilde_weight(req.flag, src.weight, src.power), req.truncation);
            else
                return dp_pushforward(req.flag, build_ftilde_general(req.flag, src.poly), req.truncation);
        },
        req.source);
}

/// pi_* c_1(Q)^N for the Grassmannian bundle of (r-d)-planes with rank-d
/// quotient Q:
///   sum_{|lambda| = N - d(r-d)} f^{lambda + (r-d)^d} det((-1)^{lambda_i+j-i} s_{lambda_i+j-i})_{d x d}
/// over partitions lambda with at most d parts.
inline PushforwardResult grassmannian_pushforward(int r, int d, int N, std::optional<int> truncation = std::nullopt) {
    if (d < 1 || d >= r) throw ContractViolation("grassmannian_pushforward: need 1 <= d < r");
    if (N < 0) throw ContractViolation("grassmannian_pushforward: N must be nonnegative");
    const int k = N - d * (r - d);
    const int n = truncation.value_or(std::max(k, 0));
    if (k > n)
        throw ContractViolation("grassmannian_pushforward: degree k=" + std::to_string(k) + " exceeds truncation n=" +
                                std::to_string(n));
    const auto segre = VarSet::segre(n);
    SparsePoly out(segre);
    if (k >= 0) {
        auto signed_segre = [&](int j) {
            if (j < 0 || j > n) return SparsePoly(segre);
            if (j == 0) return SparsePoly::one(segre);
            SparsePoly s = SparsePoly::variable(segre, {VarKind::Segre, j});
            return (j % 2) ? -s : s;
        };
        for (const auto& lambda : partitions_in_box(k, d, k, d)) {
            std::vector<std::vector<SparsePoly>> m(d, std::vector<SparsePoly>(d, SparsePoly(segre)));
            for (int i = 1; i <= d; ++i)
                for (int j = 1; j <= d; ++j) m[i - 1][j - 1] = signed_segre(lambda[i - 1] + j - i);
            out += detail::determinant(m, segre) * Rational(syt_count_padded(lambda, d, r));
        }
    }
    return detail::finish(r, k, n, std::move(out), Provenance::GrassmannianClosedForm);
}

}  // namespace gysin
