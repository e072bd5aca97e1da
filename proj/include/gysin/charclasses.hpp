#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gysin/errors.hpp"
#include "gysin/partition.hpp"
#include "gysin/poly_io.hpp"
#include "gysin/sparse_poly.hpp"

namespace gysin {

enum class Basis { Chern, Segre };

inline const char* to_string(Basis b) { return b == Basis::Chern ? "chern" : "segre"; }

/// A weighted-homogeneous polynomial in Chern classes c_1..c_r or Segre classes
/// s_1..s_n, tagged with its weighted degree.
class CharPoly {
public:
    CharPoly() = default;

    CharPoly(Basis basis, int degree, SparsePoly poly)
        : basis_(basis), degree_(degree), poly_(std::move(poly)) {
        const auto& groups = poly_.vars().groups();
        const VarKind want = basis_ == Basis::Chern ? VarKind::Chern : VarKind::Segre;
        if (groups.size() != 1 || groups[0].kind != want || poly_.vars().laurent())
            throw ContractViolation(std::string("CharPoly: polynomial must live in ") + to_string(basis_) +
                                    " variables, got " + describe(poly_.vars()));
        if (!poly_.is_homogeneous(degree_))
            throw ContractViolation("CharPoly: polynomial is not weighted-homogeneous of degree " +
                                    std::to_string(degree_));
    }

    static CharPoly zero(Basis basis, int nvars, int degree) {
        return {basis, degree, SparsePoly(basis == Basis::Chern ? VarSet::chern(nvars) : VarSet::segre(nvars))};
    }

    [[nodiscard]] Basis basis() const { return basis_; }
    [[nodiscard]] int degree() const { return degree_; }
    /// r for the Chern basis, the truncation n for the Segre basis.
    [[nodiscard]] int nvars() const { return poly_.vars().size(); }
    [[nodiscard]] const SparsePoly& poly() const { return poly_; }
    [[nodiscard]] bool is_zero() const { return poly_.is_zero(); }

    bool operator==(const CharPoly& other) const = default;

    friend std::ostream& operator<<(std::ostream& os, const CharPoly& p) {
        return os << to_string(p.basis_) << "[" << p.degree_ << "]: " << to_text(p.poly_);
    }

private:
    Basis basis_ = Basis::Chern;
    int degree_ = 0;
    SparsePoly poly_{VarSet::chern(1)};
};

/// Elementary symmetric polynomial e_j in t_1..t_r.
inline SparsePoly elementary_symmetric(int j, int r) {
    const auto vars = VarSet::roots(r);
    SparsePoly out(vars);
    if (j < 0 || j > r) return out;
    std::vector<int> pick(r, 0);
    std::fill(pick.end() - j, pick.end(), 1);
    do {
        out.add_term(pick, Rational(1));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return out;
}

namespace detail {

/// s_0..s_n written in c_1..c_r under s(E) c(E) = 1.
inline std::vector<SparsePoly> segre_in_chern(int n, int r) {
    const auto vars = VarSet::chern(r);
    std::vector<SparsePoly> s{SparsePoly::one(vars)};
    for (int j = 1; j <= n; ++j) {
        SparsePoly acc(vars);
        for (int i = 1; i <= std::min(j, r); ++i)
            acc -= SparsePoly::variable(vars, {VarKind::Chern, i}) * s[j - i];
        s.push_back(std::move(acc));
    }
    return s;
}

/// c_0..c_r written in s_1..s_n; c_j for j > n is left out (callers check).
inline std::vector<SparsePoly> chern_in_segre(int r, int n) {
    const auto vars = VarSet::segre(n);
    std::vector<SparsePoly> c{SparsePoly::one(vars)};
    for (int j = 1; j <= std::min(r, n); ++j) {
        SparsePoly acc(vars);
        for (int i = 1; i <= j; ++i) acc -= SparsePoly::variable(vars, {VarKind::Segre, i}) * c[j - i];
        c.push_back(std::move(acc));
    }
    return c;
}

/// Laplace expansion along the first row, skipping zero entries.
inline SparsePoly determinant(const std::vector<std::vector<SparsePoly>>& m, const VarSet& vars) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return SparsePoly::one(vars);
    std::vector<bool> used(n, false);
    std::function<SparsePoly(int)> rec = [&](int row) -> SparsePoly {
        if (row == n) return SparsePoly::one(vars);
        SparsePoly acc(vars);
        int sign = 1;
        for (int col = 0; col < n; ++col) {
            if (used[col]) continue;
            if (!m[row][col].is_zero()) {
                used[col] = true;
                SparsePoly minor = rec(row + 1);
                used[col] = false;
                if (!minor.is_zero()) {
                    SparsePoly term = m[row][col] * minor;
                    if (sign > 0)
                        acc += term;
                    else
                        acc -= term;
                }
            }
            sign = -sign;
        }
        return acc;
    };
    return rec(0);
}

/// All exponent vectors of weighted degree k in c_1..c_r (weights 1..r).
inline std::vector<Exponents> chern_monomials(int k, int r) {
    std::vector<Exponents> out;
    Exponents e(r, 0);
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (idx < 0) {
            if (remaining == 0) out.push_back(e);
            return;
        }
        const int w = idx + 1;
        for (int x = remaining / w; x >= 0; --x) {
            e[idx] = x;
            rec(idx - 1, remaining - x * w);
        }
        e[idx] = 0;
    };
    rec(r - 1, k);
    return out;
}

}  // namespace detail

/// Convert between the Chern basis (rank r) and the Segre basis (truncation n)
/// under the convention s(E) c(E) = 1. Same-basis requests re-home the
/// polynomial to the requested variable count.
inline CharPoly segre_chern_convert(const CharPoly& p, Basis target, int r, int n) {
    const int k = p.degree();
    if (target == Basis::Chern) {
        if (r < 1) throw ContractViolation("segre_chern_convert: rank must be positive");
        const auto vars = VarSet::chern(r);
        if (p.basis() == Basis::Chern) {
            // c_j vanishes for j > r
            Bindings<Rational> b;
            for (int j = 1; j <= p.nvars(); ++j)
                b.emplace(Var{VarKind::Chern, j},
                          j <= r ? SparsePoly::variable(vars, {VarKind::Chern, j}) : SparsePoly(vars));
            return {Basis::Chern, k, substitute(p.poly(), b, vars)};
        }
        auto s = detail::segre_in_chern(p.nvars(), r);
        Bindings<Rational> b;
        for (int j = 1; j <= p.nvars(); ++j) b.emplace(Var{VarKind::Segre, j}, s[j]);
        return {Basis::Chern, k, substitute(p.poly(), b, vars)};
    }
    if (n < k) throw ContractViolation("segre_chern_convert: degree " + std::to_string(k) +
                                       " exceeds Segre truncation " + std::to_string(n));
    const auto vars = VarSet::segre(n);
    if (p.basis() == Basis::Segre) {
        Bindings<Rational> b;
        for (int j = 1; j <= p.nvars(); ++j)
            b.emplace(Var{VarKind::Segre, j},
                      j <= n ? SparsePoly::variable(vars, {VarKind::Segre, j}) : SparsePoly(vars));
        return {Basis::Segre, k, substitute(p.poly(), b, vars)};
    }
    auto c = detail::chern_in_segre(p.nvars(), n);
    Bindings<Rational> b;
    for (int j = 1; j <= p.nvars(); ++j)
        b.emplace(Var{VarKind::Chern, j}, j < static_cast<int>(c.size()) ? c[j] : SparsePoly(vars));
    return {Basis::Segre, k, substitute(p.poly(), b, vars)};
}

/// det(c_{sigma_i - i + j}) with c_0 = 1 and c_j = 0 outside [0, r]. The
/// matrix is r x r, or larger when sigma has more than r parts (degrees above
/// the rank need those to span).
inline CharPoly schur_polynomial(const Partition& sigma, int r) {
    if (r < 1) throw ContractViolation("schur_polynomial: rank must be positive");
    if (sigma[0] > r)
        throw ContractViolation("schur_polynomial: partition (" + sigma.to_string() + ") has a part larger than r=" +
                                std::to_string(r));
    const auto vars = VarSet::chern(r);
    const int size = std::max(r, sigma.length());
    std::vector<std::vector<SparsePoly>> m(size, std::vector<SparsePoly>(size, SparsePoly(vars)));
    for (int i = 1; i <= size; ++i)
        for (int j = 1; j <= size; ++j) {
            const int idx = sigma[i - 1] - i + j;
            if (idx == 0)
                m[i - 1][j - 1] = SparsePoly::one(vars);
            else if (idx > 0 && idx <= r)
                m[i - 1][j - 1] = SparsePoly::variable(vars, {VarKind::Chern, idx});
        }
    return {Basis::Chern, sigma.weight(), detail::determinant(m, vars)};
}

/// Index set of the Schur basis in degree k for rank r: partitions of k with
/// parts at most r. Equals Lambda(k, r) when k <= r.
inline std::vector<Partition> schur_index_set(int k, int r) { return partitions_in_box(k, k, r, r); }

struct SchurExpansion {
    int rank = 0;
    int degree = 0;
    /// Nonzero coefficients in reverse-lexicographic partition order.
    std::vector<std::pair<Partition, Rational>> terms;
    bool positive = true;

    [[nodiscard]] Rational coeff(const Partition& sigma) const {
        for (const auto& [p, c] : terms)
            if (p == sigma) return c;
        return 0;
    }
};

namespace detail {

/// Inverse of the change-of-basis matrix from Schur polynomials to Chern
/// monomials in degree k, cached per (k, r).
struct SchurBasisData {
    std::vector<Partition> index;
    std::vector<Exponents> monomials;
    std::vector<std::vector<Rational>> inverse;  // inverse[partition][monomial]
};

/// Exact Gauss-Jordan inverse; throws InternalError on a singular matrix.
inline std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw InternalError("Schur change-of-basis matrix is singular");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational scale = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rational f = a[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline std::shared_ptr<const SchurBasisData> schur_basis(int k, int r) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const SchurBasisData>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({k, r});
        if (it != cache.end()) return it->second;
    }
    auto data = std::make_shared<SchurBasisData>();
    data->index = schur_index_set(k, r);
    data->monomials = chern_monomials(k, r);
    const std::size_t n = data->index.size();
    if (data->monomials.size() != n) throw InternalError("Schur basis size does not match monomial count");
    std::map<Exponents, std::size_t> row_of;
    for (std::size_t i = 0; i < n; ++i) row_of[data->monomials[i]] = i;
    // columns are Schur images expressed on monomials
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
    for (std::size_t col = 0; col < n; ++col) {
        const CharPoly image = schur_polynomial(data->index[col], r);
        for (const auto& [e, c] : image.poly().terms()) m[row_of.at(e)][col] = c;
    }
    data->inverse = invert(std::move(m));
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(k, r), std::move(data)).first->second;
}

}  // namespace detail

/// Sum of coeff * S_sigma in the Chern basis.
inline CharPoly reconstruct(const SchurExpansion& x) {
    SparsePoly acc(VarSet::chern(x.rank));
    for (const auto& [sigma, c] : x.terms) acc += schur_polynomial(sigma, x.rank).poly() * c;
    return {Basis::Chern, x.degree, std::move(acc)};
}

/// Unique coefficients b_sigma with p = sum_sigma b_sigma S_sigma, found by an
/// exact linear solve on the monomial basis, then checked by reconstruction.
inline SchurExpansion schur_expand(const CharPoly& p, int r, int k) {
    if (p.basis() != Basis::Chern) throw ContractViolation("schur_expand: input must be in the Chern basis");
    if (p.nvars() != r) throw ContractViolation("schur_expand: rank mismatch");
    if (p.degree() != k) throw ContractViolation("schur_expand: degree mismatch");
    SchurExpansion out{r, k, {}, true};
    if (k < 0) return out;
    auto basis = detail::schur_basis(k, r);
    const std::size_t n = basis->index.size();
    std::vector<Rational> rhs(n, 0);
    std::map<Exponents, std::size_t> row_of;
    for (std::size_t i = 0; i < n; ++i) row_of[basis->monomials[i]] = i;
    for (const auto& [e, c] : p.poly().terms()) {
        auto it = row_of.find(e);
        if (it == row_of.end()) throw InternalError("schur_expand: monomial outside the degree-k basis");
        rhs[it->second] = c;
    }
    for (std::size_t i = 0; i < n; ++i) {
        Rational b = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (rhs[j] != 0) b += basis->inverse[i][j] * rhs[j];
        if (b != 0) {
            out.terms.emplace_back(basis->index[i], b);
            if (b < 0) out.positive = false;
        }
    }
    if (!(reconstruct(out).poly() == p.poly())) throw InternalError("schur_expand: reconstruction mismatch");
    return out;
}

/// Rewrites a symmetric polynomial in the roots t_1..t_r as a polynomial in
/// the elementary symmetric functions, labelled c_j := e_j.
inline CharPoly roots_to_chern(const SparsePoly& p, int r, std::optional<int> degree = std::nullopt) {
    const auto roots = VarSet::roots(r);
    if (!(p.vars() == roots)) throw ContractViolation("roots_to_chern: expected a polynomial in t1..t" + std::to_string(r));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            std::vector<int> perm(r);
            for (int q = 0; q < r; ++q) perm[q] = q;
            std::swap(perm[i], perm[j]);
            if (!(permute_roots(p, perm) == p))
                throw ContractViolation("roots_to_chern: input is not symmetric under the transposition (t" +
                                        std::to_string(i + 1) + " t" + std::to_string(j + 1) + ")");
        }
    const int k = degree ? *degree : p.homogeneous_degree().value_or(0);
    if (!p.is_homogeneous(k)) throw ContractViolation("roots_to_chern: input is not homogeneous");

    const auto chern = VarSet::chern(r);
    std::vector<SparsePoly> e;
    for (int j = 0; j <= r; ++j) e.push_back(elementary_symmetric(j, r));
    std::map<std::pair<int, int>, SparsePoly> power_cache;
    auto e_pow = [&](int j, int x) -> const SparsePoly& {
        auto it = power_cache.find({j, x});
        if (it != power_cache.end()) return it->second;
        return power_cache.emplace(std::make_pair(j, x), pow(e[j], x)).first->second;
    };

    SparsePoly rest = p;
    SparsePoly out(chern);
    while (!rest.is_zero()) {
        const auto& [lead, coeff] = *rest.terms().rbegin();
        Exponents beta(r, 0);
        for (int j = 0; j < r; ++j) {
            beta[j] = lead[j] - (j + 1 < r ? lead[j + 1] : 0);
            if (beta[j] < 0) throw InternalError("roots_to_chern: leading exponent is not a partition");
        }
        SparsePoly image = SparsePoly::constant(roots, coeff);
        for (int j = 0; j < r; ++j)
            if (beta[j]) image = image * e_pow(j + 1, beta[j]);
        out.add_term(beta, coeff);
        rest -= image;
    }
    return {Basis::Chern, k, std::move(out)};
}

}  // namespace gysin
