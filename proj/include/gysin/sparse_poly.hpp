#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gysin/errors.hpp"
#include "gysin/rational.hpp"
#include "gysin/varset.hpp"

namespace gysin {

using Exponents = std::vector<int>;

namespace detail {
template <class Coeff>
Coeff canonical(const Coeff& c) {
    return c;
}
inline Rational canonical(const Rational& c) {
    Rational q(c);
    q.canonicalize();
    return q;
}
}  // namespace detail

/// Sparse multivariate (optionally Laurent) polynomial over a VarSet.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored. Coeff must be an exact ring (Rational in practice, any
/// integral type in tests).
template <class Coeff>
class BasicSparsePoly {
public:
    using coeff_type = Coeff;
    using term_map = std::map<Exponents, Coeff>;

    BasicSparsePoly() = default;
    explicit BasicSparsePoly(VarSet vars) : vars_(std::move(vars)) {}

    static BasicSparsePoly constant(const VarSet& vars, const Coeff& c) {
        BasicSparsePoly p(vars);
        p.add_term(Exponents(vars.size(), 0), c);
        return p;
    }

    static BasicSparsePoly one(const VarSet& vars) { return constant(vars, Coeff(1)); }

    static BasicSparsePoly variable(const VarSet& vars, Var v, int exponent = 1) {
        auto pos = vars.position(v);
        if (!pos) throw ContractViolation("variable not in ring " + describe(vars));
        Exponents e(vars.size(), 0);
        e[*pos] = exponent;
        BasicSparsePoly p(vars);
        p.add_term(std::move(e), Coeff(1));
        return p;
    }

    static BasicSparsePoly monomial(const VarSet& vars, Exponents e, const Coeff& c = Coeff(1)) {
        BasicSparsePoly p(vars);
        p.add_term(std::move(e), c);
        return p;
    }

    [[nodiscard]] const VarSet& vars() const { return vars_; }
    [[nodiscard]] const term_map& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    /// Accumulates c into the coefficient of x^e, pruning an exact zero.
    void add_term(Exponents e, const Coeff& raw) {
        check_exponents(e);
        if (raw == 0) return;
        const Coeff c = detail::canonical(raw);
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    [[nodiscard]] Coeff coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    /// Constant term, i.e. the coefficient of the empty monomial.
    [[nodiscard]] Coeff constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

    [[nodiscard]] int weighted_degree_of(const Exponents& e) const {
        int d = 0;
        for (int i = 0; i < vars_.size(); ++i) d += e[i] * vars_.weight(i);
        return d;
    }

    /// Max weighted degree over monomials; nullopt for the zero polynomial.
    [[nodiscard]] std::optional<int> weighted_degree() const {
        std::optional<int> d;
        for (const auto& [e, c] : terms_) {
            int w = weighted_degree_of(e);
            if (!d || w > *d) d = w;
        }
        return d;
    }

    /// Common weighted degree if every monomial shares one; nullopt when the
    /// polynomial is zero or inhomogeneous.
    [[nodiscard]] std::optional<int> homogeneous_degree() const {
        std::optional<int> d;
        for (const auto& [e, c] : terms_) {
            int w = weighted_degree_of(e);
            if (d && *d != w) return std::nullopt;
            d = w;
        }
        return d;
    }

    /// The zero polynomial is homogeneous of every degree.
    [[nodiscard]] bool is_homogeneous(int degree) const {
        for (const auto& [e, c] : terms_)
            if (weighted_degree_of(e) != degree) return false;
        return true;
    }

    BasicSparsePoly& operator+=(const BasicSparsePoly& rhs) {
        require_same_ring(rhs);
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }

    BasicSparsePoly& operator-=(const BasicSparsePoly& rhs) {
        require_same_ring(rhs);
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }

    BasicSparsePoly& operator*=(const Coeff& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend BasicSparsePoly operator+(BasicSparsePoly lhs, const BasicSparsePoly& rhs) { return lhs += rhs; }
    friend BasicSparsePoly operator-(BasicSparsePoly lhs, const BasicSparsePoly& rhs) { return lhs -= rhs; }
    friend BasicSparsePoly operator*(BasicSparsePoly lhs, const Coeff& s) { return lhs *= s; }
    friend BasicSparsePoly operator*(const Coeff& s, BasicSparsePoly rhs) { return rhs *= s; }
    friend BasicSparsePoly operator-(BasicSparsePoly p) {
        for (auto& [e, c] : p.terms_) c = -c;
        return p;
    }

    friend BasicSparsePoly operator*(const BasicSparsePoly& lhs, const BasicSparsePoly& rhs) {
        return multiply(lhs, rhs, std::nullopt);
    }

    BasicSparsePoly& operator*=(const BasicSparsePoly& rhs) { return *this = *this * rhs; }

    bool operator==(const BasicSparsePoly& other) const {
        return vars_ == other.vars_ && terms_ == other.terms_;
    }

    /// Product with eager pruning: monomials whose weighted degree restricted
    /// to `limit.first` exceeds `limit.second` are dropped. Used to truncate the
    /// Segre series at the base dimension.
    static BasicSparsePoly multiply(const BasicSparsePoly& lhs, const BasicSparsePoly& rhs,
                                    std::optional<std::pair<VarKind, int>> limit) {
        lhs.require_same_ring(rhs);
        BasicSparsePoly out(lhs.vars_);
        std::optional<std::pair<int, int>> span;
        if (limit) span = lhs.vars_.range(limit->first);
        const auto weights = lhs.vars_.weights();
        auto partial = [&](const Exponents& e) {
            int w = 0;
            for (int i = span->first; i < span->second; ++i) w += e[i] * weights[i];
            return w;
        };
        Exponents sum(lhs.vars_.size());
        for (const auto& [ea, ca] : lhs.terms_) {
            if (span && partial(ea) > limit->second) continue;
            for (const auto& [eb, cb] : rhs.terms_) {
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
                if (span && partial(sum) > limit->second) continue;
                auto [it, inserted] = out.terms_.try_emplace(sum, ca * cb);
                if (!inserted) it->second += ca * cb;
            }
        }
        std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
        return out;
    }

    /// Same polynomial, read in a ring with the same exponent layout but a
    /// different Laurent flag (e.g. to embed a plain polynomial into a Laurent
    /// ring before multiplying).
    [[nodiscard]] BasicSparsePoly relabel(const VarSet& vars) const {
        if (vars.size() != vars_.size()) throw ContractViolation("relabel: variable count mismatch");
        BasicSparsePoly out(vars);
        for (const auto& [e, c] : terms_) out.add_term(e, c);
        return out;
    }

private:
    void check_exponents(const Exponents& e) const {
        if (static_cast<int>(e.size()) != vars_.size())
            throw ContractViolation("monomial length " + std::to_string(e.size()) +
                                    " does not match ring " + describe(vars_));
        if (!vars_.laurent())
            for (int x : e)
                if (x < 0) throw ContractViolation("negative exponent in non-Laurent ring " + describe(vars_));
    }

    void require_same_ring(const BasicSparsePoly& other) const {
        if (!(vars_ == other.vars_))
            throw ContractViolation("varset mismatch: " + describe(vars_) + " vs " + describe(other.vars_));
    }

    VarSet vars_;
    term_map terms_;
};

using SparsePoly = BasicSparsePoly<Rational>;

template <class Coeff>
BasicSparsePoly<Coeff> pow(const BasicSparsePoly<Coeff>& base, int e) {
    if (e < 0) throw ContractViolation("pow: negative exponent");
    auto result = BasicSparsePoly<Coeff>::one(base.vars());
    auto square = base;
    while (e > 0) {
        if (e & 1) result = result * square;
        e >>= 1;
        if (e) square = square * square;
    }
    return result;
}

/// Coefficient of the root monomial t^m in p, as a polynomial in the remaining
/// variables of p's ring (Segre variables in the push-forward formula).
template <class Coeff>
BasicSparsePoly<Coeff> coefficient_of(const BasicSparsePoly<Coeff>& p, const Exponents& root_monomial) {
    auto span = p.vars().range(VarKind::Root);
    if (!span) throw ContractViolation("coefficient_of: ring has no root variables");
    const auto [lo, hi] = *span;
    if (static_cast<int>(root_monomial.size()) != hi - lo)
        throw ContractViolation("coefficient_of: root monomial has wrong length");
    for (int x : root_monomial)
        if (x < 0) throw ContractViolation("coefficient_of: negative exponent in target monomial");
    BasicSparsePoly<Coeff> out(p.vars().without(VarKind::Root));
    for (const auto& [e, c] : p.terms()) {
        if (!std::equal(root_monomial.begin(), root_monomial.end(), e.begin() + lo)) continue;
        Exponents rest;
        rest.reserve(e.size() - root_monomial.size());
        rest.insert(rest.end(), e.begin(), e.begin() + lo);
        rest.insert(rest.end(), e.begin() + hi, e.end());
        out.add_term(std::move(rest), c);
    }
    return out;
}

/// prod_{i<j} (t_i - t_j) over RootVars(r).
template <class Coeff = Rational>
BasicSparsePoly<Coeff> vandermonde(int r) {
    if (r < 1) throw ContractViolation("vandermonde: rank must be positive");
    const auto vars = VarSet::roots(r);
    auto out = BasicSparsePoly<Coeff>::one(vars);
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j)
            out = out * (BasicSparsePoly<Coeff>::variable(vars, {VarKind::Root, i}) -
                         BasicSparsePoly<Coeff>::variable(vars, {VarKind::Root, j}));
    return out;
}

template <class Coeff>
using Bindings = std::map<Var, BasicSparsePoly<Coeff>>;

/// Simultaneous substitution of bound variables by polynomials in `target`.
/// Unbound variables are carried over when `target` has them. A negative power
/// of a bound variable is only allowed when its image is a single monomial.
template <class Coeff>
BasicSparsePoly<Coeff> substitute(const BasicSparsePoly<Coeff>& p, const Bindings<Coeff>& bindings,
                                  const VarSet& target) {
    using Poly = BasicSparsePoly<Coeff>;
    const auto& src = p.vars();
    const int nvars = src.size();

    std::vector<const Poly*> image(nvars, nullptr);
    for (const auto& [v, poly] : bindings) {
        auto pos = src.position(v);
        if (!pos)
            throw ContractViolation("substitute: bound variable " + std::string(1, prefix(v.kind)) +
                                    std::to_string(v.index) + " is not in " + describe(src));
        if (!(poly.vars() == target))
            throw ContractViolation("substitute: binding lives in " + describe(poly.vars()) + ", expected " +
                                    describe(target));
        image[*pos] = &poly;
    }
    std::vector<std::optional<int>> passthrough(nvars);
    for (int i = 0; i < nvars; ++i)
        if (!image[i]) passthrough[i] = target.position(src.var(i));

    std::vector<std::map<int, Poly>> power_cache(nvars);
    auto power_of = [&](int i, int e) -> const Poly& {
        auto it = power_cache[i].find(e);
        if (it != power_cache[i].end()) return it->second;
        const Poly& base = *image[i];
        Poly value(target);
        if (e >= 0) {
            value = pow(base, e);
        } else {
            if (base.size() != 1)
                throw ContractViolation("substitute: negative power of " + src.name(i) +
                                        " needs a monomial image");
            const auto& [be, bc] = *base.terms().begin();
            Exponents inv(be.size());
            for (std::size_t k = 0; k < be.size(); ++k) inv[k] = -be[k];
            Coeff c = Coeff(1) / bc;
            Coeff cp = Coeff(1);
            for (int k = 0; k < -e; ++k) cp *= c;
            for (auto& x : inv) x *= -e;
            value = Poly::monomial(target, std::move(inv), cp);
        }
        return power_cache[i].emplace(e, std::move(value)).first->second;
    };

    Poly out(target);
    for (const auto& [e, c] : p.terms()) {
        Exponents carried(target.size(), 0);
        Poly term = Poly::constant(target, c);
        for (int i = 0; i < nvars; ++i) {
            if (e[i] == 0) continue;
            if (image[i]) {
                term = term * power_of(i, e[i]);
            } else if (passthrough[i]) {
                carried[*passthrough[i]] += e[i];
            } else {
                throw ContractViolation("substitute: unbound variable " + src.name(i) + " has no home in " +
                                        describe(target));
            }
        }
        if (std::any_of(carried.begin(), carried.end(), [](int x) { return x != 0; }))
            term = term * Poly::monomial(target, std::move(carried));
        out += term;
    }
    return out;
}

/// Permute root variables: t_i -> t_{perm[i-1]+1}. perm is 0-based.
template <class Coeff>
BasicSparsePoly<Coeff> permute_roots(const BasicSparsePoly<Coeff>& p, const std::vector<int>& perm) {
    auto span = p.vars().range(VarKind::Root);
    if (!span || span->second - span->first != static_cast<int>(perm.size()))
        throw ContractViolation("permute_roots: permutation size does not match root count");
    const int lo = span->first;
    BasicSparsePoly<Coeff> out(p.vars());
    for (const auto& [e, c] : p.terms()) {
        Exponents moved = e;
        for (std::size_t i = 0; i < perm.size(); ++i) moved[lo + perm[i]] = e[lo + i];
        out.add_term(std::move(moved), c);
    }
    return out;
}

}  // namespace gysin
