#pragma once

#include <algorithm>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "gysin/errors.hpp"

namespace gysin {

/// Dimension sequence 0 = rho_0 < rho_1 < ... < rho_m = r of a flag bundle,
/// with the data the push-forward formula reads off it.
///
/// Root indices are 1-based. Block j (1 <= j <= m) is the index interval
/// (s_{j-1}, s_j] with s_j = r - rho_{m-j}; the quotient line bundle Q_j has
/// first Chern class -(t_{s_{j-1}+1} + ... + t_{s_j}).
class FlagType {
public:
    FlagType() = default;

    explicit FlagType(std::vector<int> rho) : rho_(std::move(rho)) {
        if (rho_.size() < 2) throw ContractViolation("flag needs at least 0 and r");
        if (rho_.front() != 0) throw ContractViolation("flag must start at 0");
        for (std::size_t i = 1; i < rho_.size(); ++i)
            if (rho_[i] <= rho_[i - 1]) throw ContractViolation("flag must be strictly increasing");
        const int r = rank();
        const int m = blocks();

        for (int j = 1; j <= m; ++j) sizes_.push_back(rho_[j] - rho_[j - 1]);
        s_.push_back(0);
        for (int j = 1; j <= m; ++j) s_.push_back(r - rho_[m - j]);

        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) relative_dim_ += sizes_[i] * sizes_[j];

        // for r - rho_k < j <= r - rho_{k-1}, j = r - rho_k + i: ell_j = r - i
        ell_.assign(r, 0);
        for (int k = 1; k <= m; ++k)
            for (int i = 1; i <= rho_[k] - rho_[k - 1]; ++i) ell_[r - rho_[k] + i - 1] = r - i;
    }

    static FlagType complete(int r) {
        std::vector<int> rho(r + 1);
        for (int i = 0; i <= r; ++i) rho[i] = i;
        return FlagType(std::move(rho));
    }

    [[nodiscard]] const std::vector<int>& rho() const { return rho_; }
    [[nodiscard]] int rank() const { return rho_.back(); }
    [[nodiscard]] int blocks() const { return static_cast<int>(rho_.size()) - 1; }
    [[nodiscard]] bool is_complete() const { return blocks() == rank(); }

    /// b_j = rho_j - rho_{j-1}, in rho order.
    [[nodiscard]] const std::vector<int>& block_sizes() const { return sizes_; }

    /// s_0 = 0, s_1, ..., s_m = r.
    [[nodiscard]] const std::vector<int>& s() const { return s_; }
    [[nodiscard]] int s(int j) const { return s_.at(j); }

    /// Root indices (1-based, inclusive) of block j.
    [[nodiscard]] std::pair<int, int> block_roots(int j) const { return {s_.at(j - 1) + 1, s_.at(j)}; }

    [[nodiscard]] int relative_dimension() const { return relative_dim_; }

    /// Exponent vector of the monomial whose coefficient is extracted.
    [[nodiscard]] const std::vector<int>& ell() const { return ell_; }

    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < rho_.size(); ++i) out += (i ? "," : "") + std::to_string(rho_[i]);
        return out;
    }

    bool operator==(const FlagType& other) const { return rho_ == other.rho_; }

private:
    std::vector<int> rho_;
    std::vector<int> sizes_;
    std::vector<int> s_;
    std::vector<int> ell_;
    int relative_dim_ = 0;
};

inline FlagType flag_derived_data(std::vector<int> rho) { return FlagType(std::move(rho)); }

/// All flags of rank r, i.e. all compositions of r, coarsest first.
inline std::vector<FlagType> all_flags(int r) {
    std::vector<FlagType> out;
    for (int m = 1; m <= r; ++m) {
        for (unsigned mask = 0; mask < (1u << (r - 1)); ++mask) {
            if (__builtin_popcount(mask) != m - 1) continue;
            std::vector<int> rho{0};
            for (int i = 1; i < r; ++i)
                if (mask & (1u << (i - 1))) rho.push_back(i);
            rho.push_back(r);
            out.emplace_back(std::move(rho));
        }
    }
    return out;
}

/// Integer multi-index a in Z^r together with its validity flags relative to
/// a flag type.
struct WeightVector {
    std::vector<int> a;
    /// a is constant on every block (s_{j-1}, s_j].
    bool block_constant = false;
    /// a_{s_1} > a_{s_2} > ... > a_{s_m}.
    bool strictly_decreasing = false;
    bool nonnegative = false;

    /// a_{s_j}, the weight carried by Q_j.
    [[nodiscard]] int block_weight(const FlagType& flag, int j) const { return a.at(flag.s(j) - 1); }
};

inline WeightVector validate_weight(const FlagType& flag, std::vector<int> a) {
    if (static_cast<int>(a.size()) != flag.rank())
        throw ContractViolation("weight has length " + std::to_string(a.size()) + " but the flag has rank " +
                                std::to_string(flag.rank()));
    WeightVector w;
    w.a = std::move(a);
    w.block_constant = true;
    for (int j = 1; j <= flag.blocks(); ++j) {
        auto [lo, hi] = flag.block_roots(j);
        for (int i = lo; i < hi; ++i)
            if (w.a[i - 1] != w.a[i]) w.block_constant = false;
    }
    w.strictly_decreasing = true;
    for (int j = 1; j < flag.blocks(); ++j)
        if (!(w.a[flag.s(j) - 1] > w.a[flag.s(j + 1) - 1])) w.strictly_decreasing = false;
    w.nonnegative = std::all_of(w.a.begin(), w.a.end(), [](int x) { return x >= 0; });
    return w;
}

/// Parses "0,1,3" style comma-separated integer lists.
inline std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (true) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        std::size_t end = text.find(',', pos);
        std::string_view item = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty() && item.front() == '+') item.remove_prefix(1);
        int value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw ContractViolation("bad integer list '" + std::string(text) + "'");
        out.push_back(value);
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

}  // namespace gysin
