#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gysin/errors.hpp"
#include "gysin/rational.hpp"

namespace gysin {

/// Weakly decreasing tuple of nonnegative integers. Stored with whatever
/// padding the caller chose; comparisons ignore trailing zeros.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw ContractViolation("partition has a negative part");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw ContractViolation("partition parts must be weakly decreasing");
        }
    }

    [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
    [[nodiscard]] int size() const { return static_cast<int>(parts_.size()); }
    [[nodiscard]] int operator[](int i) const { return i < size() ? parts_[i] : 0; }
    [[nodiscard]] int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    /// Number of nonzero parts.
    [[nodiscard]] int length() const {
        return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int x) { return x > 0; }));
    }

    [[nodiscard]] Partition padded(int n) const {
        if (length() > n) throw ContractViolation("cannot pad partition below its length");
        std::vector<int> p(parts_.begin(), parts_.begin() + std::min(n, size()));
        p.resize(n, 0);
        return Partition(std::move(p));
    }

    [[nodiscard]] Partition stripped() const { return padded(length()); }

    bool operator==(const Partition& other) const {
        const int n = std::max(size(), other.size());
        for (int i = 0; i < n; ++i)
            if ((*this)[i] != other[i]) return false;
        return true;
    }

    [[nodiscard]] std::string to_string(char sep = ',') const {
        std::string out;
        for (int i = 0; i < size(); ++i) {
            if (i) out += sep;
            out += std::to_string(parts_[i]);
        }
        return out;
    }

private:
    std::vector<int> parts_;
};

/// Partitions of k with at most `max_len` parts each at most `max_part`,
/// padded to `pad` and listed in reverse-lexicographic order.
inline std::vector<Partition> partitions_in_box(int k, int max_len, int max_part, int pad) {
    std::vector<Partition> out;
    if (k < 0) return out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int cap) {
        if (remaining == 0) {
            std::vector<int> p = current;
            p.resize(std::max<std::size_t>(pad, p.size()), 0);
            out.emplace_back(std::move(p));
            return;
        }
        if (static_cast<int>(current.size()) == max_len) return;
        for (int part = std::min(cap, remaining); part >= 1; --part) {
            current.push_back(part);
            rec(remaining - part, part);
            current.pop_back();
        }
    };
    rec(k, max_part);
    return out;
}

/// The index set Lambda(k, r): r >= sigma_1 >= ... >= sigma_r >= 0 with
/// |sigma| = k, each padded to length r.
inline std::vector<Partition> enumerate_partitions(int k, int r) {
    if (r < 1) throw ContractViolation("enumerate_partitions: r must be positive");
    return partitions_in_box(k, r, r, r);
}

/// Number of standard Young tableaux of shape lambda + (r-d)^d, where lambda
/// has at most d parts, via
///   f = N! prod_{i<j} (lambda_i - lambda_j - i + j) / prod_i (r + lambda_i - i)!
/// with N = |lambda| + d(r-d).
inline BigInt syt_count_padded(const Partition& lambda, int d, int r) {
    if (d < 1 || r < d) throw ContractViolation("syt_count_padded: need 1 <= d <= r");
    if (lambda.length() > d) throw ContractViolation("syt_count_padded: partition has more than d parts");
    const long N = lambda.weight() + static_cast<long>(d) * (r - d);
    BigInt num = factorial(N);
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) num *= lambda[i - 1] - lambda[j - 1] - i + j;
    BigInt den = 1;
    for (int i = 1; i <= d; ++i) den *= factorial(r + lambda[i - 1] - i);
    if (num % den != 0) throw InternalError("syt_count_padded: non-integral tableau count");
    return num / den;
}

}  // namespace gysin
