#pragma once

// Test-only reference computations, deliberately written without the
// library's code paths.

#include <functional>
#include <map>
#include <vector>

namespace gysin::oracles {

/// Counts standard Young tableaux of a shape by filling cells 1..N one at a
/// time into any corner that keeps the filled region a valid diagram.
inline long long brute_force_syt(const std::vector<int>& shape) {
    std::vector<int> filled(shape.size(), 0);
    int total = 0;
    for (int x : shape) total += x;
    std::function<long long(int)> rec = [&](int placed) -> long long {
        if (placed == total) return 1;
        long long count = 0;
        for (std::size_t row = 0; row < shape.size(); ++row) {
            if (filled[row] == shape[row]) continue;
            if (row > 0 && filled[row - 1] <= filled[row]) continue;
            ++filled[row];
            count += rec(placed + 1);
            --filled[row];
        }
        return count;
    };
    return rec(0);
}

/// Partitions of k with at most `parts` parts each at most `max_part`, by the
/// recurrence p(k, parts, max) = p(k, parts, max-1) + p(k-max, parts-1, max).
inline long long partition_count(int k, int parts, int max_part) {
    std::vector<std::vector<std::vector<long long>>> memo(
        k + 1, std::vector<std::vector<long long>>(parts + 1, std::vector<long long>(max_part + 1, -1)));
    std::function<long long(int, int, int)> p = [&](int n, int q, int m) -> long long {
        if (n == 0) return 1;
        if (n < 0 || q == 0 || m == 0) return 0;
        auto& slot = memo[n][q][m];
        if (slot >= 0) return slot;
        return slot = p(n, q, m - 1) + p(n - m, q - 1, m);
    };
    return p(k, parts, max_part);
}

/// Monomial expansion of the Schur function s_shape(x_1..x_r) as a map from
/// exponent vectors to counts, by enumerating semistandard tableaux.
inline std::map<std::vector<int>, long long> schur_by_tableaux(const std::vector<int>& shape, int r) {
    std::map<std::vector<int>, long long> out;
    std::vector<std::vector<int>> t;
    for (int len : shape) t.emplace_back(len, 0);
    std::vector<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < shape.size(); ++i)
        for (int j = 0; j < shape[i]; ++j) cells.emplace_back(static_cast<int>(i), j);
    std::vector<int> content(r, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == cells.size()) {
            ++out[content];
            return;
        }
        auto [i, j] = cells[idx];
        int lo = 1;
        if (j > 0) lo = std::max(lo, t[i][j - 1]);
        if (i > 0) lo = std::max(lo, t[i - 1][j] + 1);
        for (int v = lo; v <= r; ++v) {
            t[i][j] = v;
            ++content[v - 1];
            rec(idx + 1);
            --content[v - 1];
        }
    };
    rec(0);
    return out;
}

/// Conjugate partition.
inline std::vector<int> conjugate(const std::vector<int>& shape) {
    std::vector<int> out;
    for (int col = 0; !shape.empty() && col < shape[0]; ++col) {
        int h = 0;
        for (int x : shape)
            if (x > col) ++h;
        out.push_back(h);
    }
    return out;
}

}  // namespace gysin::oracles
