#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gysin/gysin.hpp"
#include "gysin/oracle.hpp"

namespace gysin {

struct CellOutcome {
    std::string label;  // "flag=0,1,3 weight=1,1,0 k=2"
    bool ok = true;
    std::string detail;
};

struct GridReport {
    std::string name;
    std::size_t cells = 0;
    std::vector<CellOutcome> failures;  // in cell order

    [[nodiscard]] bool ok() const { return failures.empty(); }
};

struct VerifyReport {
    std::vector<GridReport> grids;

    [[nodiscard]] bool ok() const {
        return std::all_of(grids.begin(), grids.end(), [](const GridReport& g) { return g.ok(); });
    }
    [[nodiscard]] std::size_t cells() const {
        std::size_t n = 0;
        for (const auto& g : grids) n += g.cells;
        return n;
    }
};

struct VerifyOptions {
    int max_rank = 3;
    int max_k = 2;
    int max_entry = 4;
    /// Split-bundle grid ranks and integer range m_i in 1..split_max_m.
    int split_max_rank = 3;
    int split_max_m = 4;
    unsigned workers = 1;
    /// Mutation test: negate every DP result before comparing.
    bool inject_sign_flip = false;
};

/// Worker count from an explicit request, else GYSIN_WORKERS, else the
/// hardware concurrency.
inline unsigned resolve_workers(std::optional<int> requested) {
    if (requested) {
        if (*requested < 1) throw ContractViolation("worker count must be positive");
        return static_cast<unsigned>(*requested);
    }
    if (const char* env = std::getenv("GYSIN_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) throw ContractViolation("GYSIN_WORKERS must be a positive integer");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs every task on a bounded pool; outcome i belongs to task i whatever
/// the scheduling. Exceptions become failed outcomes.
inline std::vector<CellOutcome> run_cells(const std::vector<std::function<CellOutcome()>>& tasks, unsigned workers) {
    std::vector<CellOutcome> out(tasks.size());
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                out[i] = tasks[i]();
            } catch (const std::exception& e) {
                out[i].ok = false;
                out[i].detail = std::string("exception: ") + e.what();
            }
        }
    };
    const unsigned n = std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(tasks.size(), 1));
    if (n == 1) {
        drain();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
    return out;
}

namespace detail {

inline std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

inline std::string cell_label(const FlagType& flag, const std::vector<int>& a, int k) {
    return "flag=" + flag.to_string() + " weight=" + join_ints(a) + " k=" + std::to_string(k);
}

/// Expands per-block values into a weight vector.
inline std::vector<int> spread(const FlagType& flag, const std::vector<int>& block_values) {
    std::vector<int> a(flag.rank());
    for (int j = 1; j <= flag.blocks(); ++j) {
        auto [lo, hi] = flag.block_roots(j);
        for (int i = lo; i <= hi; ++i) a[i - 1] = block_values[j - 1];
    }
    return a;
}

/// Block-value sequences in [0, max_entry]: strictly decreasing ones when
/// `strict`, otherwise every sequence with a repeated value in any order.
inline std::vector<std::vector<int>> block_values(int m, int max_entry, bool strict) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(m);
    std::function<void(int)> rec = [&](int idx) {
        if (idx == m) {
            bool tie = false;
            for (int i = 0; i < m && !tie; ++i)
                for (int j = i + 1; j < m && !tie; ++j) tie = v[i] == v[j];
            if (strict || tie) out.push_back(v);
            return;
        }
        for (int x = strict && idx > 0 ? v[idx - 1] - 1 : max_entry; x >= 0; --x) {
            v[idx] = x;
            rec(idx + 1);
        }
    };
    rec(0);
    return out;
}

struct WeightCell {
    FlagType flag;
    std::vector<int> a;
    int k = 0;
};

inline std::vector<WeightCell> weight_cells(int min_rank, int max_rank, int max_entry, int max_k, bool strict) {
    std::vector<WeightCell> out;
    for (int r = min_rank; r <= max_rank; ++r)
        for (const auto& flag : all_flags(r)) {
            if (!strict && flag.blocks() < 2) continue;
            for (const auto& values : block_values(flag.blocks(), max_entry, strict))
                for (int k = 0; k <= max_k; ++k) out.push_back({flag, spread(flag, values), k});
        }
    return out;
}

inline PushforwardResult dp_cell(const WeightCell& c, bool flip) {
    auto res = dp_pushforward(c.flag,
                              build_ftilde_weight(c.flag, validate_weight(c.flag, c.a), c.flag.relative_dimension() + c.k));
    if (flip) {
        res.segre_form = CharPoly(Basis::Segre, res.segre_form.degree(), -res.segre_form.poly());
        res.chern_form = CharPoly(Basis::Chern, res.chern_form.degree(), -res.chern_form.poly());
    }
    return res;
}

inline CharPoly oracle_cell_chern(const WeightCell& c) {
    auto ft = build_ftilde_weight(c.flag, validate_weight(c.flag, c.a), c.flag.relative_dimension() + c.k);
    auto segre = oracle_pushforward(c.flag, ft);
    return segre_chern_convert(segre, Basis::Chern, c.flag.rank(), segre.nvars());
}

inline GridReport collect(std::string name, const std::vector<std::function<CellOutcome()>>& tasks, unsigned workers) {
    GridReport g{std::move(name), tasks.size(), {}};
    for (auto& o : run_cells(tasks, workers))
        if (!o.ok) g.failures.push_back(std::move(o));
    return g;
}

}  // namespace detail

/// DP against the symmetrizer oracle, compared in the Chern basis.
inline GridReport verify_oracle_grid(const VerifyOptions& opt) {
    std::vector<std::function<CellOutcome()>> tasks;
    for (auto& c : detail::weight_cells(1, opt.max_rank, opt.max_entry, opt.max_k, true))
        tasks.emplace_back([c, flip = opt.inject_sign_flip] {
            CellOutcome o{detail::cell_label(c.flag, c.a, c.k), true, ""};
            auto dp = detail::dp_cell(c, flip);
            auto oracle = detail::oracle_cell_chern(c);
            if (!(dp.chern_form.poly() == oracle.poly())) {
                o.ok = false;
                o.detail = "dp " + to_text(dp.chern_form.poly()) + " != oracle " + to_text(oracle.poly());
            }
            return o;
        });
    return detail::collect("dp-vs-oracle", tasks, opt.workers);
}

/// Closed Grassmannian formula against DP on flag (0, r-d, r), weight 1^{d|r-d}.
inline GridReport verify_grassmannian_grid(const VerifyOptions& opt) {
    std::vector<std::function<CellOutcome()>> tasks;
    for (int r = 2; r <= opt.max_rank; ++r)
        for (int d = 1; d < r; ++d)
            for (int N = d * (r - d); N <= d * (r - d) + opt.max_k; ++N)
                tasks.emplace_back([r, d, N, flip = opt.inject_sign_flip] {
                    FlagType flag({0, r - d, r});
                    std::vector<int> a(r, 0);
                    std::fill(a.begin(), a.begin() + d, 1);
                    detail::WeightCell c{flag, a, N - d * (r - d)};
                    CellOutcome o{detail::cell_label(flag, a, c.k), true, ""};
                    auto dp = detail::dp_cell(c, flip);
                    auto closed = grassmannian_pushforward(r, d, N);
                    if (!(dp.segre_form.poly() == closed.segre_form.poly())) {
                        o.ok = false;
                        o.detail = "dp " + to_text(dp.segre_form.poly()) + " != closed form " +
                                   to_text(closed.segre_form.poly());
                    }
                    return o;
                });
    return detail::collect("dp-vs-grassmannian", tasks, opt.workers);
}

/// Schur-cone membership for strict nonnegative weights.
inline GridReport verify_positivity_grid(const VerifyOptions& opt) {
    std::vector<std::function<CellOutcome()>> tasks;
    for (auto& c : detail::weight_cells(1, opt.max_rank, opt.max_entry, opt.max_k, true))
        tasks.emplace_back([c, flip = opt.inject_sign_flip] {
            CellOutcome o{detail::cell_label(c.flag, c.a, c.k), true, ""};
            auto res = detail::dp_cell(c, flip);
            if (!res.schur.positive) {
                o.ok = false;
                for (const auto& [sigma, coeff] : res.schur.terms)
                    if (coeff < 0) {
                        o.detail = "negative Schur coefficient " + to_string(coeff) + " at (" + sigma.to_string() + ")";
                        break;
                    }
            }
            return o;
        });
    return detail::collect("positivity", tasks, opt.workers);
}

/// Block weights with a repeated value push forward to zero.
inline GridReport verify_zero_grid(const VerifyOptions& opt) {
    std::vector<std::function<CellOutcome()>> tasks;
    for (auto& c : detail::weight_cells(2, opt.max_rank, opt.max_entry, opt.max_k, false))
        tasks.emplace_back([c, flip = opt.inject_sign_flip] {
            CellOutcome o{detail::cell_label(c.flag, c.a, c.k), true, ""};
            auto res = detail::dp_cell(c, flip);
            if (!res.is_zero()) {
                o.ok = false;
                o.detail = "nonzero push-forward " + to_text(res.segre_form.poly());
            }
            return o;
        });
    return detail::collect("zero-weights", tasks, opt.workers);
}

/// (DP - oracle) evaluated on split bundles A^{m_1} + ... + A^{m_r}.
inline GridReport verify_split_grid(const VerifyOptions& opt) {
    std::vector<std::function<CellOutcome()>> tasks;
    const int max_rank = std::min(opt.max_rank, opt.split_max_rank);
    for (auto& c : detail::weight_cells(1, max_rank, opt.max_entry, opt.max_k, true))
        tasks.emplace_back([c, flip = opt.inject_sign_flip, max_m = opt.split_max_m] {
            CellOutcome o{detail::cell_label(c.flag, c.a, c.k), true, ""};
            auto dp = detail::dp_cell(c, flip);
            const int r = c.flag.rank();
            CharPoly diff(Basis::Chern, std::max(c.k, 0), dp.chern_form.poly() - detail::oracle_cell_chern(c).poly());
            std::vector<int> m(r, 1);
            while (true) {
                const Rational v = split_bundle_eval(diff, m);
                if (v != 0) {
                    o.ok = false;
                    o.detail = "p(" + detail::join_ints(m) + ") = " + to_string(v);
                    break;
                }
                int i = 0;
                while (i < r && m[i] == max_m) m[i++] = 1;
                if (i == r) break;
                ++m[i];
            }
            return o;
        });
    return detail::collect("split-bundle", tasks, opt.workers);
}

inline VerifyReport verify_all(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.grids.push_back(verify_oracle_grid(opt));
    rep.grids.push_back(verify_grassmannian_grid(opt));
    rep.grids.push_back(verify_positivity_grid(opt));
    rep.grids.push_back(verify_zero_grid(opt));
    rep.grids.push_back(verify_split_grid(opt));
    return rep;
}

}  // namespace gysin
