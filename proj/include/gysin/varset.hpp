#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "gysin/errors.hpp"

namespace gysin {

/// The four families of variables the engine works with. Each family fixes the
/// printed prefix and the grading weight of its j-th variable.
enum class VarKind { Chern, Segre, Root, Formal };

inline char prefix(VarKind kind) {
    switch (kind) {
        case VarKind::Chern: return 'c';
        case VarKind::Segre: return 's';
        case VarKind::Root: return 't';
        case VarKind::Formal: return 'u';
    }
    return '?';
}

/// c_j and s_j have weight j; roots and formal variables have weight 1.
inline int weight_of(VarKind kind, int index) {
    return (kind == VarKind::Chern || kind == VarKind::Segre) ? index : 1;
}

/// A single variable, e.g. {Segre, 3} for s3. Indices are 1-based.
struct Var {
    VarKind kind;
    int index;
    auto operator<=>(const Var&) const = default;
};

struct VarGroup {
    VarKind kind;
    int count;
    bool operator==(const VarGroup&) const = default;
};

/// Ordered list of variable groups defining a polynomial ring. Exponent vectors
/// are laid out group by group in this order. A Laurent ring admits negative
/// exponents.
class VarSet {
public:
    VarSet() = default;

    static VarSet chern(int r) { return VarSet({{VarKind::Chern, r}}); }
    static VarSet segre(int n) { return VarSet({{VarKind::Segre, n}}); }
    static VarSet roots(int r) { return VarSet({{VarKind::Root, r}}); }
    static VarSet formal(int m) { return VarSet({{VarKind::Formal, m}}); }

    explicit VarSet(std::vector<VarGroup> groups, bool laurent = false)
        : groups_(std::move(groups)), laurent_(laurent) {
        for (const auto& g : groups_) {
            if (g.count < 0) throw ContractViolation("negative variable count");
            for (const auto& h : groups_)
                if (&g != &h && g.kind == h.kind)
                    throw ContractViolation("variable family listed twice in a VarSet");
            size_ += g.count;
        }
    }

    /// Concatenate groups; the result is Laurent if either side is.
    [[nodiscard]] VarSet adjoin(const VarSet& other) const {
        auto groups = groups_;
        groups.insert(groups.end(), other.groups_.begin(), other.groups_.end());
        return VarSet(std::move(groups), laurent_ || other.laurent_);
    }

    [[nodiscard]] VarSet as_laurent(bool on = true) const { return VarSet(groups_, on); }

    /// The same ring with one family removed.
    [[nodiscard]] VarSet without(VarKind kind) const {
        std::vector<VarGroup> groups;
        for (const auto& g : groups_)
            if (g.kind != kind) groups.push_back(g);
        return VarSet(std::move(groups), false);
    }

    [[nodiscard]] int size() const { return size_; }
    [[nodiscard]] bool laurent() const { return laurent_; }
    [[nodiscard]] const std::vector<VarGroup>& groups() const { return groups_; }

    [[nodiscard]] Var var(int position) const {
        int offset = 0;
        for (const auto& g : groups_) {
            if (position < offset + g.count) return {g.kind, position - offset + 1};
            offset += g.count;
        }
        throw ContractViolation("variable position out of range");
    }

    [[nodiscard]] std::optional<int> position(Var v) const {
        int offset = 0;
        for (const auto& g : groups_) {
            if (g.kind == v.kind) {
                if (v.index >= 1 && v.index <= g.count) return offset + v.index - 1;
                return std::nullopt;
            }
            offset += g.count;
        }
        return std::nullopt;
    }

    /// Half-open [first, last) exponent positions of a family, if present.
    [[nodiscard]] std::optional<std::pair<int, int>> range(VarKind kind) const {
        int offset = 0;
        for (const auto& g : groups_) {
            if (g.kind == kind) return std::make_pair(offset, offset + g.count);
            offset += g.count;
        }
        return std::nullopt;
    }

    [[nodiscard]] int weight(int position) const {
        Var v = var(position);
        return weight_of(v.kind, v.index);
    }

    [[nodiscard]] std::vector<int> weights() const {
        std::vector<int> w;
        w.reserve(size_);
        for (const auto& g : groups_)
            for (int j = 1; j <= g.count; ++j) w.push_back(weight_of(g.kind, j));
        return w;
    }

    [[nodiscard]] std::string name(int position) const {
        Var v = var(position);
        return std::string(1, prefix(v.kind)) + std::to_string(v.index);
    }

    bool operator==(const VarSet& other) const {
        return groups_ == other.groups_ && laurent_ == other.laurent_;
    }

private:
    std::vector<VarGroup> groups_;
    bool laurent_ = false;
    int size_ = 0;
};

inline std::string describe(const VarSet& vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.groups().size(); ++i) {
        const auto& g = vs.groups()[i];
        if (i) out += ",";
        out += prefix(g.kind);
        out += "1.." + std::to_string(g.count);
    }
    out += vs.laurent() ? "; laurent}" : "}";
    return out;
}

}  // namespace gysin
