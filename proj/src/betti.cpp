#include "flagforge/betti.hpp"

#include <algorithm>

#include "flagforge/diffmod.hpp"
#include "flagforge/error.hpp"

namespace flagforge {

long BettiTable::at(int i, int k) const {
    auto it = cells.find({i, k - i});
    return it == cells.end() ? 0 : it->second;
}

void BettiTable::add(int i, int k, long v) {
    if (v == 0) return;
    long& cell = cells[{i, k - i}];
    cell += v;
    if (cell == 0) cells.erase({i, k - i});
}

long BettiTable::total() const {
    long t = 0;
    for (const auto& [pos, v] : cells) t += v;
    return t;
}

int BettiTable::columns() const {
    int c = 0;
    for (const auto& [pos, v] : cells) c = std::max(c, pos.first + 1);
    return c;
}

BettiTable betti_table(const FreeComplex& C) {
    for (std::size_t i = 1; i <= C.length(); ++i)
        require(is_minimal(C.diff(i)), "NotMinimal",
                "differential " + std::to_string(i) + " carries a unit entry");
    BettiTable t;
    for (std::size_t i = 0; i <= C.length(); ++i)
        for (int tw : C.module(i).twists) t.add(static_cast<int>(i), -tw, 1);
    return t;
}

std::vector<SlopePair> slope_pairs(const BettiTable& t, int a) {
    std::vector<SlopePair> out;
    for (const auto& [hi, vhi] : t.cells) {
        int i = hi.first, k = hi.first + hi.second;
        for (const auto& [lo, vlo] : t.cells) {
            int i2 = lo.first, l = lo.first + lo.second;
            int j = i - i2;
            if (j < 2) continue;
            if (l - k == (1 - j) * a) out.push_back({i, k, i2, l, j});
        }
    }
    return out;
}

std::set<int> ci_deficiency_degrees(const std::vector<int>& degrees) {
    int c = static_cast<int>(degrees.size());
    std::set<int> out;
    for (int j = 2; j <= c; ++j) {
        for (int s1 = 0; s1 + j <= c; ++s1) {
            for (const auto& j1 : subsets_lex(c, s1)) {
                long sum1 = 0;
                for (int r : j1) sum1 += degrees[static_cast<std::size_t>(r)];
                for (const auto& j2 : subsets_lex(c, s1 + j)) {
                    long sum2 = 0;
                    for (int r : j2) sum2 += degrees[static_cast<std::size_t>(r)];
                    long diff = sum1 - sum2;
                    if (diff % (1 - j) == 0) out.insert(static_cast<int>(diff / (1 - j)));
                }
            }
        }
    }
    return out;
}

std::set<int> pure_deficiency_degrees(const std::vector<int>& twist_degrees) {
    int l = static_cast<int>(twist_degrees.size()) - 1;
    for (int i = 1; i <= l; ++i)
        require(twist_degrees[static_cast<std::size_t>(i - 1)] <
                    twist_degrees[static_cast<std::size_t>(i)],
                "ShapeMismatch", "pure degree sequence must increase strictly");
    std::set<int> out;
    for (int j = 2; j <= l; ++j) {
        for (int i = j; i <= l; ++i) {
            int num = twist_degrees[static_cast<std::size_t>(i - j)] -
                      twist_degrees[static_cast<std::size_t>(i)];
            if (num % (1 - j) == 0) out.insert(num / (1 - j));
        }
    }
    // Strict increase makes every admissible ratio positive.
    require(out.count(0) == 0, "InvariantViolation",
            "zero slipped into a pure deficiency set");
    return out;
}

} // namespace flagforge
