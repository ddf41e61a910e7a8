#ifndef FLAGFORGE_BETTI_HPP
#define FLAGFORGE_BETTI_HPP

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "flagforge/complex.hpp"

namespace flagforge {

// Graded Betti numbers in the usual tabular layout: the entry for beta_{i,k}
// sits in column i and row k - i.
struct BettiTable {
    std::map<std::pair<int, int>, long> cells; // (column, row) -> count

    long at(int i, int k) const;
    void add(int i, int k, long v);
    long total() const;
    int columns() const; // one past the largest nonzero column
};

// Reads beta_{i,k} off the generator twists of a minimal complex.
BettiTable betti_table(const FreeComplex& C);

// A pair of nonzero table entries that a degree-a differential could
// connect: beta_{i,k} and beta_{i-j,l} with j >= 2 and l - k = (1-j)a.
struct SlopePair {
    int i, k;
    int i2, l;
    int j;
    bool operator==(const SlopePair&) const = default;
};

// All admissible pairs. An empty answer certifies that no degree-a
// differential module with this Betti table can shed generators.
std::vector<SlopePair> slope_pairs(const BettiTable& t, int a);

// Degrees a admitting a subset pair J1, J2 of the given complete
// intersection degrees with |J2| = |J1| + j and sum(J1) - sum(J2) = (1-j)a.
// Necessary condition only: deficiency is possible at most at these a.
std::set<int> ci_deficiency_degrees(const std::vector<int>& degrees);

// Degrees a = (d_{i-j} - d_i)/(1-j) for a strictly increasing twist
// sequence of a pure resolution, whenever the ratio is an integer. Never
// contains zero.
std::set<int> pure_deficiency_degrees(const std::vector<int>& twist_degrees);

} // namespace flagforge

#endif
