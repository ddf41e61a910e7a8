#ifndef FLAGFORGE_DIFFMOD_HPP
#define FLAGFORGE_DIFFMOD_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "flagforge/complex.hpp"

namespace flagforge {

// Graded module D with a square-zero endomorphism d of internal degree a,
// i.e. a degree-preserving map D -> D(a). Optional flag data partitions the
// generators into levels; the blocks of d must then drop strictly in level.
struct DifferentialModule {
    FreeModule mod;
    int degree = 0;
    HomMap d;
    std::optional<std::vector<std::vector<std::size_t>>> flag_levels;

    // Homogeneity plus d*d = 0, symbolically.
    void validate() const;
};

// Collapse a complex to a differential module: levels F_i enter twisted by
// i*a, the differentials become the only nonzero blocks, and the result
// carries the level partition as flag data.
DifferentialModule fold(const FreeComplex& C, int a);

// Checks the flag axioms (blocks vanish unless the level strictly drops,
// every surviving block has the forced degree) and returns the anchor:
// the complex of first-off-diagonal blocks with the level twists undone.
FreeComplex validate_flag(const DifferentialModule& D);

// Hilbert function of ker(d)/im(d) per internal degree over [j0, j1]:
// dim ker(slice at j) - rank(slice at j - a).
std::map<int, long> homology_hilbert(const DifferentialModule& D, int j0, int j1);

// Conservative default reporting window derived from the generator degrees.
std::pair<int, int> default_window(const DifferentialModule& D);

// Generator counts per internal degree after minimization.
struct BettiRecord {
    std::map<int, long> by_degree;
    long total() const;
};

// Strips scalar units from d by conjugation, two generators at a time,
// until no entry has a unit. Homology is unchanged.
std::pair<DifferentialModule, BettiRecord> minimize(const DifferentialModule& D);

// True when no entry of d has a nonzero scalar term.
bool is_minimal(const HomMap& d);

// If d*d = f * identity for a single polynomial f, returns f (zero for a
// genuine differential); otherwise nullopt.
std::optional<Poly> curvature(const HomMap& d);

// Differential module up to curvature: d*d = f * id instead of 0.
struct CurvedModule {
    FreeModule mod;
    int degree = 0;
    HomMap d;
    Poly f;
    std::optional<std::vector<std::vector<std::size_t>>> flag_levels;

    void validate() const;
};

// Splits the flag levels by parity and returns the two off-parity blocks
// (A: odd -> even, B: even -> odd) with A*B = B*A = f * id, verified.
std::pair<HomMap, HomMap> matrix_factorization(const CurvedModule& D);

} // namespace flagforge

#endif
