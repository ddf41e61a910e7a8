#ifndef FLAGFORGE_COMPLEX_HPP
#define FLAGFORGE_COMPLEX_HPP

#include <vector>

#include "flagforge/module.hpp"

namespace flagforge {

// Bounded complex of graded free modules
//   F_len <- ... <- F_1 <- F_0   with differentials d_i : F_i -> F_{i-1}
// of internal degree 0 and d_{i} d_{i+1} = 0.
class FreeComplex {
public:
    FreeComplex(std::vector<FreeModule> modules, std::vector<HomMap> diffs);

    const RingPtr& ring() const { return mods_[0].ring; }
    std::size_t length() const { return mods_.size() - 1; }
    const FreeModule& module(std::size_t i) const;
    const std::vector<FreeModule>& modules() const { return mods_; }

    // d_i : F_i -> F_{i-1}, valid for 1 <= i <= length().
    const HomMap& diff(std::size_t i) const;

    std::size_t total_rank() const;

    // Homogeneity of every differential plus d^2 = 0; throws NotAComplex.
    void validate() const;

private:
    std::vector<FreeModule> mods_;
    std::vector<HomMap> diffs_; // diffs_[i] = d_{i+1} : F_{i+1} -> F_i
};

// Koszul complex on homogeneous elements f_1..f_c: F_i has one generator e_J
// per size-i subset J of {1..c} in lexicographic order, of twist sum of the
// degrees over J, and d(e_J) = sum over positions s of (-1)^(s+1) f_{j_s}
// e_{J minus j_s}.
FreeComplex koszul_complex(const RingPtr& ring, const std::vector<Poly>& gens);

// Size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_lex(int n, int k);

} // namespace flagforge

#endif
