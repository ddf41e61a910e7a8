#ifndef FLAGFORGE_PFAFFIAN_HPP
#define FLAGFORGE_PFAFFIAN_HPP

#include <vector>

#include "flagforge/diffmod.hpp"
#include "flagforge/endo.hpp"

namespace flagforge {

// The resolution of the submaximal pfaffian ideal of a generic 5x5 skew
// matrix, together with the multiplicative structure of the complex. The
// first ten ring variables are the matrix entries x_{ij}, i < j, in
// row-major order.
struct PfaffianData {
    FreeComplex complex;                 // R <- R^5 <- R^5 <- R
    std::vector<std::vector<Poly>> skew; // the 5x5 matrix X
    std::vector<Poly> pf;                // submaximal pfaffians Pf_1..Pf_5

    // Coordinates of e_i e_j in the f basis (all indices 1-based); zero
    // vector when i = j. Skew in i and j.
    std::vector<Poly> product_ee(int i, int j) const;
};

PfaffianData pfaffian_resolution(const RingPtr& ring);

// Left multiplication by the basis element e_i, a level-raising element of
// the endomorphism complex assembled from the product tables: 1 maps to
// e_i, e_j to e_i e_j, and f_j to the top class when j = i.
EndElement left_mult(const PfaffianData& P, int i);

// The degree-one curved module of the block differential built from the
// resolution and left multiplication by e_1; its square is Pf_1 times the
// identity.
CurvedModule curved_pfaffian(const RingPtr& ring);

} // namespace flagforge

#endif
