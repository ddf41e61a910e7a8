#ifndef FLAGFORGE_RIGIDITY_HPP
#define FLAGFORGE_RIGIDITY_HPP

#include <map>
#include <utility>
#include <vector>

#include "flagforge/deform.hpp"

namespace flagforge {

// Quotient by a homogeneous regular sequence, tracked by its sorted degree
// list. Generators are kept alongside when known; the degrees-only mode
// synthesizes pure powers of the variables, which form a regular sequence.
struct CompleteIntersection {
    RingPtr ring;
    std::vector<Poly> gens;    // sorted by degree, ascending
    std::vector<int> degrees;  // ascending, degrees[i] = deg gens[i]

    std::size_t codim() const { return degrees.size(); }
    bool artinian() const { return degrees.size() == ring->vars.size(); }
};

CompleteIntersection make_ci(RingPtr ring, std::vector<Poly> gens);
// Variables x1..xn over the given field, generators x_i^degrees[i].
CompleteIntersection make_ci_degrees(FieldSpec field, std::size_t nvars,
                                     std::vector<int> degrees);

// Hilbert function of the quotient in degrees 0..jmax, from the coefficient
// expansion of prod(1 - t^d_r) / (1 - t)^n.
std::vector<long> hilbert_coeffs(const CompleteIntersection& ci, int jmax);

// Top nonzero degree |d| - n of an Artinian quotient.
int socle_degree(const CompleteIntersection& ci);

// dim of Ext^i(S/I, S/I) in internal degree j, by the exterior algebra
// decomposition: sum over size-i subsets J of the Hilbert function of the
// quotient at j + sum of the degrees over J.
long ci_ext_dim(const CompleteIntersection& ci, int i, int j);

struct RigidityReport {
    struct Row {
        int i;
        int j;
        long dim;
    };
    bool rigid = true;
    std::vector<Row> rows;
};

// Vanishing of every Ext slice that could carry a degree-a flag map:
// dimension at (i, a - i*a) for 2 <= i <= codim (or the anchor length).
RigidityReport is_a_rigid(const CompleteIntersection& ci, int a);
RigidityReport is_a_rigid(const FreeComplex& anchor, int a);

// The exact interval of degrees a where the Artinian quotient is not rigid:
// [d1 + d2 + n - |d|, d_{n-1} + d_n], cross-checked pointwise at both
// boundaries and one step outside.
std::pair<int, int> rigidity_window(const CompleteIntersection& ci);

// A degree-a free flag on the Koszul resolution that is not conjugate to
// the fold: delta_2 realizes a nonzero class m_j e_i e_{i+1} by scaled
// contraction, all higher maps zero.
struct WitnessResult {
    int index;  // the 1-based i of the wedge pair (e_i, e_{i+1})
    int j;      // the internal degree of the monomial factor
    Poly monomial;
    DifferentialModule flag;
};

WitnessResult nonrigidity_witness(const CompleteIntersection& ci, int a);

// Degrees beyond which every flag is trivial: a >= a_plus or a <= a_minus
// puts the slice a(1-i) outside the support of H^i(End) for every i.
struct RigidThresholds {
    int a_minus = 0;
    int a_plus = 0;
    bool always_rigid = false;
};

RigidThresholds rigid_thresholds(const FreeComplex& anchor);

// Element of S tensor the exterior algebra on e_1..e_c: finitely many terms
// indexed by ascending subsets of {0..c-1} with polynomial coefficients.
class ExtElement {
public:
    ExtElement(RingPtr ring, int c) : ring_(std::move(ring)), c_(c) {}

    const RingPtr& ring() const { return ring_; }
    int generators() const { return c_; }
    const std::map<std::vector<int>, Poly>& terms() const { return terms_; }

    void set(std::vector<int> subset, Poly coeff);
    Poly coeff(const std::vector<int>& subset) const;

    bool is_zero() const { return terms_.empty(); }
    ExtElement operator+(const ExtElement& o) const;
    ExtElement operator-(const ExtElement& o) const;
    ExtElement scaled(const Scalar& c) const;
    bool operator==(const ExtElement& o) const;

private:
    RingPtr ring_;
    int c_ = 0;
    std::map<std::vector<int>, Poly> terms_;
};

// Exterior product with the standard sign rule: e_J wedge e_K vanishes on
// overlap and otherwise contributes the sign of the merge permutation.
ExtElement wedge(const ExtElement& a, const ExtElement& b);

} // namespace flagforge

#endif
