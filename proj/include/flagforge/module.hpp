#ifndef FLAGFORGE_MODULE_HPP
#define FLAGFORGE_MODULE_HPP

#include <string>
#include <vector>

#include "flagforge/linalg.hpp"
#include "flagforge/poly.hpp"

namespace flagforge {

// Graded free module over a polynomial ring, recorded by its twists:
// the module is the direct sum of S(twists[g]), so generator g sits in
// internal degree -twists[g].
struct FreeModule {
    RingPtr ring;
    std::vector<int> twists;

    std::size_t rank() const { return twists.size(); }
    bool operator==(const FreeModule& o) const {
        return *ring == *o.ring && twists == o.twists;
    }
};

// Twist shift: M(a) turns each summand S(t) into S(t + a).
FreeModule twisted(const FreeModule& M, int a);

// Basis element of a graded slice: monomial times generator.
struct SliceBasisElem {
    std::size_t gen;
    Monomial mono;
};

// k-basis of the degree-d slice of M, generators ascending, monomials
// descending graded-lex within each generator.
std::vector<SliceBasisElem> slice_basis(const FreeModule& M, int d);
long slice_dim(const FreeModule& M, int d);

// Degree-homogeneous map of graded free modules, stored as a matrix of
// polynomials: entry (r, c) is the coefficient of target generator r in the
// image of source generator c. A map of degree t raises internal degree by
// t, so entry (r, c) is homogeneous of degree
// t - src.twists[c] + tgt.twists[r].
class HomMap {
public:
    HomMap() = default;
    HomMap(FreeModule src, FreeModule tgt, int deg);

    static HomMap zero(FreeModule src, FreeModule tgt, int deg);
    static HomMap identity(const FreeModule& M);

    const FreeModule& source() const { return src_; }
    const FreeModule& target() const { return tgt_; }
    int map_degree() const { return deg_; }
    const RingPtr& ring() const { return src_.ring; }

    const Poly& at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Poly p);

    bool is_zero() const;
    // Every entry homogeneous of the forced degree (zero entries always pass).
    void check_homogeneous() const;

    HomMap operator+(const HomMap& o) const;
    HomMap operator-(const HomMap& o) const;
    HomMap operator-() const;
    HomMap operator*(const HomMap& o) const; // composition: this after o
    HomMap scaled(const Scalar& c) const;
    // Entrywise product with a homogeneous polynomial; the map degree grows
    // by its degree.
    HomMap poly_scaled(const Poly& p) const;
    bool operator==(const HomMap& o) const;

    // Same matrix viewed with both modules twisted by a; entry degrees and
    // the map degree are unchanged.
    HomMap twisted_by(int a) const;

    // Matrix of the induced k-linear map slice(src, d) -> slice(tgt, d + deg)
    // in the slice_basis coordinates.
    Mat slice_matrix(int d) const;

    std::vector<std::string> rows_str() const;

private:
    FreeModule src_, tgt_;
    int deg_ = 0;
    std::vector<Poly> entries_; // row-major, tgt.rank() x src.rank()
};

} // namespace flagforge

#endif
