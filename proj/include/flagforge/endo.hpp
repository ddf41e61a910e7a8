#ifndef FLAGFORGE_ENDO_HPP
#define FLAGFORGE_ENDO_HPP

#include <functional>
#include <optional>
#include <vector>

#include "flagforge/complex.hpp"

namespace flagforge {

// Degree element of the endomorphism complex of a free complex F: a level
// drop m and an internal degree t, with one component F_n -> F_{n-m} for
// each level n where both endpoints exist. Missing components are zero.
class EndElement {
public:
    EndElement() = default;
    EndElement(int m, int t, int lo, std::vector<HomMap> comps)
        : m_(m), t_(t), lo_(lo), comps_(std::move(comps)) {}

    int level_drop() const { return m_; }
    int internal_degree() const { return t_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(comps_.size()) - 1; }
    bool has_comp(int n) const { return n >= lo() && n <= hi(); }
    const HomMap& comp(int n) const;

    bool is_zero() const;
    EndElement operator+(const EndElement& o) const;
    EndElement operator-(const EndElement& o) const;
    EndElement operator-() const;
    EndElement scaled(const Scalar& c) const;
    // Entrywise product with a homogeneous polynomial; raises the internal
    // degree by its degree.
    EndElement poly_scaled(const Poly& p) const;
    bool operator==(const EndElement& o) const;

    void check_homogeneous() const;

private:
    int m_ = 0;
    int t_ = 0;
    int lo_ = 0;
    std::vector<HomMap> comps_;
};

EndElement end_zero(const FreeComplex& C, int m, int t);

// a after b, landing in level drop a.m + b.m and degree a.t + b.t.
EndElement compose(const FreeComplex& C, const EndElement& a, const EndElement& b);

// Differential of the endomorphism complex:
//   d^End(phi) = d phi - (-1)^m phi d.
EndElement d_end(const FreeComplex& C, const EndElement& phi);

// Unsigned companions: c_plus(h) = d h - h d and c_minus(h) = d h + h d.
// They satisfy c_minus(c_plus(h)) = 0 and are intertwined with d^End by the
// parity twist below: c_plus = twist_m . d^End . twist_m on level drop m,
// c_minus the same with twist_{m-1}.
EndElement c_plus(const FreeComplex& C, const EndElement& h);
EndElement c_minus(const FreeComplex& C, const EndElement& h);

// Scales component n by (-1)^(sigma * n).
EndElement parity_twist(const EndElement& phi, int sigma);

// True when d^End(phi) = 0, checked symbolically.
bool is_chain_map(const FreeComplex& C, const EndElement& phi);

// The differential of F, seen as the level-drop-1 endomorphism.
EndElement diff_element(const FreeComplex& C);

// Contraction against the exterior generator indexed by the ascending
// subset J, on a complex built by koszul_complex: e_T maps to sgn * e_{T-J}
// when J is contained in T (the sign splits e_T as e_J wedge e_{T-J}) and
// to zero otherwise. Always a chain map of the endomorphism complex.
EndElement koszul_contraction(const FreeComplex& C, const std::vector<int>& J);

// Coordinates on the finite dimensional slice End^m_t of the endomorphism
// complex: components by level descending, entries row-major, monomial
// coefficients in descending graded-lex order.
class EndSlice {
public:
    EndSlice(const FreeComplex& C, int m, int t);

    const FreeComplex& complex() const { return *C_; }
    int level_drop() const { return m_; }
    int internal_degree() const { return t_; }
    long dim() const { return dim_; }

    std::vector<Scalar> vec(const EndElement& phi) const;
    EndElement unvec(const std::vector<Scalar>& coords) const;

private:
    struct Coord {
        int n;
        std::size_t r, c;
        Monomial mono;
    };
    const FreeComplex* C_;
    int m_, t_;
    long dim_ = 0;
    std::vector<Coord> coords_;
};

// Matrix of a linear operator between two slices, columns indexed by the
// domain basis in slice coordinates.
Mat operator_matrix(const EndSlice& dom, const EndSlice& cod,
                    const std::function<EndElement(const EndElement&)>& op);

// dim of ker(d^End) / im(d^End) on the slice End^m_t.
long end_cohomology_dim(const FreeComplex& C, int m, int t);

// Support of H^m(End) in internal degree: all t with nonzero cohomology.
// Scans degrees upward from the smallest possible slice degree and stops
// once the slice dimensions vanish for good; SupportUnbounded when the
// cohomology provably cannot be confined (never happens for genuinely
// bounded slices, kept as a guard).
std::vector<int> end_cohomology_support(const FreeComplex& C, int m);

// Solves d^End(h) = phi with the canonical free-variables-zero solution;
// nullopt when phi is not a coboundary.
std::optional<EndElement> find_nullhomotopy(const FreeComplex& C, const EndElement& phi);

} // namespace flagforge

#endif
