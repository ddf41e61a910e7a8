#ifndef FLAGFORGE_POLY_HPP
#define FLAGFORGE_POLY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flagforge/scalar.hpp"

namespace flagforge {

// Exponent vector with cached total degree.
struct Monomial {
    std::vector<std::int32_t> e;

    static Monomial unit(std::size_t nvars) { return Monomial{std::vector<std::int32_t>(nvars, 0)}; }

    int degree() const {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }
    bool is_unit() const;
    Monomial operator*(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return e == o.e; }
};

// Graded lexicographic order, earlier-declared variables largest.
bool grlex_less(const Monomial& a, const Monomial& b);
inline bool grlex_greater(const Monomial& a, const Monomial& b) { return grlex_less(b, a); }

struct Ring {
    FieldSpec field;
    std::vector<std::string> vars;

    std::size_t nvars() const { return vars.size(); }
    int var_index(const std::string& name) const; // UnknownVariable if absent
    bool operator==(const Ring& o) const { return field == o.field && vars == o.vars; }
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(FieldSpec field, std::vector<std::string> vars);

// dim_k of the degree-d slice of the polynomial ring on nvars variables.
long slice_dim(std::size_t nvars, int d);

// Monomials of total degree d in descending graded-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d);

// Sparse polynomial; terms strictly sorted descending graded-lex, no zero coefficients.
class Poly {
public:
    struct Term {
        Monomial m;
        Scalar c;
    };

    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    Poly(RingPtr ring, const Scalar& c);

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly constant(RingPtr ring, long long n);
    static Poly variable(RingPtr ring, std::size_t idx, int power = 1);
    static Poly term(RingPtr ring, Monomial m, Scalar c);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    // Nonzero constant: the unit test used by minimization.
    std::optional<Scalar> constant_value() const;

    int degree() const; // -1 for the zero polynomial
    // Total degree if homogeneous; nullopt for inhomogeneous; zero counts as
    // homogeneous of every degree and reports -1.
    std::optional<int> homogeneous_degree() const;
    bool is_homogeneous_of(int d) const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    Poly scaled(const Scalar& c) const;
    Poly times_monomial(const Monomial& m) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Coefficient of a monomial (zero scalar if absent).
    Scalar coeff(const Monomial& m) const;

    std::string str() const;

    // Parses the canonical syntax: terms joined by + or -, each term a
    // '*'-separated product of an optional integer or num/den coefficient
    // and powers var^k. Round-trips with str().
    static Poly parse(const RingPtr& ring, const std::string& text);

private:
    void check_ring(const Poly& o) const;

    RingPtr ring_;
    std::vector<Term> t_;
};

} // namespace flagforge

#endif
