#ifndef FLAGFORGE_SCALAR_HPP
#define FLAGFORGE_SCALAR_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "flagforge/error.hpp"

namespace flagforge {

// Coefficient field: the rationals (p == 0) or a prime field F_p with p < 2^31.
struct FieldSpec {
    std::uint32_t p = 0;

    bool operator==(const FieldSpec&) const = default;
    bool is_rational() const { return p == 0; }
};

bool is_prime(std::uint32_t n);

// Throws NonPrimeModulus unless p == 0 or p is a prime below 2^31.
void validate_field(const FieldSpec& f);

// Exact field element. Rationals are GMP-backed and always canonical
// (reduced, positive denominator); F_p elements are residues in [0, p).
class Scalar {
public:
    Scalar() : Scalar(FieldSpec{}) {}
    explicit Scalar(FieldSpec f) : p_(f.p) {}
    Scalar(FieldSpec f, long long n);

    static Scalar zero(FieldSpec f) { return Scalar(f); }
    static Scalar one(FieldSpec f) { return Scalar(f, 1); }
    static Scalar ratio(FieldSpec f, long long num, long long den);
    // Accepts an optionally signed integer or "num/den".
    static Scalar parse(FieldSpec f, const std::string& text);

    FieldSpec field() const { return FieldSpec{p_}; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // DivisionByZero on zero divisor
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // F_p residue; only valid when the field is finite.
    std::int64_t residue() const { return r_; }
    const mpq_class& rational() const { return q_; }

    std::string str() const;

private:
    void check_same_field(const Scalar& o) const;

    std::uint32_t p_ = 0;
    std::int64_t r_ = 0; // residue when p_ > 0
    mpq_class q_;        // value when p_ == 0
};

} // namespace flagforge

#endif
