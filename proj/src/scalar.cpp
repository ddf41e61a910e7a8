#include "flagforge/scalar.hpp"

namespace flagforge {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

void validate_field(const FieldSpec& f) {
    if (f.p == 0) return;
    require(f.p < (1u << 31), "NonPrimeModulus", "modulus must be below 2^31");
    require(is_prime(f.p), "NonPrimeModulus", "modulus " + std::to_string(f.p) + " is not prime");
}

Scalar::Scalar(FieldSpec f, long long n) : p_(f.p) {
    if (p_ > 0) {
        r_ = n % static_cast<long long>(p_);
        if (r_ < 0) r_ += p_;
    } else {
        q_ = mpq_class(mpz_class(static_cast<long>(n)));
    }
}

Scalar Scalar::ratio(FieldSpec f, long long num, long long den) {
    require(den != 0, "DivisionByZero", "zero denominator");
    return Scalar(f, num) / Scalar(f, den);
}

Scalar Scalar::parse(FieldSpec f, const std::string& text) {
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) -> mpz_class {
        require(!s.empty(), "ParseError", "empty number");
        std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        require(i < s.size(), "ParseError", "bare sign in number");
        for (; i < s.size(); ++i)
            require(s[i] >= '0' && s[i] <= '9', "ParseError", "bad digit in '" + s + "'");
        return mpz_class(s, 10);
    };
    mpz_class num = parse_int(slash == std::string::npos ? text : text.substr(0, slash));
    mpz_class den = 1;
    if (slash != std::string::npos) {
        den = parse_int(text.substr(slash + 1));
        require(den != 0, "DivisionByZero", "zero denominator in '" + text + "'");
    }
    if (f.p == 0) {
        Scalar s(f);
        s.q_ = mpq_class(num, den);
        s.q_.canonicalize();
        return s;
    }
    mpz_class pz(static_cast<unsigned long>(f.p));
    mpz_class nr = num % pz, dr = den % pz;
    if (nr < 0) nr += pz;
    if (dr < 0) dr += pz;
    Scalar n(f, nr.get_si()), d(f, dr.get_si());
    return n / d;
}

void Scalar::check_same_field(const Scalar& o) const {
    require(p_ == o.p_, "RingMismatch", "scalars from different fields");
}

bool Scalar::is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
bool Scalar::is_one() const { return p_ ? r_ == 1 : q_ == 1; }

Scalar Scalar::operator-() const {
    Scalar s(*this);
    if (p_) {
        if (s.r_) s.r_ = p_ - s.r_;
    } else {
        s.q_ = -s.q_;
    }
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar s(field());
    if (p_) {
        s.r_ = (r_ + o.r_) % p_;
    } else {
        s.q_ = q_ + o.q_;
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar s(field());
    if (p_) {
        s.r_ = static_cast<std::int64_t>((static_cast<unsigned __int128>(r_) * o.r_) % p_);
    } else {
        s.q_ = q_ * o.q_;
    }
    return s;
}

Scalar Scalar::inverse() const {
    require(!is_zero(), "DivisionByZero", "inverse of zero");
    Scalar s(field());
    if (p_) {
        // extended Euclid on (r_, p_)
        std::int64_t a = r_, m = p_, x0 = 1, x1 = 0;
        while (m) {
            std::int64_t q = a / m;
            a -= q * m;
            std::swap(a, m);
            x0 -= q * x1;
            std::swap(x0, x1);
        }
        s.r_ = x0 % static_cast<std::int64_t>(p_);
        if (s.r_ < 0) s.r_ += p_;
    } else {
        s.q_ = 1 / q_;
    }
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    if (p_ != o.p_) return false;
    return p_ ? r_ == o.r_ : q_ == o.q_;
}

std::string Scalar::str() const {
    return p_ ? std::to_string(r_) : q_.get_str();
}

} // namespace flagforge
