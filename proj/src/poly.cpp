#include "flagforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "flagforge/error.hpp"

namespace flagforge {

bool Monomial::is_unit() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Monomial Monomial::operator*(const Monomial& o) const {
    require(e.size() == o.e.size(), "RingMismatch", "monomial arity mismatch");
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // Same degree: lexicographic with x1 largest, so compare exponent vectors.
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
}

int Ring::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    fail("UnknownVariable", "no variable named '" + name + "'");
}

RingPtr make_ring(FieldSpec field, std::vector<std::string> vars) {
    validate_field(field);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        require(!vars[i].empty(), "ParseError", "empty variable name");
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            require(vars[i] != vars[j], "ParseError", "duplicate variable '" + vars[i] + "'");
    }
    return std::make_shared<const Ring>(Ring{field, std::move(vars)});
}

long slice_dim(std::size_t nvars, int d) {
    if (d < 0) return 0;
    if (nvars == 0) return d == 0 ? 1 : 0;
    // binom(d + nvars - 1, nvars - 1)
    long num = 1, den = 1;
    for (std::size_t k = 1; k < nvars; ++k) {
        num *= d + static_cast<long>(k);
        den *= static_cast<long>(k);
    }
    return num / den;
}

namespace {

void gen_monomials(std::size_t nvars, std::size_t i, int rem, Monomial& cur,
                   std::vector<Monomial>& out) {
    if (i + 1 == nvars) {
        cur.e[i] = rem;
        out.push_back(cur);
        return;
    }
    for (int k = rem; k >= 0; --k) {
        cur.e[i] = k;
        gen_monomials(nvars, i + 1, rem - k, cur, out);
    }
    cur.e[i] = 0;
}

} // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    if (nvars == 0) {
        if (d == 0) out.push_back(Monomial{{}});
        return out;
    }
    Monomial cur = Monomial::unit(nvars);
    gen_monomials(nvars, 0, d, cur, out);
    return out;
}

Poly::Poly(RingPtr ring, const Scalar& c) : ring_(std::move(ring)) {
    if (!c.is_zero()) t_.push_back(Term{Monomial::unit(ring_->nvars()), c});
}

Poly Poly::constant(RingPtr ring, long long n) {
    FieldSpec f = ring->field;
    return Poly(std::move(ring), Scalar(f, n));
}

Poly Poly::variable(RingPtr ring, std::size_t idx, int power) {
    require(idx < ring->nvars(), "UnknownVariable", "variable index out of range");
    require(power >= 0, "ParseError", "negative exponent");
    Monomial m = Monomial::unit(ring->nvars());
    m.e[idx] = power;
    Scalar one = Scalar::one(ring->field);
    return term(std::move(ring), std::move(m), std::move(one));
}

Poly Poly::term(RingPtr ring, Monomial m, Scalar c) {
    Poly p(std::move(ring));
    require(m.e.size() == p.ring_->nvars(), "RingMismatch", "monomial arity mismatch");
    if (!c.is_zero()) p.t_.push_back(Term{std::move(m), std::move(c)});
    return p;
}

std::optional<Scalar> Poly::constant_value() const {
    if (t_.size() != 1 || !t_[0].m.is_unit()) return std::nullopt;
    return t_[0].c;
}

int Poly::degree() const {
    if (t_.empty()) return -1;
    return t_.front().m.degree();
}

std::optional<int> Poly::homogeneous_degree() const {
    if (t_.empty()) return -1;
    int d = t_.front().m.degree();
    for (const auto& t : t_)
        if (t.m.degree() != d) return std::nullopt;
    return d;
}

bool Poly::is_homogeneous_of(int d) const {
    if (t_.empty()) return true;
    auto h = homogeneous_degree();
    return h.has_value() && *h == d;
}

void Poly::check_ring(const Poly& o) const {
    require(ring_ && o.ring_ && *ring_ == *o.ring_, "RingMismatch",
            "polynomials over different rings");
}

Poly Poly::operator-() const {
    Poly r(ring_);
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back(Term{t.m, -t.c});
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    check_ring(o);
    Poly r(ring_);
    r.t_.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && grlex_greater(t_[i].m, o.t_[j].m))) {
            r.t_.push_back(t_[i++]);
        } else if (i == t_.size() || grlex_greater(o.t_[j].m, t_[i].m)) {
            r.t_.push_back(o.t_[j++]);
        } else {
            Scalar c = t_[i].c + o.t_[j].c;
            if (!c.is_zero()) r.t_.push_back(Term{t_[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_ring(o);
    std::map<std::vector<std::int32_t>, Scalar> acc;
    for (const auto& a : t_)
        for (const auto& b : o.t_) {
            Monomial m = a.m * b.m;
            Scalar c = a.c * b.c;
            auto it = acc.find(m.e);
            if (it == acc.end())
                acc.emplace(std::move(m.e), std::move(c));
            else
                it->second = it->second + c;
        }
    Poly r(ring_);
    r.t_.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (!c.is_zero()) r.t_.push_back(Term{Monomial{e}, std::move(c)});
    std::sort(r.t_.begin(), r.t_.end(),
              [](const Term& x, const Term& y) { return grlex_greater(x.m, y.m); });
    return r;
}

Poly Poly::scaled(const Scalar& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back(Term{t.m, t.c * c});
    return r;
}

Poly Poly::times_monomial(const Monomial& m) const {
    Poly r(ring_);
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back(Term{t.m * m, t.c});
    return r;
}

bool Poly::operator==(const Poly& o) const {
    check_ring(o);
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (!(t_[i].m == o.t_[i].m) || !(t_[i].c == o.t_[i].c)) return false;
    return true;
}

Scalar Poly::coeff(const Monomial& m) const {
    for (const auto& t : t_)
        if (t.m == m) return t.c;
    return Scalar::zero(ring_->field);
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        std::string cs = t.c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool unitm = t.m.is_unit();
        bool unitc = (mag == "1");
        if (unitm) {
            os << mag;
        } else {
            bool need_star = false;
            if (!unitc) {
                os << mag;
                need_star = true;
            }
            for (std::size_t i = 0; i < t.m.e.size(); ++i) {
                if (t.m.e[i] == 0) continue;
                if (need_star) os << "*";
                os << ring_->vars[i];
                if (t.m.e[i] > 1) os << "^" << t.m.e[i];
                need_star = true;
            }
        }
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        require(i < s.size(), "ParseError", "unexpected end of polynomial");
        return s[i++];
    }

    std::string take_integer() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        require(i > start, "ParseError", "expected digits in '" + s + "'");
        return s.substr(start, i - start);
    }

    std::string take_name() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        require(i > start, "ParseError", "expected variable name in '" + s + "'");
        return s.substr(start, i - start);
    }
};

} // namespace

Poly Poly::parse(const RingPtr& ring, const std::string& text) {
    Lexer lx{text};
    Poly result(ring);
    bool first = true;
    while (!lx.done()) {
        bool neg = false;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.take();
            neg = (c == '-');
        } else {
            require(first, "ParseError", "expected + or - between terms in '" + text + "'");
        }
        first = false;

        Scalar coeff = Scalar::one(ring->field);
        Monomial mono = Monomial::unit(ring->nvars());
        bool any_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            char p = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(p))) {
                std::string num = lx.take_integer();
                if (lx.peek() == '/') {
                    lx.take();
                    std::string den = lx.take_integer();
                    coeff = coeff * Scalar::parse(ring->field, num + "/" + den);
                } else {
                    coeff = coeff * Scalar::parse(ring->field, num);
                }
            } else if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
                std::string name = lx.take_name();
                int idx = ring->var_index(name);
                int pow = 1;
                if (lx.peek() == '^') {
                    lx.take();
                    pow = std::stoi(lx.take_integer());
                }
                mono.e[static_cast<std::size_t>(idx)] += pow;
            } else {
                fail("ParseError", "unexpected character '" + std::string(1, p) +
                                       "' in '" + text + "'");
            }
            any_factor = true;
            if (lx.peek() == '*') {
                lx.take();
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        require(any_factor, "ParseError", "empty term in '" + text + "'");
        if (neg) coeff = -coeff;
        result = result + Poly::term(ring, std::move(mono), std::move(coeff));
    }
    return result;
}

} // namespace flagforge
