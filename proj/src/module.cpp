#include "flagforge/module.hpp"

#include <algorithm>
#include <sstream>

#include "flagforge/error.hpp"

namespace flagforge {

FreeModule twisted(const FreeModule& M, int a) {
    FreeModule r = M;
    for (int& t : r.twists) t += a;
    return r;
}

std::vector<SliceBasisElem> slice_basis(const FreeModule& M, int d) {
    std::vector<SliceBasisElem> out;
    for (std::size_t g = 0; g < M.rank(); ++g) {
        int md = d + M.twists[g];
        for (auto& m : monomials_of_degree(M.ring->nvars(), md))
            out.push_back(SliceBasisElem{g, std::move(m)});
    }
    return out;
}

long slice_dim(const FreeModule& M, int d) {
    long total = 0;
    for (int t : M.twists) total += slice_dim(M.ring->nvars(), d + t);
    return total;
}

HomMap::HomMap(FreeModule src, FreeModule tgt, int deg)
    : src_(std::move(src)), tgt_(std::move(tgt)), deg_(deg) {
    require(*src_.ring == *tgt_.ring, "RingMismatch", "map between different rings");
    entries_.assign(tgt_.rank() * src_.rank(), Poly::zero(src_.ring));
}

HomMap HomMap::zero(FreeModule src, FreeModule tgt, int deg) {
    return HomMap(std::move(src), std::move(tgt), deg);
}

HomMap HomMap::identity(const FreeModule& M) {
    HomMap h(M, M, 0);
    for (std::size_t i = 0; i < M.rank(); ++i)
        h.set(i, i, Poly::constant(M.ring, 1));
    return h;
}

const Poly& HomMap::at(std::size_t r, std::size_t c) const {
    require(r < tgt_.rank() && c < src_.rank(), "ShapeMismatch", "entry out of range");
    return entries_[r * src_.rank() + c];
}

void HomMap::set(std::size_t r, std::size_t c, Poly p) {
    require(r < tgt_.rank() && c < src_.rank(), "ShapeMismatch", "entry out of range");
    entries_[r * src_.rank() + c] = std::move(p);
}

bool HomMap::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Poly& p) { return p.is_zero(); });
}

void HomMap::check_homogeneous() const {
    for (std::size_t r = 0; r < tgt_.rank(); ++r)
        for (std::size_t c = 0; c < src_.rank(); ++c) {
            const Poly& p = at(r, c);
            if (p.is_zero()) continue;
            int want = deg_ - src_.twists[c] + tgt_.twists[r];
            std::ostringstream os;
            os << "entry (" << r << "," << c << ") = " << p.str()
               << " not homogeneous of degree " << want;
            require(p.is_homogeneous_of(want), "HomogeneityViolation", os.str());
        }
}

HomMap HomMap::operator+(const HomMap& o) const {
    require(src_ == o.src_ && tgt_ == o.tgt_ && deg_ == o.deg_, "ShapeMismatch",
            "adding maps of different shapes");
    HomMap r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
    return r;
}

HomMap HomMap::operator-(const HomMap& o) const { return *this + (-o); }

HomMap HomMap::operator-() const {
    HomMap r = *this;
    for (auto& p : r.entries_) p = -p;
    return r;
}

HomMap HomMap::operator*(const HomMap& o) const {
    require(src_ == o.tgt_, "ShapeMismatch", "composition shape mismatch");
    HomMap r(o.src_, tgt_, deg_ + o.deg_);
    for (std::size_t i = 0; i < tgt_.rank(); ++i)
        for (std::size_t j = 0; j < o.src_.rank(); ++j) {
            Poly acc = Poly::zero(src_.ring);
            for (std::size_t k = 0; k < src_.rank(); ++k)
                acc += at(i, k) * o.at(k, j);
            r.set(i, j, std::move(acc));
        }
    return r;
}

HomMap HomMap::scaled(const Scalar& c) const {
    HomMap r = *this;
    for (auto& p : r.entries_) p = p.scaled(c);
    return r;
}

HomMap HomMap::poly_scaled(const Poly& p) const {
    std::optional<int> d = p.homogeneous_degree();
    require(d.has_value() && *d >= 0, "HomogeneityViolation",
            "entrywise factor must be homogeneous and nonzero");
    HomMap r(src_, tgt_, deg_ + *d);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (!entries_[i].is_zero()) r.entries_[i] = entries_[i] * p;
    return r;
}

bool HomMap::operator==(const HomMap& o) const {
    if (!(src_ == o.src_ && tgt_ == o.tgt_ && deg_ == o.deg_)) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] != o.entries_[i]) return false;
    return true;
}

HomMap HomMap::twisted_by(int a) const {
    HomMap r = *this;
    r.src_ = twisted(src_, a);
    r.tgt_ = twisted(tgt_, a);
    return r;
}

Mat HomMap::slice_matrix(int d) const {
    auto sb = slice_basis(src_, d);
    auto tb = slice_basis(tgt_, d + deg_);
    Mat m(src_.ring->field, tb.size(), sb.size());
    auto locate = [&tb](std::size_t gen, const Monomial& mono) -> std::size_t {
        for (std::size_t r = 0; r < tb.size(); ++r)
            if (tb[r].gen == gen && tb[r].mono == mono) return r;
        fail("HomogeneityViolation", "image leaves the expected graded slice");
    };
    for (std::size_t c = 0; c < sb.size(); ++c) {
        for (std::size_t tr = 0; tr < tgt_.rank(); ++tr) {
            Poly comp = at(tr, sb[c].gen).times_monomial(sb[c].mono);
            for (const auto& term : comp.terms())
                m.at(locate(tr, term.m), c) = term.c;
        }
    }
    return m;
}

std::vector<std::string> HomMap::rows_str() const {
    std::vector<std::string> rows;
    rows.reserve(tgt_.rank());
    for (std::size_t r = 0; r < tgt_.rank(); ++r) {
        std::ostringstream os;
        os << "[";
        for (std::size_t c = 0; c < src_.rank(); ++c) {
            if (c) os << ", ";
            os << at(r, c).str();
        }
        os << "]";
        rows.push_back(os.str());
    }
    return rows;
}

} // namespace flagforge
