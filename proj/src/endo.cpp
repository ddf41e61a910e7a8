#include "flagforge/endo.hpp"

#include <algorithm>
#include <iterator>

#include "flagforge/error.hpp"

namespace flagforge {

namespace {

// Levels n where a component F_n -> F_{n-m} exists.
std::pair<int, int> level_range(const FreeComplex& C, int m) {
    int l = static_cast<int>(C.length());
    return {std::max(0, m), std::min(l, l + m)};
}

} // namespace

const HomMap& EndElement::comp(int n) const {
    require(has_comp(n), "ShapeMismatch", "no component at this level");
    return comps_[static_cast<std::size_t>(n - lo_)];
}

bool EndElement::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(),
                       [](const HomMap& h) { return h.is_zero(); });
}

EndElement EndElement::operator+(const EndElement& o) const {
    require(m_ == o.m_ && t_ == o.t_ && lo_ == o.lo_ && comps_.size() == o.comps_.size(),
            "ShapeMismatch", "adding endomorphism elements of different shapes");
    std::vector<HomMap> out;
    out.reserve(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) out.push_back(comps_[i] + o.comps_[i]);
    return EndElement(m_, t_, lo_, std::move(out));
}

EndElement EndElement::operator-(const EndElement& o) const { return *this + (-o); }

EndElement EndElement::operator-() const {
    std::vector<HomMap> out;
    out.reserve(comps_.size());
    for (const auto& h : comps_) out.push_back(-h);
    return EndElement(m_, t_, lo_, std::move(out));
}

EndElement EndElement::scaled(const Scalar& c) const {
    std::vector<HomMap> out;
    out.reserve(comps_.size());
    for (const auto& h : comps_) out.push_back(h.scaled(c));
    return EndElement(m_, t_, lo_, std::move(out));
}

EndElement EndElement::poly_scaled(const Poly& p) const {
    std::optional<int> d = p.homogeneous_degree();
    require(d.has_value() && *d >= 0, "HomogeneityViolation",
            "entrywise factor must be homogeneous and nonzero");
    std::vector<HomMap> out;
    out.reserve(comps_.size());
    for (const auto& h : comps_) out.push_back(h.poly_scaled(p));
    return EndElement(m_, t_ + *d, lo_, std::move(out));
}

bool EndElement::operator==(const EndElement& o) const {
    if (m_ != o.m_ || t_ != o.t_ || lo_ != o.lo_ || comps_.size() != o.comps_.size())
        return false;
    for (std::size_t i = 0; i < comps_.size(); ++i)
        if (!(comps_[i] == o.comps_[i])) return false;
    return true;
}

void EndElement::check_homogeneous() const {
    for (const auto& h : comps_) {
        require(h.map_degree() == t_, "ShapeMismatch",
                "component degree disagrees with element degree");
        h.check_homogeneous();
    }
}

EndElement end_zero(const FreeComplex& C, int m, int t) {
    auto [lo, hi] = level_range(C, m);
    std::vector<HomMap> comps;
    for (int n = lo; n <= hi; ++n)
        comps.push_back(HomMap::zero(C.module(static_cast<std::size_t>(n)),
                                     C.module(static_cast<std::size_t>(n - m)), t));
    return EndElement(m, t, lo, std::move(comps));
}

EndElement compose(const FreeComplex& C, const EndElement& a, const EndElement& b) {
    EndElement out = end_zero(C, a.level_drop() + b.level_drop(),
                              a.internal_degree() + b.internal_degree());
    auto [lo, hi] = level_range(C, out.level_drop());
    std::vector<HomMap> comps;
    for (int n = lo; n <= hi; ++n) {
        HomMap z = out.comp(n);
        if (b.has_comp(n) && a.has_comp(n - b.level_drop()))
            z = z + a.comp(n - b.level_drop()) * b.comp(n);
        comps.push_back(std::move(z));
    }
    return EndElement(out.level_drop(), out.internal_degree(), lo, std::move(comps));
}

namespace {

// d phi + eps * phi d with eps a plain integer sign.
EndElement d_sandwich(const FreeComplex& C, const EndElement& phi, int eps) {
    int m = phi.level_drop();
    int l = static_cast<int>(C.length());
    EndElement out = end_zero(C, m + 1, phi.internal_degree());
    auto [lo, hi] = level_range(C, m + 1);
    std::vector<HomMap> comps;
    for (int n = lo; n <= hi; ++n) {
        HomMap z = out.comp(n);
        if (phi.has_comp(n) && n - m >= 1 && n - m <= l)
            z = z + C.diff(static_cast<std::size_t>(n - m)) * phi.comp(n);
        if (n >= 1 && n <= l && phi.has_comp(n - 1)) {
            HomMap tail = phi.comp(n - 1) * C.diff(static_cast<std::size_t>(n));
            z = (eps > 0) ? z + tail : z - tail;
        }
        comps.push_back(std::move(z));
    }
    return EndElement(m + 1, phi.internal_degree(), lo, std::move(comps));
}

} // namespace

EndElement d_end(const FreeComplex& C, const EndElement& phi) {
    int eps = (phi.level_drop() % 2 == 0) ? -1 : +1; // - (-1)^m
    return d_sandwich(C, phi, eps);
}

EndElement c_plus(const FreeComplex& C, const EndElement& h) {
    return d_sandwich(C, h, -1);
}

EndElement c_minus(const FreeComplex& C, const EndElement& h) {
    return d_sandwich(C, h, +1);
}

EndElement parity_twist(const EndElement& phi, int sigma) {
    if (sigma % 2 == 0) return phi;
    std::vector<HomMap> comps;
    for (int n = phi.lo(); n <= phi.hi(); ++n) {
        const HomMap& h = phi.comp(n);
        comps.push_back(n % 2 == 0 ? h : -h);
    }
    return EndElement(phi.level_drop(), phi.internal_degree(), phi.lo(), std::move(comps));
}

bool is_chain_map(const FreeComplex& C, const EndElement& phi) {
    return d_end(C, phi).is_zero();
}

EndElement diff_element(const FreeComplex& C) {
    std::vector<HomMap> comps;
    for (std::size_t i = 1; i <= C.length(); ++i) comps.push_back(C.diff(i));
    return EndElement(1, 0, 1, std::move(comps));
}

EndElement koszul_contraction(const FreeComplex& C, const std::vector<int>& J) {
    const int c = static_cast<int>(C.length());
    require(static_cast<int>(C.module(1).rank()) == c, "ShapeMismatch",
            "contraction needs a Koszul-shaped complex");
    for (std::size_t i = 0; i < J.size(); ++i) {
        require(J[i] >= 0 && J[i] < c, "ShapeMismatch", "contraction index out of range");
        require(i == 0 || J[i - 1] < J[i], "ShapeMismatch",
                "contraction indices must ascend");
    }
    const int m = static_cast<int>(J.size());
    int t = 0;
    for (int r : J) t += C.module(1).twists[static_cast<std::size_t>(r)];
    std::vector<HomMap> comps;
    for (int n = m; n <= c; ++n) {
        auto cols = subsets_lex(c, n);
        auto rows = subsets_lex(c, n - m);
        require(cols.size() == C.module(static_cast<std::size_t>(n)).rank(),
                "ShapeMismatch", "contraction needs a Koszul-shaped complex");
        HomMap blk(C.module(static_cast<std::size_t>(n)),
                   C.module(static_cast<std::size_t>(n - m)), t);
        for (std::size_t ci = 0; ci < cols.size(); ++ci) {
            const std::vector<int>& T = cols[ci];
            if (!std::includes(T.begin(), T.end(), J.begin(), J.end())) continue;
            std::vector<int> rest;
            std::set_difference(T.begin(), T.end(), J.begin(), J.end(),
                                std::back_inserter(rest));
            long inv = 0;
            for (int j : J)
                for (int u : rest)
                    if (j > u) ++inv;
            std::size_t ri = static_cast<std::size_t>(
                std::find(rows.begin(), rows.end(), rest) - rows.begin());
            Scalar sgn = inv % 2 == 0 ? Scalar::one(C.ring()->field)
                                      : -Scalar::one(C.ring()->field);
            blk.set(ri, ci, Poly::constant(C.ring(), 1).scaled(sgn));
        }
        comps.push_back(std::move(blk));
    }
    return EndElement(m, t, m, std::move(comps));
}

EndSlice::EndSlice(const FreeComplex& C, int m, int t) : C_(&C), m_(m), t_(t) {
    // Components are listed from the top level down; combined with the
    // leftmost-pivot solver this makes canonical homotopies prefer the
    // highest-level components.
    auto [lo, hi] = level_range(C, m);
    for (int n = hi; n >= lo; --n) {
        const FreeModule& src = C.module(static_cast<std::size_t>(n));
        const FreeModule& tgt = C.module(static_cast<std::size_t>(n - m));
        for (std::size_t r = 0; r < tgt.rank(); ++r)
            for (std::size_t c = 0; c < src.rank(); ++c) {
                int e = t - src.twists[c] + tgt.twists[r];
                for (auto& mono : monomials_of_degree(C.ring()->nvars(), e))
                    coords_.push_back(Coord{n, r, c, std::move(mono)});
            }
    }
    dim_ = static_cast<long>(coords_.size());
}

std::vector<Scalar> EndSlice::vec(const EndElement& phi) const {
    require(phi.level_drop() == m_ && phi.internal_degree() == t_, "ShapeMismatch",
            "element does not live in this slice");
    std::vector<Scalar> out;
    out.reserve(coords_.size());
    for (const auto& co : coords_) {
        if (!phi.has_comp(co.n)) {
            out.push_back(Scalar::zero(C_->ring()->field));
            continue;
        }
        out.push_back(phi.comp(co.n).at(co.r, co.c).coeff(co.mono));
    }
    return out;
}

EndElement EndSlice::unvec(const std::vector<Scalar>& v) const {
    require(v.size() == coords_.size(), "ShapeMismatch", "coordinate length mismatch");
    auto [lo, hi] = level_range(*C_, m_);
    std::vector<HomMap> comps;
    for (int n = lo; n <= hi; ++n)
        comps.push_back(HomMap::zero(C_->module(static_cast<std::size_t>(n)),
                                     C_->module(static_cast<std::size_t>(n - m_)), t_));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (v[i].is_zero()) continue;
        const auto& co = coords_[i];
        HomMap& h = comps[static_cast<std::size_t>(co.n - lo)];
        h.set(co.r, co.c,
              h.at(co.r, co.c) + Poly::term(C_->ring(), co.mono, v[i]));
    }
    return EndElement(m_, t_, lo, std::move(comps));
}

Mat operator_matrix(const EndSlice& dom, const EndSlice& cod,
                    const std::function<EndElement(const EndElement&)>& op) {
    FieldSpec f = dom.complex().ring()->field;
    Mat m(f, static_cast<std::size_t>(cod.dim()), static_cast<std::size_t>(dom.dim()));
    std::vector<Scalar> e(static_cast<std::size_t>(dom.dim()), Scalar::zero(f));
    for (long j = 0; j < dom.dim(); ++j) {
        e[static_cast<std::size_t>(j)] = Scalar::one(f);
        auto col = cod.vec(op(dom.unvec(e)));
        for (long i = 0; i < cod.dim(); ++i)
            m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                col[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(j)] = Scalar::zero(f);
    }
    return m;
}

long end_cohomology_dim(const FreeComplex& C, int m, int t) {
    EndSlice below(C, m - 1, t), here(C, m, t), above(C, m + 1, t);
    auto dd = [&C](const EndElement& x) { return d_end(C, x); };
    Mat out = operator_matrix(here, above, dd);
    Mat in = operator_matrix(below, here, dd);
    return here.dim() - rank(out) - rank(in);
}

std::vector<int> end_cohomology_support(const FreeComplex& C, int m) {
    auto [lo, hi] = level_range(C, m);
    if (lo > hi) return {};
    int gmin = 0, gmax = 0;
    bool first = true;
    for (int n = lo; n <= hi; ++n) {
        const FreeModule& src = C.module(static_cast<std::size_t>(n));
        const FreeModule& tgt = C.module(static_cast<std::size_t>(n - m));
        for (std::size_t r = 0; r < tgt.rank(); ++r)
            for (std::size_t c = 0; c < src.rank(); ++c) {
                // Hom(S(s), S(u)) is the free module S(u - s), so this
                // component contributes a generator in degree s - u.
                int g = src.twists[c] - tgt.twists[r];
                if (first || g < gmin) gmin = g;
                if (first || g > gmax) gmax = g;
                first = false;
            }
    }

    std::vector<int> support;
    const int cap = gmax + 512;
    for (int t = gmin;; ++t) {
        require(t <= cap, "SupportUnbounded",
                "cohomology support does not stabilize to zero");
        EndSlice below(C, m - 1, t), here(C, m, t), above(C, m + 1, t);
        auto dd = [&C](const EndElement& x) { return d_end(C, x); };
        long rk_in = rank(operator_matrix(below, here, dd));
        long rk_out = rank(operator_matrix(here, above, dd));
        long h = here.dim() - rk_in - rk_out;
        if (h > 0) support.push_back(t);
        long coker = here.dim() - rk_in;
        // The quotient by the image is generated in degrees at most gmax, so
        // once its Hilbert function hits zero there it stays zero, and the
        // cohomology it contains is gone for good.
        if (t >= gmax && coker == 0) break;
    }
    return support;
}

std::optional<EndElement> find_nullhomotopy(const FreeComplex& C, const EndElement& phi) {
    require(is_chain_map(C, phi), "NotAChainMap",
            "nullhomotopy requested for a non-cocycle");
    EndSlice dom(C, phi.level_drop() - 1, phi.internal_degree());
    EndSlice cod(C, phi.level_drop(), phi.internal_degree());
    auto dd = [&C](const EndElement& x) { return d_end(C, x); };
    Mat m = operator_matrix(dom, cod, dd);
    auto x = solve(m, cod.vec(phi));
    if (!x) return std::nullopt;
    return dom.unvec(*x);
}

} // namespace flagforge
