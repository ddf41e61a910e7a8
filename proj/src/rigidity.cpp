#include "flagforge/rigidity.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "flagforge/error.hpp"

namespace flagforge {

namespace {

int floor_div(int a, int b) {
    // b > 0 everywhere below.
    int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

int ceil_div(int a, int b) { return floor_div(a + b - 1, b); }

long sum_over(const std::vector<int>& degrees, const std::vector<int>& subset) {
    long s = 0;
    for (int r : subset) s += degrees[static_cast<std::size_t>(r)];
    return s;
}

std::string degree_list(const std::vector<int>& degrees) {
    std::string out = "(";
    for (std::size_t r = 0; r < degrees.size(); ++r) {
        if (r) out += ",";
        out += std::to_string(degrees[r]);
    }
    return out + ")";
}

// Columns spanning the degree-j slice of the ideal, in the monomial basis
// of the ambient slice (descending graded-lex).
Mat ideal_slice(const CompleteIntersection& ci, int j) {
    const auto& ring = ci.ring;
    auto basis = monomials_of_degree(ring->nvars(), j);
    std::map<std::vector<std::int32_t>, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k].e] = k;

    std::vector<std::vector<Scalar>> cols;
    for (std::size_t r = 0; r < ci.gens.size(); ++r) {
        int rem = j - ci.degrees[r];
        if (rem < 0) continue;
        for (const auto& m : monomials_of_degree(ring->nvars(), rem)) {
            Poly prod = ci.gens[r].times_monomial(m);
            std::vector<Scalar> col(basis.size(), Scalar::zero(ring->field));
            for (const auto& term : prod.terms()) col[index.at(term.m.e)] = term.c;
            cols.push_back(std::move(col));
        }
    }
    Mat a(ring->field, basis.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < basis.size(); ++r) a.at(r, c) = cols[c][r];
    return a;
}

} // namespace

CompleteIntersection make_ci(RingPtr ring, std::vector<Poly> gens) {
    require(!gens.empty(), "ShapeMismatch", "a complete intersection needs at least one generator");
    require(gens.size() <= ring->nvars(), "ShapeMismatch",
            "more generators than variables cannot form a regular sequence");
    std::vector<int> degrees;
    for (const auto& g : gens) {
        require(*g.ring() == *ring, "RingMismatch", "generator lives in a different ring");
        auto d = g.homogeneous_degree();
        require(d.has_value() && *d >= 1, "NonHomogeneous",
                "generators must be homogeneous of positive degree");
        degrees.push_back(*d);
    }
    std::vector<std::size_t> order(gens.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return degrees[a] < degrees[b]; });
    CompleteIntersection ci;
    ci.ring = std::move(ring);
    for (std::size_t k : order) {
        ci.gens.push_back(gens[k]);
        ci.degrees.push_back(degrees[k]);
    }
    return ci;
}

CompleteIntersection make_ci_degrees(FieldSpec field, std::size_t nvars,
                                     std::vector<int> degrees) {
    validate_field(field);
    require(!degrees.empty() && degrees.size() <= nvars, "ShapeMismatch",
            "need between 1 and nvars degrees");
    for (int d : degrees)
        require(d >= 1, "ShapeMismatch", "degrees must be positive");
    std::sort(degrees.begin(), degrees.end());
    std::vector<std::string> vars;
    for (std::size_t k = 1; k <= nvars; ++k) vars.push_back("x" + std::to_string(k));
    RingPtr ring = make_ring(field, std::move(vars));
    std::vector<Poly> gens;
    for (std::size_t r = 0; r < degrees.size(); ++r)
        gens.push_back(Poly::variable(ring, r, degrees[r]));
    return make_ci(std::move(ring), std::move(gens));
}

std::vector<long> hilbert_coeffs(const CompleteIntersection& ci, int jmax) {
    if (jmax < 0) return {};
    std::size_t len = static_cast<std::size_t>(jmax) + 1;
    // Numerator prod(1 - t^d), truncated.
    std::vector<long> h(len, 0);
    h[0] = 1;
    for (int d : ci.degrees) {
        for (int k = jmax; k >= d; --k)
            h[static_cast<std::size_t>(k)] -= h[static_cast<std::size_t>(k - d)];
    }
    // Division by (1 - t)^n is an n-fold prefix sum.
    for (std::size_t pass = 0; pass < ci.ring->nvars(); ++pass)
        for (std::size_t k = 1; k < len; ++k) h[k] += h[k - 1];
    return h;
}

int socle_degree(const CompleteIntersection& ci) {
    require(ci.artinian(), "NotArtinian",
            "socle degree needs as many generators as variables");
    long s = 0;
    for (int d : ci.degrees) s += d;
    return static_cast<int>(s) - static_cast<int>(ci.ring->nvars());
}

long ci_ext_dim(const CompleteIntersection& ci, int i, int j) {
    int c = static_cast<int>(ci.codim());
    if (i < 0 || i > c) return 0;
    int maxm = j;
    {
        // Largest Hilbert degree any size-i subset can reach.
        std::vector<int> sorted = ci.degrees;
        for (int k = 0; k < i; ++k) maxm += sorted[static_cast<std::size_t>(c - 1 - k)];
    }
    if (maxm < 0) return 0;
    std::vector<long> h = hilbert_coeffs(ci, maxm);
    if (ci.artinian()) {
        int socle = socle_degree(ci);
        for (std::size_t k = 0; k < h.size(); ++k)
            if (static_cast<int>(k) > socle) h[k] = 0;
    }
    long dim = 0;
    for (const auto& J : subsets_lex(c, i)) {
        long m = j + sum_over(ci.degrees, J);
        if (m >= 0 && m <= maxm) dim += h[static_cast<std::size_t>(m)];
    }
    return dim;
}

RigidityReport is_a_rigid(const CompleteIntersection& ci, int a) {
    RigidityReport rep;
    for (int i = 2; i <= static_cast<int>(ci.codim()); ++i) {
        int j = a * (1 - i);
        long dim = ci_ext_dim(ci, i, j);
        rep.rows.push_back({i, j, dim});
        if (dim != 0) rep.rigid = false;
    }
    return rep;
}

RigidityReport is_a_rigid(const FreeComplex& anchor, int a) {
    RigidityReport rep;
    for (int i = 2; i <= static_cast<int>(anchor.length()); ++i) {
        int j = a * (1 - i);
        long dim = end_cohomology_dim(anchor, i, j);
        rep.rows.push_back({i, j, dim});
        if (dim != 0) rep.rigid = false;
    }
    return rep;
}

std::pair<int, int> rigidity_window(const CompleteIntersection& ci) {
    require(ci.artinian() && ci.ring->nvars() >= 2, "NotArtinian",
            "the window needs an Artinian quotient in at least two variables");
    std::size_t n = ci.ring->nvars();
    long total = 0;
    for (int d : ci.degrees) total += d;
    int lo = ci.degrees[0] + ci.degrees[1] + static_cast<int>(n) - static_cast<int>(total);
    int hi = ci.degrees[n - 2] + ci.degrees[n - 1];
    bool ok = !is_a_rigid(ci, lo).rigid && !is_a_rigid(ci, hi).rigid &&
              is_a_rigid(ci, lo - 1).rigid && is_a_rigid(ci, hi + 1).rigid;
    require(ok, "InvariantViolation",
            "window formula disagrees with the slice dimensions for degrees " +
                degree_list(ci.degrees));
    return {lo, hi};
}

WitnessResult nonrigidity_witness(const CompleteIntersection& ci, int a) {
    require(ci.artinian(), "NotArtinian", "witnesses need an Artinian quotient");
    const auto& ring = ci.ring;
    int socle = socle_degree(ci);
    FreeComplex K = koszul_complex(ring, ci.gens);

    for (std::size_t r = 0; r + 1 < ci.gens.size(); ++r) {
        int j = ci.degrees[r] + ci.degrees[r + 1] - a;
        if (j < 0 || j > socle) continue;

        Mat span = ideal_slice(ci, j);
        auto basis = monomials_of_degree(ring->nvars(), j);
        std::optional<Monomial> found;
        for (std::size_t k = 0; k < basis.size() && !found; ++k) {
            std::vector<Scalar> v(basis.size(), Scalar::zero(ring->field));
            v[k] = Scalar::one(ring->field);
            if (!in_column_span(span, v)) found = basis[k];
        }
        if (!found) continue;

        Poly m = Poly::term(ring, *found, Scalar::one(ring->field));
        EndElement contraction =
            koszul_contraction(K, {static_cast<int>(r), static_cast<int>(r) + 1});
        EndElement delta2 = parity_twist(contraction.poly_scaled(m), 1);

        LiftState state = LiftState(K, a).extended(delta2);
        // The contraction squares to zero on the nose, so the flag closes
        // with every higher map equal to zero.
        LiftState truncated = state;
        for (int q = 3; q <= static_cast<int>(K.length()); ++q)
            state = state.extended(end_zero(K, q, a * (1 - q)));
        state.verify();

        LiftState folded = LiftState(K, a).extended(end_zero(K, 2, -a));
        require(!find_conjugating_homotopy(folded, truncated).has_value(),
                "InvariantViolation", "witness flag collapses to the fold");

        return {static_cast<int>(r) + 1, j, m, assemble(state)};
    }
    fail("NoWitnessDegree",
         "no wedge pair reaches a standard monomial degree for a = " + std::to_string(a));
}

RigidThresholds rigid_thresholds(const FreeComplex& anchor) {
    RigidThresholds th;
    bool seen = false;
    for (int i = 2; i <= static_cast<int>(anchor.length()); ++i) {
        std::vector<int> sup = end_cohomology_support(anchor, i);
        if (sup.empty()) continue;
        int cand_plus = floor_div(-sup.front(), i - 1) + 1;
        int cand_minus = ceil_div(-sup.back(), i - 1) - 1;
        if (!seen) {
            th.a_plus = cand_plus;
            th.a_minus = cand_minus;
            seen = true;
        } else {
            th.a_plus = std::max(th.a_plus, cand_plus);
            th.a_minus = std::min(th.a_minus, cand_minus);
        }
    }
    th.always_rigid = !seen;
    return th;
}

void ExtElement::set(std::vector<int> subset, Poly coeff) {
    require(*coeff.ring() == *ring_, "RingMismatch", "coefficient lives in a different ring");
    for (std::size_t k = 0; k < subset.size(); ++k) {
        require(subset[k] >= 0 && subset[k] < c_, "ShapeMismatch",
                "subset index out of range");
        require(k == 0 || subset[k - 1] < subset[k], "ShapeMismatch",
                "subset must be strictly ascending");
    }
    if (coeff.is_zero())
        terms_.erase(subset);
    else
        terms_[std::move(subset)] = std::move(coeff);
}

Poly ExtElement::coeff(const std::vector<int>& subset) const {
    auto it = terms_.find(subset);
    return it == terms_.end() ? Poly::zero(ring_) : it->second;
}

ExtElement ExtElement::operator+(const ExtElement& o) const {
    require(*ring_ == *o.ring_ && c_ == o.c_, "RingMismatch",
            "exterior elements live over different hosts");
    ExtElement out(ring_, c_);
    out.terms_ = terms_;
    for (const auto& [subset, p] : o.terms_) {
        auto it = out.terms_.find(subset);
        Poly sum = it == out.terms_.end() ? p : it->second + p;
        if (sum.is_zero())
            out.terms_.erase(subset);
        else
            out.terms_[subset] = std::move(sum);
    }
    return out;
}

ExtElement ExtElement::operator-(const ExtElement& o) const {
    return *this + o.scaled(Scalar(ring_->field, -1));
}

ExtElement ExtElement::scaled(const Scalar& c) const {
    ExtElement out(ring_, c_);
    for (const auto& [subset, p] : terms_) {
        Poly q = p.scaled(c);
        if (!q.is_zero()) out.terms_[subset] = std::move(q);
    }
    return out;
}

bool ExtElement::operator==(const ExtElement& o) const {
    return *ring_ == *o.ring_ && c_ == o.c_ && terms_ == o.terms_;
}

ExtElement wedge(const ExtElement& a, const ExtElement& b) {
    require(*a.ring() == *b.ring() && a.generators() == b.generators(), "RingMismatch",
            "exterior elements live over different hosts");
    ExtElement out(a.ring(), a.generators());
    for (const auto& [ja, pa] : a.terms()) {
        for (const auto& [jb, pb] : b.terms()) {
            int inversions = 0;
            bool overlap = false;
            for (int x : ja)
                for (int y : jb) {
                    if (x == y) overlap = true;
                    if (x > y) ++inversions;
                }
            if (overlap) continue;
            std::vector<int> merged(ja.size() + jb.size());
            std::merge(ja.begin(), ja.end(), jb.begin(), jb.end(), merged.begin());
            Poly prod = pa * pb;
            if (inversions % 2) prod = -prod;
            Poly acc = out.coeff(merged) + prod;
            out.set(std::move(merged), std::move(acc));
        }
    }
    return out;
}

} // namespace flagforge
