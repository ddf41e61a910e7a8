#include "flagforge/deform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flagforge/linalg.hpp"

namespace flagforge {

namespace {

bool same_anchor(const FreeComplex& x, const FreeComplex& y) {
    if (x.length() != y.length()) return false;
    if (x.modules() != y.modules()) return false;
    for (std::size_t i = 1; i <= x.length(); ++i)
        if (!(x.diff(i) == y.diff(i))) return false;
    return true;
}

// -sum over 2 <= j <= stage of delta_j delta_{stage+2-j}; the right hand
// side of the next lifting equation, in End^{stage+2} of internal degree
// -stage * a.
EndElement omega_raw(const LiftState& s) {
    const FreeComplex& C = s.anchor();
    EndElement w = end_zero(C, s.stage() + 2, -s.degree() * s.stage());
    for (int j = 2; j <= s.stage(); ++j)
        w = w - compose(C, s.delta(j), s.delta(s.stage() + 2 - j));
    return w;
}

// The linear system of one lifting step: candidate next maps live in the
// mid slice, the equation is c_minus(next) = omega_raw in the cod slice,
// and homotopy shifts enter through c_plus from the dom slice.
struct StepSystem {
    EndSlice dom, mid, cod;
    Mat shift_in;   // c_plus : dom -> mid
    Mat equation;   // c_minus : mid -> cod
    EndElement omega;
    std::optional<std::vector<Scalar>> particular;
};

StepSystem make_step(const LiftState& s) {
    const FreeComplex& C = s.anchor();
    const int i = s.stage();
    const int t = -s.degree() * i;
    StepSystem sys{EndSlice(C, i, t), EndSlice(C, i + 1, t), EndSlice(C, i + 2, t),
                   Mat(), Mat(), omega_raw(s), std::nullopt};
    sys.shift_in = operator_matrix(sys.dom, sys.mid,
                                   [&C](const EndElement& h) { return c_plus(C, h); });
    sys.equation = operator_matrix(sys.mid, sys.cod,
                                   [&C](const EndElement& g) { return c_minus(C, g); });
    sys.particular = solve(sys.equation, sys.cod.vec(sys.omega));
    return sys;
}

// Columns of m at its pivot positions: a basis of the column space.
std::vector<std::vector<Scalar>> image_basis(const Mat& m) {
    Mat r = m;
    std::vector<std::size_t> pivots = rref_in_place(r);
    std::vector<std::vector<Scalar>> out;
    out.reserve(pivots.size());
    for (std::size_t c : pivots) out.push_back(m.col(c));
    return out;
}

Scalar scalar_pow(const Scalar& x, int k) {
    Scalar r = Scalar::one(x.field());
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

std::vector<std::size_t> level_offsets(const FreeComplex& C) {
    std::vector<std::size_t> off(C.length() + 2, 0);
    for (std::size_t n = 0; n <= C.length(); ++n)
        off[n + 1] = off[n] + C.module(n).rank();
    return off;
}

FreeModule folded_module(const FreeComplex& C, int a) {
    FreeModule U{C.ring(), {}};
    for (std::size_t n = 0; n <= C.length(); ++n)
        for (int tw : C.module(n).twists)
            U.twists.push_back(tw + static_cast<int>(n) * a);
    return U;
}

std::vector<std::vector<std::size_t>> fold_levels(const FreeComplex& C) {
    std::vector<std::size_t> off = level_offsets(C);
    std::vector<std::vector<std::size_t>> levels(C.length() + 1);
    for (std::size_t n = 0; n <= C.length(); ++n)
        for (std::size_t g = off[n]; g < off[n + 1]; ++g) levels[n].push_back(g);
    return levels;
}

// Places the components of phi as blocks of a map U -> U on the folded
// module; the forced map degree is phi.t + phi.m * a.
HomMap place_end(const FreeComplex& C, int a, const EndElement& phi) {
    FreeModule U = folded_module(C, a);
    std::vector<std::size_t> off = level_offsets(C);
    HomMap out(U, U, phi.internal_degree() + phi.level_drop() * a);
    for (int n = phi.lo(); n <= phi.hi(); ++n) {
        const HomMap& blk = phi.comp(n);
        std::size_t rb = off[static_cast<std::size_t>(n - phi.level_drop())];
        std::size_t cb = off[static_cast<std::size_t>(n)];
        for (std::size_t r = 0; r < blk.target().rank(); ++r)
            for (std::size_t c = 0; c < blk.source().rank(); ++c)
                if (!blk.at(r, c).is_zero()) out.set(rb + r, cb + c, blk.at(r, c));
    }
    return out;
}

// Extracts the block of big mapping level lc into level lr, as a map of
// the untwisted level modules; a is the twist step of the folded module.
HomMap extract_block(const FreeComplex& C, int a, const HomMap& big, int lr, int lc) {
    std::vector<std::size_t> off = level_offsets(C);
    const FreeModule& src = C.module(static_cast<std::size_t>(lc));
    const FreeModule& tgt = C.module(static_cast<std::size_t>(lr));
    HomMap blk(src, tgt, big.map_degree() - (lc - lr) * a);
    for (std::size_t r = 0; r < tgt.rank(); ++r)
        for (std::size_t c = 0; c < src.rank(); ++c) {
            const Poly& e = big.at(off[static_cast<std::size_t>(lr)] + r,
                                   off[static_cast<std::size_t>(lc)] + c);
            if (!e.is_zero()) blk.set(r, c, e);
        }
    return blk;
}

unsigned long long checked_pow(unsigned long long base, long exp,
                               unsigned long long cap) {
    unsigned long long r = 1;
    for (long i = 0; i < exp; ++i) {
        if (r > cap / base)
            fail("BudgetExceeded",
                 "enumeration budget of " + std::to_string(cap) + " exceeded");
        r *= base;
    }
    return r;
}

} // namespace

LiftState::LiftState(FreeComplex anchor, int degree)
    : anchor_(std::move(anchor)), degree_(degree) {
    anchor_.validate();
}

EndElement LiftState::delta(int j) const {
    require(j >= 1 && j <= stage_, "InvariantViolation",
            "delta index " + std::to_string(j) + " outside [1, stage]");
    if (j == 1) return diff_element(anchor_);
    return deltas_[static_cast<std::size_t>(j - 2)];
}

LiftState LiftState::extended(EndElement next) const {
    LiftState s = *this;
    s.deltas_.push_back(std::move(next));
    s.stage_ += 1;
    return s;
}

LiftState LiftState::with_top(EndElement top) const {
    require(stage_ >= 2, "StageMismatch", "no top map to replace at stage 1");
    LiftState s = *this;
    s.deltas_.back() = std::move(top);
    return s;
}

void LiftState::verify() const {
    for (int j = 2; j <= stage_; ++j) {
        const EndElement& dj = deltas_[static_cast<std::size_t>(j - 2)];
        require(dj.level_drop() == j && dj.internal_degree() == delta_degree(j),
                "InvariantViolation",
                "delta_" + std::to_string(j) + " has the wrong bidegree");
        dj.check_homogeneous();
    }
    for (int p = 2; p <= stage_; ++p) {
        EndElement sum = end_zero(anchor_, p + 1, degree_ * (1 - p));
        for (int k = 1; k <= p; ++k)
            sum = sum + compose(anchor_, delta(k), delta(p + 1 - k));
        require(sum.is_zero(), "InvariantViolation",
                "square-zero identity fails at order " + std::to_string(p));
    }
}

EndElement obstruction(const LiftState& s) {
    s.verify();
    EndElement w = parity_twist(omega_raw(s), s.stage());
    require(is_chain_map(s.anchor(), w), "InvariantViolation",
            "obstruction class is not a cocycle");
    return w;
}

LiftSpace lift_space(const LiftState& s) {
    s.verify();
    StepSystem sys = make_step(s);
    LiftSpace out;
    out.stage = s.stage();
    if (sys.particular) out.particular = sys.mid.unvec(*sys.particular);
    Mat Z = kernel_basis(sys.equation);
    for (std::size_t c = 0; c < Z.cols(); ++c) out.cocycles.push_back(sys.mid.unvec(Z.col(c)));
    for (const auto& v : image_basis(sys.shift_in)) out.coboundaries.push_back(sys.mid.unvec(v));
    out.quotient_dim =
        static_cast<long>(out.cocycles.size()) - static_cast<long>(out.coboundaries.size());
    long h = end_cohomology_dim(s.anchor(), s.stage() + 1, -s.degree() * s.stage());
    require(out.quotient_dim == h, "InvariantViolation",
            "lift space dimension disagrees with endomorphism cohomology");
    return out;
}

LiftResult lift(const LiftState& s, const std::vector<Scalar>& cocycle_coords) {
    s.verify();
    StepSystem sys = make_step(s);
    if (!sys.particular) {
        Mat aug(sys.equation.field(), sys.equation.rows(), sys.equation.cols() + 1);
        std::vector<Scalar> b = sys.cod.vec(sys.omega);
        for (std::size_t r = 0; r < sys.equation.rows(); ++r) {
            for (std::size_t c = 0; c < sys.equation.cols(); ++c)
                aug.at(r, c) = sys.equation.at(r, c);
            aug.at(r, sys.equation.cols()) = b[r];
        }
        std::ostringstream cert;
        cert << "stage " << s.stage() << " equation in End^" << (s.stage() + 1)
             << " slice of dimension " << sys.mid.dim() << ": rank " << rank(sys.equation)
             << " < augmented rank " << rank(aug)
             << ", so the obstruction class is nonzero";
        return Obstructed{s.stage(), -s.degree() * s.stage(), cert.str()};
    }
    EndElement next = sys.mid.unvec(*sys.particular);
    if (!cocycle_coords.empty()) {
        Mat Z = kernel_basis(sys.equation);
        require(cocycle_coords.size() == Z.cols(), "ShapeMismatch",
                "expected " + std::to_string(Z.cols()) + " cocycle coordinates");
        for (std::size_t k = 0; k < Z.cols(); ++k)
            next = next + sys.mid.unvec(Z.col(k)).scaled(cocycle_coords[k]);
    }
    LiftState out = s.extended(std::move(next));
    out.verify();
    return out;
}

ConjugationCertificate homotopic_lift_iso(const LiftState& s, const LiftState& s2,
                                          const EndElement& h) {
    require(same_anchor(s.anchor(), s2.anchor()) && s.degree() == s2.degree(),
            "ShapeMismatch", "states live over different anchors");
    require(s.stage() == s2.stage() && s.stage() >= 2, "StageMismatch",
            "certificates compare equal stages of at least 2");
    const int i = s.stage();
    for (int j = 2; j < i; ++j)
        require(s.delta(j) == s2.delta(j), "ShapeMismatch",
                "states must agree below the top map");
    const FreeComplex& C = s.anchor();
    const int a = s.degree();
    require(h.level_drop() == i - 1 && h.internal_degree() == a * (1 - i),
            "HomotopyInvalid", "homotopy has the wrong bidegree");
    h.check_homogeneous();
    EndElement want = s2.delta(i) - s.delta(i);
    require(c_plus(C, h) == want, "HomotopyInvalid",
            "homotopy does not connect the two top maps");

    FreeModule U = folded_module(C, a);
    HomMap H = place_end(C, a, h);
    HomMap P = HomMap::identity(U) + H;
    HomMap Pinv = HomMap::identity(U);
    HomMap term = H;
    Scalar sign = -Scalar::one(C.ring()->field);
    while (!term.is_zero()) {
        Pinv = Pinv + term.scaled(sign);
        term = term * H;
        sign = -sign;
    }
    require((Pinv * P) == HomMap::identity(U), "InvariantViolation",
            "inverse of the conjugating map failed");

    auto flag_matrix = [&](const LiftState& st) {
        HomMap d(U, U, a);
        for (int q = 1; q <= st.stage(); ++q) d = d + place_end(C, a, st.delta(q));
        return d;
    };
    HomMap conj = Pinv * (flag_matrix(s) * P);
    HomMap target = flag_matrix(s2);
    int len = static_cast<int>(C.length());
    for (int lc = 0; lc <= len; ++lc)
        for (int lr = 0; lr <= len; ++lr) {
            int drop = lc - lr;
            if (drop > i) continue; // above the stage nothing is pinned yet
            bool ok = extract_block(C, a, conj, lr, lc) == extract_block(C, a, target, lr, lc);
            require(ok, "InvariantViolation", "conjugation identity fails on block (" +
                                                  std::to_string(lr) + ", " +
                                                  std::to_string(lc) + ")");
        }
    return ConjugationCertificate{P, Pinv, true};
}

std::optional<EndElement> find_conjugating_homotopy(const LiftState& s,
                                                    const LiftState& s2) {
    require(same_anchor(s.anchor(), s2.anchor()) && s.degree() == s2.degree(),
            "ShapeMismatch", "states live over different anchors");
    require(s.stage() == s2.stage() && s.stage() >= 2, "StageMismatch",
            "homotopies compare equal stages of at least 2");
    const int i = s.stage();
    for (int j = 2; j < i; ++j)
        require(s.delta(j) == s2.delta(j), "ShapeMismatch",
                "states must agree below the top map");
    const FreeComplex& C = s.anchor();
    const int t = s.degree() * (1 - i);
    EndSlice dom(C, i - 1, t), cod(C, i, t);
    Mat M = operator_matrix(dom, cod, [&C](const EndElement& g) { return c_plus(C, g); });
    auto x = solve(M, cod.vec(s2.delta(i) - s.delta(i)));
    if (!x) return std::nullopt;
    return dom.unvec(*x);
}

DifferentialModule assemble(const LiftState& s) {
    s.verify();
    const FreeComplex& C = s.anchor();
    int want = std::max<int>(1, static_cast<int>(C.length()));
    require(s.stage() == want, "StageMismatch",
            "assembly needs a fully lifted state (stage " + std::to_string(want) + ")");
    const int a = s.degree();
    FreeModule U = folded_module(C, a);
    HomMap d(U, U, a);
    if (C.length() >= 1)
        for (int q = 1; q <= s.stage(); ++q) d = d + place_end(C, a, s.delta(q));
    DifferentialModule D{U, a, d, fold_levels(C)};
    D.validate();
    FreeComplex back = validate_flag(D);
    require(same_anchor(back, C), "InvariantViolation",
            "assembled flag does not recover its anchor");
    return D;
}

std::vector<EndElement> flag_deltas(const DifferentialModule& D) {
    FreeComplex C = validate_flag(D);
    std::vector<EndElement> out;
    for (int j = 1; j <= static_cast<int>(C.length()); ++j) {
        std::vector<HomMap> comps;
        for (int n = j; n <= static_cast<int>(C.length()); ++n)
            comps.push_back(extract_block(C, D.degree, D.d, n - j, n));
        out.push_back(EndElement(j, D.degree * (1 - j), j, std::move(comps)));
    }
    return out;
}

DifferentialModule rescale(const DifferentialModule& D, const Scalar& lambda) {
    require(!lambda.is_zero(), "DivisionByZero", "rescale needs an invertible scalar");
    FreeComplex C = validate_flag(D);
    std::vector<std::size_t> off = level_offsets(C);
    const std::size_t levels = C.length() + 1;
    std::vector<int> level_of(D.mod.rank());
    for (std::size_t n = 0; n < levels; ++n)
        for (std::size_t g = off[n]; g < off[n + 1]; ++g) level_of[g] = static_cast<int>(n);
    HomMap d(D.mod, D.mod, D.degree);
    for (std::size_t r = 0; r < D.mod.rank(); ++r)
        for (std::size_t c = 0; c < D.mod.rank(); ++c) {
            const Poly& e = D.d.at(r, c);
            if (e.is_zero()) continue;
            int drop = level_of[c] - level_of[r];
            d.set(r, c, e.scaled(scalar_pow(lambda, drop - 1)));
        }
    DifferentialModule out{D.mod, D.degree, d, D.flag_levels};
    out.validate();
    return out;
}

std::vector<FlagClass> enumerate_flags(const FreeComplex& anchor, int a,
                                       unsigned long long budget) {
    require(!anchor.ring()->field.is_rational(), "FieldNotFinite",
            "exhaustive enumeration needs a finite coefficient field");
    anchor.validate();
    const unsigned long long p = anchor.ring()->field.p;
    std::vector<FlagClass> classes{FlagClass{LiftState(anchor, a), 1}};
    unsigned long long materialized = 0;
    const int len = static_cast<int>(anchor.length());
    for (int stage = 1; stage < len; ++stage) {
        std::vector<FlagClass> next;
        for (const FlagClass& cls : classes) {
            StepSystem sys = make_step(cls.state);
            require(static_cast<unsigned long long>(sys.mid.dim()) <= budget,
                    "BudgetExceeded",
                    "enumeration budget of " + std::to_string(budget) +
                        " exceeded by a slice dimension");
            if (!sys.particular) continue; // this branch is obstructed
            EndElement base = sys.mid.unvec(*sys.particular);
            Mat Z = kernel_basis(sys.equation);
            auto img = image_basis(sys.shift_in);
            Mat B(sys.equation.field(), static_cast<std::size_t>(sys.mid.dim()), img.size());
            for (std::size_t c = 0; c < img.size(); ++c) B.set_col(c, img[c]);
            std::vector<std::size_t> free_cols = extend_basis(B, Z);
            const long q = static_cast<long>(free_cols.size());
            const unsigned long merged = Z.cols() - free_cols.size();
            unsigned long long reps = checked_pow(p, q, budget);
            require(materialized <= budget && reps <= budget - materialized,
                    "BudgetExceeded",
                    "enumeration budget of " + std::to_string(budget) + " exceeded");
            materialized += reps;
            mpz_class weight;
            mpz_ui_pow_ui(weight.get_mpz_t(), static_cast<unsigned long>(p), merged);
            std::vector<unsigned long long> combo(static_cast<std::size_t>(q), 0);
            while (true) {
                EndElement delta = base;
                for (long k = 0; k < q; ++k)
                    if (combo[static_cast<std::size_t>(k)] != 0)
                        delta = delta + sys.mid.unvec(Z.col(free_cols[static_cast<std::size_t>(k)]))
                                            .scaled(Scalar(anchor.ring()->field,
                                                           static_cast<long long>(
                                                               combo[static_cast<std::size_t>(k)])));
                LiftState ext = cls.state.extended(std::move(delta));
                ext.verify();
                next.push_back(FlagClass{std::move(ext), cls.multiplicity * weight});
                long k = q - 1;
                while (k >= 0 && combo[static_cast<std::size_t>(k)] == p - 1) {
                    combo[static_cast<std::size_t>(k)] = 0;
                    --k;
                }
                if (k < 0) break;
                combo[static_cast<std::size_t>(k)] += 1;
            }
        }
        classes = std::move(next);
    }
    return classes;
}

std::pair<long, long> dim_bounds(const FreeComplex& C, int a) {
    const int len = static_cast<int>(C.length());
    long upper = 0;
    for (int i = 2; i <= len; ++i) upper += end_cohomology_dim(C, i, a * (1 - i));
    long correction = 0;
    for (int i = 4; i <= len; ++i) correction += end_cohomology_dim(C, i, a * (2 - i));
    long lower = std::max<long>(0, upper - correction);
    return {lower, upper};
}

} // namespace flagforge
