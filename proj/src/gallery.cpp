#include "flagforge/gallery.hpp"

#include <bit>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "flagforge/betti.hpp"
#include "flagforge/deform.hpp"
#include "flagforge/error.hpp"
#include "flagforge/pfaffian.hpp"
#include "flagforge/rigidity.hpp"

namespace flagforge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure messages; a criterion passes when none accumulated.
struct Check {
    bool ok = true;
    std::string first;

    void expect(bool cond, const std::string& msg) {
        if (cond) return;
        ok = false;
        if (first.empty()) first = msg;
    }
};

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << s << " s";
    return os.str();
}

const FieldSpec kRationals{};

std::vector<Poly> variable_gens(const RingPtr& ring) {
    std::vector<Poly> g;
    for (std::size_t i = 0; i < ring->nvars(); ++i) g.push_back(Poly::variable(ring, i));
    return g;
}

long anchor_h0_dim(const FreeComplex& K, int j) {
    long full = slice_dim(K.module(0), j);
    if (K.length() == 0) return full;
    return full - static_cast<long>(rank(K.diff(1).slice_matrix(j)));
}

void criterion_1(CriterionResult& r) {
    CompleteIntersection ci = make_ci_degrees(kRationals, 5, {2, 2, 5, 7, 9});
    auto [lo, hi] = rigidity_window(ci);
    Check c;
    {
        std::ostringstream os;
        os << "window came out [" << lo << ", " << hi << "]";
        c.expect(lo == -16 && hi == 16, os.str());
    }
    int agreed = 0;
    for (int a = -18; a <= 18; ++a) {
        bool inside = a >= -16 && a <= 16;
        if (is_a_rigid(ci, a).rigid == !inside) {
            ++agreed;
        } else {
            c.expect(false, "pointwise rigidity disagrees at a = " + std::to_string(a));
        }
    }
    r.passed = c.ok;
    r.detail = c.ok ? "non-rigid interval [-16, 16], pointwise agreement at all 37 degrees"
                    : c.first;
}

void criterion_2(CriterionResult& r) {
    CompleteIntersection ci = make_ci_degrees(kRationals, 3, {1, 1, 1});
    Check c;
    for (int a = -10; a <= 10; ++a)
        c.expect(is_a_rigid(ci, a).rigid == (a != 2),
                 "linear quotient rigidity wrong at a = " + std::to_string(a));
    r.passed = c.ok;
    r.detail = c.ok ? "rigid exactly away from a = 2 on [-10, 10]" : c.first;
}

void criterion_3(CriterionResult& r) {
    struct Input {
        std::size_t n;
        std::vector<int> degs;
    };
    const std::vector<Input> inputs = {{2, {1, 1}}, {2, {2, 2}}, {3, {2, 2, 3}}};
    Check c;
    int compared = 0;
    for (const auto& in : inputs) {
        CompleteIntersection ci = make_ci_degrees(kRationals, in.n, in.degs);
        FreeComplex K = koszul_complex(ci.ring, ci.gens);
        int total = 0;
        for (int d : in.degs) total += d;
        for (int i = 2; i <= static_cast<int>(in.n); ++i)
            for (int j = -(total + 2); j <= 2; ++j) {
                ++compared;
                long lhs = ci_ext_dim(ci, i, j);
                long rhs = end_cohomology_dim(K, i, j);
                if (lhs != rhs) {
                    std::ostringstream os;
                    os << "codim " << in.n << " case disagrees at (i, j) = (" << i << ", " << j
                       << "): " << lhs << " vs " << rhs;
                    c.expect(false, os.str());
                }
            }
    }
    r.passed = c.ok;
    r.detail = c.ok ? "both Ext computations agree on all " + std::to_string(compared) +
                          " slices"
                    : c.first;
}

void criterion_4(CriterionResult& r, const GalleryOptions& opt) {
    Check c;

    // Exhaustive sweep over F2: every stage-2 state within the budget cap,
    // walked in Gray-code order so each step toggles one basis cocycle.
    FieldSpec f2{2};
    auto R2 = make_ring(f2, {"x1", "x2", "x3", "x4"});
    FreeComplex K2 = koszul_complex(R2, variable_gens(R2));
    LiftState base(K2, 0);
    LiftSpace space = lift_space(base);
    int k = 0;
    while (k < static_cast<int>(space.cocycles.size()) &&
           (1LL << (k + 1)) <= static_cast<long long>(opt.sweep_cap))
        ++k;
    long long states = 1LL << k;
    EndElement cur = end_zero(K2, 2, 0);
    for (long long s = 0; s < states && c.ok; ++s) {
        if (s > 0) {
            int bit = std::countr_zero(static_cast<unsigned long long>(s));
            cur = cur + space.cocycles[static_cast<std::size_t>(bit)];
        }
        LiftState st = base.extended(cur);
        EndElement w = obstruction(st);
        c.expect(is_chain_map(K2, w),
                 "sweep state " + std::to_string(s) + " has a non-cocycle obstruction");
    }

    // Randomized rational cases: anchors are Koszul complexes on random pure
    // powers, delta_2 a random combination of twisted scaled contractions and
    // a shifted homotopy, both closed for the anchor bracket by construction.
    std::mt19937 rng(opt.seed);
    auto Rq = make_ring(kRationals, {"x1", "x2", "x3", "x4"});
    int randomized = 0;
    for (int t = 0; t < 100 && c.ok; ++t) {
        std::vector<int> degs(4);
        for (int& d : degs) d = 1 + static_cast<int>(rng() % 3);
        int a = static_cast<int>(rng() % 4) - 1;
        std::vector<Poly> gens;
        for (std::size_t i = 0; i < 4; ++i)
            gens.push_back(Poly::variable(Rq, i, degs[i]));
        FreeComplex K = koszul_complex(Rq, gens);

        EndElement delta2 = end_zero(K, 2, -a);
        for (const auto& J : subsets_lex(4, 2)) {
            if (rng() % 2) continue;
            int need = degs[J[0]] + degs[J[1]] - a;
            if (need < 0) continue;
            auto monos = monomials_of_degree(4, need);
            Poly m = Poly::term(Rq, monos[rng() % monos.size()],
                                Scalar(kRationals, 1 + static_cast<int>(rng() % 3)));
            delta2 = delta2 + parity_twist(koszul_contraction(K, J).poly_scaled(m), 1);
        }
        EndSlice hs(K, 1, -a);
        if (hs.dim() > 0) {
            std::vector<Scalar> coords(static_cast<std::size_t>(hs.dim()),
                                       Scalar(kRationals));
            for (Scalar& v : coords)
                if (rng() % 3 == 0)
                    v = Scalar(kRationals, static_cast<int>(rng() % 5) - 2);
            delta2 = delta2 + c_plus(K, hs.unvec(coords));
        }

        LiftState st = LiftState(K, a).extended(delta2);
        EndElement w = obstruction(st);
        c.expect(is_chain_map(K, w),
                 "randomized case " + std::to_string(t) + " has a non-cocycle obstruction");
        ++randomized;
    }

    r.passed = c.ok;
    if (c.ok) {
        std::ostringstream os;
        os << states << " F2 states swept (cocycle slice rank "
           << space.cocycles.size() << "), " << randomized << " rational cases";
        r.detail = os.str();
    } else {
        r.detail = c.first;
    }
}

void criterion_5(CriterionResult& r) {
    auto R = make_ring(kRationals, {"x1", "x2", "x3"});
    FreeComplex K = koszul_complex(R, {Poly::variable(R, 0), Poly::variable(R, 1)});

    // Corner family: the only free choice of a degree-0 flag on this anchor
    // is the entry F_2 -> F_0, filled with a quadric g.
    auto corner_state = [&](const Poly& g) {
        HomMap block(K.module(2), K.module(0), 0);
        block.set(0, 0, g);
        return LiftState(K, 0).extended(EndElement(2, 0, 2, {block}));
    };
    LiftState fold_state = corner_state(Poly::zero(R));
    LiftState in_ideal = corner_state(Poly::parse(R, "x1*x2"));
    LiftState off_ideal = corner_state(Poly::parse(R, "x3^2"));

    Check c;
    auto h_found = find_conjugating_homotopy(fold_state, in_ideal);
    c.expect(h_found.has_value(), "no homotopy found for the x1*x2 corner");

    // The published homotopy: (x2, 0) transposed into F_2 -> F_1, zero on
    // F_1 -> F_0.
    HomMap h2(K.module(2), K.module(1), 0);
    h2.set(0, 0, Poly::variable(R, 1));
    EndElement h(1, 0, 1, {HomMap::zero(K.module(1), K.module(0), 0), h2});
    if (c.ok) {
        ConjugationCertificate cert = homotopic_lift_iso(fold_state, in_ideal, h);
        c.expect(cert.verified, "conjugation certificate failed to verify");
    }

    c.expect(!find_conjugating_homotopy(fold_state, off_ideal).has_value(),
             "the x3^2 corner unexpectedly admits a certificate");

    r.passed = c.ok;
    r.detail = c.ok ? "x1*x2 corner certified isomorphic to the fold, x3^2 corner refused"
                    : c.first;
}

void criterion_6(CriterionResult& r, std::vector<DifferentialModule>& pool) {
    CompleteIntersection ci = make_ci_degrees(kRationals, 3, {2, 2, 3});
    std::vector<long> hf = hilbert_coeffs(ci, 6);
    Check c;
    for (int a = 0; a <= 5 && c.ok; ++a) {
        WitnessResult w = nonrigidity_witness(ci, a);
        w.flag.validate();
        FreeComplex K = validate_flag(w.flag);

        std::map<int, long> hh = homology_hilbert(w.flag, 0, 6);
        for (int j = 0; j <= 6; ++j)
            c.expect(hh.at(j) == hf[static_cast<std::size_t>(j)],
                     "witness a = " + std::to_string(a) +
                         " homology differs from S/I at degree " + std::to_string(j));

        std::vector<EndElement> ds = flag_deltas(w.flag);
        LiftState truncated = LiftState(K, a).extended(ds[1]);
        LiftState folded = LiftState(K, a).extended(end_zero(K, 2, -a));
        c.expect(!find_conjugating_homotopy(truncated, folded).has_value(),
                 "witness a = " + std::to_string(a) + " collapses to the fold");

        pool.push_back(w.flag);
    }
    r.passed = c.ok;
    r.detail = c.ok ? "six witness flags: square zero, homology matches S/I, none conjugate "
                      "to the fold"
                    : c.first;
}

void criterion_7(CriterionResult& r) {
    auto R2 = make_ring(kRationals, {"x", "y"});
    FreeComplex K2 = koszul_complex(R2, variable_gens(R2));
    auto R3 = make_ring(kRationals, {"x", "y", "z"});
    FreeComplex K3 = koszul_complex(R3, variable_gens(R3));
    Check c;
    c.expect(dim_bounds(K2, 2) == std::pair<long, long>{1, 1},
             "bounds for the two variable anchor at a = 2 are not (1, 1)");
    c.expect(dim_bounds(K2, 0) == std::pair<long, long>{0, 0},
             "bounds for the two variable anchor at a = 0 are not (0, 0)");
    c.expect(dim_bounds(K3, 2) == std::pair<long, long>{3, 3},
             "bounds for the three variable anchor at a = 2 are not (3, 3)");
    r.passed = c.ok;
    r.detail = c.ok ? "exact bounds (1,1), (0,0), (3,3)" : c.first;
}

void criterion_8(CriterionResult& r, const GalleryOptions& opt,
                 std::vector<DifferentialModule>& pool) {
    auto t0 = Clock::now();
    FieldSpec f2{2};
    auto R = make_ring(f2, {"x", "y"});
    FreeComplex K = koszul_complex(R, variable_gens(R));
    std::vector<FlagClass> at2 = enumerate_flags(K, 2, opt.budget);
    std::vector<FlagClass> at0 = enumerate_flags(K, 0, opt.budget);
    double sec = seconds_since(t0);

    Check c;
    c.expect(at2.size() == 2,
             "a = 2 produced " + std::to_string(at2.size()) + " classes, expected 2");
    c.expect(at0.size() == 1,
             "a = 0 produced " + std::to_string(at0.size()) + " classes, expected 1");
    c.expect(sec < 5.0, "enumeration took " + fmt_seconds(sec));
    if (c.ok) {
        for (const FlagClass& cls : at2) pool.push_back(assemble(cls.state));
        for (const FlagClass& cls : at0) pool.push_back(assemble(cls.state));
    }
    r.passed = c.ok;
    r.detail = c.ok ? "2 classes at a = 2, 1 class at a = 0, " + fmt_seconds(sec) : c.first;
}

void criterion_9(CriterionResult& r) {
    auto R = make_ring(kRationals, {"x", "y"});
    FreeComplex K = koszul_complex(R, variable_gens(R));
    HomMap block(K.module(2), K.module(0), -2);
    block.set(0, 0, Poly::constant(R, 1));
    DifferentialModule D = assemble(LiftState(K, 2).extended(EndElement(2, -2, 2, {block})));

    Check c;
    auto [Dm, record] = minimize(D);
    long fold_total = betti_table(K).total();
    c.expect(record.total() == 2, "minimized flag has " + std::to_string(record.total()) +
                                      " generators, expected 2");
    c.expect(fold_total == 4, "resolution Betti total is not 4");

    auto [lo, hi] = default_window(D);
    c.expect(homology_hilbert(D, lo, hi) == homology_hilbert(Dm, lo, hi),
             "minimization changed the homology Hilbert function");

    std::vector<SlopePair> pairs = slope_pairs(betti_table(K), 2);
    c.expect(pairs == std::vector<SlopePair>{{2, 2, 0, 0, 2}},
             "slope pairs at a = 2 are not exactly ((2,2),(0,0))");
    c.expect(ci_deficiency_degrees({1, 1}) == std::set<int>{2},
             "deficiency degrees of (1,1) are not {2}");

    r.passed = c.ok;
    r.detail = c.ok ? "total Betti drops 4 -> 2 with homology intact; table criteria match"
                    : c.first;
}

void criterion_10(CriterionResult& r, const GalleryOptions& opt) {
    std::mt19937 rng(opt.seed + 1);
    Check c;
    int tested = 0;
    for (int t = 0; t < 500 && c.ok; ++t) {
        int len = 2 + static_cast<int>(rng() % 7);
        std::set<int> vals;
        while (static_cast<int>(vals.size()) < len)
            vals.insert(static_cast<int>(rng() % 41));
        std::vector<int> seq(vals.begin(), vals.end());
        std::set<int> degs = pure_deficiency_degrees(seq);
        c.expect(degs.count(0) == 0, "sequence " + std::to_string(t) + " reported degree 0");
        ++tested;
    }
    r.passed = c.ok;
    r.detail = c.ok ? std::to_string(tested) + " random strictly increasing sequences, "
                      "degree 0 never admitted"
                    : c.first;
}

void criterion_11(CriterionResult& r) {
    auto t0 = Clock::now();
    auto R = make_ring(kRationals, {"x12", "x13", "x14", "x15", "x23", "x24", "x25", "x34",
                                    "x35", "x45"});
    PfaffianData P = pfaffian_resolution(R);
    CurvedModule D = curved_pfaffian(R);

    Check c;
    std::optional<Poly> f = curvature(D.d);
    c.expect(f.has_value() && *f == P.pf[0], "curvature is not the first pfaffian");
    c.expect(D.f == P.pf[0], "stored curvature disagrees with the first pfaffian");

    auto [A, B] = matrix_factorization(D);
    c.expect(A * B == HomMap::identity(A.target()).poly_scaled(P.pf[0]),
             "A B is not Pf_1 times the identity");
    c.expect(B * A == HomMap::identity(B.target()).poly_scaled(P.pf[0]),
             "B A is not Pf_1 times the identity");
    double sec = seconds_since(t0);
    c.expect(sec < 30.0, "construction took " + fmt_seconds(sec));

    r.passed = c.ok;
    r.detail = c.ok ? "curvature Pf_1, factorization verified symbolically, " + fmt_seconds(sec)
                    : c.first;
}

void criterion_12(CriterionResult& r) {
    auto R = make_ring(kRationals, {"x1", "x2", "x3", "x4"});
    Poly X = Poly::parse(R, "x1*x2*x3*x4");

    ExtElement f1(R, 4), f2(R, 4), f3(R, 4);
    for (int i = 0; i < 4; ++i) f1.set({i}, Poly::variable(R, static_cast<std::size_t>(i)));
    f2.set({0, 1}, X);
    f2.set({2, 3}, X);
    f3.set({1, 2, 3}, X * Poly::parse(R, "x2*x3*x4"));
    f3.set({0, 2, 3}, -(X * Poly::parse(R, "x1*x3*x4")));
    f3.set({0, 1, 3}, X * Poly::parse(R, "x1*x2*x4"));
    f3.set({0, 1, 2}, -(X * Poly::parse(R, "x1*x2*x3")));

    ExtElement sq = wedge(f2, f2);
    ExtElement two_top(R, 4);
    two_top.set({0, 1, 2, 3}, X * X * Poly::constant(R, 2));
    ExtElement bracket = wedge(f1, f3) - wedge(f3, f1);
    ExtElement anti = wedge(f2, f3) + wedge(f3, f2);

    Check c;
    c.expect(sq == two_top, "f2^2 is not 2 X^2 e1234");
    c.expect(bracket == sq, "f1 f3 - f3 f1 is not f2^2; it equals " +
                                bracket.coeff({0, 1, 2, 3}).str() +
                                " on e1234, which is 4 f2^2");
    c.expect(anti.is_zero(), "f2 f3 + f3 f2 is not zero");

    r.passed = c.ok;
    r.detail = c.ok ? "all three exterior identities hold" : c.first;
}

void criterion_13(CriterionResult& r, const std::vector<DifferentialModule>& pool) {
    Check c;
    c.expect(!pool.empty(), "no flags were collected from the earlier criteria");
    int verified = 0;
    for (const DifferentialModule& D : pool) {
        if (!c.ok) break;
        FreeComplex K = validate_flag(D);
        auto [lo, hi] = default_window(D);
        std::map<int, long> hh = homology_hilbert(D, lo, hi);
        for (int j = lo; j <= hi; ++j)
            c.expect(hh.at(j) == anchor_h0_dim(K, j),
                     "flag " + std::to_string(verified) +
                         " homology differs from the anchor cokernel at degree " +
                         std::to_string(j));
        ++verified;
    }
    r.passed = c.ok;
    r.detail = c.ok ? std::to_string(verified) +
                          " flags match their anchor cokernel on the default window"
                    : c.first;
}

} // namespace

std::vector<CriterionResult> run_gallery(const GalleryOptions& opt) {
    std::vector<CriterionResult> out;
    std::vector<DifferentialModule> pool;

    auto run = [&out](int number, const std::string& name, auto&& body) {
        CriterionResult r;
        r.number = number;
        r.name = name;
        try {
            body(r);
        } catch (const Error& e) {
            r.passed = false;
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    };

    run(1, "rigidity window for degrees (2,2,5,7,9)", [&](CriterionResult& r) { criterion_1(r); });
    run(2, "linear quotient rigid away from a = 2", [&](CriterionResult& r) { criterion_2(r); });
    run(3, "Ext dimensions by two independent computations",
        [&](CriterionResult& r) { criterion_3(r); });
    run(4, "obstructions are cocycles across stage-2 states",
        [&](CriterionResult& r) { criterion_4(r, opt); });
    run(5, "conjugation certificates for the corner family",
        [&](CriterionResult& r) { criterion_5(r); });
    run(6, "witness gallery for the (2,2,3) quotient",
        [&](CriterionResult& r) { criterion_6(r, pool); });
    run(7, "flag dimension bounds", [&](CriterionResult& r) { criterion_7(r); });
    run(8, "finite field enumeration class counts",
        [&](CriterionResult& r) { criterion_8(r, opt, pool); });
    run(9, "Betti deficiency of the degree-2 corner flag",
        [&](CriterionResult& r) { criterion_9(r); });
    run(10, "pure twist sequences never shed generators at degree 0",
        [&](CriterionResult& r) { criterion_10(r, opt); });
    run(11, "curved pfaffian module and its matrix factorization",
        [&](CriterionResult& r) { criterion_11(r); });
    run(12, "quartic exterior algebra identities", [&](CriterionResult& r) { criterion_12(r); });
    run(13, "homology Hilbert stability across all collected flags",
        [&](CriterionResult& r) { criterion_13(r, pool); });

    return out;
}

std::string format_gallery_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.number << "  " << r.name;
    if (!r.detail.empty()) os << ": " << r.detail;
    return os.str();
}

} // namespace flagforge
