#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <variant>

#include "flagforge/deform.hpp"
#include "flagforge/error.hpp"

using namespace flagforge;

static FieldSpec QQ;

static FreeComplex koszul_x1x2(const RingPtr& R) {
    return koszul_complex(R, {Poly::parse(R, "x1"), Poly::parse(R, "x2")});
}

// Stage-2 state on the two-variable Koszul complex with the given corner
// polynomial as the level-two map F_2 -> F_0.
static LiftState corner_state(const FreeComplex& K, const std::string& f) {
    HomMap top(K.module(2), K.module(0), 0);
    top.set(0, 0, Poly::parse(K.ring(), f));
    EndElement delta2(2, 0, 2, {top});
    LiftState base(K, 0);
    auto lifted = std::get<LiftState>(lift(base));
    return lifted.with_top(delta2);
}

TEST_CASE("initial state and the trivial first lift reproduce the fold") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    FreeComplex K = koszul_x1x2(R);
    LiftState s(K, 0);
    CHECK(s.stage() == 1);
    CHECK(s.delta(1) == diff_element(K));
    s.verify();

    EndElement w = obstruction(s);
    CHECK(w.is_zero());

    auto r = lift(s);
    REQUIRE(std::holds_alternative<LiftState>(r));
    const LiftState& s2 = std::get<LiftState>(r);
    CHECK(s2.stage() == 2);
    CHECK(s2.delta(2).is_zero()); // canonical choice: free variables zero

    DifferentialModule D = assemble(s2);
    DifferentialModule F = fold(K, 0);
    CHECK(D.mod.twists == F.mod.twists);
    CHECK(D.d == F.d);
    CHECK(D.flag_levels == F.flag_levels);
}

TEST_CASE("lift space over the ambient three-variable ring has a line of classes") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    LiftState s(koszul_x1x2(R), 0);
    LiftSpace ls = lift_space(s);
    CHECK(ls.stage == 1);
    REQUIRE(ls.particular.has_value());
    CHECK(ls.particular->is_zero());
    CHECK(ls.cocycles.size() == 6);     // all of Hom(F_2, F_0) in degree two
    CHECK(ls.coboundaries.size() == 5); // the multiples of x1 and x2
    CHECK(ls.quotient_dim == 1);        // the class of the x3^2 corner
}

TEST_CASE("explicit cocycle coordinates steer the lift") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    LiftState s(koszul_x1x2(R), 0);
    LiftSpace ls = lift_space(s);
    std::vector<Scalar> coords(ls.cocycles.size(), Scalar::zero(QQ));
    coords[0] = Scalar::one(QQ);
    auto r = lift(s, coords);
    REQUIRE(std::holds_alternative<LiftState>(r));
    CHECK(std::get<LiftState>(r).delta(2) == ls.cocycles[0]);

    CHECK_THROWS_WITH_AS(lift(s, {Scalar::one(QQ)}), doctest::Contains("cocycle"),
                         Error);
}

TEST_CASE("canonical conjugating homotopy for the x1*x2 corner") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    FreeComplex K = koszul_x1x2(R);
    LiftState base = std::get<LiftState>(lift(LiftState(K, 0)));
    LiftState corner = corner_state(K, "x1*x2");
    corner.verify();

    auto h = find_conjugating_homotopy(base, corner);
    REQUIRE(h.has_value());
    CHECK(h->level_drop() == 1);
    CHECK(h->internal_degree() == 0);
    CHECK(h->comp(2).rows_str() == std::vector<std::string>{"[x2]", "[0]"});
    CHECK(h->comp(1).is_zero());
    CHECK(c_plus(K, *h) == corner.delta(2) - base.delta(2));
}

TEST_CASE("conjugation certificate verifies P^-1 d P = d' for the corner flag") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    FreeComplex K = koszul_x1x2(R);
    LiftState base = std::get<LiftState>(lift(LiftState(K, 0)));
    LiftState corner = corner_state(K, "x1*x2");
    auto h = find_conjugating_homotopy(base, corner);
    REQUIRE(h.has_value());

    ConjugationCertificate cert = homotopic_lift_iso(base, corner, *h);
    CHECK(cert.verified);
    CHECK(cert.P.rows_str() == std::vector<std::string>{
                                   "[1, 0, 0, 0]",
                                   "[0, 1, 0, x2]",
                                   "[0, 0, 1, 0]",
                                   "[0, 0, 0, 1]",
                               });
    CHECK((cert.P_inv * cert.P) == HomMap::identity(cert.P.source()));
}

TEST_CASE("the x3^2 corner admits no conjugation certificate") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    FreeComplex K = koszul_x1x2(R);
    LiftState base = std::get<LiftState>(lift(LiftState(K, 0)));
    LiftState corner = corner_state(K, "x3^2");

    CHECK_FALSE(find_conjugating_homotopy(base, corner).has_value());
    EndElement zero_h = end_zero(K, 1, 0);
    CHECK_THROWS_WITH_AS(homotopic_lift_iso(base, corner, zero_h),
                         doctest::Contains("homotopy"), Error);
}

TEST_CASE("assembly guards the stage and rescale scales by level gap") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    FreeComplex K = koszul_x1x2(R);
    CHECK_THROWS_WITH_AS(assemble(LiftState(K, 0)), doctest::Contains("stage"), Error);

    DifferentialModule D = assemble(corner_state(K, "x1*x2"));
    DifferentialModule S = rescale(D, Scalar(QQ, 3));
    CHECK(S.d.at(0, 1) == D.d.at(0, 1));              // anchor blocks untouched
    CHECK(S.d.at(0, 3) == D.d.at(0, 3).scaled(Scalar(QQ, 3)));
    S.validate();

    CHECK_THROWS_WITH_AS(rescale(D, Scalar::zero(QQ)), doctest::Contains("invertible"),
                         Error);
}

TEST_CASE("exhaustive enumeration over F_2 matches the hand count") {
    auto R2 = make_ring(FieldSpec{2}, {"x", "y"});
    FreeComplex K = koszul_complex(R2, {Poly::parse(R2, "x"), Poly::parse(R2, "y")});

    auto classes2 = enumerate_flags(K, 2);
    REQUIRE(classes2.size() == 2);
    CHECK(classes2[0].multiplicity == 1);
    CHECK(classes2[1].multiplicity == 1);
    CHECK(classes2[0].state.delta(2).is_zero());
    CHECK_FALSE(classes2[1].state.delta(2).is_zero());
    DifferentialModule D1 = assemble(classes2[1].state);
    CHECK(D1.d.at(0, 3) == Poly::constant(R2, 1));

    auto classes0 = enumerate_flags(K, 0);
    REQUIRE(classes0.size() == 1);
    CHECK(classes0[0].multiplicity == 8); // all eight raw corners are homotopic
    CHECK(classes0[0].state.delta(2).is_zero());

    // Merged choices really are conjugate: any coboundary corner is
    // certified isomorphic to the representative.
    LiftSpace ls = lift_space(LiftState(K, 0));
    REQUIRE_FALSE(ls.coboundaries.empty());
    LiftState alt = LiftState(K, 0).extended(ls.coboundaries[0]);
    auto h = find_conjugating_homotopy(classes0[0].state, alt);
    REQUIRE(h.has_value());
    CHECK(homotopic_lift_iso(classes0[0].state, alt, *h).verified);
}

TEST_CASE("enumeration needs a finite field and respects the budget") {
    auto R = make_ring(QQ, {"x", "y"});
    FreeComplex K = koszul_complex(R, {Poly::parse(R, "x"), Poly::parse(R, "y")});
    CHECK_THROWS_WITH_AS(enumerate_flags(K, 0), doctest::Contains("finite"), Error);

    auto R2 = make_ring(FieldSpec{2}, {"x1", "x2", "x3", "x4"});
    FreeComplex K4 = koszul_complex(
        R2, {Poly::parse(R2, "x1"), Poly::parse(R2, "x2"), Poly::parse(R2, "x3"),
             Poly::parse(R2, "x4")});
    // At a = 2 the first stage already has a 6-dimensional class space, so a
    // tiny budget must trip before 2^6 representatives materialize.
    CHECK_THROWS_WITH_AS(enumerate_flags(K4, 2, 10), doctest::Contains("budget"),
                         Error);

    // At a = 0 every choice is homotopically trivial: one class whose
    // multiplicity counts the full coboundary space at each stage.
    auto classes = enumerate_flags(K4, 0, 1000);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].state.delta(2).is_zero());
    CHECK(classes[0].multiplicity > mpz_class(1) << 60);
    CHECK(mpz_scan1(classes[0].multiplicity.get_mpz_t(), 0) ==
          mpz_sizeinbase(classes[0].multiplicity.get_mpz_t(), 2) - 1); // a 2-power
}

TEST_CASE("dimension bounds from endomorphism cohomology") {
    auto R = make_ring(QQ, {"x", "y"});
    FreeComplex K = koszul_complex(R, {Poly::parse(R, "x"), Poly::parse(R, "y")});
    CHECK(dim_bounds(K, 2) == std::pair<long, long>{1, 1});
    CHECK(dim_bounds(K, 0) == std::pair<long, long>{0, 0});

    auto R3 = make_ring(QQ, {"x", "y", "z"});
    FreeComplex K3 = koszul_complex(
        R3, {Poly::parse(R3, "x"), Poly::parse(R3, "y"), Poly::parse(R3, "z")});
    CHECK(dim_bounds(K3, 2) == std::pair<long, long>{3, 3});
}

TEST_CASE("second-stage obstruction is a cocycle and the lift matches the published route") {
    auto R = make_ring(QQ, {"x1", "x2", "x3", "x4"});
    FreeComplex K = koszul_complex(
        R, {Poly::parse(R, "x1"), Poly::parse(R, "x2"), Poly::parse(R, "x3"),
            Poly::parse(R, "x4")});
    // A level-two map with nonzero square: contractions against e12 and e34,
    // each padded back to internal degree zero by the missing variables.
    EndElement psi = koszul_contraction(K, {0, 1}).poly_scaled(Poly::parse(R, "x3*x4")) +
                     koszul_contraction(K, {2, 3}).poly_scaled(Poly::parse(R, "x1*x2"));
    EndElement delta2 = parity_twist(psi, 1);
    LiftState s2 = LiftState(K, 0).extended(delta2);
    s2.verify();

    EndElement w = obstruction(s2);
    REQUIRE_FALSE(w.is_zero());
    CHECK(is_chain_map(K, w));
    CHECK(w.comp(4).at(0, 0) == Poly::parse(R, "-2*x1*x2*x3*x4"));

    auto r = lift(s2);
    REQUIRE(std::holds_alternative<LiftState>(r));
    const LiftState& s3 = std::get<LiftState>(r);
    s3.verify();
    auto g = find_nullhomotopy(K, w);
    REQUIRE(g.has_value());
    CHECK(s3.delta(3) == parity_twist(*g, 2));
}

TEST_CASE("flag deltas recover the maps of an assembled state") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    FreeComplex K = koszul_x1x2(R);
    LiftState s = corner_state(K, "x3^2");
    DifferentialModule D = assemble(s);

    std::vector<EndElement> ds = flag_deltas(D);
    REQUIRE(ds.size() == 2);
    CHECK(ds[0] == diff_element(K));
    CHECK(ds[1] == s.delta(2));
    CHECK(ds[1].comp(2).at(0, 0) == Poly::parse(R, "x3^2"));
}
