#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "flagforge/error.hpp"
#include "flagforge/rigidity.hpp"

using namespace flagforge;

static FieldSpec QQ;

static CompleteIntersection two_squares() {
    auto R = make_ring(QQ, {"x1", "x2"});
    return make_ci(R, {Poly::parse(R, "x1^2"), Poly::parse(R, "x2^2")});
}

static CompleteIntersection mixed_223() {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    return make_ci(R, {Poly::parse(R, "x3^3"), Poly::parse(R, "x1^2"),
                       Poly::parse(R, "x2^2")});
}

TEST_CASE("construction sorts by degree and rejects bad input") {
    CompleteIntersection ci = mixed_223();
    CHECK(ci.degrees == std::vector<int>{2, 2, 3});
    CHECK(ci.gens[2].str() == "x3^3");
    CHECK(ci.artinian());

    auto R = make_ring(QQ, {"x1", "x2"});
    CHECK_THROWS_WITH_AS(make_ci(R, {Poly::parse(R, "x1^2+x2")}),
                         doctest::Contains("homogeneous"), Error);
    CHECK_THROWS_WITH_AS(
        make_ci(R, {Poly::parse(R, "x1"), Poly::parse(R, "x2"), Poly::parse(R, "x1+x2")}),
        doctest::Contains("regular sequence"), Error);
    CHECK_THROWS_WITH_AS(make_ci_degrees(QQ, 2, {2, 0}), doctest::Contains("positive"),
                         Error);

    CompleteIntersection big = make_ci_degrees(QQ, 5, {9, 2, 7, 2, 5});
    CHECK(big.degrees == std::vector<int>{2, 2, 5, 7, 9});
    CHECK(big.gens[4].str() == "x5^9");
}

TEST_CASE("hilbert coefficients of small quotients") {
    CHECK(hilbert_coeffs(two_squares(), 5) == std::vector<long>{1, 2, 1, 0, 0, 0});
    CHECK(hilbert_coeffs(mixed_223(), 6) == std::vector<long>{1, 3, 4, 3, 1, 0, 0});

    auto R = make_ring(QQ, {"x1", "x2"});
    CompleteIntersection hyper = make_ci(R, {Poly::parse(R, "x1^2")});
    CHECK(hilbert_coeffs(hyper, 4) == std::vector<long>{1, 2, 2, 2, 2});
    CHECK_THROWS_WITH_AS(socle_degree(hyper), doctest::Contains("Artinian"), Error);
}

TEST_CASE("socle degrees") {
    CHECK(socle_degree(two_squares()) == 2);
    CHECK(socle_degree(mixed_223()) == 4);
    CHECK(socle_degree(make_ci_degrees(QQ, 5, {2, 2, 5, 7, 9})) == 20);
    CHECK(socle_degree(make_ci_degrees(QQ, 3, {1, 1, 1})) == 0);
}

TEST_CASE("ext dimensions by the subset formula") {
    CompleteIntersection lin = make_ci_degrees(QQ, 2, {1, 1});
    CHECK(ci_ext_dim(lin, 2, -2) == 1);
    CHECK(ci_ext_dim(lin, 2, -1) == 0);
    CHECK(ci_ext_dim(lin, 2, -3) == 0);
    CHECK(ci_ext_dim(lin, 2, 0) == 0);

    CompleteIntersection sq = two_squares();
    CHECK(ci_ext_dim(sq, 2, -4) == 1);
    CHECK(ci_ext_dim(sq, 2, -3) == 2);
    CHECK(ci_ext_dim(sq, 2, -2) == 1);
    CHECK(ci_ext_dim(sq, 2, -1) == 0);
    CHECK(ci_ext_dim(sq, 2, -5) == 0);
    CHECK(ci_ext_dim(sq, 0, 0) == 1);
    CHECK(ci_ext_dim(sq, 3, 0) == 0); // no subsets of that size
}

TEST_CASE("ext dimensions agree with endomorphism cohomology of the resolution") {
    for (const CompleteIntersection& ci :
         {make_ci_degrees(QQ, 2, {1, 1}), two_squares()}) {
        FreeComplex K = koszul_complex(ci.ring, ci.gens);
        long total = 0;
        for (int d : ci.degrees) total += d;
        for (int i = 2; i <= static_cast<int>(ci.codim()); ++i)
            for (int j = -static_cast<int>(total) - 2; j <= 1; ++j)
                CHECK(ci_ext_dim(ci, i, j) == end_cohomology_dim(K, i, j));
    }
    // Spot checks on the three-variable quotient keep the loop affordable.
    CompleteIntersection mx = mixed_223();
    FreeComplex K = koszul_complex(mx.ring, mx.gens);
    for (int j : {-5, -4, -2, 0}) {
        CHECK(ci_ext_dim(mx, 2, j) == end_cohomology_dim(K, 2, j));
        CHECK(ci_ext_dim(mx, 3, j) == end_cohomology_dim(K, 3, j));
    }
}

TEST_CASE("rigidity reports and the exact window") {
    CompleteIntersection lin3 = make_ci_degrees(QQ, 3, {1, 1, 1});
    CHECK(rigidity_window(lin3) == std::pair<int, int>{2, 2});
    CHECK_FALSE(is_a_rigid(lin3, 2).rigid);
    CHECK(is_a_rigid(lin3, 1).rigid);
    CHECK(is_a_rigid(lin3, 3).rigid);
    RigidityReport rep = is_a_rigid(lin3, 2);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].i == 2);
    CHECK(rep.rows[0].j == -2);
    CHECK(rep.rows[0].dim == 3);

    CHECK(rigidity_window(mixed_223()) == std::pair<int, int>{0, 5});
    CHECK(rigidity_window(make_ci_degrees(QQ, 5, {2, 2, 5, 7, 9})) ==
          std::pair<int, int>{-16, 16});

    auto R = make_ring(QQ, {"x1", "x2"});
    CHECK_THROWS_WITH_AS(rigidity_window(make_ci(R, {Poly::parse(R, "x1^2")})),
                         doctest::Contains("Artinian"), Error);
}

TEST_CASE("witness flags on the mixed quotient") {
    CompleteIntersection mx = mixed_223();

    WitnessResult w0 = nonrigidity_witness(mx, 0);
    CHECK(w0.index == 1);
    CHECK(w0.j == 4);
    CHECK(w0.monomial.str() == "x1*x2*x3^2");
    w0.flag.validate();
    REQUIRE(w0.flag.flag_levels.has_value());
    CHECK(w0.flag.d.at(0, 4).str() == "x1*x2*x3^2");

    std::map<int, long> hf = homology_hilbert(w0.flag, 0, 6);
    CHECK(hf == std::map<int, long>{{0, 1}, {1, 3}, {2, 4}, {3, 3}, {4, 1}, {5, 0}, {6, 0}});

    WitnessResult w5 = nonrigidity_witness(mx, 5);
    CHECK(w5.index == 2);
    CHECK(w5.j == 0);
    CHECK(w5.monomial.str() == "1");
    w5.flag.validate();

    CHECK_THROWS_WITH_AS(nonrigidity_witness(mx, 6), doctest::Contains("standard monomial"),
                         Error);
    CHECK_THROWS_WITH_AS(nonrigidity_witness(mx, -1), doctest::Contains("standard monomial"),
                         Error);
}

TEST_CASE("witness on the plane square recovers the unit corner flag") {
    CompleteIntersection lin = make_ci_degrees(QQ, 2, {1, 1});
    WitnessResult w = nonrigidity_witness(lin, 2);
    CHECK(w.index == 1);
    CHECK(w.j == 0);
    CHECK(w.monomial.str() == "1");
    CHECK(w.flag.degree == 2);
    CHECK(w.flag.d.at(0, 3).str() == "1");
}

TEST_CASE("asymptotic thresholds from endomorphism support") {
    CompleteIntersection lin = make_ci_degrees(QQ, 2, {1, 1});
    RigidThresholds t = rigid_thresholds(koszul_complex(lin.ring, lin.gens));
    CHECK_FALSE(t.always_rigid);
    CHECK(t.a_minus == 1);
    CHECK(t.a_plus == 3);

    CompleteIntersection sq = two_squares();
    RigidThresholds ts = rigid_thresholds(koszul_complex(sq.ring, sq.gens));
    CHECK(ts.a_minus == 1);
    CHECK(ts.a_plus == 5);
    // Consistency with the window: non-rigid degrees [2, 4] sit strictly
    // inside the open interval (a_minus, a_plus).
    CHECK(rigidity_window(sq) == std::pair<int, int>{2, 4});

    FreeComplex one = koszul_complex(lin.ring, {Poly::parse(lin.ring, "x1")});
    CHECK(rigid_thresholds(one).always_rigid);
}

TEST_CASE("exterior elements multiply with the merge sign") {
    auto R = make_ring(QQ, {"x1", "x2"});
    ExtElement e1(R, 3), e2(R, 3);
    e1.set({0}, Poly::constant(R, 1));
    e2.set({1}, Poly::constant(R, 1));
    ExtElement a = wedge(e1, e2);
    CHECK(a.coeff({0, 1}).str() == "1");
    ExtElement b = wedge(e2, e1);
    CHECK(b.coeff({0, 1}).str() == "-1");
    CHECK(wedge(e1, e1).is_zero());

    ExtElement sum = e1 + e2;
    CHECK(wedge(sum, sum).is_zero());
}

TEST_CASE("wedge is graded commutative and associative on random elements") {
    auto R = make_ring(QQ, {"x1", "x2"});
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> coef(-3, 3);

    auto random_pure = [&](int size) {
        ExtElement e(R, 4);
        for (const auto& J : subsets_lex(4, size)) {
            Poly c = Poly::constant(R, coef(rng));
            if (coef(rng) > 0) c = c * Poly::parse(R, "x1");
            e.set(J, e.coeff(J) + c);
        }
        return e;
    };

    for (int trial = 0; trial < 25; ++trial) {
        int pa = 1 + trial % 3, pb = 1 + (trial / 3) % 3, pc = 1 + (trial / 9) % 2;
        ExtElement a = random_pure(pa), b = random_pure(pb), c = random_pure(pc);
        ExtElement ab = wedge(a, b), ba = wedge(b, a);
        if ((pa * pb) % 2)
            CHECK(ab == ba.scaled(Scalar(QQ, -1)));
        else
            CHECK(ab == ba);
        CHECK(wedge(ab, c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("the quartic exterior identities over four variables") {
    auto R = make_ring(QQ, {"x1", "x2", "x3", "x4"});
    Poly X = Poly::parse(R, "x1*x2*x3*x4");

    ExtElement f1(R, 4);
    for (int i = 0; i < 4; ++i) f1.set({i}, Poly::variable(R, i));

    ExtElement f2(R, 4);
    f2.set({0, 1}, X);
    f2.set({2, 3}, X);

    ExtElement f3(R, 4);
    f3.set({1, 2, 3}, X * Poly::parse(R, "x2*x3*x4"));
    f3.set({0, 2, 3}, -(X * Poly::parse(R, "x1*x3*x4")));
    f3.set({0, 1, 3}, X * Poly::parse(R, "x1*x2*x4"));
    f3.set({0, 1, 2}, -(X * Poly::parse(R, "x1*x2*x3")));

    ExtElement sq = wedge(f2, f2);
    ExtElement expected(R, 4);
    expected.set({0, 1, 2, 3}, Poly::parse(R, "2*x1^2*x2^2*x3^2*x4^2"));
    CHECK(sq == expected);

    CHECK(wedge(f2, f3).is_zero());
    CHECK(wedge(f3, f2).is_zero());

    // The commutator of f1 and f3 lands on four times the square of f2:
    // each of the four cross terms contributes the full product monomial
    // with a positive sign, and the odd-odd swap doubles the total.
    ExtElement bracket = wedge(f1, f3) - wedge(f3, f1);
    CHECK(bracket == sq.scaled(Scalar(QQ, 4)));
    CHECK(bracket.coeff({0, 1, 2, 3}).str() == "8*x1^2*x2^2*x3^2*x4^2");
}
