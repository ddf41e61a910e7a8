#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagforge/error.hpp"
#include "flagforge/linalg.hpp"
#include "flagforge/module.hpp"
#include "flagforge/poly.hpp"
#include "flagforge/scalar.hpp"

using namespace flagforge;

static FieldSpec QQ;
static FieldSpec F(uint32_t p) { return FieldSpec{p}; }

TEST_CASE("scalar arithmetic over the rationals") {
    Scalar a = Scalar::parse(QQ, "2/3");
    Scalar b = Scalar::parse(QQ, "-1/6");
    CHECK((a + b).str() == "1/2");
    CHECK((a * b).str() == "-1/9");
    CHECK((a / b).str() == "-4");
    CHECK((a - a).is_zero());
    CHECK(Scalar::parse(QQ, "4/6").str() == "2/3");
    CHECK_THROWS_AS(a / Scalar::zero(QQ), Error);
}

TEST_CASE("scalar arithmetic over prime fields") {
    FieldSpec f5 = F(5);
    Scalar a(f5, 7);
    CHECK(a.residue() == 2);
    CHECK((a.inverse() * a).is_one());
    CHECK(Scalar(f5, -1).residue() == 4);
    CHECK(Scalar::parse(f5, "3/4").residue() == 2); // 3 * 4^{-1} = 3 * 4 = 12 = 2
    CHECK_THROWS_AS(validate_field(F(6)), Error);
    CHECK_THROWS_AS(validate_field(F(1)), Error);
    validate_field(F(2147483647)); // 2^31 - 1 is prime
}

TEST_CASE("scalars from different fields do not mix") {
    CHECK_THROWS_AS(Scalar::one(QQ) + Scalar::one(F(5)), Error);
    CHECK_THROWS_AS(Scalar::one(F(5)) + Scalar::one(F(7)), Error);
}

TEST_CASE("rref and rank are deterministic with leftmost pivots") {
    Mat m(QQ, 2, 3);
    // [[2, 4, 6], [1, 2, 4]] -> rref [[1, 2, 0], [0, 0, 1]]
    m.at(0, 0) = Scalar(QQ, 2);
    m.at(0, 1) = Scalar(QQ, 4);
    m.at(0, 2) = Scalar(QQ, 6);
    m.at(1, 0) = Scalar(QQ, 1);
    m.at(1, 1) = Scalar(QQ, 2);
    m.at(1, 2) = Scalar(QQ, 4);
    Mat r = m;
    auto pivots = rref_in_place(r);
    CHECK(pivots == std::vector<std::size_t>{0, 2});
    CHECK(r.at(0, 1).str() == "2");
    CHECK(rank(m) == 2);
}

TEST_CASE("kernel basis convention: free columns ascending, one per vector") {
    Mat m(QQ, 1, 2);
    m.at(0, 0) = Scalar(QQ, 1);
    m.at(0, 1) = Scalar(QQ, 2);
    Mat k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0).str() == "-2");
    CHECK(k.at(1, 0).str() == "1");
}

TEST_CASE("solve returns the free-variables-zero solution") {
    Mat m(QQ, 1, 2);
    m.at(0, 0) = Scalar(QQ, 1);
    m.at(0, 1) = Scalar(QQ, 1);
    auto x = solve(m, {Scalar(QQ, 2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0].str() == "2");
    CHECK((*x)[1].is_zero());

    Mat z(QQ, 2, 1);
    z.at(0, 0) = Scalar(QQ, 1);
    // [1; 0] x = (0, 1) has no solution
    CHECK_FALSE(solve(z, {Scalar::zero(QQ), Scalar::one(QQ)}).has_value());
}

TEST_CASE("extend_basis picks the leftmost completing columns") {
    Mat b(F(2), 2, 1);
    b.at(0, 0) = Scalar::one(F(2));
    Mat z(F(2), 2, 3);
    z.at(0, 0) = Scalar::one(F(2)); // dependent on b
    z.at(1, 1) = Scalar::one(F(2));
    z.at(0, 2) = Scalar::one(F(2));
    z.at(1, 2) = Scalar::one(F(2));
    CHECK(extend_basis(b, z) == std::vector<std::size_t>{1});
}

TEST_CASE("polynomial parsing and printing round-trip") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    Poly p = Poly::parse(R, "3*x1^2*x2 - x3");
    CHECK(p.str() == "3*x1^2*x2 - x3");
    CHECK(p.degree() == 3);
    CHECK_FALSE(p.homogeneous_degree().has_value());

    Poly q = Poly::parse(R, "1/2*x1 + x2 - 2*x3");
    CHECK(q.str() == "1/2*x1 + x2 - 2*x3");
    CHECK(q.is_homogeneous_of(1));
    CHECK(Poly::parse(R, q.str()) == q);

    CHECK(Poly::parse(R, "0").is_zero());
    CHECK(Poly::parse(R, "x1 - x1").is_zero());
    CHECK(Poly::parse(R, "x1*x1") == Poly::parse(R, "x1^2"));
    CHECK_THROWS_AS(Poly::parse(R, "x1 + y"), Error);
    CHECK_THROWS_AS(Poly::parse(R, "x1 + + x2"), Error);
    CHECK_THROWS_AS(Poly::parse(R, "3 3"), Error);
}

TEST_CASE("polynomial products collect terms in descending graded-lex order") {
    auto R = make_ring(QQ, {"x", "y"});
    Poly f = Poly::parse(R, "x + y");
    Poly g = Poly::parse(R, "x - y");
    CHECK((f * g).str() == "x^2 - y^2");
    CHECK((f * f).str() == "x^2 + 2*x*y + y^2");
    Poly c = Poly::parse(R, "x^2*y + x*y^2 + x^3 + y^3 + x + 1");
    CHECK(c.str() == "x^3 + x^2*y + x*y^2 + y^3 + x + 1");
}

TEST_CASE("prime field polynomial coefficients reduce mod p") {
    auto R = make_ring(F(2), {"x", "y"});
    Poly f = Poly::parse(R, "x + y");
    CHECK((f * f).str() == "x^2 + y^2");
    CHECK(Poly::parse(R, "2*x").is_zero());
}

TEST_CASE("slice dimensions and bases") {
    auto R = make_ring(QQ, {"x", "y", "z"});
    CHECK(slice_dim(3, 0) == 1);
    CHECK(slice_dim(3, 2) == 6);
    CHECK(slice_dim(3, -1) == 0);

    auto monos = monomials_of_degree(2, 2);
    REQUIRE(monos.size() == 3);
    CHECK(monos[0].e == std::vector<std::int32_t>{2, 0});
    CHECK(monos[1].e == std::vector<std::int32_t>{1, 1});
    CHECK(monos[2].e == std::vector<std::int32_t>{0, 2});

    // Generators in degrees 0 and 1, so modules S + S(-1).
    FreeModule M{R, {0, -1}};
    CHECK(slice_dim(M, 1) == 4); // three linear forms on e0 plus e1 itself
    auto sb = slice_basis(M, 1);
    REQUIRE(sb.size() == 4);
    CHECK(sb[0].gen == 0);
    CHECK(sb[3].gen == 1);
    CHECK(sb[3].mono.is_unit());
}

TEST_CASE("hom maps check homogeneity against the twist bookkeeping") {
    auto R = make_ring(QQ, {"x", "y"});
    FreeModule A{R, {-1}}; // S(-1), generator degree 1
    FreeModule B{R, {0}};
    HomMap h(A, B, 0);
    h.set(0, 0, Poly::parse(R, "x"));
    h.check_homogeneous(); // entry degree 0 - (-1) + 0 = 1
    h.set(0, 0, Poly::parse(R, "x^2"));
    CHECK_THROWS_AS(h.check_homogeneous(), Error);
}

TEST_CASE("slice matrices follow the basis ordering") {
    auto R = make_ring(QQ, {"x", "y"});
    FreeModule A{R, {-1}};
    FreeModule B{R, {0}};
    HomMap h(A, B, 0);
    h.set(0, 0, Poly::parse(R, "x + 2*y"));
    // slice degree 1: source basis {e0}, target basis {x e0, y e0}
    Mat m = h.slice_matrix(1);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 1);
    CHECK(m.at(0, 0).str() == "1");
    CHECK(m.at(1, 0).str() == "2");
}

TEST_CASE("map composition multiplies matrices of polynomials") {
    auto R = make_ring(QQ, {"x", "y"});
    FreeModule F2{R, {-2}};
    FreeModule F1{R, {-1, -1}};
    FreeModule F0{R, {0}};
    HomMap d2(F2, F1, 0);
    d2.set(0, 0, Poly::parse(R, "0") - Poly::parse(R, "y"));
    d2.set(1, 0, Poly::parse(R, "x"));
    HomMap d1(F1, F0, 0);
    d1.set(0, 0, Poly::parse(R, "x"));
    d1.set(0, 1, Poly::parse(R, "y"));
    CHECK((d1 * d2).is_zero());
}
