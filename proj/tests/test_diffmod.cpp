#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagforge/diffmod.hpp"
#include "flagforge/error.hpp"

using namespace flagforge;

static FieldSpec QQ;

static FreeComplex koszul_x1x2(const RingPtr& R) {
    return koszul_complex(R, {Poly::parse(R, "x1"), Poly::parse(R, "x2")});
}

// The two-variable Koszul complex folded at degree 0 over an ambient ring,
// with the corner entry f: the intro family of differential modules.
static DifferentialModule corner_family(const RingPtr& R, const std::string& f) {
    DifferentialModule D = fold(koszul_x1x2(R), 0);
    D.d.set(0, 3, Poly::parse(R, f));
    D.validate();
    return D;
}

TEST_CASE("fold at degree zero reproduces the block matrix with empty corner") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    DifferentialModule D = fold(koszul_x1x2(R), 0);
    CHECK(D.mod.twists == std::vector<int>{0, -1, -1, -2});
    CHECK(D.degree == 0);
    CHECK(D.d.rows_str() == std::vector<std::string>{
                                "[0, x1, x2, 0]",
                                "[0, 0, 0, -x2]",
                                "[0, 0, 0, x1]",
                                "[0, 0, 0, 0]",
                            });
    REQUIRE(D.flag_levels.has_value());
    CHECK(D.flag_levels->size() == 3);
}

TEST_CASE("fold twist arithmetic shifts level i by i*a") {
    auto R = make_ring(QQ, {"x", "y"});
    FreeComplex K = koszul_complex(R, {Poly::parse(R, "x"), Poly::parse(R, "y")});
    DifferentialModule D = fold(K, 2);
    CHECK(D.mod.twists == std::vector<int>{0, 1, 1, 2});
    D.d.check_homogeneous();
    CHECK(D.degree == 2);
}

TEST_CASE("validate_flag undoes fold") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    FreeComplex K = koszul_x1x2(R);
    FreeComplex back = validate_flag(fold(K, 0));
    REQUIRE(back.length() == K.length());
    for (std::size_t i = 0; i <= K.length(); ++i)
        CHECK(back.module(i) == K.module(i));
    for (std::size_t i = 1; i <= K.length(); ++i)
        CHECK(back.diff(i) == K.diff(i));

    FreeComplex back2 = validate_flag(fold(K, 3));
    for (std::size_t i = 1; i <= K.length(); ++i)
        CHECK(back2.diff(i) == K.diff(i));
}

TEST_CASE("validate_flag accepts the corner family and rejects lower blocks") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    DifferentialModule D = corner_family(R, "x3^2");
    FreeComplex anchor = validate_flag(D); // corner block drops two levels: fine
    CHECK(anchor.length() == 2);

    DifferentialModule bad = fold(koszul_x1x2(R), 0);
    bad.d.set(3, 0, Poly::parse(R, "x3^2")); // level 0 -> level 2 goes up
    CHECK_THROWS_WITH_AS(validate_flag(bad),
                         doctest::Contains("drop strictly"), Error);
}

TEST_CASE("homology of the resolution fold is the residue field") {
    auto R = make_ring(QQ, {"x1", "x2"});
    DifferentialModule D = fold(koszul_x1x2(R), 0);
    auto h = homology_hilbert(D, 0, 6);
    CHECK(h[0] == 1);
    for (int j = 1; j <= 6; ++j) CHECK(h[j] == 0);
}

TEST_CASE("homology of the deformed corner family is a polynomial line") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    DifferentialModule D = corner_family(R, "x3^2");
    auto h = homology_hilbert(D, 0, 6);
    for (int j = 0; j <= 6; ++j) CHECK(h[j] == 1);
}

TEST_CASE("zero differential reports slice dimensions") {
    auto R = make_ring(QQ, {"x", "y"});
    FreeModule M{R, {0, -1}};
    DifferentialModule D{M, 0, HomMap::zero(M, M, 0), std::nullopt};
    auto h = homology_hilbert(D, 0, 3);
    CHECK(h[0] == 1);
    CHECK(h[1] == 3);
    CHECK(h[2] == 5);
}

TEST_CASE("default window covers the generator spread") {
    auto R = make_ring(QQ, {"x", "y"});
    DifferentialModule D = fold(koszul_complex(R, {Poly::parse(R, "x"),
                                                   Poly::parse(R, "y")}),
                                0);
    auto [lo, hi] = default_window(D);
    CHECK(lo == 0);
    CHECK(hi >= 6);
}

TEST_CASE("minimize strips the scalar corner flag down to two generators") {
    auto R = make_ring(QQ, {"x", "y"});
    FreeComplex K = koszul_complex(R, {Poly::parse(R, "x"), Poly::parse(R, "y")});
    DifferentialModule D = fold(K, 2);
    D.d.set(0, 3, Poly::constant(R, 1)); // scalar unit block F2 -> F0
    D.validate();
    auto before = homology_hilbert(D, -3, 5);

    auto [M, betti] = minimize(D);
    CHECK(M.mod.rank() == 2);
    CHECK(betti.total() == 2);
    CHECK(betti.by_degree == std::map<int, long>{{-1, 2}});
    CHECK(is_minimal(M.d));
    CHECK(homology_hilbert(M, -3, 5) == before);
}

TEST_CASE("minimize leaves minimal modules untouched") {
    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    DifferentialModule D = corner_family(R, "x1*x2");
    auto [M, betti] = minimize(D);
    CHECK(M.mod.rank() == 4);
    CHECK(M.d == D.d);
    CHECK(betti.total() == 4);
    CHECK(betti.by_degree == std::map<int, long>{{0, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("curvature recognizes genuine differentials and scalar squares") {
    auto R1 = make_ring(QQ, {"x"});
    FreeModule M{R1, {0, 0}};
    HomMap d(M, M, 1);
    d.set(0, 1, Poly::parse(R1, "x"));
    d.set(1, 0, Poly::parse(R1, "x"));
    auto f = curvature(d);
    REQUIRE(f.has_value());
    CHECK(f->str() == "x^2");

    auto R = make_ring(QQ, {"x1", "x2", "x3"});
    DifferentialModule D = corner_family(R, "x3^2");
    auto z = curvature(D.d);
    REQUIRE(z.has_value());
    CHECK(z->is_zero());

    HomMap bad = D.d;
    bad.set(1, 3, Poly::parse(R, "x1"));
    CHECK_FALSE(curvature(bad).has_value());
}

TEST_CASE("two-generator matrix factorization of x squared") {
    auto R = make_ring(QQ, {"x"});
    FreeModule M{R, {0, 0}};
    HomMap d(M, M, 1);
    d.set(0, 1, Poly::parse(R, "x"));
    d.set(1, 0, Poly::parse(R, "x"));
    CurvedModule D{M, 1, d, Poly::parse(R, "x^2"),
                   std::vector<std::vector<std::size_t>>{{0}, {1}}};
    auto [A, B] = matrix_factorization(D);
    CHECK(A.rows_str() == std::vector<std::string>{"[x]"});
    CHECK(B.rows_str() == std::vector<std::string>{"[x]"});

    CurvedModule noflag = D;
    noflag.flag_levels.reset();
    CHECK_THROWS_AS(matrix_factorization(noflag), Error);
}
