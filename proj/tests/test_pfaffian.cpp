#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagforge/error.hpp"
#include "flagforge/pfaffian.hpp"

using namespace flagforge;

static FieldSpec QQ;

static RingPtr skew_ring() {
    return make_ring(QQ, {"x12", "x13", "x14", "x15", "x23", "x24", "x25", "x34",
                          "x35", "x45"});
}

TEST_CASE("submaximal pfaffians and the resolution shape") {
    auto R = skew_ring();
    PfaffianData P = pfaffian_resolution(R);

    CHECK(P.pf[0].str() == "x23*x45 - x24*x35 + x25*x34");
    CHECK(P.pf[4].str() == "x12*x34 - x13*x24 + x14*x23");

    CHECK(P.complex.length() == 3);
    CHECK(P.complex.module(0).twists == std::vector<int>{0});
    CHECK(P.complex.module(1).twists == std::vector<int>(5, -2));
    CHECK(P.complex.module(2).twists == std::vector<int>(5, -3));
    CHECK(P.complex.module(3).twists == std::vector<int>{-5});

    CHECK(P.complex.diff(1).at(0, 0) == P.pf[0]);
    CHECK(P.complex.diff(1).at(0, 1) == -P.pf[1]);
    CHECK(P.complex.diff(1).at(0, 4) == P.pf[4]);
    CHECK(P.complex.diff(2).at(0, 1).str() == "x12");
    CHECK(P.complex.diff(2).at(1, 0).str() == "-x12");
    CHECK(P.complex.diff(3).at(2, 0) == P.pf[2]);

    auto small = make_ring(QQ, {"a", "b", "c"});
    CHECK_THROWS_WITH_AS(pfaffian_resolution(small), doctest::Contains("ten"), Error);
}

TEST_CASE("left multiplication matches the displayed component matrices") {
    auto R = skew_ring();
    PfaffianData P = pfaffian_resolution(R);

    EndElement l1 = left_mult(P, 1);
    CHECK(l1.level_drop() == -1);
    CHECK(l1.internal_degree() == 2);

    CHECK(l1.comp(0).rows_str() ==
          std::vector<std::string>{"[1]", "[0]", "[0]", "[0]", "[0]"});
    CHECK(l1.comp(2).rows_str() == std::vector<std::string>{"[1, 0, 0, 0, 0]"});

    CHECK(l1.comp(1).rows_str() ==
          std::vector<std::string>{
              "[0, 0, 0, 0, 0]",
              "[0, 0, x45, -x35, x34]",
              "[0, -x45, 0, x25, -x24]",
              "[0, x35, -x25, 0, x23]",
              "[0, -x34, x24, -x23, 0]",
          });

    EndElement l2 = left_mult(P, 2);
    CHECK(l2.comp(0).rows_str() ==
          std::vector<std::string>{"[0]", "[1]", "[0]", "[0]", "[0]"});
    CHECK(l2.comp(2).rows_str() == std::vector<std::string>{"[0, 1, 0, 0, 0]"});
    // Products are skew in the two factors.
    CHECK(l2.comp(1).at(4, 0) == -l1.comp(1).at(4, 1));
    CHECK(l1.comp(1).at(0, 0).is_zero());
}

TEST_CASE("the block differential is curved with pfaffian curvature") {
    auto R = skew_ring();
    CurvedModule D = curved_pfaffian(R);

    CHECK(D.degree == 1);
    std::vector<int> twists{0};
    twists.insert(twists.end(), 5, -1);
    twists.insert(twists.end(), 5, -1);
    twists.push_back(-2);
    CHECK(D.mod.twists == twists);

    PfaffianData P = pfaffian_resolution(R);
    auto f = curvature(D.d);
    REQUIRE(f.has_value());
    CHECK(*f == P.pf[0]);
    CHECK(f->homogeneous_degree() == 2);

    // The square really concentrates on the diagonal.
    HomMap sq = D.d * D.d;
    CHECK(sq.at(0, 0) == P.pf[0]);
    CHECK(sq.at(3, 3) == P.pf[0]);
    CHECK(sq.at(0, 3).is_zero());
    CHECK(sq.at(11, 0).is_zero());
}

TEST_CASE("parity split gives a matrix factorization of the curvature") {
    auto R = skew_ring();
    CurvedModule D = curved_pfaffian(R);
    auto [A, B] = matrix_factorization(D);

    CHECK(A.source().rank() == 6);
    CHECK(A.target().rank() == 6);
    CHECK(B.source().rank() == 6);
    CHECK(B.target().rank() == 6);

    PfaffianData P = pfaffian_resolution(R);
    HomMap ab = A * B;
    HomMap ba = B * A;
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c) {
            const Poly& want = ab.at(r, c);
            CHECK(want == (r == c ? P.pf[0] : Poly::zero(R)));
            CHECK(ba.at(r, c) == (r == c ? P.pf[0] : Poly::zero(R)));
        }
}
