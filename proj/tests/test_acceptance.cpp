#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstddef>
#include <iostream>
#include <vector>

#include <flagforge/gallery.hpp>

using namespace flagforge;

namespace {

const std::vector<CriterionResult>& results() {
    static const std::vector<CriterionResult> r = run_gallery();
    return r;
}

void check_criterion(int number) {
    const CriterionResult& r = results().at(static_cast<std::size_t>(number - 1));
    std::cout << format_gallery_line(r) << std::endl;
    CHECK_MESSAGE(r.passed, r.detail);
}

} // namespace

TEST_CASE("criterion 1: rigidity window for degrees (2,2,5,7,9)") { check_criterion(1); }

TEST_CASE("criterion 2: linear quotient rigid away from a = 2") { check_criterion(2); }

TEST_CASE("criterion 3: Ext dimensions by two independent computations") { check_criterion(3); }

TEST_CASE("criterion 4: obstructions are cocycles across stage-2 states") { check_criterion(4); }

TEST_CASE("criterion 5: conjugation certificates for the corner family") { check_criterion(5); }

TEST_CASE("criterion 6: witness gallery for the (2,2,3) quotient") { check_criterion(6); }

TEST_CASE("criterion 7: flag dimension bounds") { check_criterion(7); }

TEST_CASE("criterion 8: finite field enumeration class counts") { check_criterion(8); }

TEST_CASE("criterion 9: Betti deficiency of the degree-2 corner flag") { check_criterion(9); }

TEST_CASE("criterion 10: pure twist sequences never shed generators at degree 0") {
    check_criterion(10);
}

TEST_CASE("criterion 11: curved pfaffian module and its matrix factorization") {
    check_criterion(11);
}

TEST_CASE("criterion 12: quartic exterior algebra identities") { check_criterion(12); }

TEST_CASE("criterion 13: homology Hilbert stability across all collected flags") {
    check_criterion(13);
}
