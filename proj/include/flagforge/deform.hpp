#ifndef FLAGFORGE_DEFORM_HPP
#define FLAGFORGE_DEFORM_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "flagforge/diffmod.hpp"
#include "flagforge/endo.hpp"

namespace flagforge {

// Partial free flag on an anchor complex: the maps delta_2..delta_stage
// chosen so far, where delta_j drops j levels and has untwisted internal
// degree a(1-j). delta_1 is always the anchor differential. The truncated
// square-zero identities hold through the current stage.
class LiftState {
public:
    LiftState(FreeComplex anchor, int degree);

    const FreeComplex& anchor() const { return anchor_; }
    int degree() const { return degree_; }
    int stage() const { return stage_; }

    // delta_j for 1 <= j <= stage (delta_1 is the anchor differential).
    EndElement delta(int j) const;

    // Extends by delta_{stage+1}; callers are responsible for validity.
    LiftState extended(EndElement next) const;
    // Replaces the top map delta_stage (stage >= 2).
    LiftState with_top(EndElement top) const;

    // Re-checks every truncated identity sum_{k} delta_k delta_{p+1-k} = 0
    // for 2 <= p <= stage; InvariantViolation on failure.
    void verify() const;

    // The forced internal degree of delta_j.
    int delta_degree(int j) const { return degree_ * (1 - j); }

private:
    FreeComplex anchor_;
    int degree_;
    int stage_ = 1;
    std::vector<EndElement> deltas_; // delta_2 .. delta_stage
};

// The next lift target: a chain map to the (stage+2)-nd shift whose
// vanishing in cohomology is exactly liftability. Verified to be a cocycle.
EndElement obstruction(const LiftState& s);

struct Obstructed {
    int stage;
    int internal_degree;
    std::string certificate;
};

using LiftResult = std::variant<LiftState, Obstructed>;

// One lifting step: canonical particular solution of the obstruction
// equation plus an optional combination of the cocycle basis returned by
// lift_space (coordinates in that basis order).
LiftResult lift(const LiftState& s, const std::vector<Scalar>& cocycle_coords = {});

// Full solution structure of a lifting step.
struct LiftSpace {
    int stage = 1;
    std::optional<EndElement> particular;
    std::vector<EndElement> cocycles;     // kernel basis of the next-map equation
    std::vector<EndElement> coboundaries; // basis of the homotopy-shift image
    long quotient_dim = 0;
};

LiftSpace lift_space(const LiftState& s);

// Certificate that two states differing only in the top map are conjugate
// by P = I + H, H the homotopy placed on its off-diagonal; carries the
// verified identity blocks.
struct ConjugationCertificate {
    HomMap P;
    HomMap P_inv;
    bool verified = false;
};

// Requires delta'_top - delta_top = d h - h d (HomotopyInvalid otherwise),
// then verifies P^{-1} d_s P = d_{s'} symbolically on all level drops up to
// the stage.
ConjugationCertificate homotopic_lift_iso(const LiftState& s, const LiftState& s2,
                                          const EndElement& h);

// Solves the homotopy equation for the pair, if consistent.
std::optional<EndElement> find_conjugating_homotopy(const LiftState& s,
                                                    const LiftState& s2);

// Completed flag as a differential module (requires a fully lifted state).
DifferentialModule assemble(const LiftState& s);

// Recovers delta_1..delta_len of a validated flag from its level blocks,
// with the level twists undone.
std::vector<EndElement> flag_deltas(const DifferentialModule& D);

// delta_j -> lambda^(j-1) delta_j on an assembled flag.
DifferentialModule rescale(const DifferentialModule& D, const Scalar& lambda);

// One stage-wise isomorphism class of flag over a finite field.
struct FlagClass {
    LiftState state;
    mpz_class multiplicity = 1; // number of raw lift choices merged
};

// Exhaustive stage-wise enumeration over the anchor's finite field: all
// cocycle choices per stage, obstructed branches dropped, choices merged
// when they differ by a homotopy shift. Budget caps the number of
// materialized representatives.
std::vector<FlagClass> enumerate_flags(const FreeComplex& anchor, int a,
                                       unsigned long long budget = 1000000);

// Cohomological bounds on the dimension of the space of degree-a flags.
std::pair<long, long> dim_bounds(const FreeComplex& anchor, int a);

} // namespace flagforge

#endif
