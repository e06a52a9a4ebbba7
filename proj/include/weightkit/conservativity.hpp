#pragma once

// Base change from the dual numbers F_p[e]/e^2 to the residue field F_p.
// The reduction keeps every dimension, so it is weight-exact for the
// stupid structures, and its kernel on endomorphisms is square-zero
// (multiples of e). Consequence under test: a weight range the reduction
// avoids is already avoided upstairs.

#include <optional>

#include "weightkit/weights.hpp"

namespace weightkit {

// Entrywise a + b*e |-> a. Requires dual-number coefficients.
Complex reduce_mod_eps(const Complex& M);
ChainMap reduce_mod_eps(const ChainMap& f);

struct ConservativityReport {
    int m = 0, n = 0;
    bool reduced_without = false;   // reduction is without weights m..n
    bool original_without = false;  // the complex itself is
    bool vacuous = false;           // the implication premise failed
    std::optional<KillCertificate> reduced_witness;
    std::optional<KillCertificate> original_witness;
};
// Decides both memberships and checks reduced_without => original_without;
// a violation throws InvariantViolation, since it would contradict the
// square-zero kernel.
ConservativityReport conservativity_check(const Complex& M, int m, int n);

}  // namespace weightkit
