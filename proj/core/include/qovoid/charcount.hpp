#pragma once

#include <cstdint>

#include "qovoid/gf.hpp"
#include "qovoid/orbits.hpp"

namespace qovoid {

// The four square-shift counts over F_q (q = 1 mod 4):
//   n1 = |Sq  /\ (Sq-1)|,  n2 = |Sq  /\ (NSq-1)|,
//   n3 = |NSq /\ (Sq-1)|,  n4 = |NSq /\ (NSq-1)|,
// where Sq / NSq are the nonzero squares / nonsquares and S-1 = {s-1 : s in S}.
// Closed forms: n1 = (q-5)/4, n2 = n3 = n4 = (q-1)/4.
struct CharCounts {
    std::uint64_t n1 = 0, n2 = 0, n3 = 0, n4 = 0;
};

// Sum of eta(a2*c^2 + a1*c + a0) over c in F_q, computed by brute force and
// checked against the closed form: -eta(a2) when d = a1^2 - 4*a0*a2 != 0,
// (q-1)*eta(a2) when d = 0.  Throws InternalError on disagreement.
std::int64_t char_sum_quadratic(const FieldCtx& F, FqElem a2, FqElem a1, FqElem a0);

// Brute-force sign-pattern counts of (eta(x), eta(x+1)) over x != 0, -1;
// asserts the closed forms.  Requires q = 1 (mod 4).
CharCounts square_shift_counts(const FieldCtx& F);

// Confirms the orbit census against the character counts:
// short orbits = 2*n1 + 2*n4 + 2 = q-1, long orbits = n2 + n3 + 2 = (q+3)/2.
// Throws CensusMismatchError on disagreement; returns true otherwise.
bool census_cross_check(const FieldCtx& F, const OrbitDecomposition& dec);

}  // namespace qovoid
