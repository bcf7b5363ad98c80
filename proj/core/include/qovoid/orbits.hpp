#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qovoid/quadric.hpp"

namespace qovoid {

// Element T_{lambda,mu} o tau^j of the group G, acting on Q(4,q) by
//   T_{lambda,mu}: (x,y,alpha,z) -> (x*lambda, y*lambda^{-1},
//                                    alpha*lambda^{(q-1)/2}*mu, z)
//   tau:           (x,y,alpha,z) -> (y, x, alpha^q, z)
// with lambda in F_q^*, mu^{(q+1)/2} = 1.  The parameter triple uniquely
// determines the projective map; G has q^2-1 elements.
//
// The group as specified requires q = 1 (mod 4), where gcd(q-1, (q+1)/2) = 1
// makes H = {T_{lambda,mu}} cyclic of order (q^2-1)/2.
struct GroupElem {
    FqElem lambda = 1;
    Fq2Elem mu{1, 0};
    std::uint8_t tau_part = 0;  // 0 or 1
    friend bool operator==(const GroupElem&, const GroupElem&) = default;
};

GroupElem identity_elem();
// Validates lambda != 0 and mu^{(q+1)/2} = 1.
GroupElem make_elem(const FieldCtx& F, FqElem lambda, Fq2Elem mu, unsigned tau_part);

ProjPoint apply(const FieldCtx& F, const GroupElem& g, const ProjPoint& P);
PointIndex apply(const FieldCtx& F, const PointSet& pts, const GroupElem& g, PointIndex i);

// apply(compose(a,b), P) = apply(a, apply(b, P)).
GroupElem compose(const FieldCtx& F, const GroupElem& a, const GroupElem& b);
GroupElem inverse(const FieldCtx& F, const GroupElem& g);
std::uint64_t element_order(const FieldCtx& F, const GroupElem& g);

// Three generators of G: T_{lambda0,1}, T_{1,mu0}, tau with
// lambda0 = omega^{q+1} (a generator of F_q^*) and mu0 = omega^{2(q-1)}
// (of order (q+1)/2).  Their orders are q-1, (q+1)/2 and 2.
std::array<GroupElem, 3> generators(const FieldCtx& F);

// All q^2-1 elements of G, by direct parameter enumeration.
std::vector<GroupElem> all_group_elements(const FieldCtx& F);
// Closure of the generators under composition; used to confirm |G| = q^2-1.
std::vector<GroupElem> generator_closure(const FieldCtx& F);

enum class OrbitClass { Exc2, ExcConic, ExcQPlus1, Short, Long };
std::string to_string(OrbitClass c);

struct OrbitRecord {
    PointIndex representative = 0;  // minimum member in the global ordering
    std::uint64_t length = 0;
    OrbitClass cls = OrbitClass::Long;
    std::vector<PointIndex> members;  // sorted
};

OrbitRecord orbit_of(const FieldCtx& F, const PointSet& pts, PointIndex seed);

struct OrbitDecomposition {
    std::vector<OrbitRecord> orbits;     // sorted by representative
    std::vector<std::uint32_t> orbit_id; // per point index
    std::uint64_t count(OrbitClass c) const;
};

// Full partition of the point set into G-orbits.  Verifies the expected
// census (one orbit each of lengths 2, q-1, q+1; q-1 short; (q+3)/2 long)
// and throws CensusMismatchError otherwise.
OrbitDecomposition orbit_decomposition(const FieldCtx& F, const PointSet& pts);

// |G| / orbit length.
std::uint64_t stabilizer_order(const FieldCtx& F, const PointSet& pts, PointIndex i);
// Brute-force count of group elements fixing the point; must agree.
std::uint64_t stabilizer_order_direct(const FieldCtx& F, const PointSet& pts, PointIndex i);

// Lemma-style short-orbit test for points with all of x, y, alpha, z nonzero:
// after scaling z to 1, the orbit is short iff x*y*(1+x*y) is a square.
// Throws PredicateInapplicableError when a coordinate vanishes.
bool is_short_predicate(const FieldCtx& F, const ProjPoint& P);

// The extra involution sigma: (x,y,alpha,z) -> (y,x,alpha,z).  It is an
// isometry normalizing G but not an element of G.
ProjPoint apply_sigma(const FieldCtx& F, const ProjPoint& P);
PointIndex apply_sigma(const FieldCtx& F, const PointSet& pts, PointIndex i);

// For every member P of the orbit of `anchor`, a witness w with
// apply(w, anchor) = P.  Entries for points outside the orbit are identity;
// check orbit membership separately.
std::vector<GroupElem> orbit_words(const FieldCtx& F, const PointSet& pts, PointIndex anchor);

}  // namespace qovoid
