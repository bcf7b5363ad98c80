#pragma once

#include <cstdint>
#include <vector>

#include "qovoid/errors.hpp"

namespace qovoid {

// Element of F_q = F_{p^k}, encoded as an integer in [0, q).
//
// The encoding is the base-p digit string of the coefficient tuple w.r.t.
// the power basis of F_p[X]/(f):  code = c0 + c1*p + ... + c_{k-1}*p^{k-1}.
// Element ordering everywhere in the library is integer ordering of codes.
using FqElem = std::uint16_t;

// Element of F_{q^2} = F_q[theta] with theta^2 = n, n the smallest-encoded
// nonsquare of F_q.  The integer encoding of (c0, c1) is c0 + q*c1.
struct Fq2Elem {
    FqElem c0 = 0;
    FqElem c1 = 0;
    friend bool operator==(const Fq2Elem&, const Fq2Elem&) = default;
};

// Immutable arithmetic context for the tower F_p < F_q < F_{q^2}.
//
// Construction is fully deterministic:
//   - base_poly is the lexicographically smallest monic irreducible of
//     degree k over F_p (tuples (c_{k-1},...,c0) compared as integers),
//   - ext_nonsquare is the smallest-encoded nonsquare of F_q,
//   - omega is the smallest-encoded primitive element of F_{q^2},
//   - gamma = omega^{(q-1)/2}, so gamma^{q+1} = -1.
//
// F_q arithmetic is table-backed (q*q add/mul tables built from polynomial
// arithmetic); F_{q^2} arithmetic uses O(1) coordinate formulas on top of
// it.  The object is immutable after construction and safe to share across
// threads; all element operations are pure functions of (ctx, operands).
class FieldCtx {
public:
    // Largest supported field order; keeps the q*q tables a few MB at most.
    static constexpr std::uint32_t kMaxQ = 2048;

    FieldCtx(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }
    // Coefficients c0..ck of the defining polynomial of F_q over F_p (ck = 1).
    const std::vector<FqElem>& base_poly() const { return base_poly_; }
    FqElem ext_nonsquare() const { return nonsq_; }
    Fq2Elem omega() const { return omega_; }
    Fq2Elem gamma() const { return gamma_; }

    // ----- F_q operations -----
    FqElem add(FqElem a, FqElem b) const { return add_[std::size_t(a) * q_ + b]; }
    FqElem sub(FqElem a, FqElem b) const { return add_[std::size_t(a) * q_ + neg_[b]]; }
    FqElem neg(FqElem a) const { return neg_[a]; }
    FqElem mul(FqElem a, FqElem b) const { return mul_[std::size_t(a) * q_ + b]; }
    FqElem inv(FqElem a) const {
        if (a == 0) throw DivisionByZeroError();
        return inv_[a];
    }
    FqElem pow(FqElem x, std::uint64_t e) const;
    // Quadratic character eta: +1 nonzero square, -1 nonsquare, 0 at zero.
    int quad_char(FqElem x) const { return eta_[x]; }
    // Embedding of the rational integer n (reduces mod p into the prime field).
    FqElem from_int(std::int64_t n) const;

    // Reference implementations operating directly on coefficient tuples,
    // bypassing the tables.  The tables are required to agree bit for bit.
    FqElem add_poly(FqElem a, FqElem b) const;
    FqElem mul_poly(FqElem a, FqElem b) const;

    // Table row accessors for inner loops: row(a)[b] = a op b.
    const FqElem* mul_row(FqElem a) const { return mul_.data() + std::size_t(a) * q_; }
    const FqElem* add_row(FqElem a) const { return add_.data() + std::size_t(a) * q_; }

    // ----- F_{q^2} operations -----
    Fq2Elem add(Fq2Elem a, Fq2Elem b) const { return {add(a.c0, b.c0), add(a.c1, b.c1)}; }
    Fq2Elem sub(Fq2Elem a, Fq2Elem b) const { return {sub(a.c0, b.c0), sub(a.c1, b.c1)}; }
    Fq2Elem neg(Fq2Elem a) const { return {neg_[a.c0], neg_[a.c1]}; }
    Fq2Elem mul(Fq2Elem a, Fq2Elem b) const {
        return {add(mul(a.c0, b.c0), mul(nonsq_, mul(a.c1, b.c1))),
                add(mul(a.c0, b.c1), mul(a.c1, b.c0))};
    }
    Fq2Elem mul(Fq2Elem a, FqElem s) const { return {mul(a.c0, s), mul(a.c1, s)}; }
    Fq2Elem inv(Fq2Elem a) const;
    Fq2Elem pow(Fq2Elem x, std::uint64_t e) const;
    // alpha -> alpha^q; in the basis {1, theta} this is (c0, -c1).
    Fq2Elem frobenius(Fq2Elem a) const { return {a.c0, neg_[a.c1]}; }
    // N(alpha) = alpha^{q+1} = c0^2 - n*c1^2, an element of F_q.
    FqElem norm(Fq2Elem a) const {
        return sub(mul(a.c0, a.c0), mul(nonsq_, mul(a.c1, a.c1)));
    }
    // Tr(alpha) = alpha + alpha^q = 2*c0.
    FqElem trace(Fq2Elem a) const { return add(a.c0, a.c0); }
    Fq2Elem embed(FqElem x) const { return {x, 0}; }
    bool in_base_field(Fq2Elem a) const { return a.c1 == 0; }

    std::uint32_t encode2(Fq2Elem a) const { return a.c0 + q_ * std::uint32_t(a.c1); }
    Fq2Elem decode2(std::uint32_t code) const {
        return {FqElem(code % q_), FqElem(code / q_)};
    }

    // Smallest-encoded element of F_{q^2} of multiplicative order q^2-1.
    // Recomputes the search; equals omega() by construction.
    Fq2Elem find_primitive_element() const;

    static bool is_prime(std::uint64_t n);

private:
    std::uint32_t p_ = 0, k_ = 0, q_ = 0;
    std::vector<FqElem> base_poly_;
    FqElem nonsq_ = 0;
    Fq2Elem omega_{};
    Fq2Elem gamma_{};

    std::vector<FqElem> add_, mul_, neg_, inv_;
    std::vector<std::int8_t> eta_;

    void build_tables();
};

// Distinct prime factors of n, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace qovoid
