#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qovoid/orbits.hpp"
#include "qovoid/quadric.hpp"

namespace qovoid {

// Parameter pair (a, b) with 1 + a^2 = b^2, a, b nonzero, produced from the
// witness t via a = (t^{-1} - t)/2, b = (t^{-1} + t)/2 (t^4 != 1).
struct OvoidParams {
    FqElem a = 0;
    FqElem b = 0;
    FqElem t_witness = 0;
};

// Deterministic choice: the smallest-encoded t in F_q^* with t^4 != 1.
// Throws NoSolutionError when no such t exists (q <= 5).
OvoidParams find_ab(const FieldCtx& F);
// Same construction for an explicitly chosen witness t.
OvoidParams params_from_t(const FieldCtx& F, FqElem t);

// T = { (x,y,alpha,1) on Q(4,q) : 1 + b^{-2}xy a nonzero square, xy*alpha != 0 },
// as a sorted point-index set of size (q^2-1)(q-5)/2.
std::vector<PointIndex> construct_T(const FieldCtx& F, const PointSet& pts,
                                    const OvoidParams& params);

// The candidate set M: union of five pairwise disjoint components
//   0: the conic orbit through (1,-1,0,1)                     size q-1
//   1: the short orbit through (1,-omega^{2(q+1)},omega^2,0)  size (q^2-1)/2
//   2: the long orbit through (1,0,omega^{(q-1)/2},1)         size q^2-1
//   3: the set T                                              size (q^2-1)(q-5)/2
//   4: the short orbit through (1,-b^2,a,1)                   size (q^2-1)/2
struct OvoidSet {
    OvoidParams params;
    std::array<std::vector<PointIndex>, 5> components;
    std::vector<std::uint8_t> comp_tag;  // per point: 0 = outside M, else 1..5
    std::vector<PointIndex> members;     // sorted union, size (q-1)(q^2+1)/2
};

// Requires q = 1 (mod 4) and q > 5; throws UnsupportedQError otherwise.
OvoidSet construct_M(const FieldCtx& F, const PointSet& pts, const OvoidParams& params);

struct OvoidReport {
    std::uint32_t q = 0;
    std::uint32_t m_target = 0;
    std::uint64_t line_count = 0;
    std::map<std::uint32_t, std::uint64_t> histogram;  // |line /\ S| -> #lines
    bool pass = false;
    // Canonical keys of up to 10 failing lines, in line order.
    std::vector<std::array<PointIndex, 2>> worst_lines;
};

// Histogram of |line /\ S| over all totally singular lines; pass iff every
// line meets S in exactly m points.  S may be any point-index set.
OvoidReport verify_m_ovoid(const FieldCtx& F, const PointSet& pts,
                           const std::vector<PointIndex>& S, std::uint32_t m,
                           const LineSet& lines, unsigned workers = 1);

// Per-component intersection counts (|line /\ C1|, ..., |line /\ C5|).
std::array<std::uint32_t, 5> intersect_breakdown(std::span<const PointIndex> line,
                                                 const OvoidSet& M);

// The case analysis of the main counting argument.  Every line meets one of
// four anchor orbits -- those of (1,0,0,0), (0,0,g,1), (1,0,g,1) and
// (1,0,g*omega^{q-1},1) with g = omega^{(q-1)/2} -- and its case tag is the
// first anchor orbit it meets, in that priority order.  Tags are constant on
// G-orbits of lines.
class CaseAnalysis {
public:
    CaseAnalysis(const FieldCtx& F, const PointSet& pts, const OrbitDecomposition& dec,
                 const OvoidParams& params);

    // Case tag in {1, 2, 3, 4}.
    int classify(std::span<const PointIndex> line) const;

    // For a case-3/4 line: the invariant y1 of the line, read off after
    // mapping its unique anchor-orbit point to the anchor representative.
    FqElem reduced_y1(std::span<const PointIndex> line, int tag) const;

    // The component tuple the counting argument predicts for this line.
    std::array<std::uint32_t, 5> expected_tuple(std::span<const PointIndex> line) const;
    std::array<std::uint32_t, 5> expected_tuple(int tag, FqElem y1) const;

    PointIndex anchor_index(int tag) const { return anchor_idx_[tag - 1]; }

private:
    const FieldCtx& F_;
    const PointSet& pts_;
    const OrbitDecomposition& dec_;
    OvoidParams params_;
    std::array<std::uint32_t, 4> anchor_orbit_{};
    std::array<PointIndex, 4> anchor_idx_{};
    std::vector<GroupElem> words3_, words4_;
};

}  // namespace qovoid
