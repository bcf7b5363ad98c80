#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qovoid/charcount.hpp"
#include "qovoid/ovoid.hpp"

namespace qovoid {

// Parsed point-set document: {"q", "points", optional "m", optional "field"}.
// Points are coordinate tuples [x, y, [c0, c1], z] of integer encodings.
struct PointSetDoc {
    std::uint64_t q = 0;
    std::optional<std::uint32_t> m;
    std::optional<std::uint32_t> p, k;
    std::vector<VecV> points;
};

// Throws ParseError on malformed input.
PointSetDoc read_point_set_json(std::istream& in);

// {"p", "k", "base_poly", "ext_nonsquare", "omega"} — enough to reproduce the
// field construction exactly.
std::string field_json(const FieldCtx& F);

// Output of `construct`: field, parameters, component sizes and the point set.
std::string construct_json(const FieldCtx& F, const PointSet& pts, const OvoidSet& M,
                           std::uint32_t m);

std::string report_json(const OvoidReport& rep);

std::string orbits_json(const FieldCtx& F, const PointSet& pts,
                        const OrbitDecomposition& dec);

std::string counts_json(const FieldCtx& F, const CharCounts& counts);

// Mirrors the point-set format, one coordinate-tuple array per line.
std::string lines_json(const FieldCtx& F, const PointSet& pts, const LineSet& lines);

// One point per row, five integer columns x,y,c0,c1,z.
std::string points_csv(const FieldCtx& F, const PointSet& pts,
                       std::span<const PointIndex> subset);

// One row per line: line_key, case, c1..c5, total.
std::string breakdown_csv(const FieldCtx& F, const PointSet& pts, const LineSet& lines,
                          const OvoidSet& M, const CaseAnalysis& cases,
                          std::optional<int> case_filter);

}  // namespace qovoid
