#include "qovoid/io.hpp"

#include <istream>
#include <sstream>

#include "json.hpp"

namespace qovoid {

using ojson = nlohmann::ordered_json;

namespace {

ojson point_to_json(const VecV& v) {
    return ojson::array({v.x, v.y, ojson::array({v.alpha.c0, v.alpha.c1}), v.z});
}

ojson field_to_json(const FieldCtx& F) {
    ojson j;
    j["p"] = F.p();
    j["k"] = F.k();
    j["base_poly"] = F.base_poly();
    j["ext_nonsquare"] = F.ext_nonsquare();
    j["omega"] = ojson::array({F.omega().c0, F.omega().c1});
    return j;
}

std::string dump(const ojson& j) { return j.dump(1) + "\n"; }

}  // namespace

PointSetDoc read_point_set_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        PointSetDoc doc;
        doc.q = j.at("q").get<std::uint64_t>();
        if (j.contains("m")) doc.m = j["m"].get<std::uint32_t>();
        if (j.contains("field")) {
            doc.p = j["field"].at("p").get<std::uint32_t>();
            doc.k = j["field"].at("k").get<std::uint32_t>();
        }
        for (const auto& pj : j.at("points")) {
            if (!pj.is_array() || pj.size() != 4 || !pj[2].is_array() || pj[2].size() != 2)
                throw ParseError("each point must have the shape [x, y, [c0, c1], z]");
            const std::uint64_t vals[5] = {pj[0].get<std::uint64_t>(), pj[1].get<std::uint64_t>(),
                                           pj[2][0].get<std::uint64_t>(),
                                           pj[2][1].get<std::uint64_t>(),
                                           pj[3].get<std::uint64_t>()};
            for (const std::uint64_t v : vals)
                if (v >= doc.q) throw ParseError("coordinate encoding out of range [0, q)");
            doc.points.push_back({FqElem(vals[0]), FqElem(vals[1]),
                                  {FqElem(vals[2]), FqElem(vals[3])}, FqElem(vals[4])});
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("point-set document: ") + e.what());
    }
}

std::string field_json(const FieldCtx& F) { return dump(field_to_json(F)); }

std::string construct_json(const FieldCtx& F, const PointSet& pts, const OvoidSet& M,
                           std::uint32_t m) {
    ojson j;
    j["q"] = F.q();
    j["m"] = m;
    j["field"] = field_to_json(F);
    j["params"] = ojson{{"a", M.params.a}, {"b", M.params.b}, {"t", M.params.t_witness}};
    ojson sizes = ojson::array();
    for (const auto& c : M.components) sizes.push_back(c.size());
    j["component_sizes"] = sizes;
    j["size"] = M.members.size();
    ojson points = ojson::array();
    for (const PointIndex i : M.members) points.push_back(point_to_json(pts.vec(i)));
    j["points"] = points;
    return dump(j);
}

std::string report_json(const OvoidReport& rep) {
    ojson j;
    j["q"] = rep.q;
    j["m"] = rep.m_target;
    j["pass"] = rep.pass;
    j["line_count"] = rep.line_count;
    ojson hist;
    for (const auto& [size, count] : rep.histogram) hist[std::to_string(size)] = count;
    j["histogram"] = hist;
    ojson worst = ojson::array();
    for (const auto& key : rep.worst_lines) worst.push_back(ojson::array({key[0], key[1]}));
    j["worst_lines"] = worst;
    return dump(j);
}

std::string orbits_json(const FieldCtx& F, const PointSet& pts,
                        const OrbitDecomposition& dec) {
    ojson j;
    j["q"] = F.q();
    j["field"] = field_to_json(F);
    ojson orbits = ojson::array();
    for (const OrbitRecord& o : dec.orbits) {
        ojson oj;
        oj["rep"] = point_to_json(pts.vec(o.representative));
        oj["length"] = o.length;
        oj["class"] = to_string(o.cls);
        oj["size_check"] = o.length == o.members.size();
        orbits.push_back(oj);
    }
    j["orbits"] = orbits;
    return dump(j);
}

std::string counts_json(const FieldCtx& F, const CharCounts& c) {
    ojson j;
    j["q"] = F.q();
    j["n1"] = c.n1;
    j["n2"] = c.n2;
    j["n3"] = c.n3;
    j["n4"] = c.n4;
    j["short_orbits"] = 2 * c.n1 + 2 * c.n4 + 2;
    j["long_orbits"] = c.n2 + c.n3 + 2;
    return dump(j);
}

std::string lines_json(const FieldCtx& F, const PointSet& pts, const LineSet& lines) {
    ojson j;
    j["q"] = F.q();
    j["field"] = field_to_json(F);
    ojson ls = ojson::array();
    for (std::size_t li = 0; li < lines.size(); ++li) {
        ojson lj = ojson::array();
        for (const PointIndex p : lines.line(li)) lj.push_back(point_to_json(pts.vec(p)));
        ls.push_back(lj);
    }
    j["lines"] = ls;
    return dump(j);
}

std::string points_csv(const FieldCtx& F, const PointSet& pts,
                       std::span<const PointIndex> subset) {
    (void)F;
    std::ostringstream out;
    out << "x,y,c0,c1,z\n";
    for (const PointIndex i : subset) {
        const VecV v = pts.vec(i);
        out << v.x << ',' << v.y << ',' << v.alpha.c0 << ',' << v.alpha.c1 << ',' << v.z
            << '\n';
    }
    return out.str();
}

std::string breakdown_csv(const FieldCtx& F, const PointSet& pts, const LineSet& lines,
                          const OvoidSet& M, const CaseAnalysis& cases,
                          std::optional<int> case_filter) {
    (void)F;
    (void)pts;
    std::ostringstream out;
    out << "line_key,case,c1,c2,c3,c4,c5,total\n";
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto line = lines.line(li);
        const int tag = cases.classify(line);
        if (case_filter && tag != *case_filter) continue;
        const std::array<std::uint32_t, 5> counts = intersect_breakdown(line, M);
        const std::uint32_t total = counts[0] + counts[1] + counts[2] + counts[3] + counts[4];
        out << line[0] << ':' << line[1] << ',' << tag;
        for (const std::uint32_t c : counts) out << ',' << c;
        out << ',' << total << '\n';
    }
    return out.str();
}

}  // namespace qovoid
