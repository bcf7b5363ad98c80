#include "qovoid/ovoid.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace qovoid {

OvoidParams params_from_t(const FieldCtx& F, FqElem t) {
    if (t == 0) throw Error("t must be nonzero");
    if (F.pow(t, 4) == 1)
        throw NoSolutionError("t^4 = 1: the pair (a, b) would degenerate (a*b = 0)");
    const FqElem ti = F.inv(t);
    const FqElem half = F.inv(F.from_int(2));
    OvoidParams p;
    p.a = F.mul(F.sub(ti, t), half);
    p.b = F.mul(F.add(ti, t), half);
    p.t_witness = t;
    if (p.a == 0 || p.b == 0 || F.add(1, F.mul(p.a, p.a)) != F.mul(p.b, p.b))
        throw InternalError("parameter construction violated 1 + a^2 = b^2");
    return p;
}

OvoidParams find_ab(const FieldCtx& F) {
    for (std::uint32_t t = 1; t < F.q(); ++t)
        if (F.pow(FqElem(t), 4) != 1) return params_from_t(F, FqElem(t));
    throw NoSolutionError("every t in F_q^* has t^4 = 1 (q <= 5)");
}

std::vector<PointIndex> construct_T(const FieldCtx& F, const PointSet& pts,
                                    const OvoidParams& params) {
    const FqElem binv2 = F.inv(F.mul(params.b, params.b));
    std::vector<PointIndex> out;
    for (PointIndex i = 0; i < pts.size(); ++i) {
        const VecV v = pts.vec(i);
        if (v.z == 0 || v.x == 0 || v.y == 0 || v.alpha == Fq2Elem{0, 0}) continue;
        // Scale the representative so z = 1; x*y becomes x*y/z^2.
        const FqElem zi = F.inv(v.z);
        const FqElem xy = F.mul(F.mul(v.x, v.y), F.mul(zi, zi));
        if (F.quad_char(F.add(1, F.mul(binv2, xy))) == 1) out.push_back(i);
    }
    const std::uint64_t q = F.q();
    const std::uint64_t expect = (q * q - 1) * (q - 5) / 2;
    if (out.size() != expect)
        throw InternalError("|T| = " + std::to_string(out.size()) +
                            " != (q^2-1)(q-5)/2 = " + std::to_string(expect));
    return out;
}

OvoidSet construct_M(const FieldCtx& F, const PointSet& pts, const OvoidParams& params) {
    const std::uint64_t q = F.q();
    if (q % 4 != 1)
        throw UnsupportedQError("q = " + std::to_string(q) +
                                " = 3 (mod 4): this construction needs q = 1 (mod 4)");
    if (q <= 5)
        throw UnsupportedQError("q = " + std::to_string(q) +
                                ": the component T is empty, q > 5 is required");

    const Fq2Elem gamma = F.gamma();  // omega^{(q-1)/2}
    const Fq2Elem w2q2 = F.pow(F.omega(), 2 * (q + 1));
    if (!F.in_base_field(w2q2)) throw InternalError("omega^{2(q+1)} not in F_q");

    const FqElem minus1 = F.neg(1);
    const std::array<VecV, 4> orbit_reps = {
        VecV{1, minus1, {0, 0}, 1},
        VecV{1, F.neg(w2q2.c0), F.pow(F.omega(), 2), 0},
        VecV{1, 0, gamma, 1},
        VecV{1, F.neg(F.mul(params.b, params.b)), {params.a, 0}, 1},
    };

    OvoidSet M;
    M.params = params;
    M.components[0] = orbit_of(F, pts, pts.index_of(normalize(F, orbit_reps[0]))).members;
    M.components[1] = orbit_of(F, pts, pts.index_of(normalize(F, orbit_reps[1]))).members;
    M.components[2] = orbit_of(F, pts, pts.index_of(normalize(F, orbit_reps[2]))).members;
    M.components[3] = construct_T(F, pts, params);
    M.components[4] = orbit_of(F, pts, pts.index_of(normalize(F, orbit_reps[3]))).members;

    const std::array<std::uint64_t, 5> expect_size = {
        q - 1, (q * q - 1) / 2, q * q - 1, (q * q - 1) * (q - 5) / 2, (q * q - 1) / 2};
    M.comp_tag.assign(pts.size(), 0);
    for (int c = 0; c < 5; ++c) {
        if (M.components[c].size() != expect_size[c])
            throw InternalError("component " + std::to_string(c + 1) + " has size " +
                                std::to_string(M.components[c].size()) + ", expected " +
                                std::to_string(expect_size[c]));
        for (const PointIndex i : M.components[c]) {
            if (M.comp_tag[i] != 0)
                throw InternalError("components " + std::to_string(M.comp_tag[i]) + " and " +
                                    std::to_string(c + 1) + " overlap at point " +
                                    std::to_string(i));
            M.comp_tag[i] = std::uint8_t(c + 1);
        }
    }
    for (PointIndex i = 0; i < pts.size(); ++i)
        if (M.comp_tag[i] != 0) M.members.push_back(i);
    const std::uint64_t expect_total = (q - 1) * (q * q + 1) / 2;
    if (M.members.size() != expect_total)
        throw InternalError("|M| = " + std::to_string(M.members.size()) +
                            " != (q-1)(q^2+1)/2 = " + std::to_string(expect_total));
    return M;
}

OvoidReport verify_m_ovoid(const FieldCtx& F, const PointSet& pts,
                           const std::vector<PointIndex>& S, std::uint32_t m,
                           const LineSet& lines, unsigned workers) {
    if (workers < 1) workers = 1;
    std::vector<std::uint8_t> member(pts.size(), 0);
    for (const PointIndex i : S) {
        if (i >= pts.size()) throw Error("point index out of range");
        member[i] = 1;
    }

    const unsigned stride = lines.points_per_line();
    const std::size_t nlines = lines.size();
    const std::size_t chunk_lines = 1024;
    const std::size_t nchunks = (nlines + chunk_lines - 1) / chunk_lines;

    struct ChunkResult {
        std::vector<std::uint64_t> hist;
        std::vector<std::array<PointIndex, 2>> bad;
    };
    std::vector<ChunkResult> results(nchunks);
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= nchunks) break;
            ChunkResult& r = results[c];
            r.hist.assign(stride + 1, 0);
            const std::size_t lo = c * chunk_lines;
            const std::size_t hi = std::min(lo + chunk_lines, nlines);
            for (std::size_t li = lo; li < hi; ++li) {
                const std::span<const PointIndex> line = lines.line(li);
                std::uint32_t count = 0;
                for (const PointIndex p : line) count += member[p];
                r.hist[count]++;
                if (count != m && r.bad.size() < 10) r.bad.push_back({line[0], line[1]});
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();

    OvoidReport rep;
    rep.q = F.q();
    rep.m_target = m;
    rep.line_count = nlines;
    for (const ChunkResult& r : results) {
        for (std::uint32_t c = 0; c <= stride; ++c)
            if (r.hist.size() > c && r.hist[c]) rep.histogram[c] += r.hist[c];
        for (const auto& key : r.bad)
            if (rep.worst_lines.size() < 10) rep.worst_lines.push_back(key);
    }
    rep.pass = rep.histogram.size() == 1 && rep.histogram.count(m) == 1;
    return rep;
}

std::array<std::uint32_t, 5> intersect_breakdown(std::span<const PointIndex> line,
                                                 const OvoidSet& M) {
    std::array<std::uint32_t, 5> counts{};
    for (const PointIndex p : line) {
        const std::uint8_t tag = M.comp_tag[p];
        if (tag) counts[tag - 1]++;
    }
    return counts;
}

CaseAnalysis::CaseAnalysis(const FieldCtx& F, const PointSet& pts,
                           const OrbitDecomposition& dec, const OvoidParams& params)
    : F_(F), pts_(pts), dec_(dec), params_(params) {
    const Fq2Elem gamma = F.gamma();
    const std::uint64_t q = F.q();
    const std::array<VecV, 4> anchors = {
        VecV{1, 0, {0, 0}, 0},
        VecV{0, 0, gamma, 1},
        VecV{1, 0, gamma, 1},
        VecV{1, 0, F.mul(gamma, F.pow(F.omega(), q - 1)), 1},
    };
    for (int c = 0; c < 4; ++c) {
        anchor_idx_[c] = pts.index_of(normalize(F, anchors[c]));
        anchor_orbit_[c] = dec.orbit_id[anchor_idx_[c]];
    }
    // Anchors 1 and 2 must be the length-2 and length-(q+1) orbits; 3 and 4
    // are the two distinct long orbits met by the hyperplane y = 0.
    if (dec.orbits[anchor_orbit_[0]].cls != OrbitClass::Exc2 ||
        dec.orbits[anchor_orbit_[1]].cls != OrbitClass::ExcQPlus1 ||
        dec.orbits[anchor_orbit_[2]].cls != OrbitClass::Long ||
        dec.orbits[anchor_orbit_[3]].cls != OrbitClass::Long ||
        anchor_orbit_[2] == anchor_orbit_[3])
        throw InternalError("anchor orbits do not match the expected census");
    words3_ = orbit_words(F, pts, anchor_idx_[2]);
    words4_ = orbit_words(F, pts, anchor_idx_[3]);
}

int CaseAnalysis::classify(std::span<const PointIndex> line) const {
    bool hit[4] = {false, false, false, false};
    for (const PointIndex p : line) {
        const std::uint32_t id = dec_.orbit_id[p];
        for (int c = 0; c < 4; ++c)
            if (id == anchor_orbit_[c]) hit[c] = true;
    }
    for (int c = 0; c < 4; ++c)
        if (hit[c]) return c + 1;
    throw InternalError("line misses all four anchor orbits");
}

FqElem CaseAnalysis::reduced_y1(std::span<const PointIndex> line, int tag) const {
    if (tag != 3 && tag != 4) throw Error("y1 is defined for case-3/4 lines only");
    const std::vector<GroupElem>& words = (tag == 3) ? words3_ : words4_;
    PointIndex hit = UINT32_MAX;
    for (const PointIndex p : line) {
        if (dec_.orbit_id[p] == anchor_orbit_[tag - 1]) {
            if (hit != UINT32_MAX)
                throw InternalError("case-3/4 line meets its anchor orbit twice");
            hit = p;
        }
    }
    if (hit == UINT32_MAX) throw InternalError("case tag does not match the line");
    // g maps the anchor-orbit point of the line back to the anchor itself;
    // the image line then passes through the anchor representative.
    const GroupElem g = inverse(F_, words[hit]);
    FqElem y1 = 0;
    bool found = false;
    for (const PointIndex p : line) {
        const ProjPoint img = apply(F_, g, ProjPoint{pts_.vec(p)});
        if (img.rep.z != 0) continue;
        if (found) throw InternalError("reduced line meets z = 0 twice");
        if (img.rep.x != 1)
            throw InternalError("z = 0 point of a reduced case-3/4 line has x = 0");
        y1 = img.rep.y;
        found = true;
    }
    if (!found) throw InternalError("reduced line misses the hyperplane z = 0");
    if (y1 == 0) throw InternalError("case-3/4 line has y1 = 0");
    return y1;
}

std::array<std::uint32_t, 5> CaseAnalysis::expected_tuple(int tag, FqElem y1) const {
    const std::uint32_t q = F_.q();
    const std::uint32_t half = (q - 1) / 2;
    if (tag == 1) return {0, 0, half, 0, 0};
    if (tag == 2) return {0, 0, 0, half, 0};

    const FqElem b2 = F_.mul(params_.b, params_.b);
    const FqElem four_b2 = F_.mul(F_.from_int(4), b2);
    const FqElem disc = F_.mul(y1, F_.sub(four_b2, y1));
    if (disc == 0) throw InternalError("discriminant y1(4b^2 - y1) vanished");
    const std::uint32_t s = std::uint32_t((F_.quad_char(disc) + 1) / 2);
    const std::uint32_t sq = (F_.quad_char(y1) == 1) ? 1u : 0u;

    if (y1 != F_.from_int(4))
        return {0, sq, 1, (q - 3) / 2 - s - sq, s};
    // y1 = 4: the third coordinate of the line vanishes once, moving one
    // point from T into the conic component; here y1(4b^2-y1) = (4a)^2.
    if (s != 1 || sq != 1) throw InternalError("y1 = 4 line with impossible characters");
    return {1, 1, 1, (q - 3) / 2 - s - 2, s};
}

std::array<std::uint32_t, 5> CaseAnalysis::expected_tuple(std::span<const PointIndex> line) const {
    const int tag = classify(line);
    if (tag <= 2) return expected_tuple(tag, 0);
    return expected_tuple(tag, reduced_y1(line, tag));
}

}  // namespace qovoid
