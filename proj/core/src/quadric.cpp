#include "qovoid/quadric.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <thread>

namespace qovoid {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::array<FqElem, 5> coords(const VecV& v) {
    return {v.x, v.y, v.alpha.c0, v.alpha.c1, v.z};
}

inline VecV from_coords(const std::array<FqElem, 5>& c) {
    return {c[0], c[1], {c[2], c[3]}, c[4]};
}

inline std::uint64_t pack_coords(std::uint32_t q, const std::array<FqElem, 5>& c) {
    std::uint64_t code = 0;
    for (int a = 0; a < 5; ++a) code = code * q + c[a];
    return code;
}

// Sorted index list of the line through points i and j (B(i,j) = 0 assumed):
// the normalizations of u_i + t*u_j for t in F_q, together with u_j.
std::vector<PointIndex> build_line(const FieldCtx& F, const PointSet& pts,
                                   PointIndex i, PointIndex j) {
    const std::uint32_t q = F.q();
    const VecV ui = pts.vec(i);
    const VecV uj = pts.vec(j);
    const std::array<FqElem, 5> ci = coords(ui);
    const std::array<FqElem, 5> cj = coords(uj);
    std::vector<PointIndex> line;
    line.reserve(q + 1);
    line.push_back(j);
    for (std::uint32_t t = 0; t < q; ++t) {
        std::array<FqElem, 5> w;
        for (int a = 0; a < 5; ++a) w[a] = F.add(ci[a], F.mul(FqElem(t), cj[a]));
        const std::optional<PointIndex> idx = pts.find(normalize(F, from_coords(w)));
        if (!idx) throw InternalError("span of perpendicular singular points left the quadric");
        line.push_back(*idx);
    }
    std::sort(line.begin(), line.end());
    if (std::adjacent_find(line.begin(), line.end()) != line.end())
        throw InternalError("degenerate line span");
    return line;
}

}  // namespace

FqElem eval_Q(const FieldCtx& F, const VecV& v) {
    return F.add(F.add(F.mul(v.x, v.y), F.norm(v.alpha)), F.mul(v.z, v.z));
}

FqElem eval_B(const FieldCtx& F, const VecV& u, const VecV& v) {
    // alpha*alpha'^q + alpha^q*alpha' = 2*(a0*a0' - n*a1*a1') in coordinates.
    const FqElem two = F.from_int(2);
    FqElem r = F.add(F.mul(u.x, v.y), F.mul(u.y, v.x));
    r = F.add(r, F.mul(two, F.mul(u.alpha.c0, v.alpha.c0)));
    r = F.sub(r, F.mul(two, F.mul(F.ext_nonsquare(), F.mul(u.alpha.c1, v.alpha.c1))));
    r = F.add(r, F.mul(two, F.mul(u.z, v.z)));
    return r;
}

ProjPoint normalize(const FieldCtx& F, const VecV& v) {
    const std::array<FqElem, 5> c = coords(v);
    int lead = -1;
    for (int a = 0; a < 5; ++a) {
        if (c[a] != 0) {
            lead = a;
            break;
        }
    }
    if (lead < 0) throw ZeroVectorError();
    const FqElem s = F.inv(c[lead]);
    std::array<FqElem, 5> out;
    for (int a = 0; a < 5; ++a) out[a] = F.mul(c[a], s);
    return ProjPoint{from_coords(out)};
}

std::uint64_t pack_point(const FieldCtx& F, const VecV& v) {
    return pack_coords(F.q(), coords(v));
}

VecV unpack_point(const FieldCtx& F, std::uint64_t code) {
    const std::uint64_t q = F.q();
    std::array<FqElem, 5> c;
    for (int a = 4; a >= 0; --a) {
        c[a] = FqElem(code % q);
        code /= q;
    }
    return from_coords(c);
}

void PointSet::CodeIndex::build(const std::vector<std::uint64_t>& codes) {
    std::size_t cap = 16;
    while (cap < codes.size() * 2) cap <<= 1;
    keys.assign(cap, 0);
    vals.assign(cap, 0);
    mask = cap - 1;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        std::uint64_t h = splitmix64(codes[i]) & mask;
        while (keys[h] != 0) h = (h + 1) & mask;
        keys[h] = codes[i] + 1;
        vals[h] = PointIndex(i);
    }
}

std::optional<PointIndex> PointSet::CodeIndex::find(std::uint64_t code) const {
    std::uint64_t h = splitmix64(code) & mask;
    while (keys[h] != 0) {
        if (keys[h] == code + 1) return vals[h];
        h = (h + 1) & mask;
    }
    return std::nullopt;
}

PointSet PointSet::enumerate(const FieldCtx& F) {
    const std::uint32_t q = F.q();
    PointSet ps;
    ps.q_ = q;
    std::vector<std::uint64_t>& codes = ps.codes_;
    codes.reserve(std::size_t(q + 1) * (std::size_t(q) * q + 1));

    // Canonical representatives by leading coordinate; Q = 0 solved per class.
    // x = 1: y is determined, y = -(N(alpha) + z^2).
    for (std::uint32_t a0 = 0; a0 < q; ++a0)
        for (std::uint32_t a1 = 0; a1 < q; ++a1) {
            const FqElem n = F.norm({FqElem(a0), FqElem(a1)});
            for (std::uint32_t z = 0; z < q; ++z) {
                const FqElem y = F.neg(F.add(n, F.mul(FqElem(z), FqElem(z))));
                codes.push_back(pack_coords(q, {1, y, FqElem(a0), FqElem(a1), FqElem(z)}));
            }
        }
    // x = 0, y = 1: N(alpha) + z^2 = 0.
    for (std::uint32_t a0 = 0; a0 < q; ++a0)
        for (std::uint32_t a1 = 0; a1 < q; ++a1) {
            const FqElem n = F.norm({FqElem(a0), FqElem(a1)});
            for (std::uint32_t z = 0; z < q; ++z)
                if (F.add(n, F.mul(FqElem(z), FqElem(z))) == 0)
                    codes.push_back(pack_coords(q, {0, 1, FqElem(a0), FqElem(a1), FqElem(z)}));
        }
    // x = y = 0, c0(alpha) = 1.
    for (std::uint32_t a1 = 0; a1 < q; ++a1) {
        const FqElem n = F.norm({1, FqElem(a1)});
        for (std::uint32_t z = 0; z < q; ++z)
            if (F.add(n, F.mul(FqElem(z), FqElem(z))) == 0)
                codes.push_back(pack_coords(q, {0, 0, 1, FqElem(a1), FqElem(z)}));
    }
    // x = y = c0 = 0, c1(alpha) = 1.
    for (std::uint32_t z = 0; z < q; ++z)
        if (F.add(F.norm({0, 1}), F.mul(FqElem(z), FqElem(z))) == 0)
            codes.push_back(pack_coords(q, {0, 0, 0, 1, FqElem(z)}));
    // (0, 0, 0, 1) has Q = 1, never singular; kept for completeness of the scan.

    std::sort(codes.begin(), codes.end());
    if (std::adjacent_find(codes.begin(), codes.end()) != codes.end())
        throw InternalError("duplicate point in enumeration");
    const std::size_t expect = std::size_t(q + 1) * (std::size_t(q) * q + 1);
    if (codes.size() != expect)
        throw InternalError("point count " + std::to_string(codes.size()) +
                            " != (q+1)(q^2+1) = " + std::to_string(expect));

    for (int a = 0; a < 5; ++a) ps.soa_[a].resize(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const VecV v = unpack_point(F, codes[i]);
        const std::array<FqElem, 5> c = coords(v);
        for (int a = 0; a < 5; ++a) ps.soa_[a][i] = c[a];
    }
    ps.index_.build(codes);
    return ps;
}

VecV PointSet::vec(PointIndex i) const {
    return {soa_[0][i], soa_[1][i], {soa_[2][i], soa_[3][i]}, soa_[4][i]};
}

std::optional<PointIndex> PointSet::find(const ProjPoint& P) const {
    return index_.find(pack_coords(q_, coords(P.rep)));
}

PointIndex PointSet::index_of(const ProjPoint& P) const {
    const std::optional<PointIndex> i = find(P);
    if (!i) throw Error("point is not a singular point of Q(4,q)");
    return *i;
}

LineSet LineSet::enumerate(const FieldCtx& F, const PointSet& pts, unsigned workers) {
    const std::uint32_t q = F.q();
    const std::size_t n = pts.size();
    const unsigned stride = q + 1;
    if (workers < 1) workers = 1;

    // Row coefficients: B(u, v) = y_u*x_v + x_u*y_v + 2*a0_u*a0_v
    //                           - 2n*a1_u*a1_v + 2*z_u*z_v.
    const FqElem two = F.from_int(2);
    const FqElem m2n = F.neg(F.mul(two, F.ext_nonsquare()));
    const FqElem* X = pts.axis(0).data();
    const FqElem* Y = pts.axis(1).data();
    const FqElem* A0 = pts.axis(2).data();
    const FqElem* A1 = pts.axis(3).data();
    const FqElem* Z = pts.axis(4).data();

    // Rows are processed in fixed chunks pulled off an atomic counter; the
    // merge concatenates per-chunk emissions in chunk order, so the output is
    // independent of the worker count and of scheduling.
    const std::size_t chunk_rows = 64;
    const std::size_t nchunks = (n + chunk_rows - 1) / chunk_rows;
    std::vector<std::vector<PointIndex>> chunk_out(nchunks);
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        std::vector<std::uint32_t> stamp(n, 0);
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= nchunks) break;
            const std::size_t lo = c * chunk_rows;
            const std::size_t hi = std::min(lo + chunk_rows, n);
            std::vector<PointIndex>& out = chunk_out[c];
            for (std::size_t i = lo; i < hi; ++i) {
                const std::uint32_t version = std::uint32_t(i) + 1;
                const FqElem* r0 = F.mul_row(Y[i]);
                const FqElem* r1 = F.mul_row(X[i]);
                const FqElem* r2 = F.mul_row(F.mul(two, A0[i]));
                const FqElem* r3 = F.mul_row(F.mul(m2n, A1[i]));
                const FqElem* r4 = F.mul_row(F.mul(two, Z[i]));
                for (std::size_t j = i + 1; j < n; ++j) {
                    FqElem b = F.add(r0[X[j]], r1[Y[j]]);
                    b = F.add(b, r2[A0[j]]);
                    b = F.add(b, r3[A1[j]]);
                    b = F.add(b, r4[Z[j]]);
                    if (b != 0 || stamp[j] == version) continue;
                    const std::vector<PointIndex> line =
                        build_line(F, pts, PointIndex(i), PointIndex(j));
                    for (const PointIndex m : line)
                        if (m > i) stamp[m] = version;
                    if (line[0] == i) out.insert(out.end(), line.begin(), line.end());
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();

    LineSet ls;
    ls.stride_ = stride;
    std::size_t total = 0;
    for (const auto& v : chunk_out) total += v.size();
    ls.flat_.reserve(total);
    for (const auto& v : chunk_out) ls.flat_.insert(ls.flat_.end(), v.begin(), v.end());
    ls.count_ = ls.flat_.size() / stride;

    const std::size_t expect = std::size_t(q + 1) * (std::size_t(q) * q + 1);
    if (ls.count_ != expect)
        throw InternalError("line count " + std::to_string(ls.count_) +
                            " != (q+1)(q^2+1) = " + std::to_string(expect));
    for (std::size_t i = 1; i < ls.count_; ++i) {
        const PointIndex* a = ls.flat_.data() + (i - 1) * stride;
        const PointIndex* b = ls.flat_.data() + i * stride;
        if (!(a[0] < b[0] || (a[0] == b[0] && a[1] < b[1])))
            throw InternalError("line keys out of order");
    }
    return ls;
}

std::vector<PointIndex> line_through(const FieldCtx& F, const PointSet& pts,
                                     PointIndex a, PointIndex b) {
    if (a == b) throw NotCollinearError("line_through requires two distinct points");
    if (eval_B(F, pts.vec(a), pts.vec(b)) != 0)
        throw NotCollinearError("points are not perpendicular (B != 0)");
    return build_line(F, pts, a, b);
}

std::optional<std::size_t> LineSet::find_by_key(PointIndex a, PointIndex b) const {
    std::size_t lo = 0, hi = count_;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const PointIndex* l = flat_.data() + mid * stride_;
        if (l[0] < a || (l[0] == a && l[1] < b))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < count_) {
        const PointIndex* l = flat_.data() + lo * stride_;
        if (l[0] == a && l[1] == b) return lo;
    }
    return std::nullopt;
}

}  // namespace qovoid
