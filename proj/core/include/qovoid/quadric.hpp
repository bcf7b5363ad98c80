#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qovoid/gf.hpp"

namespace qovoid {

// Vector of V = F_q x F_q x F_{q^2} x F_q, a 5-dimensional F_q-space.
struct VecV {
    FqElem x = 0;
    FqElem y = 0;
    Fq2Elem alpha{};
    FqElem z = 0;
    friend bool operator==(const VecV&, const VecV&) = default;
};

// Projective point in canonical form: the first nonzero coordinate in scan
// order (x, y, c0(alpha), c1(alpha), z) equals 1.
struct ProjPoint {
    VecV rep{};
    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

using PointIndex = std::uint32_t;

// Q((x,y,alpha,z)) = x*y + alpha^{q+1} + z^2.
FqElem eval_Q(const FieldCtx& F, const VecV& v);

// Polar form of Q: B(u,v) = x*y' + x'*y + alpha*alpha'^q + alpha^q*alpha' + 2*z*z'.
FqElem eval_B(const FieldCtx& F, const VecV& u, const VecV& v);

ProjPoint normalize(const FieldCtx& F, const VecV& v);

// Packs the five coordinate codes into one integer; integer order of packed
// codes equals lexicographic order in scan order (the global point ordering).
std::uint64_t pack_point(const FieldCtx& F, const VecV& v);
VecV unpack_point(const FieldCtx& F, std::uint64_t code);

// All singular points of Q(4,q), sorted by the global point ordering.
class PointSet {
public:
    static PointSet enumerate(const FieldCtx& F);

    std::size_t size() const { return codes_.size(); }
    VecV vec(PointIndex i) const;
    std::uint64_t code(PointIndex i) const { return codes_[i]; }
    std::optional<PointIndex> find(const ProjPoint& P) const;
    // Throws if P is not a singular point.
    PointIndex index_of(const ProjPoint& P) const;
    // Coordinate array along one axis (0:x, 1:y, 2:c0, 3:c1, 4:z).
    std::span<const FqElem> axis(int a) const { return soa_[a]; }

private:
    // Open-addressing map from packed code to point index.
    struct CodeIndex {
        std::vector<std::uint64_t> keys;  // code+1; 0 marks an empty slot
        std::vector<PointIndex> vals;
        std::uint64_t mask = 0;
        void build(const std::vector<std::uint64_t>& codes);
        std::optional<PointIndex> find(std::uint64_t code) const;
    };

    std::uint32_t q_ = 0;
    std::vector<std::uint64_t> codes_;
    std::vector<FqElem> soa_[5];
    CodeIndex index_;
};

// Totally singular lines, each stored as its sorted (q+1)-point index list.
// The canonical line key is the pair of the two smallest point indices.
class LineSet {
public:
    static LineSet enumerate(const FieldCtx& F, const PointSet& pts, unsigned workers = 1);

    std::size_t size() const { return count_; }
    unsigned points_per_line() const { return stride_; }
    std::span<const PointIndex> line(std::size_t i) const {
        return {flat_.data() + i * stride_, stride_};
    }
    std::pair<PointIndex, PointIndex> key(std::size_t i) const {
        const PointIndex* l = flat_.data() + i * stride_;
        return {l[0], l[1]};
    }
    std::optional<std::size_t> find_by_key(PointIndex a, PointIndex b) const;

private:
    std::vector<PointIndex> flat_;
    std::size_t count_ = 0;
    unsigned stride_ = 0;
};

// The totally singular line through two distinct perpendicular singular
// points, as a sorted index list.  Throws NotCollinearError if B != 0.
std::vector<PointIndex> line_through(const FieldCtx& F, const PointSet& pts,
                                     PointIndex a, PointIndex b);

}  // namespace qovoid
