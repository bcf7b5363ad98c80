#include "qovoid/orbits.hpp"

#include <algorithm>
#include <deque>

namespace qovoid {

namespace {

void require_q1mod4(const FieldCtx& F, const char* what) {
    if (F.q() % 4 != 1)
        throw UnsupportedQError(std::string(what) +
                                " requires q = 1 (mod 4); q = " + std::to_string(F.q()));
}

VecV apply_vec(const FieldCtx& F, const GroupElem& g, VecV v) {
    if (g.tau_part) v = {v.y, v.x, F.frobenius(v.alpha), v.z};
    // lambda^{(q-1)/2} = eta(lambda) = +-1.
    Fq2Elem a = F.mul(v.alpha, g.mu);
    if (F.quad_char(g.lambda) == -1) a = F.neg(a);
    return {F.mul(v.x, g.lambda), F.mul(v.y, F.inv(g.lambda)), a, v.z};
}

}  // namespace

GroupElem identity_elem() { return GroupElem{}; }

GroupElem make_elem(const FieldCtx& F, FqElem lambda, Fq2Elem mu, unsigned tau_part) {
    if (lambda == 0) throw Error("lambda must be nonzero");
    if (F.pow(mu, (F.q() + 1) / 2) != Fq2Elem{1, 0})
        throw Error("mu^{(q+1)/2} != 1: not a valid group parameter");
    return {lambda, mu, std::uint8_t(tau_part & 1)};
}

ProjPoint apply(const FieldCtx& F, const GroupElem& g, const ProjPoint& P) {
    return normalize(F, apply_vec(F, g, P.rep));
}

PointIndex apply(const FieldCtx& F, const PointSet& pts, const GroupElem& g, PointIndex i) {
    const ProjPoint img = apply(F, g, ProjPoint{pts.vec(i)});
    const std::optional<PointIndex> idx = pts.find(img);
    if (!idx) throw InternalError("group image left the quadric");
    return *idx;
}

GroupElem compose(const FieldCtx& F, const GroupElem& a, const GroupElem& b) {
    // tau * T_{l,m} * tau = T_{l^{-1}, m^q}.
    if (a.tau_part == 0)
        return {F.mul(a.lambda, b.lambda), F.mul(a.mu, b.mu), b.tau_part};
    return {F.mul(a.lambda, F.inv(b.lambda)), F.mul(a.mu, F.frobenius(b.mu)),
            std::uint8_t(1 ^ b.tau_part)};
}

GroupElem inverse(const FieldCtx& F, const GroupElem& g) {
    if (g.tau_part == 0) return {F.inv(g.lambda), F.inv(g.mu), 0};
    return {g.lambda, F.frobenius(F.inv(g.mu)), 1};
}

std::uint64_t element_order(const FieldCtx& F, const GroupElem& g) {
    const GroupElem id = identity_elem();
    GroupElem cur = g;
    std::uint64_t n = 1;
    while (!(cur == id)) {
        cur = compose(F, cur, g);
        ++n;
        if (n > std::uint64_t(F.q()) * F.q()) throw InternalError("element order exceeds |G|");
    }
    return n;
}

std::array<GroupElem, 3> generators(const FieldCtx& F) {
    require_q1mod4(F, "the group G");
    const FqElem lambda0 = F.norm(F.omega());  // omega^{q+1}, generates F_q^*
    const Fq2Elem mu0 = F.pow(F.omega(), 2 * (std::uint64_t(F.q()) - 1));
    return {make_elem(F, lambda0, {1, 0}, 0), make_elem(F, 1, mu0, 0),
            make_elem(F, 1, {1, 0}, 1)};
}

std::vector<GroupElem> all_group_elements(const FieldCtx& F) {
    require_q1mod4(F, "the group G");
    const std::uint32_t q = F.q();
    const Fq2Elem mu0 = F.pow(F.omega(), 2 * (std::uint64_t(q) - 1));
    std::vector<GroupElem> out;
    out.reserve(std::size_t(q) * q - 1);
    for (std::uint32_t l = 1; l < q; ++l) {
        Fq2Elem mu{1, 0};
        for (std::uint32_t e = 0; e < (q + 1) / 2; ++e) {
            out.push_back({FqElem(l), mu, 0});
            out.push_back({FqElem(l), mu, 1});
            mu = F.mul(mu, mu0);
        }
    }
    return out;
}

std::vector<GroupElem> generator_closure(const FieldCtx& F) {
    const std::array<GroupElem, 3> gens = generators(F);
    // Elements keyed by (lambda, enc(mu), j) for the visited set.
    const auto key = [&](const GroupElem& g) {
        return (std::uint64_t(F.encode2(g.mu)) * F.q() + g.lambda) * 2 + g.tau_part;
    };
    std::vector<GroupElem> out{identity_elem()};
    std::vector<std::uint64_t> seen{key(identity_elem())};
    std::sort(seen.begin(), seen.end());
    std::deque<GroupElem> frontier{identity_elem()};
    while (!frontier.empty()) {
        const GroupElem g = frontier.front();
        frontier.pop_front();
        for (const GroupElem& s : gens) {
            const GroupElem h = compose(F, s, g);
            const std::uint64_t kk = key(h);
            const auto it = std::lower_bound(seen.begin(), seen.end(), kk);
            if (it == seen.end() || *it != kk) {
                seen.insert(it, kk);
                out.push_back(h);
                frontier.push_back(h);
            }
        }
    }
    return out;
}

std::string to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::Exc2: return "EXC2";
        case OrbitClass::ExcConic: return "EXC_CONIC";
        case OrbitClass::ExcQPlus1: return "EXC_QP1";
        case OrbitClass::Short: return "SHORT";
        case OrbitClass::Long: return "LONG";
    }
    return "?";
}

namespace {

OrbitClass classify_length(const FieldCtx& F, std::uint64_t len) {
    const std::uint64_t q = F.q();
    if (len == 2) return OrbitClass::Exc2;
    if (len == q - 1) return OrbitClass::ExcConic;
    if (len == q + 1) return OrbitClass::ExcQPlus1;
    if (len == (q * q - 1) / 2) return OrbitClass::Short;
    if (len == q * q - 1) return OrbitClass::Long;
    throw UnexpectedOrbitLengthError("orbit length " + std::to_string(len) +
                                     " is not one of 2, q-1, q+1, (q^2-1)/2, q^2-1");
}

std::vector<PointIndex> orbit_members(const FieldCtx& F, const PointSet& pts,
                                      PointIndex seed,
                                      const std::array<GroupElem, 3>& gens) {
    std::vector<PointIndex> members{seed};
    std::vector<bool> visited(pts.size(), false);
    visited[seed] = true;
    std::deque<PointIndex> frontier{seed};
    while (!frontier.empty()) {
        const PointIndex p = frontier.front();
        frontier.pop_front();
        for (const GroupElem& g : gens) {
            const PointIndex img = apply(F, pts, g, p);
            if (!visited[img]) {
                visited[img] = true;
                members.push_back(img);
                frontier.push_back(img);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

}  // namespace

OrbitRecord orbit_of(const FieldCtx& F, const PointSet& pts, PointIndex seed) {
    const std::array<GroupElem, 3> gens = generators(F);
    OrbitRecord rec;
    rec.members = orbit_members(F, pts, seed, gens);
    rec.representative = rec.members.front();
    rec.length = rec.members.size();
    rec.cls = classify_length(F, rec.length);
    return rec;
}

std::uint64_t OrbitDecomposition::count(OrbitClass c) const {
    std::uint64_t n = 0;
    for (const OrbitRecord& o : orbits)
        if (o.cls == c) ++n;
    return n;
}

OrbitDecomposition orbit_decomposition(const FieldCtx& F, const PointSet& pts) {
    const std::array<GroupElem, 3> gens = generators(F);
    OrbitDecomposition dec;
    dec.orbit_id.assign(pts.size(), UINT32_MAX);
    for (PointIndex i = 0; i < pts.size(); ++i) {
        if (dec.orbit_id[i] != UINT32_MAX) continue;
        OrbitRecord rec;
        rec.members = orbit_members(F, pts, i, gens);
        rec.representative = rec.members.front();  // == i: earlier seeds claimed smaller points
        rec.length = rec.members.size();
        rec.cls = classify_length(F, rec.length);
        const std::uint32_t id = std::uint32_t(dec.orbits.size());
        for (const PointIndex m : rec.members) dec.orbit_id[m] = id;
        dec.orbits.push_back(std::move(rec));
    }

    const std::uint64_t q = F.q();
    const auto expect = [&](OrbitClass c, std::uint64_t want) {
        const std::uint64_t got = dec.count(c);
        if (got != want)
            throw CensusMismatchError("expected " + std::to_string(want) + " orbits of class " +
                                      to_string(c) + ", found " + std::to_string(got));
    };
    expect(OrbitClass::Exc2, 1);
    expect(OrbitClass::ExcConic, 1);
    expect(OrbitClass::ExcQPlus1, 1);
    expect(OrbitClass::Short, q - 1);
    expect(OrbitClass::Long, (q + 3) / 2);
    return dec;
}

std::uint64_t stabilizer_order(const FieldCtx& F, const PointSet& pts, PointIndex i) {
    const OrbitRecord rec = orbit_of(F, pts, i);
    const std::uint64_t order_G = std::uint64_t(F.q()) * F.q() - 1;
    if (order_G % rec.length != 0)
        throw InternalError("orbit length does not divide |G|");
    return order_G / rec.length;
}

std::uint64_t stabilizer_order_direct(const FieldCtx& F, const PointSet& pts, PointIndex i) {
    std::uint64_t n = 0;
    for (const GroupElem& g : all_group_elements(F))
        if (apply(F, pts, g, i) == i) ++n;
    return n;
}

bool is_short_predicate(const FieldCtx& F, const ProjPoint& P) {
    const VecV& v = P.rep;
    if (v.x == 0 || v.y == 0 || v.alpha == Fq2Elem{0, 0} || v.z == 0)
        throw PredicateInapplicableError(
            "the short-orbit test needs x, y, alpha, z all nonzero");
    // Scale so z = 1: x*y becomes x*y/z^2.
    const FqElem zi = F.inv(v.z);
    const FqElem xy = F.mul(F.mul(v.x, v.y), F.mul(zi, zi));
    return F.quad_char(F.mul(xy, F.add(1, xy))) == 1;
}

ProjPoint apply_sigma(const FieldCtx& F, const ProjPoint& P) {
    return normalize(F, {P.rep.y, P.rep.x, P.rep.alpha, P.rep.z});
}

PointIndex apply_sigma(const FieldCtx& F, const PointSet& pts, PointIndex i) {
    const std::optional<PointIndex> idx = pts.find(apply_sigma(F, ProjPoint{pts.vec(i)}));
    if (!idx) throw InternalError("sigma image left the quadric");
    return *idx;
}

std::vector<GroupElem> orbit_words(const FieldCtx& F, const PointSet& pts, PointIndex anchor) {
    const std::array<GroupElem, 3> gens = generators(F);
    std::vector<GroupElem> words(pts.size());
    std::vector<bool> visited(pts.size(), false);
    visited[anchor] = true;
    std::deque<PointIndex> frontier{anchor};
    while (!frontier.empty()) {
        const PointIndex p = frontier.front();
        frontier.pop_front();
        for (const GroupElem& g : gens) {
            const PointIndex img = apply(F, pts, g, p);
            if (!visited[img]) {
                visited[img] = true;
                words[img] = compose(F, g, words[p]);
                frontier.push_back(img);
            }
        }
    }
    return words;
}

}  // namespace qovoid
