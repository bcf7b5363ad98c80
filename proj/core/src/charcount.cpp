#include "qovoid/charcount.hpp"

namespace qovoid {

std::int64_t char_sum_quadratic(const FieldCtx& F, FqElem a2, FqElem a1, FqElem a0) {
    if (a2 == 0) throw Error("char_sum_quadratic requires a2 != 0");
    std::int64_t sum = 0;
    for (std::uint32_t c = 0; c < F.q(); ++c) {
        const FqElem g =
            F.add(F.mul(a2, F.mul(FqElem(c), FqElem(c))), F.add(F.mul(a1, FqElem(c)), a0));
        sum += F.quad_char(g);
    }
    const FqElem d = F.sub(F.mul(a1, a1), F.mul(F.from_int(4), F.mul(a0, a2)));
    const std::int64_t closed =
        (d != 0) ? -F.quad_char(a2) : std::int64_t(F.q() - 1) * F.quad_char(a2);
    if (sum != closed)
        throw InternalError("quadratic character sum " + std::to_string(sum) +
                            " disagrees with the closed form " + std::to_string(closed));
    return sum;
}

CharCounts square_shift_counts(const FieldCtx& F) {
    const std::uint32_t q = F.q();
    if (q % 4 != 1)
        throw UnsupportedQError("square_shift_counts requires q = 1 (mod 4); q = " +
                                std::to_string(q));
    CharCounts c;
    for (std::uint32_t x = 0; x < q; ++x) {
        const int ex = F.quad_char(FqElem(x));
        const int ex1 = F.quad_char(F.add(FqElem(x), 1));
        if (ex == 0 || ex1 == 0) continue;  // x = 0 or x = -1
        if (ex == 1 && ex1 == 1) ++c.n1;
        else if (ex == 1) ++c.n2;
        else if (ex1 == 1) ++c.n3;
        else ++c.n4;
    }
    const std::uint64_t want1 = (q - 5) / 4, want = (q - 1) / 4;
    if (c.n1 != want1 || c.n2 != want || c.n3 != want || c.n4 != want)
        throw InternalError("square-shift counts disagree with the closed forms");
    return c;
}

bool census_cross_check(const FieldCtx& F, const OrbitDecomposition& dec) {
    const CharCounts c = square_shift_counts(F);
    const std::uint64_t predicted_short = 2 * c.n1 + 2 * c.n4 + 2;
    const std::uint64_t predicted_long = c.n2 + c.n3 + 2;
    const std::uint64_t q = F.q();
    if (predicted_short != q - 1 || predicted_long != (q + 3) / 2)
        throw CensusMismatchError("character counts do not reproduce the orbit census");
    if (dec.count(OrbitClass::Short) != predicted_short)
        throw CensusMismatchError("short orbit count != 2*n1 + 2*n4 + 2");
    if (dec.count(OrbitClass::Long) != predicted_long)
        throw CensusMismatchError("long orbit count != n2 + n3 + 2");
    return true;
}

}  // namespace qovoid
