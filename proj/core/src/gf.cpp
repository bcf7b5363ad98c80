#include "qovoid/gf.hpp"

#include <algorithm>
#include <numeric>

namespace qovoid {

namespace {

using Digits = std::vector<std::uint32_t>;  // coefficient tuple, c0 first

Digits to_digits(std::uint32_t code, std::uint32_t p, std::uint32_t k) {
    Digits d(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
    std::uint32_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
    return code;
}

// Remainder of f modulo the monic polynomial g, coefficients in F_p.
Digits poly_mod(Digits f, const Digits& g, std::uint32_t p) {
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const std::uint32_t lead = f.back();
        if (lead != 0) {
            const std::size_t shift = f.size() - 1 - dg;
            for (std::size_t i = 0; i <= dg; ++i) {
                const std::uint64_t t = std::uint64_t(lead) * g[i] % p;
                f[shift + i] = std::uint32_t((f[shift + i] + p - t) % p);
            }
        }
        f.pop_back();
    }
    return f;
}

bool poly_is_zero(const Digits& f) {
    return std::all_of(f.begin(), f.end(), [](std::uint32_t c) { return c == 0; });
}

// Brute-force irreducibility: f (monic, degree k >= 2) has no monic divisor
// of degree 1..k/2.
bool poly_irreducible(const Digits& f, std::uint32_t p) {
    const std::uint32_t k = std::uint32_t(f.size()) - 1;
    for (std::uint32_t d = 1; 2 * d <= k; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t m = 0; m < count; ++m) {
            Digits g = to_digits(std::uint32_t(m), p, d);
            g.push_back(1);  // monic of degree d
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree k over F_p, where
// tuples (c_{k-1},...,c0) are compared as integers.
std::vector<FqElem> find_base_poly(std::uint32_t p, std::uint32_t k) {
    if (k == 1) return {0, 1};  // X
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
        Digits f = to_digits(std::uint32_t(m), p, k);
        f.push_back(1);
        if (poly_irreducible(f, p)) {
            std::vector<FqElem> out(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) out[i] = FqElem(f[i]);
            return out;
        }
    }
    throw InternalError("no irreducible polynomial found");  // cannot happen
}

}  // namespace

bool FieldCtx::is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    if (!is_prime(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    if (p == 2) throw EvenCharacteristicError();
    if (k < 1) throw Error("k must be at least 1");

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxQ)
            throw FieldTooLargeError("q = p^k exceeds the supported bound " +
                                     std::to_string(kMaxQ));
    }
    q_ = std::uint32_t(q);

    base_poly_ = find_base_poly(p_, k_);
    build_tables();

    // Bootstrap the quadratic character via x^{(q-1)/2}; the eta table then
    // caches the result for every code.
    const FqElem minus_one = neg_[1];
    eta_.assign(q_, 0);
    for (std::uint32_t x = 1; x < q_; ++x) {
        const FqElem r = pow(FqElem(x), (q_ - 1) / 2);
        if (r == 1)
            eta_[x] = 1;
        else if (r == minus_one)
            eta_[x] = -1;
        else
            throw InternalError("x^{(q-1)/2} outside {1,-1}");
    }

    for (std::uint32_t x = 1; x < q_; ++x) {
        if (eta_[x] == -1) {
            nonsq_ = FqElem(x);
            break;
        }
    }
    if (nonsq_ == 0) throw InternalError("no nonsquare found in F_q");

    omega_ = find_primitive_element();
    gamma_ = pow(omega_, (q_ - 1) / 2);
    if (norm(gamma_) != minus_one) throw InternalError("gamma^{q+1} != -1");
}

void FieldCtx::build_tables() {
    const std::size_t q = q_;
    neg_.resize(q);
    inv_.resize(q);
    add_.resize(q * q);
    mul_.resize(q * q);

    std::vector<Digits> digits(q);
    for (std::uint32_t a = 0; a < q; ++a) digits[a] = to_digits(a, p_, k_);

    for (std::uint32_t a = 0; a < q; ++a) {
        Digits d = digits[a];
        for (auto& c : d) c = (p_ - c) % p_;
        neg_[a] = FqElem(from_digits(d, p_));
    }

    for (std::uint32_t a = 0; a < q; ++a) {
        const Digits& da = digits[a];
        for (std::uint32_t b = 0; b <= a; ++b) {
            Digits s = digits[b];
            for (std::uint32_t i = 0; i < k_; ++i) s[i] = (s[i] + da[i]) % p_;
            const FqElem r = FqElem(from_digits(s, p_));
            add_[std::size_t(a) * q + b] = r;
            add_[std::size_t(b) * q + a] = r;
        }
    }

    Digits f(base_poly_.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = base_poly_[i];
    for (std::uint32_t a = 0; a < q; ++a) {
        // shifts[j] = a * X^j mod f
        std::vector<Digits> shifts(k_);
        shifts[0] = digits[a];
        for (std::uint32_t j = 1; j < k_; ++j) {
            Digits s(k_ + 1, 0);
            for (std::uint32_t i = 0; i < k_; ++i) s[i + 1] = shifts[j - 1][i];
            shifts[j] = poly_mod(std::move(s), f, p_);
            shifts[j].resize(k_, 0);
        }
        for (std::uint32_t b = 0; b <= a; ++b) {
            const Digits& db = digits[b];
            Digits acc(k_, 0);
            for (std::uint32_t j = 0; j < k_; ++j) {
                if (db[j] == 0) continue;
                for (std::uint32_t i = 0; i < k_; ++i)
                    acc[i] = std::uint32_t((acc[i] + std::uint64_t(db[j]) * shifts[j][i]) % p_);
            }
            const FqElem r = FqElem(from_digits(acc, p_));
            mul_[std::size_t(a) * q + b] = r;
            mul_[std::size_t(b) * q + a] = r;
        }
    }

    inv_[0] = 0;  // unused; inv(0) throws
    for (std::uint32_t a = 1; a < q; ++a) {
        const FqElem y = pow(FqElem(a), q_ - 2);
        if (mul(FqElem(a), y) != 1) throw InternalError("inverse table inconsistent");
        inv_[a] = y;
    }
}

FqElem FieldCtx::pow(FqElem x, std::uint64_t e) const {
    FqElem r = 1;
    FqElem base = x;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Fq2Elem FieldCtx::pow(Fq2Elem x, std::uint64_t e) const {
    Fq2Elem r{1, 0};
    Fq2Elem base = x;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Fq2Elem FieldCtx::inv(Fq2Elem a) const {
    const FqElem n = norm(a);
    if (n == 0) throw DivisionByZeroError();
    const FqElem d = inv(n);
    return {mul(a.c0, d), mul(neg_[a.c1], d)};
}

FqElem FieldCtx::from_int(std::int64_t n) const {
    std::int64_t r = n % std::int64_t(p_);
    if (r < 0) r += p_;
    return FqElem(r);
}

FqElem FieldCtx::add_poly(FqElem a, FqElem b) const {
    Digits da = to_digits(a, p_, k_);
    Digits db = to_digits(b, p_, k_);
    for (std::uint32_t i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
    return FqElem(from_digits(da, p_));
}

FqElem FieldCtx::mul_poly(FqElem a, FqElem b) const {
    Digits da = to_digits(a, p_, k_);
    Digits db = to_digits(b, p_, k_);
    Digits prod(2 * k_ - 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
        for (std::uint32_t j = 0; j < k_; ++j)
            prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_);
    Digits f(base_poly_.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = base_poly_[i];
    Digits r = poly_mod(std::move(prod), f, p_);
    r.resize(k_, 0);
    return FqElem(from_digits(r, p_));
}

Fq2Elem FieldCtx::find_primitive_element() const {
    const std::uint64_t m = std::uint64_t(q_) * q_ - 1;
    const std::vector<std::uint64_t> factors = prime_factors(m);
    const Fq2Elem one{1, 0};
    for (std::uint32_t code = 2; code < std::uint32_t(q_) * q_; ++code) {
        const Fq2Elem a = decode2(code);
        bool primitive = pow(a, m) == one;
        for (std::size_t i = 0; primitive && i < factors.size(); ++i)
            if (pow(a, m / factors[i]) == one) primitive = false;
        if (primitive) return a;
    }
    throw InternalError("no primitive element found");  // cannot happen
}

}  // namespace qovoid
