#include "curvegap/fp_arith.hpp"

#include <array>
#include <string>

namespace curvegap {

namespace {

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

u64 powmod(u64 base, u64 exp, u64 n) {
    u64 result = 1 % n;
    base %= n;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, n);
        base = mulmod(base, base, n);
        exp >>= 1;
    }
    return result;
}

// true: n is a strong probable prime to base a
bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(u64 n) {
    // First 12 primes as witnesses: exact for n < 3.3 * 10^24.
    static constexpr std::array<u64, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (u64 w : witnesses) {
        if (n == w) return true;
        if (n % w == 0) return false;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 w : witnesses)
        if (!strong_probable_prime(n, w, d, s)) return false;
    return true;
}

u64 next_prime(u64 n) {
    if (n < 2 || n >= kMaxModulus) throw std::out_of_range("next_prime: argument outside [2, 2^62)");
    for (u64 c = n; c < kMaxModulus; ++c)
        if (is_prime(c)) return c;
    throw std::out_of_range("next_prime: no prime below 2^62");
}

ModulusMismatch::ModulusMismatch(u64 a, u64 b)
    : std::invalid_argument("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}

PrimeModulus::PrimeModulus(u64 p) : p_(p) {
    if (p < 3 || p >= kMaxModulus || (p & 1) == 0 || !is_prime(p))
        throw std::invalid_argument("not an odd prime below 2^62: " + std::to_string(p));
    q_ = p - 1;
    while ((q_ & 1) == 0) {
        q_ >>= 1;
        ++s_;
    }
    z_ = 2;
    while (legendre(z_) != -1) ++z_;
}

PrimeModulus PrimeModulus::next_at_least(u64 n) { return PrimeModulus(next_prime(n < 3 ? 3 : n)); }

u64 PrimeModulus::pow(u64 base, u64 exp) const noexcept { return powmod(base, exp, p_); }

u64 PrimeModulus::inv(u64 a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("inverse of zero");
    return powmod(a, p_ - 2, p_);
}

int PrimeModulus::legendre(u64 a) const noexcept {
    a %= p_;
    if (a == 0) return 0;
    return powmod(a, (p_ - 1) / 2, p_) == 1 ? 1 : -1;
}

std::optional<u64> PrimeModulus::sqrt(u64 a) const noexcept {
    a %= p_;
    if (a == 0) return 0;
    if (legendre(a) != 1) return std::nullopt;

    u64 root;
    if ((p_ & 3) == 3) {
        root = powmod(a, (p_ + 1) / 4, p_);
    } else {
        unsigned m = s_;
        u64 c = powmod(z_, q_, p_);
        u64 t = powmod(a, q_, p_);
        root = powmod(a, (q_ + 1) / 2, p_);
        while (t != 1) {
            unsigned i = 0;
            for (u64 t2 = t; t2 != 1; t2 = mulmod(t2, t2, p_)) ++i;
            u64 b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p_);
            m = i;
            c = mulmod(b, b, p_);
            t = mulmod(t, c, p_);
            root = mulmod(root, b, p_);
        }
    }
    return root <= half() ? root : p_ - root;
}

namespace {
const PrimeModulus& common(const Residue& a, const Residue& b) {
    if (!(a.modulus() == b.modulus())) throw ModulusMismatch(a.modulus().value(), b.modulus().value());
    return a.modulus();
}
} // namespace

Residue operator+(const Residue& a, const Residue& b) {
    const auto& m = common(a, b);
    return Residue(m, m.add(a.value_, b.value_));
}

Residue operator-(const Residue& a, const Residue& b) {
    const auto& m = common(a, b);
    return Residue(m, m.sub(a.value_, b.value_));
}

Residue operator*(const Residue& a, const Residue& b) {
    const auto& m = common(a, b);
    return Residue(m, m.mul(a.value_, b.value_));
}

Residue operator/(const Residue& a, const Residue& b) {
    const auto& m = common(a, b);
    return Residue(m, m.mul(a.value_, m.inv(b.value_)));
}

} // namespace curvegap
