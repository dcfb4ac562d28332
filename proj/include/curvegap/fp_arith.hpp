// Prime-field arithmetic over F_p for odd primes p < 2^62.
//
// PrimeModulus carries the raw (uint64_t) arithmetic used in hot loops;
// Residue is the checked value type exposed to callers.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace curvegap {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxModulus = u64{1} << 62;

/// Deterministic primality for the full 64-bit range.
bool is_prime(u64 n);

/// Smallest prime >= n. Throws std::out_of_range if n < 2 or the result
/// would reach 2^62.
u64 next_prime(u64 n);

class ModulusMismatch : public std::invalid_argument {
public:
    ModulusMismatch(u64 a, u64 b);
};

class PrimeModulus {
public:
    /// Throws std::invalid_argument unless p is an odd prime in [3, 2^62).
    explicit PrimeModulus(u64 p);

    /// Smallest odd prime >= n.
    static PrimeModulus next_at_least(u64 n);

    u64 value() const noexcept { return p_; }
    u64 half() const noexcept { return (p_ - 1) / 2; }

    u64 reduce(i64 v) const noexcept {
        i64 r = v % static_cast<i64>(p_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
    }
    u64 reduce_u(u64 v) const noexcept { return v % p_; }

    u64 add(u64 a, u64 b) const noexcept {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const noexcept {
        return static_cast<u64>(static_cast<u128>(a) * b % p_);
    }
    u64 pow(u64 base, u64 exp) const noexcept;
    /// Throws std::domain_error on a == 0.
    u64 inv(u64 a) const;

    /// Euler's criterion, mapped to {-1, 0, 1}.
    int legendre(u64 a) const noexcept;

    /// Root in [0, (p-1)/2] when a is a square; nullopt otherwise.
    std::optional<u64> sqrt(u64 a) const noexcept;

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    u64 p_;
    // Tonelli-Shanks constants: p - 1 = q * 2^s, z a fixed non-residue.
    u64 q_ = 0;
    unsigned s_ = 0;
    u64 z_ = 0;
};

/// Canonical element of F_p.
class Residue {
public:
    Residue(i64 value, const PrimeModulus& modulus)
        : value_(modulus.reduce(value)), modulus_(modulus) {}

    static Residue from_canonical(u64 value, const PrimeModulus& modulus) {
        return Residue(modulus, value);
    }

    u64 value() const noexcept { return value_; }
    const PrimeModulus& modulus() const noexcept { return modulus_; }
    bool is_zero() const noexcept { return value_ == 0; }

    Residue pow(u64 exp) const { return Residue(modulus_, modulus_.pow(value_, exp)); }
    Residue inv() const { return Residue(modulus_, modulus_.inv(value_)); }

    friend Residue operator+(const Residue& a, const Residue& b);
    friend Residue operator-(const Residue& a, const Residue& b);
    friend Residue operator*(const Residue& a, const Residue& b);
    friend Residue operator/(const Residue& a, const Residue& b);
    friend Residue operator-(const Residue& a) { return Residue(a.modulus_, a.modulus_.neg(a.value_)); }

    friend bool operator==(const Residue&, const Residue&) = default;

private:
    Residue(const PrimeModulus& m, u64 canonical) : value_(canonical), modulus_(m) {}

    u64 value_;
    PrimeModulus modulus_;
};

inline int legendre(const Residue& a) { return a.modulus().legendre(a.value()); }

inline std::optional<Residue> sqrt_mod(const Residue& a) {
    auto r = a.modulus().sqrt(a.value());
    if (!r) return std::nullopt;
    return Residue::from_canonical(*r, a.modulus());
}

} // namespace curvegap
