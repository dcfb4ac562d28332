#pragma once

#include "curvegap/fp_arith.hpp"

#include <span>
#include <vector>

namespace curvegap {

/// Shifts h_1, ..., h_r: nonzero and pairwise distinct mod p.
class ShiftSet {
public:
    explicit ShiftSet(const PrimeModulus& modulus) : modulus_(modulus) {}
    /// Reduces mod p; throws std::invalid_argument on a zero or repeated shift.
    ShiftSet(std::span<const i64> shifts, const PrimeModulus& modulus);

    const PrimeModulus& modulus() const noexcept { return modulus_; }
    const std::vector<u64>& shifts() const noexcept { return shifts_; }
    std::size_t size() const noexcept { return shifts_.size(); }
    bool empty() const noexcept { return shifts_.empty(); }
    bool contains(u64 h) const noexcept;

    /// Union with a disjoint set; throws std::invalid_argument on overlap.
    ShiftSet disjoint_union(const ShiftSet& other) const;

private:
    PrimeModulus modulus_;
    std::vector<u64> shifts_;
};

} // namespace curvegap
