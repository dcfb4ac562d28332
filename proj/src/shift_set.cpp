#include "curvegap/shift_set.hpp"

#include <algorithm>
#include <string>

namespace curvegap {

ShiftSet::ShiftSet(std::span<const i64> shifts, const PrimeModulus& modulus) : modulus_(modulus) {
    for (i64 h : shifts) {
        u64 r = modulus_.reduce(h);
        if (r == 0) throw std::invalid_argument("shift " + std::to_string(h) + " is zero mod p");
        if (contains(r)) throw std::invalid_argument("shift " + std::to_string(h) + " repeated mod p");
        shifts_.push_back(r);
    }
}

bool ShiftSet::contains(u64 h) const noexcept {
    return std::find(shifts_.begin(), shifts_.end(), h) != shifts_.end();
}

ShiftSet ShiftSet::disjoint_union(const ShiftSet& other) const {
    if (!(other.modulus_ == modulus_)) throw ModulusMismatch(modulus_.value(), other.modulus_.value());
    ShiftSet out = *this;
    for (u64 h : other.shifts_) {
        if (out.contains(h)) throw std::invalid_argument("shift sets overlap at " + std::to_string(h));
        out.shifts_.push_back(h);
    }
    return out;
}

} // namespace curvegap
