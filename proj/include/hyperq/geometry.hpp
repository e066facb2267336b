#pragma once

// Distances between corners and between real vectors through their sign
// patterns or integer quantizations; corner weights.

#include "hyperq/core.hpp"

#include <cstdint>
#include <vector>

namespace hyperq {

enum class QuantizeRule { floor, round };

struct QuantizedVector {
    std::vector<std::int64_t> values;
    QuantizeRule rule = QuantizeRule::floor;
};

/// Number of disagreeing positions.
Index hamming_like(const SpinState& x, const SpinState& y);

/// Hamming distance between the sign patterns of x/|x| and y/|y|.
/// Throws InvalidInput for a zero vector.
Index induced_hamming(const Vector<double>& x, const Vector<double>& y,
                      ZeroRule zero_as = ZeroRule::plus_one);

/// floor, or round half away from zero.
QuantizedVector quantize(const Vector<double>& x, QuantizeRule rule = QuantizeRule::floor);

Index generalized_induced_hamming(const Vector<double>& x1, const Vector<double>& x2,
                                  QuantizeRule rule = QuantizeRule::floor);

std::int64_t induced_manhattan(const Vector<double>& x1, const Vector<double>& x2,
                               QuantizeRule rule = QuantizeRule::floor);

/// Number of +1 entries.
Index corner_weight(const SpinState& x);

/// G(k) = C(n, k) for k = 0..n. Exact; n <= 30.
std::vector<std::uint64_t> weight_distribution(Index n);

}  // namespace hyperq
