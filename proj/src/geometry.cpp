#include "hyperq/geometry.hpp"

#include <cmath>
#include <cstdlib>

namespace hyperq {

Index hamming_like(const SpinState& x, const SpinState& y) {
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size(), "hamming_like");
    return (x.spins().array() != y.spins().array()).count();
}

Index induced_hamming(const Vector<double>& x, const Vector<double>& y, ZeroRule zero_as) {
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size(), "induced_hamming");
    require_finite(x, "induced_hamming");
    require_finite(y, "induced_hamming");
    const double nx = x.norm(), ny = y.norm();
    if (nx == 0 || ny == 0) throw InvalidInput("induced_hamming: zero vector has no direction");
    const ZeroRule rule = zero_as == ZeroRule::minus_one ? ZeroRule::minus_one : ZeroRule::plus_one;
    Index d = 0;
    for (Index i = 0; i < x.size(); ++i)
        if (sign_of(x(i) / nx, rule) != sign_of(y(i) / ny, rule)) ++d;
    return d;
}

QuantizedVector quantize(const Vector<double>& x, QuantizeRule rule) {
    require_finite(x, "quantize");
    QuantizedVector q;
    q.rule = rule;
    q.values.reserve(static_cast<std::size_t>(x.size()));
    for (Index i = 0; i < x.size(); ++i) {
        if (std::abs(x(i)) >= 9.0e18) throw InvalidInput("quantize: entry outside the 64-bit integer range");
        q.values.push_back(static_cast<std::int64_t>(rule == QuantizeRule::floor ? std::floor(x(i))
                                                                                  : std::round(x(i))));
    }
    return q;
}

Index generalized_induced_hamming(const Vector<double>& x1, const Vector<double>& x2, QuantizeRule rule) {
    if (x1.size() != x2.size()) throw DimensionMismatch(x1.size(), x2.size(), "generalized_induced_hamming");
    const auto a = quantize(x1, rule), b = quantize(x2, rule);
    Index d = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) d += a.values[i] != b.values[i];
    return d;
}

std::int64_t induced_manhattan(const Vector<double>& x1, const Vector<double>& x2, QuantizeRule rule) {
    if (x1.size() != x2.size()) throw DimensionMismatch(x1.size(), x2.size(), "induced_manhattan");
    const auto a = quantize(x1, rule), b = quantize(x2, rule);
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) d += std::llabs(a.values[i] - b.values[i]);
    return d;
}

Index corner_weight(const SpinState& x) { return (x.spins().array() > 0).count(); }

std::vector<std::uint64_t> weight_distribution(Index n) {
    if (n < 0 || n > 30) throw InvalidInput("weight_distribution: n must lie in [0, 30]");
    std::vector<std::uint64_t> g(static_cast<std::size_t>(n) + 1);
    g[0] = 1;
    for (Index k = 1; k <= n; ++k)
        g[std::size_t(k)] = g[std::size_t(k - 1)] * std::uint64_t(n - k + 1) / std::uint64_t(k);
    return g;
}

}  // namespace hyperq
