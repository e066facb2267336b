#pragma once

// Weight matrices with prescribed stable and antistable corners.

#include "hyperq/spectral.hpp"

#include <optional>
#include <vector>

namespace hyperq {

/// Mutually orthogonal corners, fewer than the dimension. Two or more
/// orthogonal corners require an even dimension.
class PatternSet {
public:
    /// Throws SynthesisError naming the violated condition.
    PatternSet(Index n, std::vector<SpinState> patterns);

    Index dim() const noexcept { return n_; }
    Index count() const noexcept { return static_cast<Index>(patterns_.size()); }
    const std::vector<SpinState>& patterns() const noexcept { return patterns_; }

private:
    Index n_;
    std::vector<SpinState> patterns_;
};

struct WeightedPattern {
    SpinState pattern;
    double weight;  // mu for stable, beta for antistable; must be > 0
};

struct SpectrumSpec {
    std::vector<WeightedPattern> stable;
    std::vector<WeightedPattern> antistable;
};

/// Integer inner product of two corners.
long inner_product(const SpinState& a, const SpinState& b);

/// W = sum_j (X_j X_j' - I). Zero diagonal; W X_k = (N - S) X_k.
WeightMatrix<double> hopfield_synthesize(const PatternSet& ps);

/// W = sum mu_j/N X_j X_j' - sum beta_j/N Y_j Y_j'. The diagonal is left as built.
WeightMatrix<double> spectral_synthesize(const SpectrumSpec& spec);

/// sum mu == sum beta, i.e. the synthesized matrix has zero trace.
bool trace_balanced(const SpectrumSpec& spec, double tol = 1e-12);

/// An orthogonal pair of corners exists exactly when n is even.
bool orthogonal_pattern_exists(Index n);

/// Rows of the Sylvester-Hadamard matrix of order n (n a power of two).
std::vector<SpinState> hadamard_patterns(Index n);

/// If W = gamma f f' with gamma > 0 (within 1e-8), returns sign(f).
std::optional<SpinState> rank_one_global(const WeightMatrix<double>& W);

/// Eq. x = sign(Wx) / x = -sign(Wx) on a matrix with possibly nonzero diagonal;
/// zero components accept either spin.
bool satisfies_stable(const WeightMatrix<double>& W, const SpinState& x);
bool satisfies_antistable(const WeightMatrix<double>& W, const SpinState& x);

}  // namespace hyperq
