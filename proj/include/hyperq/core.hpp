#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperq {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Absolute tolerance for comparing corner energies.
inline constexpr double kEnergyTol = 1e-9;
// Ingestion tolerance for symmetry checks.
inline constexpr double kSymmetryTol = 1e-12;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (non-finite entries, bad shapes).
class InvalidInput : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidInput {
public:
    DimensionMismatch(Index expected, Index got, const std::string& what)
        : InvalidInput(what + ": dimension mismatch (expected " + std::to_string(expected) +
                       ", got " + std::to_string(got) + ")") {}
};

/// An iterative numeric routine ran out of budget. Carries the best residual seen.
class NumericBudgetExceeded : public Error {
public:
    NumericBudgetExceeded(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Exhaustive enumeration refused because the dimension is over budget.
class EnumerationBudgetExceeded : public Error {
public:
    using Error::Error;
};

class SynthesisError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// ---------------------------------------------------------------------------
// SpinState: a corner of the {+1,-1}^N hypercube.

class SpinState {
public:
    SpinState() = default;

    explicit SpinState(Eigen::VectorXi spins) : spins_(std::move(spins)) { validate(); }

    SpinState(std::initializer_list<int> spins) : spins_(static_cast<Index>(spins.size())) {
        Index i = 0;
        for (int s : spins) spins_(i++) = s;
        validate();
    }

    static SpinState ones(Index n) { return SpinState(Eigen::VectorXi::Ones(n), Unchecked{}); }

    /// Corner from a bit mask: bit i set means spin i is -1, so mask 0 is all-ones.
    static SpinState from_mask(std::uint64_t mask, Index n) {
        Eigen::VectorXi v(n);
        for (Index i = 0; i < n; ++i) v(i) = ((mask >> i) & 1U) ? -1 : 1;
        return SpinState(std::move(v), Unchecked{});
    }

    std::uint64_t mask() const {
        std::uint64_t m = 0;
        for (Index i = 0; i < size(); ++i)
            if (spins_(i) < 0) m |= (std::uint64_t{1} << i);
        return m;
    }

    Index size() const noexcept { return spins_.size(); }
    int operator[](Index i) const { return spins_(i); }
    int operator()(Index i) const { return spins_(i); }

    void flip(Index i) { spins_(i) = -spins_(i); }
    void set(Index i, int s) {
        if (s != 1 && s != -1) throw InvalidInput("spin values must be +1 or -1");
        spins_(i) = s;
    }

    const Eigen::VectorXi& spins() const noexcept { return spins_; }

    template <typename Scalar>
    Vector<Scalar> as() const {
        return spins_.template cast<Scalar>();
    }

    SpinState operator-() const { return SpinState(-spins_, Unchecked{}); }

    friend bool operator==(const SpinState& a, const SpinState& b) {
        return a.size() == b.size() && a.spins_ == b.spins_;
    }
    friend bool operator!=(const SpinState& a, const SpinState& b) { return !(a == b); }

    std::vector<int> to_vector() const { return {spins_.data(), spins_.data() + spins_.size()}; }

private:
    struct Unchecked {};
    SpinState(Eigen::VectorXi spins, Unchecked) : spins_(std::move(spins)) {}

    void validate() const {
        for (Index i = 0; i < spins_.size(); ++i)
            if (spins_(i) != 1 && spins_(i) != -1)
                throw InvalidInput("spin values must be +1 or -1 (entry " + std::to_string(i) +
                                   " is " + std::to_string(spins_(i)) + ")");
    }

    Eigen::VectorXi spins_;
};

/// How a zero argument of Sign is resolved.
enum class ZeroRule {
    keep,      // keep the current spin (dynamics); either spin accepted (predicates)
    plus_one,
    minus_one,
};

template <typename Scalar>
int sign_of(Scalar value, ZeroRule rule, int current = 1) {
    if (value > 0) return 1;
    if (value < 0) return -1;
    switch (rule) {
    case ZeroRule::plus_one: return 1;
    case ZeroRule::minus_one: return -1;
    case ZeroRule::keep: break;
    }
    return current;
}

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& m, const char* what) {
    if (!m.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entries");
}

}  // namespace hyperq
