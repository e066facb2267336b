#pragma once

// Quadratic forms over the corners of the hypercube: canonical weight
// matrices, networks, energies, and the energy-preserving rewrites
// (symmetrization, trace removal, threshold absorption, Volterra and
// positive/negative-part forms).

#include "hyperq/core.hpp"

#include <cmath>
#include <utility>

namespace hyperq {

/// An arbitrary instance: square matrix B (any shape of symmetry, any diagonal)
/// and a threshold vector T. Energy is x'Bx - 2x'T.
template <typename Scalar>
struct RawInstance {
    Matrix<Scalar> B;
    Vector<Scalar> T;

    RawInstance(Matrix<Scalar> b, Vector<Scalar> t) : B(std::move(b)), T(std::move(t)) {
        if (B.rows() < 1 || B.rows() != B.cols())
            throw InvalidInput("instance matrix must be square with N >= 1");
        if (T.size() != B.rows()) throw DimensionMismatch(B.rows(), T.size(), "threshold vector");
        require_finite(B, "instance matrix");
        require_finite(T, "threshold vector");
    }

    explicit RawInstance(Matrix<Scalar> b)
        : RawInstance(b, Vector<Scalar>::Zero(b.rows())) {}

    Index size() const noexcept { return B.rows(); }
};

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m, double tol = kSymmetryTol) {
    if (m.rows() != m.cols()) return false;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = i + 1; j < m.cols(); ++j)
            if (std::abs(double(m(i, j) - m(j, i))) > tol) return false;
    return true;
}

/// Symmetric real matrix, optionally with an exactly zero diagonal.
template <typename Scalar>
class WeightMatrix {
public:
    WeightMatrix() = default;

    /// Throws InvalidInput if `m` is not square, finite, and symmetric within 1e-12.
    explicit WeightMatrix(Matrix<Scalar> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw InvalidInput("weight matrix must be square");
        require_finite(m_, "weight matrix");
        if (!is_symmetric(m_)) throw InvalidInput("weight matrix is not symmetric");
        // Snap to exact symmetry so downstream identities are not off by rounding.
        m_ = (0.5 * (m_ + m_.transpose())).eval();
        diag_zeroed_ = (m_.diagonal().array() == Scalar(0)).all();
    }

    static WeightMatrix zero(Index n) { return WeightMatrix(Matrix<Scalar>::Zero(n, n)); }

    const Matrix<Scalar>& entries() const noexcept { return m_; }
    Scalar operator()(Index i, Index j) const { return m_(i, j); }
    Index size() const noexcept { return m_.rows(); }
    bool diag_zeroed() const noexcept { return diag_zeroed_; }
    Scalar trace() const { return m_.trace(); }

    bool nonnegative() const { return (m_.array() >= Scalar(0)).all(); }

    friend bool operator==(const WeightMatrix& a, const WeightMatrix& b) {
        return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
    }

private:
    Matrix<Scalar> m_;
    bool diag_zeroed_ = true;
};

/// A Hopfield network: zero-diagonal symmetric weights and thresholds.
template <typename Scalar>
class Network {
public:
    Network() = default;

    Network(WeightMatrix<Scalar> w, Vector<Scalar> t) : w_(std::move(w)), t_(std::move(t)) {
        if (!w_.diag_zeroed()) throw InvalidInput("network weights must have a zero diagonal");
        if (t_.size() != w_.size()) throw DimensionMismatch(w_.size(), t_.size(), "threshold vector");
        require_finite(t_, "threshold vector");
    }

    explicit Network(WeightMatrix<Scalar> w)
        : Network(w, Vector<Scalar>::Zero(w.size())) {}

    explicit Network(Matrix<Scalar> w) : Network(WeightMatrix<Scalar>(std::move(w))) {}

    const WeightMatrix<Scalar>& weights() const noexcept { return w_; }
    const Matrix<Scalar>& W() const noexcept { return w_.entries(); }
    const Vector<Scalar>& T() const noexcept { return t_; }
    Index size() const noexcept { return w_.size(); }
    bool has_threshold() const { return (t_.array() != Scalar(0)).any(); }
    /// Zero thresholds (the diagonal is zero by construction).
    bool canonical() const { return !has_threshold(); }

    friend bool operator==(const Network& a, const Network& b) {
        return a.w_ == b.w_ && a.t_ == b.t_;
    }

private:
    WeightMatrix<Scalar> w_;
    Vector<Scalar> t_;
};

/// C = (B + B')/2. The skew-symmetric part contributes nothing to any x'Bx.
template <typename Scalar>
WeightMatrix<Scalar> symmetrize(const Matrix<Scalar>& B) {
    if (B.rows() != B.cols()) throw InvalidInput("symmetrize: matrix must be square");
    require_finite(B, "symmetrize");
    return WeightMatrix<Scalar>((0.5 * (B + B.transpose())).eval());
}

template <typename Scalar>
WeightMatrix<Scalar> symmetrize(const RawInstance<Scalar>& raw) {
    return symmetrize(raw.B);
}

template <typename Scalar>
struct ZeroDiagonalResult {
    WeightMatrix<Scalar> matrix;
    Scalar trace;
};

/// Removes the diagonal. On every corner x'Cx = trace + x'C0x.
template <typename Scalar>
ZeroDiagonalResult<Scalar> zero_diagonal(const WeightMatrix<Scalar>& C) {
    Matrix<Scalar> m = C.entries();
    Scalar trace = m.trace();
    m.diagonal().setZero();
    return {WeightMatrix<Scalar>(std::move(m)), trace};
}

/// Pure quadratic form x'Mx (M need not be symmetric).
template <typename Scalar, typename Derived>
Scalar quadratic_form(const Eigen::MatrixBase<Derived>& M, const SpinState& x) {
    if (M.rows() != x.size()) throw DimensionMismatch(M.rows(), x.size(), "quadratic form");
    const Vector<Scalar> v = x.as<Scalar>();
    return v.dot(M * v);
}

/// x'Mx - 2x'T for an arbitrary square M.
template <typename Scalar>
Scalar energy(const Matrix<Scalar>& M, const Vector<Scalar>& T, const SpinState& x) {
    if (M.rows() != x.size()) throw DimensionMismatch(M.rows(), x.size(), "energy");
    if (T.size() != x.size()) throw DimensionMismatch(T.size(), x.size(), "energy thresholds");
    const Vector<Scalar> v = x.as<Scalar>();
    return v.dot(M * v) - Scalar(2) * v.dot(T);
}

template <typename Scalar>
Scalar energy(const Network<Scalar>& net, const SpinState& x) {
    return energy<Scalar>(net.W(), net.T(), x);
}

template <typename Scalar>
Scalar energy(const RawInstance<Scalar>& raw, const SpinState& x) {
    return energy<Scalar>(raw.B, raw.T, x);
}

/// Folds thresholds into one extra node N with weights W'[i][N] = -T[i] and
/// zero threshold. The energy of [x; +1] equals x'Wx - 2x'T.
template <typename Scalar>
Network<Scalar> absorb_threshold(const Network<Scalar>& net) {
    const Index n = net.size();
    Matrix<Scalar> w = Matrix<Scalar>::Zero(n + 1, n + 1);
    w.topLeftCorner(n, n) = net.W();
    w.col(n).head(n) = -net.T();
    w.row(n).head(n) = -net.T().transpose();
    return Network<Scalar>(WeightMatrix<Scalar>(std::move(w)));
}

/// Maps a corner [x; s] of an absorbed network back to s*x.
inline SpinState project_absorbed(const SpinState& augmented) {
    const Index n = augmented.size() - 1;
    if (n < 1) throw InvalidInput("project_absorbed: augmented state too short");
    Eigen::VectorXi v = augmented.spins().head(n) * augmented[n];
    return SpinState(std::move(v));
}

/// Result of reducing an arbitrary instance to a canonical network.
template <typename Scalar>
struct Canonical {
    Network<Scalar> network;
    /// Constant removed with the diagonal: raw energy = offset + canonical energy.
    Scalar offset = 0;
    /// True when a dummy node was appended to absorb thresholds.
    bool absorbed = false;
    /// Dimension of the original instance.
    Index original_size = 0;

    /// Corner of the original instance corresponding to a canonical corner.
    SpinState to_original(const SpinState& x) const {
        return absorbed ? project_absorbed(x) : x;
    }
    /// Canonical corner corresponding to an original corner.
    SpinState from_original(const SpinState& x) const {
        if (!absorbed) return x;
        Eigen::VectorXi v(x.size() + 1);
        v << x.spins(), 1;
        return SpinState(std::move(v));
    }
};

/// Symmetrize, drop the diagonal, absorb thresholds if any remain.
template <typename Scalar>
Canonical<Scalar> canonicalize(const RawInstance<Scalar>& raw) {
    auto [c0, trace] = zero_diagonal(symmetrize(raw.B));
    Network<Scalar> net(std::move(c0), raw.T);
    Canonical<Scalar> out{net, trace, false, raw.size()};
    if (net.has_threshold()) {
        out.network = absorb_threshold(net);
        out.absorbed = true;
    }
    return out;
}

/// Canonical networks are returned unchanged.
template <typename Scalar>
Canonical<Scalar> canonicalize(const Network<Scalar>& net) {
    if (!net.has_threshold()) return {net, Scalar(0), false, net.size()};
    return {absorb_threshold(net), Scalar(0), true, net.size()};
}

/// Strictly lower-triangular V with V[i][j] = 2*C[i][j] (i > j); x'Vx = x'Cx.
template <typename Scalar>
Matrix<Scalar> volterra_form(const WeightMatrix<Scalar>& C) {
    if (!C.diag_zeroed()) throw InvalidInput("volterra_form: matrix must have a zero diagonal");
    Matrix<Scalar> v = Scalar(2) * C.entries().template triangularView<Eigen::StrictlyLower>().toDenseMatrix();
    return v;
}

template <typename Scalar>
struct LebesgueParts {
    Matrix<Scalar> b_plus;   // nonnegative entries of B in place
    Matrix<Scalar> b_minus;  // negated nonpositive entries of B in place
    WeightMatrix<Scalar> c_plus;
    WeightMatrix<Scalar> c_minus;
};

/// B = B+ - B-, and x'Bx = x'C+x - x'C-x with C+- the symmetrized parts.
template <typename Scalar>
LebesgueParts<Scalar> lebesgue_split(const Matrix<Scalar>& B) {
    require_finite(B, "lebesgue_split");
    Matrix<Scalar> plus = B.cwiseMax(Scalar(0));
    Matrix<Scalar> minus = (-B).cwiseMax(Scalar(0));
    auto cp = symmetrize(plus);
    auto cm = symmetrize(minus);
    return {std::move(plus), std::move(minus), std::move(cp), std::move(cm)};
}

/// ||u|| * ||Bu||, an upper bound on u'Bu.
template <typename Scalar>
Scalar cauchy_schwarz_bound(const WeightMatrix<Scalar>& B, const Vector<Scalar>& u) {
    if (u.size() != B.size()) throw DimensionMismatch(B.size(), u.size(), "cauchy_schwarz_bound");
    return u.norm() * (B.entries() * u).norm();
}

}  // namespace hyperq
