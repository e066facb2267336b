#pragma once

// Symmetric eigencomputation and the spectral-initialization heuristic:
// take the sign pattern of the top eigenvector as the starting corner for
// serial dynamics, with exact shortcuts for nonnegative irreducible weights
// (all-ones is optimal) and for top eigenvectors that are themselves corners.

#include "hyperq/dynamics.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <string_view>

namespace hyperq {

template <typename Scalar>
struct EigenPair {
    Scalar value = 0;
    Vector<Scalar> vector;
    Scalar residual = 0;          // ||Wv - value*v||
    std::uint64_t iterations = 0; // rotations (Jacobi) or multiplications (power)
    /// value - second largest eigenvalue, when the method exposes it.
    std::optional<Scalar> gap_to_next;
};

template <typename Scalar>
struct SymmetricEigen {
    Vector<Scalar> values;   // ascending
    Matrix<Scalar> vectors;  // column k pairs with values(k)
    std::uint64_t rotations = 0;
};

enum class EigenMethod { automatic, jacobi, power };

struct EigenOptions {
    double tol = 1e-10;
    /// 0 selects the default 10*N^2.
    std::uint64_t max_iter = 0;
    EigenMethod method = EigenMethod::automatic;
    /// automatic uses Jacobi up to this dimension, power iteration above.
    Index jacobi_limit = 512;

    std::uint64_t budget(Index n) const {
        if (max_iter != 0) return max_iter;
        const auto nn = static_cast<std::uint64_t>(std::max<Index>(n, 1));
        return std::max<std::uint64_t>(10 * nn * nn, 64);
    }
};

/// Cyclic Jacobi diagonalization. Throws NumericBudgetExceeded when the
/// rotation budget runs out before the off-diagonal mass vanishes.
template <typename Scalar>
SymmetricEigen<Scalar> jacobi_eigen(const WeightMatrix<Scalar>& W, std::uint64_t max_rotations) {
    const Index n = W.size();
    Matrix<Scalar> a = W.entries();
    Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar scale = a.norm();

    auto off_norm = [&] {
        Scalar s = 0;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
        return std::sqrt(Scalar(2) * s);
    };

    // Entries at or below this are treated as already annihilated; once a
    // whole sweep finds nothing above it the off-diagonal mass is <= eps*||W||.
    const Scalar negligible = eps * scale / Scalar(std::max<Index>(n, 1));
    std::uint64_t rotations = 0;
    for (bool rotated = true; rotated;) {
        rotated = false;
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (std::abs(apq) <= negligible) {
                    a(p, q) = a(q, p) = 0;
                    continue;
                }
                if (rotations >= max_rotations)
                    throw NumericBudgetExceeded("jacobi_eigen: rotation budget exhausted",
                                                double(off_norm()));
                ++rotations;
                rotated = true;
                const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
                const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                                 (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
                const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
                const Scalar s = t * c;
                for (Index k = 0; k < n; ++k) {
                    const Scalar akp = a(k, p);
                    const Scalar akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Index k = 0; k < n; ++k) {
                    const Scalar apk = a(p, k);
                    const Scalar aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0;
                for (Index k = 0; k < n; ++k) {
                    const Scalar vkp = v(k, p);
                    const Scalar vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](Index i, Index j) { return a(i, i) < a(j, j); });
    SymmetricEigen<Scalar> out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        out.values(k) = a(idx[std::size_t(k)], idx[std::size_t(k)]);
        out.vectors.col(k) = v.col(idx[std::size_t(k)]);
    }
    out.rotations = rotations;
    return out;
}

/// Fixes the sign ambiguity: positive component sum, else first nonzero entry positive.
template <typename Scalar>
void orient(Vector<Scalar>& v) {
    const Scalar sum = v.sum();
    if (std::abs(sum) > Scalar(1e-12)) {
        if (sum < 0) v = -v;
        return;
    }
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > Scalar(1e-12)) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

/// Power iteration on W + sI, s = max absolute row sum, so the dominant
/// eigenvalue of the shifted matrix is the algebraically largest of W.
template <typename Scalar>
EigenPair<Scalar> power_max_eigenpair(const WeightMatrix<Scalar>& W, double tol,
                                      std::uint64_t max_iter) {
    const Index n = W.size();
    const Matrix<Scalar>& w = W.entries();
    const Scalar shift = w.cwiseAbs().rowwise().sum().maxCoeff();
    // Deterministic start with no special alignment to structured eigenvectors.
    Vector<Scalar> v(n);
    for (Index i = 0; i < n; ++i) v(i) = Scalar(1) + Scalar(0.1) * std::sin(Scalar(i + 1));
    v.normalize();

    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (std::uint64_t it = 1; it <= max_iter; ++it) {
        Vector<Scalar> wv = w * v;
        const Scalar lambda = v.dot(wv);
        const Scalar residual = (wv - lambda * v).norm();
        best = std::min(best, residual);
        if (residual <= Scalar(tol)) {
            orient(v);
            return {lambda, v, residual, it, std::nullopt};
        }
        Vector<Scalar> next = wv + shift * v;
        const Scalar norm = next.norm();
        if (norm == Scalar(0)) {  // W = 0 with s = 0
            orient(v);
            return {Scalar(0), v, Scalar(0), it, std::nullopt};
        }
        v = next / norm;
    }
    throw NumericBudgetExceeded("power iteration did not converge within " +
                                    std::to_string(max_iter) + " iterations",
                                double(best));
}

template <typename Scalar>
SymmetricEigen<Scalar> symmetric_eigen(const WeightMatrix<Scalar>& W, const EigenOptions& opt = {}) {
    return jacobi_eigen(W, opt.budget(W.size()));
}

/// Eigenpair of the algebraically largest eigenvalue, oriented by `orient`.
template <typename Scalar>
EigenPair<Scalar> max_eigenpair(const WeightMatrix<Scalar>& W, const EigenOptions& opt = {}) {
    if (!(opt.tol > 0)) throw InvalidInput("max_eigenpair: tolerance must be positive");
    const Index n = W.size();
    if (n < 1) throw InvalidInput("max_eigenpair: empty matrix");
    const bool use_jacobi = opt.method == EigenMethod::jacobi ||
                            (opt.method == EigenMethod::automatic && n <= opt.jacobi_limit);
    if (!use_jacobi) return power_max_eigenpair(W, opt.tol, opt.budget(n));

    const auto eig = jacobi_eigen(W, opt.budget(n));
    EigenPair<Scalar> out;
    out.value = eig.values(n - 1);
    out.vector = eig.vectors.col(n - 1).normalized();
    orient(out.vector);
    out.residual = (W.entries() * out.vector - out.value * out.vector).norm();
    out.iterations = eig.rotations;
    if (n >= 2) out.gap_to_next = eig.values(n - 1) - eig.values(n - 2);
    if (out.residual > Scalar(opt.tol))
        throw NumericBudgetExceeded("max_eigenpair: residual above tolerance", double(out.residual));
    return out;
}

/// Componentwise sign with zeros mapped per `zero_as` (keep maps to +1).
template <typename Scalar>
SpinState sign_corner(const Vector<Scalar>& v, ZeroRule zero_as = ZeroRule::plus_one) {
    require_finite(v, "sign_corner");
    Eigen::VectorXi s(v.size());
    for (Index i = 0; i < v.size(); ++i) s(i) = sign_of(v(i), zero_as, 1);
    return SpinState(std::move(s));
}

/// Connectivity of the support graph (nonzero off-diagonal entries).
template <typename Scalar>
bool is_irreducible(const WeightMatrix<Scalar>& W) {
    const Index n = W.size();
    if (n <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<Index> todo;
    todo.push(0);
    seen[0] = 1;
    Index reached = 1;
    while (!todo.empty()) {
        const Index u = todo.front();
        todo.pop();
        for (Index v = 0; v < n; ++v) {
            if (v == u || seen[std::size_t(v)] || W(u, v) == Scalar(0)) continue;
            seen[std::size_t(v)] = 1;
            ++reached;
            todo.push(v);
        }
    }
    return reached == n;
}

struct EigencornerCheck {
    bool is_eigenvector = false;
    double rho = 0;
    bool stable = false;
    bool antistable = false;
};

/// Whether Wx = rho*x (relative tolerance 1e-8). Stability of x is evaluated
/// directly on W so that a positive rho can be confirmed to give a stable
/// corner and a negative one an antistable corner.
template <typename Scalar>
EigencornerCheck is_eigencorner_stable(const WeightMatrix<Scalar>& W, const SpinState& x) {
    if (x.size() != W.size()) throw DimensionMismatch(W.size(), x.size(), "is_eigencorner_stable");
    const Vector<Scalar> v = x.as<Scalar>();
    const Vector<Scalar> wx = W.entries() * v;
    EigencornerCheck out;
    const Scalar rho = v.dot(wx) / Scalar(x.size());
    out.rho = double(rho);
    out.is_eigenvector = (wx - rho * v).norm() <= Scalar(1e-8) * std::max(Scalar(1), wx.norm());
    out.stable = ((v.array() * wx.array()) >= Scalar(0)).all();
    out.antistable = ((v.array() * wx.array()) <= Scalar(0)).all();
    return out;
}

enum class Shortcut { none, perron, eigencorner };

inline std::string_view to_string(Shortcut s) {
    switch (s) {
    case Shortcut::none: return "none";
    case Shortcut::perron: return "perron";
    case Shortcut::eigencorner: return "eigencorner";
    }
    return "unknown";
}

/// Top-eigenspace degeneracy threshold for the report flag.
inline constexpr double kDegenerateGap = 1e-8;

template <typename Scalar>
struct SpectralSolveReport {
    EigenPair<Scalar> eigenpair;
    SpinState init_corner;
    RunReport run;
    SpinState final_state;
    double final_energy = 0;
    Shortcut shortcut_used = Shortcut::none;
    bool degenerate_top = false;
};

/// Steps: top eigenvector x0, L = sign(x0), serial dynamics from L.
/// Nonnegative irreducible weights short-circuit to all-ones; an L that is
/// itself an eigenvector short-circuits to L. Global optimality is not claimed.
template <typename Scalar>
SpectralSolveReport<Scalar> spectral_solve(const Network<Scalar>& net, const UpdatePolicy& policy = {},
                                           const EigenOptions& eig = {}) {
    if (!net.canonical())
        throw InvalidInput("spectral_solve: network must be canonical (zero thresholds)");
    const ZeroRule corner_rule =
        policy.zero_rule == ZeroRule::minus_one ? ZeroRule::minus_one : ZeroRule::plus_one;

    SpectralSolveReport<Scalar> out;
    out.eigenpair = max_eigenpair(net.weights(), eig);
    out.degenerate_top = out.eigenpair.gap_to_next && double(*out.eigenpair.gap_to_next) < kDegenerateGap;
    out.init_corner = sign_corner(out.eigenpair.vector, corner_rule);

    SpinState start = out.init_corner;
    if (net.weights().nonnegative() && is_irreducible(net.weights())) {
        out.shortcut_used = Shortcut::perron;
        start = SpinState::ones(net.size());
    } else {
        const auto check = is_eigencorner_stable(net.weights(), out.init_corner);
        if (check.is_eigenvector && check.rho > 0) out.shortcut_used = Shortcut::eigencorner;
    }

    out.run = run_serial(net, start, policy);
    out.final_state = out.run.final_state();
    out.final_energy = out.run.final_energy();
    return out;
}

template <typename Scalar>
struct RayleighExpansion {
    Scalar lhs;  // y'Wy
    Scalar rhs;  // mu + 2mu (y-x0)'x0 + (y-x0)'W(y-x0)
    Scalar gap;  // rhs - mu, nonpositive for unit y
};

/// Expansion of y'Wy around the unit top eigenvector x0.
template <typename Scalar>
RayleighExpansion<Scalar> rayleigh_expansion(const WeightMatrix<Scalar>& W, const EigenPair<Scalar>& top,
                                             const Vector<Scalar>& y) {
    if (y.size() != W.size()) throw DimensionMismatch(W.size(), y.size(), "rayleigh_expansion");
    if (std::abs(double(y.norm()) - 1.0) > 1e-8)
        throw InvalidInput("rayleigh_expansion: y must have unit norm");
    const Scalar mu = top.value;
    const Vector<Scalar>& x0 = top.vector;
    const Vector<Scalar> d = y - x0;
    const Scalar gap = Scalar(2) * mu * d.dot(x0) + d.dot(W.entries() * d);
    return {y.dot(W.entries() * y), mu + gap, gap};
}

template <typename Scalar>
struct RadiusLowerBound {
    Scalar lb;   // (1/N) * sum of all entries
    Scalar tau;  // minimum absolute row sum
};

template <typename Scalar>
RadiusLowerBound<Scalar> spectral_radius_lower_bound(const WeightMatrix<Scalar>& W) {
    const auto& m = W.entries();
    return {m.sum() / Scalar(W.size()), m.cwiseAbs().rowwise().sum().minCoeff()};
}

template <typename Scalar>
struct RayleighSandwich {
    Scalar lower;  // N * mu_min
    Scalar upper;  // N * mu_max
    Scalar value;  // x'Wx
};

template <typename Scalar>
RayleighSandwich<Scalar> rayleigh_sandwich(const WeightMatrix<Scalar>& W, const SpinState& x,
                                           const EigenOptions& opt = {}) {
    if (x.size() != W.size()) throw DimensionMismatch(W.size(), x.size(), "rayleigh_sandwich");
    const auto eig = symmetric_eigen(W, opt);
    const Scalar n = Scalar(W.size());
    return {n * eig.values(0), n * eig.values(W.size() - 1), quadratic_form<Scalar>(W.entries(), x)};
}

/// (1/N) * sum of entries, on the cone of nonnegative matrices.
template <typename Scalar>
Scalar matrix_sum_norm(const Matrix<Scalar>& W) {
    if (W.rows() != W.cols() || W.rows() < 1) throw InvalidInput("matrix_sum_norm: square matrix required");
    if ((W.array() < Scalar(0)).any()) throw InvalidInput("matrix_sum_norm: negative entry");
    return W.sum() / Scalar(W.rows());
}

}  // namespace hyperq
