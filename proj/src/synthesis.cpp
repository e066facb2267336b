#include "hyperq/synthesis.hpp"

#include <cmath>

namespace hyperq {

long inner_product(const SpinState& a, const SpinState& b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size(), "inner_product");
    return static_cast<long>(a.spins().dot(b.spins()));
}

namespace {

void require_orthogonal(Index n, const std::vector<const SpinState*>& all) {
    for (const auto* p : all)
        if (p->size() != n) throw SynthesisError("pattern dimension differs from n = " + std::to_string(n));
    if (all.size() >= 2 && n % 2 != 0)
        throw SynthesisError("parity: two or more orthogonal corners need an even dimension (n = " +
                             std::to_string(n) + ")");
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (inner_product(*all[i], *all[j]) != 0)
                throw SynthesisError("orthogonality: patterns " + std::to_string(i) + " and " +
                                     std::to_string(j) + " are not orthogonal");
}

}  // namespace

PatternSet::PatternSet(Index n, std::vector<SpinState> patterns) : n_(n), patterns_(std::move(patterns)) {
    if (n_ < 1) throw SynthesisError("dimension must be positive");
    if (patterns_.empty()) throw SynthesisError("pattern set is empty");
    if (count() >= n_)
        throw SynthesisError("capacity: S = " + std::to_string(count()) + " must be less than n = " +
                             std::to_string(n_));
    std::vector<const SpinState*> all;
    for (const auto& p : patterns_) all.push_back(&p);
    require_orthogonal(n_, all);
}

WeightMatrix<double> hopfield_synthesize(const PatternSet& ps) {
    const Index n = ps.dim();
    Matrix<double> w = Matrix<double>::Zero(n, n);
    for (const auto& p : ps.patterns()) {
        const Vector<double> x = p.as<double>();
        w.noalias() += x * x.transpose();
        w -= Matrix<double>::Identity(n, n);
    }
    return WeightMatrix<double>(std::move(w));
}

WeightMatrix<double> spectral_synthesize(const SpectrumSpec& spec) {
    if (spec.stable.empty() && spec.antistable.empty()) throw SynthesisError("spectrum spec is empty");
    const Index n = !spec.stable.empty() ? spec.stable.front().pattern.size()
                                         : spec.antistable.front().pattern.size();
    std::vector<const SpinState*> all;
    for (const auto* list : {&spec.stable, &spec.antistable})
        for (const auto& wp : *list) {
            if (!(wp.weight > 0) || !std::isfinite(wp.weight))
                throw SynthesisError("eigenvalue magnitudes (mu, beta) must be positive and finite");
            all.push_back(&wp.pattern);
        }
    require_orthogonal(n, all);

    Matrix<double> w = Matrix<double>::Zero(n, n);
    for (const auto& wp : spec.stable) {
        const Vector<double> x = wp.pattern.as<double>();
        w.noalias() += (wp.weight / double(n)) * x * x.transpose();
    }
    for (const auto& wp : spec.antistable) {
        const Vector<double> y = wp.pattern.as<double>();
        w.noalias() -= (wp.weight / double(n)) * y * y.transpose();
    }
    return WeightMatrix<double>(std::move(w));
}

bool trace_balanced(const SpectrumSpec& spec, double tol) {
    double mu = 0, beta = 0;
    for (const auto& wp : spec.stable) mu += wp.weight;
    for (const auto& wp : spec.antistable) beta += wp.weight;
    return std::abs(mu - beta) <= tol;
}

bool orthogonal_pattern_exists(Index n) {
    if (n < 1) throw InvalidInput("orthogonal_pattern_exists: n must be positive");
    return n % 2 == 0;
}

std::vector<SpinState> hadamard_patterns(Index n) {
    if (n < 1 || (n & (n - 1)) != 0) throw InvalidInput("hadamard_patterns: n must be a power of two");
    Eigen::MatrixXi h = Eigen::MatrixXi::Ones(1, 1);
    while (h.rows() < n) {
        const Index m = h.rows();
        Eigen::MatrixXi next(2 * m, 2 * m);
        next << h, h, h, -h;
        h = std::move(next);
    }
    std::vector<SpinState> rows;
    for (Index i = 0; i < n; ++i) rows.emplace_back(Eigen::VectorXi(h.row(i).transpose()));
    return rows;
}

std::optional<SpinState> rank_one_global(const WeightMatrix<double>& W) {
    const auto eig = symmetric_eigen(W);
    const Index n = W.size();
    const double scale = std::max(1.0, W.entries().norm());
    Index nonzero = 0;
    for (Index k = 0; k < n; ++k)
        if (std::abs(eig.values(k)) > 1e-8 * scale) ++nonzero;
    const double gamma = eig.values(n - 1);
    if (nonzero != 1 || !(gamma > 1e-8 * scale)) return std::nullopt;
    Vector<double> f = eig.vectors.col(n - 1);
    // f is determined up to sign; report the one with a positive first nonzero entry
    for (Index i = 0; i < n; ++i) {
        if (std::abs(f(i)) > 1e-12) {
            if (f(i) < 0) f = -f;
            break;
        }
    }
    if ((W.entries() - gamma * f * f.transpose()).norm() > 1e-8 * scale) return std::nullopt;
    return sign_corner(f, ZeroRule::plus_one);
}

bool satisfies_stable(const WeightMatrix<double>& W, const SpinState& x) {
    if (x.size() != W.size()) throw DimensionMismatch(W.size(), x.size(), "satisfies_stable");
    const Vector<double> v = x.as<double>();
    return ((v.array() * (W.entries() * v).array()) >= 0.0).all();
}

bool satisfies_antistable(const WeightMatrix<double>& W, const SpinState& x) {
    if (x.size() != W.size()) throw DimensionMismatch(W.size(), x.size(), "satisfies_antistable");
    const Vector<double> v = x.as<double>();
    return ((v.array() * (W.entries() * v).array()) <= 0.0).all();
}

}  // namespace hyperq
