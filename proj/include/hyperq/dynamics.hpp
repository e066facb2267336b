#pragma once

// Discrete-time Hopfield dynamics: serial (one node at a time) and fully
// parallel (all nodes at once) updates of x_i <- Sign(sum_j W_ij x_j - T_i).

#include "hyperq/quadform.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

namespace hyperq {

enum class UpdateMode { serial, parallel };
enum class Termination { stable, two_cycle, budget_exhausted };

inline std::string_view to_string(UpdateMode m) {
    return m == UpdateMode::serial ? "serial" : "parallel";
}

inline std::string_view to_string(Termination t) {
    switch (t) {
    case Termination::stable: return "stable";
    case Termination::two_cycle: return "two_cycle";
    case Termination::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

inline std::uint64_t default_max_sweeps(Index n) { return 4 * static_cast<std::uint64_t>(n) + 64; }

struct UpdatePolicy {
    enum class Order { cyclic, permuted };

    Order order = Order::cyclic;
    std::uint64_t permutation_seed = 0;
    ZeroRule zero_rule = ZeroRule::keep;
    /// 0 selects the default 4N + 64.
    std::uint64_t max_sweeps = 0;

    std::uint64_t sweep_budget(Index n) const {
        return max_sweeps == 0 ? default_max_sweeps(n) : max_sweeps;
    }

    /// Node visiting order for one serial sweep. Fixed for a given seed.
    std::vector<Index> visit_order(Index n) const {
        std::vector<Index> order_(static_cast<std::size_t>(n));
        std::iota(order_.begin(), order_.end(), Index{0});
        if (order == Order::permuted) {
            std::mt19937_64 rng(permutation_seed);
            std::shuffle(order_.begin(), order_.end(), rng);
        }
        return order_;
    }
};

struct TrajectoryPoint {
    SpinState state;
    double energy;
};

struct RunReport {
    UpdateMode mode = UpdateMode::serial;
    Termination termination = Termination::budget_exhausted;
    std::vector<TrajectoryPoint> trajectory;
    std::uint64_t sweeps_used = 0;
    std::uint64_t flips = 0;

    const SpinState& initial_state() const { return trajectory.front().state; }
    const SpinState& final_state() const { return trajectory.back().state; }
    double final_energy() const { return trajectory.back().energy; }
};

/// sum_j W_ij x_j - T_i
template <typename Scalar>
Scalar local_field(const Network<Scalar>& net, const SpinState& x, Index i) {
    if (x.size() != net.size()) throw DimensionMismatch(net.size(), x.size(), "local_field");
    if (i < 0 || i >= net.size())
        throw InvalidInput("local_field: node index " + std::to_string(i) + " out of range");
    return net.W().row(i).dot(x.as<Scalar>()) - net.T()(i);
}

template <typename Scalar>
Vector<Scalar> local_fields(const Network<Scalar>& net, const SpinState& x) {
    if (x.size() != net.size()) throw DimensionMismatch(net.size(), x.size(), "local_fields");
    return net.W() * x.as<Scalar>() - net.T();
}

/// Single-node serial update. Returns true if spin i flipped.
template <typename Scalar>
bool update_node(const Network<Scalar>& net, SpinState& x, Index i, ZeroRule rule) {
    const int next = sign_of(local_field(net, x, i), rule, x[i]);
    if (next == x[i]) return false;
    x.set(i, next);
    return true;
}

struct SweepResult {
    SpinState state;
    bool changed = false;
    std::uint64_t flips = 0;
};

/// Visits every node once in policy order, updating in place.
template <typename Scalar>
SweepResult serial_sweep(const Network<Scalar>& net, SpinState x, const UpdatePolicy& policy) {
    if (x.size() != net.size()) throw DimensionMismatch(net.size(), x.size(), "serial_sweep");
    SweepResult out;
    for (Index i : policy.visit_order(net.size())) {
        if (update_node(net, x, i, policy.zero_rule)) ++out.flips;
    }
    out.changed = out.flips > 0;
    out.state = std::move(x);
    return out;
}

template <typename Scalar>
RunReport run_serial(const Network<Scalar>& net, SpinState x0, const UpdatePolicy& policy) {
    if (x0.size() != net.size()) throw DimensionMismatch(net.size(), x0.size(), "run_serial");
    RunReport report;
    report.mode = UpdateMode::serial;
    const double e0 = double(energy(net, x0));
    report.trajectory.push_back({x0, e0});

    const auto order = policy.visit_order(net.size());
    const auto budget = policy.sweep_budget(net.size());
    SpinState x = std::move(x0);
    while (report.sweeps_used < budget) {
        ++report.sweeps_used;
        std::uint64_t flips = 0;
        for (Index i : order)
            if (update_node(net, x, i, policy.zero_rule)) ++flips;
        if (flips == 0) {
            report.termination = Termination::stable;
            return report;
        }
        report.flips += flips;
        report.trajectory.push_back({x, double(energy(net, x))});
    }
    report.termination = Termination::budget_exhausted;
    return report;
}

/// Synchronous update of all spins.
template <typename Scalar>
SpinState parallel_step(const Network<Scalar>& net, const SpinState& x, ZeroRule rule) {
    const Vector<Scalar> h = local_fields(net, x);
    Eigen::VectorXi next(x.size());
    for (Index i = 0; i < x.size(); ++i) next(i) = sign_of(h(i), rule, x[i]);
    return SpinState(std::move(next));
}

/// Runs synchronous steps until x(t) = x(t-1) (stable) or x(t) = x(t-2)
/// (two-cycle). max_sweeps bounds the number of steps.
template <typename Scalar>
RunReport run_parallel(const Network<Scalar>& net, SpinState x0, const UpdatePolicy& policy) {
    if (x0.size() != net.size()) throw DimensionMismatch(net.size(), x0.size(), "run_parallel");
    RunReport report;
    report.mode = UpdateMode::parallel;
    report.trajectory.push_back({x0, double(energy(net, x0))});
    const auto budget = policy.sweep_budget(net.size());
    while (report.sweeps_used < budget) {
        ++report.sweeps_used;
        const auto& traj = report.trajectory;
        SpinState next = parallel_step(net, traj.back().state, policy.zero_rule);
        if (next == traj.back().state) {
            report.termination = Termination::stable;
            return report;
        }
        for (Index i = 0; i < next.size(); ++i)
            if (next[i] != traj.back().state[i]) ++report.flips;
        const bool cycle = traj.size() >= 2 && next == traj[traj.size() - 2].state;
        const double e = double(energy(net, next));
        report.trajectory.push_back({std::move(next), e});
        if (cycle) {
            report.termination = Termination::two_cycle;
            return report;
        }
    }
    report.termination = Termination::budget_exhausted;
    return report;
}

/// Fixed point of the update rule. Under ZeroRule::keep a zero field accepts
/// either spin; plus_one / minus_one require that spin at a zero field.
template <typename Scalar>
bool is_stable(const Network<Scalar>& net, const SpinState& x, ZeroRule rule = ZeroRule::keep) {
    const Vector<Scalar> h = local_fields(net, x);
    for (Index i = 0; i < x.size(); ++i)
        if (sign_of(h(i), rule, x[i]) != x[i]) return false;
    return true;
}

template <typename Scalar>
bool is_stable(const Network<Scalar>& net, const SpinState& x, const UpdatePolicy& policy) {
    return is_stable(net, x, policy.zero_rule);
}

/// x_i * field_i <= 0 everywhere. Defined for pure forms only.
template <typename Scalar>
bool is_antistable(const Network<Scalar>& net, const SpinState& x) {
    if (net.has_threshold())
        throw InvalidInput("is_antistable: defined only for networks with zero thresholds");
    const Vector<Scalar> h = local_fields(net, x);
    for (Index i = 0; i < x.size(); ++i)
        if (Scalar(x[i]) * h(i) > Scalar(0)) return false;
    return true;
}

}  // namespace hyperq
