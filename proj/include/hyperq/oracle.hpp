#pragma once

// Exhaustive ground truth over the corners of the hypercube, plus a
// statistical audit of the spectral heuristic against it.

#include "hyperq/graphcut.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hyperq {

/// Largest dimension the enumerators accept.
inline constexpr Index kMaxEnumerationDim = 24;

/// Everything about every corner of one instance. Corners are stored as
/// masks (bit i set means spin i is -1) in ascending order.
struct CornerCensus {
    Index n = 0;
    double global_max = 0;
    std::vector<std::uint64_t> argmax;
    double global_min = 0;
    std::vector<std::uint64_t> argmin;
    std::vector<std::uint64_t> stable;
    /// Empty when thresholds are nonzero (antistability is a pure-form notion).
    std::vector<std::uint64_t> antistable;
    std::uint64_t corners_evaluated = 0;

    SpinState state(std::uint64_t mask) const { return SpinState::from_mask(mask, n); }
    std::vector<SpinState> states(const std::vector<std::uint64_t>& masks) const;
};

struct CensusOptions {
    /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned workers = 0;
    ZeroRule zero_rule = ZeroRule::keep;
};

/// Census of x'Mx - 2x'T for a symmetric M (the diagonal may be nonzero).
/// Throws EnumerationBudgetExceeded for N > 24.
CornerCensus census(const WeightMatrix<double>& M, const Vector<double>& T,
                    const CensusOptions& opt = {});
CornerCensus census(const Network<double>& net, const CensusOptions& opt = {});

/// Exact minimum cut by enumeration of bipartitions with vertex 0 fixed to +1.
/// With `require_nonempty` the all-on-one-side partition is excluded.
CutResult brute_min_cut(const Graph& g, bool require_nonempty = false);

enum class InstanceClass { gaussian, nonnegative, sparse_graph, eigencorner, custom };

std::string_view to_string(InstanceClass c);
/// Throws InvalidInput on an unknown name.
InstanceClass parse_instance_class(std::string_view name);

/// Deterministic canonical instance of the given class.
///  gaussian     symmetrized i.i.d. N(0,1), zero diagonal
///  nonnegative  symmetrized i.i.d. U[0,1], zero diagonal
///  sparse_graph Erdos-Renyi p = 0.5 graph with U[-1,1] weights
///  eigencorner  D A D with A a zero-diagonal regular nonnegative irreducible
///               matrix and D = diag(corner); the top eigenvector is that corner
Network<double> generate_instance(InstanceClass cls, Index n, std::uint64_t seed);

/// Seed of the i-th instance in a batch.
std::uint64_t instance_seed(std::uint64_t batch_seed, std::uint64_t i);

struct AuditReport {
    std::string class_label;
    Index n = 0;
    std::uint64_t seed = 0;
    std::uint64_t instances = 0;
    std::uint64_t successes = 0;
    double success_rate = 0;
    /// (E_opt - E_heuristic) / max(1, |E_opt|)
    double gap_mean = 0;
    double gap_max = 0;
    std::uint64_t perron_shortcuts = 0;
    std::uint64_t eigencorner_shortcuts = 0;
    std::uint64_t degenerate_top = 0;
    std::uint64_t budget_exhausted = 0;
};

struct AuditOptions {
    UpdatePolicy policy;
    EigenOptions eigen;
    unsigned workers = 0;
};

AuditReport audit_spectral(InstanceClass cls, Index n, std::uint64_t count, std::uint64_t seed,
                           const AuditOptions& opt = {});
/// Audit over caller-supplied canonical networks (labelled "custom").
AuditReport audit_spectral(const std::vector<Network<double>>& instances,
                           const AuditOptions& opt = {});

}  // namespace hyperq
