#pragma once

// Weighted undirected graphs as zero-threshold networks. With W[u][v] = w for
// every edge, each corner x satisfies cut(x) = S/2 - x'Wx/4 where S is the
// total edge weight, so maximizing the energy minimizes the cut.

#include "hyperq/spectral.hpp"

#include <vector>

namespace hyperq {

struct Edge {
    Index u;
    Index v;
    double w;
};

/// Simple undirected graph; edges are stored with u < v and no duplicates.
/// Weights may be negative.
class Graph {
public:
    Graph() = default;
    /// Normalizes each edge to u < v. Throws InvalidInput on self loops,
    /// out-of-range endpoints, duplicate pairs, or non-finite weights.
    Graph(Index n, std::vector<Edge> edges);

    Index size() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    double total_weight() const;

private:
    Index n_ = 0;
    std::vector<Edge> edges_;
};

struct CutResult {
    SpinState side;  // +1 marks membership in U
    double cut_weight = 0;
    double energy = 0;
};

Network<double> graph_to_network(const Graph& g);

/// Sum of weights of edges whose endpoints lie on opposite sides.
double cut_weight(const Graph& g, const SpinState& x);

struct CutEnergyIdentity {
    double cut;
    double energy;  // x'Wx
    double total;   // sum of all edge weights
    /// |cut - (total/2 - energy/4)|
    double residual;
};

CutEnergyIdentity cut_energy_identity(const Graph& g, const SpinState& x);

/// Spectral heuristic on the induced network; the stable state it reaches
/// becomes the cut.
CutResult min_cut_spectral(const Graph& g, const UpdatePolicy& policy = {},
                           const EigenOptions& eig = {});

}  // namespace hyperq
