#include "hyperq/graphcut.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace hyperq {

Graph::Graph(Index n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw InvalidInput("graph must have at least one vertex");
    std::set<std::pair<Index, Index>> seen;
    for (auto& e : edges_) {
        if (e.u == e.v) throw InvalidInput("self loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n_)
            throw InvalidInput("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                               ") out of range");
        if (!std::isfinite(e.w)) throw InvalidInput("non-finite edge weight");
        if (!seen.emplace(e.u, e.v).second)
            throw InvalidInput("duplicate edge (" + std::to_string(e.u) + ", " +
                               std::to_string(e.v) + ")");
    }
}

double Graph::total_weight() const {
    double s = 0;
    for (const auto& e : edges_) s += e.w;
    return s;
}

Network<double> graph_to_network(const Graph& g) {
    Matrix<double> w = Matrix<double>::Zero(g.size(), g.size());
    for (const auto& e : g.edges()) w(e.u, e.v) = w(e.v, e.u) = e.w;
    return Network<double>(WeightMatrix<double>(std::move(w)));
}

double cut_weight(const Graph& g, const SpinState& x) {
    if (x.size() != g.size()) throw DimensionMismatch(g.size(), x.size(), "cut_weight");
    double s = 0;
    for (const auto& e : g.edges())
        if (x[e.u] != x[e.v]) s += e.w;
    return s;
}

CutEnergyIdentity cut_energy_identity(const Graph& g, const SpinState& x) {
    const double cut = cut_weight(g, x);
    const double e = energy(graph_to_network(g), x);
    const double total = g.total_weight();
    return {cut, e, total, std::abs(cut - (total / 2 - e / 4))};
}

CutResult min_cut_spectral(const Graph& g, const UpdatePolicy& policy, const EigenOptions& eig) {
    const auto net = graph_to_network(g);
    const auto report = spectral_solve(net, policy, eig);
    return {report.final_state, cut_weight(g, report.final_state), report.final_energy};
}

}  // namespace hyperq
