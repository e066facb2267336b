#include "hyperq/graphcut.hpp"
#include "hyperq/oracle.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <set>

using namespace hyperq;
using namespace hyperq::testing;

namespace {

Graph triangle(double w = 1.0) { return Graph(3, {{0, 1, w}, {1, 2, w}, {0, 2, w}}); }

Graph random_graph(Rng& rng, int n, double p = 0.5) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.coin(p)) edges.push_back({u, v, rng.uniform(-1, 1)});
    return Graph(n, std::move(edges));
}

/// Crossing-edge sum written independently of the library.
double naive_cut(const Graph& g, const std::vector<int>& x) {
    double c = 0;
    for (const auto& e : g.edges())
        if (x[std::size_t(e.u)] != x[std::size_t(e.v)]) c += e.w;
    return c;
}

}  // namespace

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph(2, {{0, 0, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(Graph(2, {{0, 2, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(Graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), InvalidInput);
    CHECK_THROWS_AS(Graph(2, {{0, 1, std::nan("")}}), InvalidInput);
    const Graph g(3, {{2, 0, 1.5}});
    CHECK(g.edges().front().u == 0);
    CHECK(g.edges().front().v == 2);
    CHECK(g.total_weight() == 1.5);
}

TEST_CASE("graph_to_network") {
    const auto tri = graph_to_network(triangle());
    Mat expected = Mat::Ones(3, 3);
    expected.diagonal().setZero();
    CHECK(tri.W() == expected);
    CHECK(tri.canonical());

    CHECK(graph_to_network(Graph(4, {})).W().isZero(0));

    const auto path = graph_to_network(Graph(3, {{0, 1, 2.0}, {1, 2, -1.0}}));
    CHECK(path.W()(0, 1) == 2.0);
    CHECK(path.W()(1, 0) == 2.0);
    CHECK(path.W()(1, 2) == -1.0);
    CHECK(path.W()(0, 2) == 0.0);
}

TEST_CASE("cut_weight") {
    CHECK(cut_weight(triangle(), SpinState::ones(3)) == 0.0);
    CHECK(cut_weight(triangle(), SpinState{1, 1, -1}) == 2.0);
    CHECK_THROWS_AS(cut_weight(triangle(), SpinState{1, 1}), DimensionMismatch);
}

TEST_CASE("cut_energy_identity on a single edge") {
    const Graph edge(2, {{0, 1, 1.0}});
    const auto split = cut_energy_identity(edge, SpinState{1, -1});
    CHECK(split.cut == 1.0);
    CHECK(split.energy == -2.0);
    CHECK(split.total == 1.0);
    CHECK(split.residual == 0.0);

    const auto same = cut_energy_identity(edge, SpinState{1, 1});
    CHECK(same.cut == 0.0);
    CHECK(same.energy == 2.0);
    CHECK(same.residual == 0.0);
}

TEST_CASE("cut_energy_identity holds on every corner of random graphs") {
    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.integer(1, 10);
        const Graph g = random_graph(rng, n);
        const Mat w = graph_to_network(g).W();
        double total = 0;
        for (const auto& e : g.edges()) total += e.w;
        for_each_corner(n, [&](std::uint64_t k, const std::vector<int>& x) {
            const double c = naive_cut(g, x);
            CHECK(std::abs(c - (total / 2 - naive_energy(w, x) / 4)) <= 1e-9);
            const auto id = cut_energy_identity(g, corner_state(k, n));
            CHECK(id.residual <= 1e-9);
            CHECK(id.cut == doctest::Approx(c));
        });
    }
    for (int trial = 0; trial < 5; ++trial) {
        const Graph g = random_graph(rng, 64, 0.2);
        for (int k = 0; k < 100; ++k) CHECK(cut_energy_identity(g, rng.corner(64)).residual <= 1e-9);
    }
}

TEST_CASE("argmax energy equals argmin cut") {
    Rng rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.integer(2, 12);
        const Graph g = random_graph(rng, n);
        const Mat w = graph_to_network(g).W();
        const auto oracle = naive_census(w, Vec::Zero(n));
        std::vector<double> cuts;
        double best = INFINITY;
        for_each_corner(n, [&](std::uint64_t, const std::vector<int>& x) {
            cuts.push_back(naive_cut(g, x));
            best = std::min(best, cuts.back());
        });
        std::vector<std::uint64_t> argmin;
        for (std::uint64_t k = 0; k < cuts.size(); ++k)
            if (cuts[k] <= best + 1e-9) argmin.push_back(k);
        CHECK(argmin == oracle.argmax);
    }
}

TEST_CASE("negated sides induce the same cut") {
    Rng rng(53);
    const Graph g = random_graph(rng, 9);
    for (int k = 0; k < 50; ++k) {
        const auto x = rng.corner(9);
        CHECK(cut_weight(g, x) == doctest::Approx(cut_weight(g, -x)));
    }
}

TEST_CASE("min_cut_spectral") {
    const auto edge = min_cut_spectral(Graph(2, {{0, 1, 1.0}}));
    CHECK(edge.cut_weight == 0.0);

    const auto tri = min_cut_spectral(triangle(2.0));
    CHECK(tri.side == SpinState::ones(3));
    CHECK(tri.cut_weight == 0.0);

    Rng rng(54);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.integer(2, 12);
        const Graph g = random_graph(rng, n);
        const auto r = min_cut_spectral(g);
        const auto exact = brute_min_cut(g);
        CHECK(r.cut_weight >= exact.cut_weight - 1e-9);
        CHECK(r.cut_weight == doctest::Approx(cut_weight(g, r.side)));
        CHECK(r.energy == doctest::Approx(energy(graph_to_network(g), r.side)));
    }
}

TEST_CASE("min_cut_spectral on all-negative weights") {
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.integer(2, 12);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin(0.6)) edges.push_back({u, v, -rng.uniform(0.1, 1)});
        const Graph g(n, std::move(edges));
        const auto r = min_cut_spectral(g);
        const auto exact = brute_min_cut(g);
        CHECK(r.cut_weight >= exact.cut_weight - 1e-9);
        CHECK(r.cut_weight <= 1e-12);
    }
}
