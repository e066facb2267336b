#include "hyperq/oracle.hpp"
#include "hyperq/report.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <map>

using namespace hyperq;
using namespace hyperq::testing;

TEST_CASE("census of the two-node example") {
    Mat w(2, 2);
    w << 0, 1, 1, 0;
    const auto c = census(Network<double>(w));
    CHECK(c.global_max == 2.0);
    CHECK(c.global_min == -2.0);
    // masks: 0 = [1,1], 3 = [-1,-1], 1 = [-1,1], 2 = [1,-1]
    CHECK(c.stable == std::vector<std::uint64_t>{0, 3});
    CHECK(c.antistable == std::vector<std::uint64_t>{1, 2});
    CHECK(c.argmax == std::vector<std::uint64_t>{0, 3});
    CHECK(c.state(0) == SpinState{1, 1});
    CHECK(c.corners_evaluated == 4);
}

TEST_CASE("census of the zero network") {
    const auto c = census(Network<double>(WeightMatrix<double>::zero(5)));
    CHECK(c.stable.size() == 32);
    CHECK(c.antistable.size() == 32);
    CHECK(c.global_max == 0.0);
    CHECK(c.global_min == 0.0);
    CHECK(c.argmax.size() == 32);
}

TEST_CASE("census matches naive enumeration") {
    Rng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.integer(1, 10);
        const Mat w = rng.symmetric(n);
        const Vec t = trial % 2 ? rng.vector(n) : Vec::Zero(n);
        const auto c = census(Network<double>(WeightMatrix<double>(w), t));
        const auto ref = naive_census(w, t);
        CHECK(c.global_max == doctest::Approx(ref.max).epsilon(1e-12));
        CHECK(c.global_min == doctest::Approx(ref.min).epsilon(1e-12));
        CHECK(c.argmax == ref.argmax);
        CHECK(c.argmin == ref.argmin);
        CHECK(c.stable == ref.stable);
        if (t.isZero(0)) CHECK(c.antistable == ref.antistable);
        else CHECK(c.antistable.empty());
        CHECK(c.corners_evaluated == (std::uint64_t{1} << n));
    }
}

TEST_CASE("census with a nonzero diagonal") {
    Rng rng(62);
    for (int trial = 0; trial < 10; ++trial) {
        const Mat m = rng.symmetric(7, false);
        const auto c = census(WeightMatrix<double>(m), Vec::Zero(7));
        const auto ref = naive_census(m, Vec::Zero(7));
        CHECK(c.global_max == doctest::Approx(ref.max));
        CHECK(c.argmax == ref.argmax);
        CHECK(c.stable == ref.stable);
        CHECK(c.antistable == ref.antistable);
    }
}

TEST_CASE("census on integer weights with many ties") {
    Rng rng(63);
    for (int trial = 0; trial < 10; ++trial) {
        Mat w = Mat::Zero(9, 9);
        for (int i = 0; i < 9; ++i)
            for (int j = i + 1; j < 9; ++j) w(i, j) = w(j, i) = rng.integer(-1, 1);
        const auto c = census(Network<double>(w));
        const auto ref = naive_census(w, Vec::Zero(9));
        CHECK(c.argmax == ref.argmax);
        CHECK(c.argmin == ref.argmin);
        CHECK(c.stable == ref.stable);
        CHECK(c.antistable == ref.antistable);
    }
}

TEST_CASE("census does not depend on the worker count") {
    Rng rng(64);
    const Network<double> net(rng.symmetric(16));
    CensusOptions one;
    one.workers = 1;
    CensusOptions many;
    many.workers = 7;
    const auto a = census(net, one);
    const auto b = census(net, many);
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("census invariants") {
    Rng rng(65);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.integer(2, 11);
        const Network<double> net(rng.symmetric(n));
        const auto c = census(net);
        CHECK(c.stable.size() % 2 == 0);
        CHECK(c.antistable.size() % 2 == 0);
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (auto m : c.stable) {
            CHECK(std::binary_search(c.stable.begin(), c.stable.end(), m ^ full));
            CHECK(is_stable(net, c.state(m)));
        }
        for (auto m : c.antistable) CHECK(is_antistable(net, c.state(m)));
        // every global maximizer is a stable state
        for (auto m : c.argmax) CHECK(std::binary_search(c.stable.begin(), c.stable.end(), m));

        std::map<long long, int> histogram;
        for_each_corner(n, [&](std::uint64_t k, const std::vector<int>&) {
            const double e = energy(net, corner_state(k, n));
            CHECK(e <= c.global_max + 1e-9);
            ++histogram[std::llround(e * 1e6)];
        });
        for (const auto& [e, count] : histogram) CHECK(count % 2 == 0);
    }
}

TEST_CASE("census budget guard") {
    const Network<double> big(WeightMatrix<double>::zero(25));
    CHECK_THROWS_AS(census(big), EnumerationBudgetExceeded);
}

TEST_CASE("brute_min_cut") {
    const Graph tri(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    CHECK(brute_min_cut(tri).cut_weight == 0.0);
    const auto nonempty = brute_min_cut(tri, true);
    CHECK(nonempty.cut_weight == 2.0);
    CHECK(nonempty.side != SpinState::ones(3));

    const auto neg = brute_min_cut(Graph(2, {{0, 1, -3.0}}));
    CHECK(neg.cut_weight == -3.0);
    CHECK(neg.side == SpinState{1, -1});

    CHECK_THROWS_AS(brute_min_cut(Graph(1, {}), true), InvalidInput);
    CHECK_THROWS_AS(brute_min_cut(Graph(25, {})), EnumerationBudgetExceeded);
}

TEST_CASE("brute_min_cut agrees with the census through the cut identity") {
    Rng rng(66);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.integer(2, 12);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin()) edges.push_back({u, v, double(rng.integer(-4, 4))});
        const Graph g(n, edges);
        const auto cut = brute_min_cut(g);
        const auto c = census(graph_to_network(g));
        CHECK(cut.cut_weight == g.total_weight() / 2 - c.global_max / 4);
        CHECK(std::binary_search(c.argmax.begin(), c.argmax.end(), cut.side.mask()));
    }
}

TEST_CASE("instance classes") {
    for (auto cls : {InstanceClass::gaussian, InstanceClass::nonnegative, InstanceClass::sparse_graph,
                     InstanceClass::eigencorner}) {
        CHECK(parse_instance_class(to_string(cls)) == cls);
        const auto a = generate_instance(cls, 9, 5);
        const auto b = generate_instance(cls, 9, 5);
        CHECK(a == b);
        CHECK(a.canonical());
        CHECK(a.size() == 9);
    }
    CHECK_THROWS_AS(parse_instance_class("wishart"), InvalidInput);
    CHECK_THROWS_AS(generate_instance(InstanceClass::custom, 4, 0), InvalidInput);
    CHECK(instance_seed(0, 0) != instance_seed(0, 1));
}

TEST_CASE("eigencorner instances have a corner as top eigenvector") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto net = generate_instance(InstanceClass::eigencorner, 10, s);
        const auto e = max_eigenpair(net.weights());
        const auto corner = sign_corner(e.vector);
        const auto check = is_eigencorner_stable(net.weights(), corner);
        CHECK(check.is_eigenvector);
        CHECK(check.rho == doctest::Approx(e.value));
        CHECK(check.stable);
    }
}

TEST_CASE("audit on provable classes") {
    const auto nonneg = audit_spectral(InstanceClass::nonnegative, 10, 40, 3);
    CHECK(nonneg.success_rate == 1.0);
    CHECK(nonneg.perron_shortcuts == 40);
    CHECK(nonneg.class_label == "nonnegative");

    const auto eig = audit_spectral(InstanceClass::eigencorner, 10, 40, 3);
    CHECK(eig.success_rate == 1.0);
    CHECK(eig.gap_max == 0.0);
}

TEST_CASE("audit integrity and determinism") {
    AuditOptions opt;
    opt.workers = 3;
    const auto a = audit_spectral(InstanceClass::gaussian, 8, 60, 11, opt);
    opt.workers = 1;
    const auto b = audit_spectral(InstanceClass::gaussian, 8, 60, 11, opt);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(a.instances == 60);
    CHECK(a.successes <= a.instances);
    CHECK(a.success_rate >= 0.0);
    CHECK(a.success_rate <= 1.0);
    CHECK(a.success_rate == double(a.successes) / 60.0);
    CHECK(a.gap_mean >= 0.0);
    CHECK(a.gap_max >= a.gap_mean);

    CHECK_THROWS_AS(audit_spectral(InstanceClass::gaussian, 21, 1, 0), InvalidInput);
}

TEST_CASE("audit over supplied networks") {
    Rng rng(67);
    std::vector<Network<double>> nets;
    for (int k = 0; k < 10; ++k) nets.emplace_back(rng.nonnegative(6));
    const auto r = audit_spectral(nets);
    CHECK(r.class_label == "custom");
    CHECK(r.instances == 10);
    CHECK(r.success_rate == 1.0);
}
