#include "hyperq/report.hpp"

#include <doctest.h>

using namespace hyperq;

TEST_CASE("spin states serialize as integer arrays") {
    CHECK(to_json(SpinState{1, -1, 1}).dump() == "[1,-1,1]");
}

TEST_CASE("run report fields") {
    Matrix<double> w(2, 2);
    w << 0, 1, 1, 0;
    const auto r = run_serial(Network<double>(w), SpinState{1, -1}, UpdatePolicy{});
    const auto j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"mode", "termination", "sweeps_used", "flips", "initial_state",
                                           "final_state", "energy_trace"});
    CHECK(j["mode"] == "serial");
    CHECK(j["termination"] == "stable");
    CHECK(j["energy_trace"].size() == r.trajectory.size());
}

TEST_CASE("spectral solve report fields") {
    Matrix<double> w(2, 2);
    w << 0, 1, 1, 0;
    const auto j = to_json(spectral_solve(Network<double>(w)));
    CHECK(j["final_energy"] == 2.0);
    CHECK(j["shortcut_used"] == "perron");
    CHECK(j["eigenpair"]["value"].get<double>() == doctest::Approx(1.0));
    CHECK(j["eigenpair"]["gap_to_next"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("census report lists states") {
    Matrix<double> w(2, 2);
    w << 0, 1, 1, 0;
    const auto j = to_json(census(Network<double>(w)));
    CHECK(j["global_max"]["energy"] == 2.0);
    CHECK(j["global_max"]["states"].dump() == "[[1,1],[-1,-1]]");
    CHECK(j["stable_count"] == 2);
    CHECK(j["antistable"].dump() == "[[-1,1],[1,-1]]");
}

TEST_CASE("cut report") {
    const CutResult c{SpinState{1, -1}, -3.0, 2.0};
    CHECK(to_json(c).dump() == R"({"side":[1,-1],"cut_weight":-3.0,"energy":2.0})");
}

TEST_CASE("audit report json and csv agree") {
    AuditReport a;
    a.class_label = "gaussian";
    a.n = 10;
    a.seed = 4;
    a.instances = 8;
    a.successes = 6;
    a.success_rate = 0.75;
    a.gap_mean = 0.125;
    a.gap_max = 0.5;
    const auto j = to_json(a);
    std::string cols;
    for (auto it = j.begin(); it != j.end(); ++it) cols += (cols.empty() ? "" : ",") + it.key();
    CHECK(cols == audit_csv_header());
    const auto row = audit_csv_row(a);
    CHECK(row.rfind("gaussian,10,4,8,6,0.75,0.125,0.5,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(cols.begin(), cols.end(), ','));
}
