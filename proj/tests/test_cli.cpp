#include "hyperq/hyperq.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace hyperq;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(HYPERQ_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    for (std::size_t k; (k = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, k);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(HYPERQ_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "hyperq_cli_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << content;
    return p;
}

std::string matrix_text(const Eigen::MatrixXd& m) {
    std::ostringstream ss;
    write_matrix(ss, m);
    return ss.str();
}

}  // namespace

TEST_CASE("solve reproduces the two-node example") {
    const auto r = run("--json solve " + data("example1.txt"));
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["energy"] == 2.0);
    const auto state = j["state"].dump();
    CHECK((state == "[1,1]" || state == "[-1,-1]"));
    CHECK(j["solve"]["shortcut_used"] == "perron");
}

TEST_CASE("solve on an edge list matches the library") {
    const auto r = run("--json solve " + data("triangle.edges"));
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["input"]["format"] == "edges");
    const Graph tri(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    const auto lib = spectral_solve(graph_to_network(tri));
    CHECK(j["energy"].get<double>() == lib.final_energy);
    CHECK(j["state"] == to_json(lib.final_state));
}

TEST_CASE("solve maps thresholded input back to the original corners") {
    const auto r = run("--json solve " + data("thresholds.txt"));
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["input"]["symmetrized"] == true);
    CHECK(j["input"]["threshold_absorbed"] == true);
    const auto state = j["state"];
    REQUIRE(state.size() == 3);
    std::istringstream in(read_file(data("thresholds.txt")));
    const auto m = parse_matrix(in);
    Eigen::VectorXi v(3);
    for (int i = 0; i < 3; ++i) v(i) = state[std::size_t(i)].get<int>();
    CHECK(j["energy"].get<double>() == doctest::Approx(energy(RawInstance<double>(m.B, m.T), SpinState(v))));
}

TEST_CASE("symmetrization warning goes to stderr") {
    const auto r = run("solve " + data("thresholds.txt"), true);
    CHECK(r.out.find("warning") != std::string::npos);
    const auto quiet = run("solve " + data("example1.txt"), true);
    CHECK(quiet.out.find("warning") == std::string::npos);
}

TEST_CASE("parse errors exit 2 and name the line") {
    const auto r = run("solve " + data("malformed.txt"), true);
    CHECK(r.code == 2);
    CHECK(r.out.find("line 3") != std::string::npos);

    CHECK(run("solve /nonexistent/file").code == 2);
    CHECK(run("--bogus solve " + data("example1.txt")).code == 2);
    CHECK(run("").code == 2);
    CHECK(run("--format matrix solve " + data("triangle.edges")).code == 2);
    CHECK(run("--zero-as 0 solve " + data("example1.txt")).code == 2);
}

TEST_CASE("numeric budget exits 3") {
    testing::Rng rng(91);
    const auto p = scratch("gauss12.txt", matrix_text(rng.symmetric(12)));
    CHECK(run("--max-iter 2 solve " + p.string()).code == 3);
    CHECK(run("solve " + p.string()).code == 0);
}

TEST_CASE("enumeration budget exits 4") {
    const auto p = scratch("zero25.txt", matrix_text(Eigen::MatrixXd::Zero(25, 25)));
    const auto r = run("exact " + p.string(), true);
    CHECK(r.code == 4);
    CHECK(r.out.find("24") != std::string::npos);
}

TEST_CASE("exact mirrors the census") {
    const auto r = run("--json exact " + data("example1.txt"));
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["global_max"]["energy"] == 2.0);
    CHECK(j["global_min"]["energy"] == -2.0);
    CHECK(j["stable"].dump() == "[[1,1],[-1,-1]]");
    CHECK(j["antistable"].size() == 2);
}

TEST_CASE("audit is deterministic") {
    const std::string args = "--json --seed 5 audit --class gaussian --n 8 --count 40";
    const auto a = run(args);
    const auto b = run("--workers 1 " + args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = Json::parse(a.out);
    CHECK(j["instances"] == 40);
    CHECK(j["seed"] == 5);

    const auto nn = Json::parse(run("--json audit --class nonnegative --n 8 --count 30").out);
    CHECK(nn["success_rate"] == 1.0);

    const auto csv = run("audit --class eigencorner --n 6 --count 10 --csv");
    CHECK(csv.out.rfind(audit_csv_header(), 0) == 0);
    CHECK(run("audit --n 21 --count 1").code == 2);
    CHECK(run("audit --class wishart").code == 2);
}

TEST_CASE("mincut") {
    const auto r = run("--json mincut --require-nonempty " + data("triangle.edges"));
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["exact"]["cut_weight"] == 2.0);
    CHECK(j["spectral"]["cut_weight"] == 0.0);
    const auto plain = Json::parse(run("--json mincut " + data("triangle.edges")).out);
    CHECK(plain["exact"]["cut_weight"] == 0.0);
    CHECK(run("mincut " + data("example1.txt")).code == 2);
}

TEST_CASE("synth") {
    const auto h = Json::parse(run("--json synth --hadamard 4 --count 2").out);
    CHECK(h["verified"] == true);
    CHECK(h["patterns"][0]["eigenvalue"] == 2.0);
    CHECK(h["trace"] == 0.0);

    const auto s = Json::parse(run("--json synth --stable " + data("stable4.pat") + " --mu 2 --antistable " +
                                   data("antistable4.pat") + " --beta 2")
                                   .out);
    CHECK(s["verified"] == true);
    CHECK(std::abs(s["trace"].get<double>()) <= 1e-12);

    CHECK(run("synth --hadamard 6 --count 2").code == 2);
    CHECK(run("synth").code == 2);
    const auto odd = scratch("odd.pat", "1 1 1\n1 -1 -1\n");
    CHECK(run("synth --patterns " + odd.string()).code == 2);

    const auto out = fs::temp_directory_path() / "hyperq_cli_tests" / "w.txt";
    CHECK(run("synth --patterns " + data("hadamard4.pat") + " --out " + out.string()).code == 0);
    std::istringstream in(read_file(out));
    CHECK(parse_matrix(in).B.rows() == 4);
}

TEST_CASE("geom") {
    const auto a = scratch("a.pat", "1 1 -1 1\n1 1 1 1\n");
    const auto b = scratch("b.pat", "1 -1 -1 -1\n1 1 1 1\n");
    CHECK(run("geom hamming " + a.string() + " " + b.string()).out == "2\n0\n");
    CHECK(run("geom weight " + a.string()).out == "3\n4\n");

    const auto x = scratch("x.vec", "0.1 -3\n0.2 3.7\n");
    const auto y = scratch("y.vec", "2 5\n0.9 3.1\n");
    CHECK(run("geom induced " + x.string() + " " + y.string()).out == "1\n0\n");
    CHECK(run("geom ghamming " + x.string() + " " + y.string()).out == "2\n0\n");
    CHECK(run("geom manhattan --rule round " + x.string() + " " + y.string()).out == "10\n2\n");

    const auto d = Json::parse(run("--json geom distribution --n 3").out);
    CHECK(d["counts"].dump() == "[1,3,3,1]");
    CHECK(run("geom orthogonal --n 5").out == "no\n");
    CHECK(run("geom orthogonal --n 4").out == "yes\n");
    CHECK(run("geom hamming " + a.string()).code == 2);
    CHECK(run("geom distribution --n 31").code == 2);
}

TEST_CASE("canon") {
    const auto r = run("--json canon " + data("thresholds.txt"));
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["n"] == 4);
    CHECK(j["original_n"] == 3);
    CHECK(j["trace_offset"] == 1.0);
    CHECK(j["W"][0][3] == -0.25);

    // the human output is itself a matrix file
    const auto text = run("canon " + data("thresholds.txt")).out;
    std::istringstream in(text);
    const auto m = parse_matrix(in);
    CHECK(m.B.rows() == 4);
    CHECK(m.B.diagonal().isZero(0));
}

TEST_CASE("outputs are byte-identical across runs") {
    for (const std::string args : {"--json solve " + data("thresholds.txt"), "--json exact " + data("thresholds.txt"),
                                   "--json --seed 3 --order permuted solve " + data("triangle.edges")}) {
        CHECK(run(args).out == run(args).out);
    }
}
