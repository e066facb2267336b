#include "hyperq/hyperq.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hyperq;

namespace {

enum Exit { ok = 0, failure = 1, parse_failure = 2, numeric_budget = 3, enumeration_budget = 4 };

struct Config {
    std::uint64_t seed = 0;
    double tol = 1e-10;
    std::uint64_t max_sweeps = 0;
    std::uint64_t max_iter = 0;
    std::string zero_as = "keep";
    std::string format = "auto";
    std::string order = "cyclic";
    bool json = false;
    unsigned workers = 0;

    ZeroRule zero_rule() const {
        if (zero_as == "+1") return ZeroRule::plus_one;
        if (zero_as == "-1") return ZeroRule::minus_one;
        return ZeroRule::keep;
    }
    /// Rounding of real vectors to corners; keep falls back to +1.
    ZeroRule corner_rule() const {
        return zero_rule() == ZeroRule::minus_one ? ZeroRule::minus_one : ZeroRule::plus_one;
    }
    UpdatePolicy policy() const {
        UpdatePolicy p;
        p.zero_rule = zero_rule();
        p.max_sweeps = max_sweeps;
        p.order = order == "permuted" ? UpdatePolicy::Order::permuted : UpdatePolicy::Order::cyclic;
        p.permutation_seed = seed;
        return p;
    }
    EigenOptions eigen() const {
        EigenOptions e;
        e.tol = tol;
        e.max_iter = max_iter;
        return e;
    }
};

std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::to_string(v);
}

std::string show(const SpinState& x) {
    std::string s = "[";
    for (Index i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x[i]);
    return s + "]";
}

std::string show(const Vector<double>& v) {
    std::string s = "[";
    for (Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + num(v(i));
    return s + "]";
}

Json matrix_json(const Matrix<double>& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// Input

struct LoadedInstance {
    FileFormat format;
    RawInstance<double> raw;
    std::optional<Graph> graph;
    bool symmetrized = false;
};

FileFormat resolve_format(const Config& cfg, const std::string& text) {
    if (cfg.format == "matrix") return FileFormat::matrix;
    if (cfg.format == "edges") return FileFormat::edge_list;
    std::istringstream in(text);
    return detect_format(in);
}

LoadedInstance load_instance(const Config& cfg, const std::string& path) {
    const std::string text = read_file(path);
    const FileFormat format = resolve_format(cfg, text);
    std::istringstream in(text);
    if (format == FileFormat::edge_list) {
        Graph g = parse_edge_list(in);
        const auto net = graph_to_network(g);
        return {format, RawInstance<double>(net.W(), net.T()), std::move(g), false};
    }
    auto m = parse_matrix(in);
    const bool asym = !is_symmetric(m.B);
    if (asym)
        std::cerr << "warning: " << path
                  << ": matrix is not symmetric; using its symmetric part (B + B^T)/2\n";
    return {format, RawInstance<double>(std::move(m.B), std::move(m.T)), std::nullopt, asym};
}

Graph load_graph(const Config& cfg, const std::string& path) {
    auto inst = load_instance(cfg, path);
    if (!inst.graph) throw InvalidInput(path + ": expected an edge list ('N M' header)");
    return *inst.graph;
}

std::vector<SpinState> load_patterns(const std::string& path) {
    std::istringstream in(read_file(path));
    auto p = parse_patterns(in);
    if (p.empty()) throw InvalidInput(path + ": no patterns");
    return p;
}

std::vector<Vector<double>> load_vectors(const std::string& path) {
    std::istringstream in(read_file(path));
    auto v = parse_vectors(in);
    if (v.empty()) throw InvalidInput(path + ": no vectors");
    return v;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_solve(const Config& cfg, const std::string& path) {
    const auto inst = load_instance(cfg, path);
    const auto canon = canonicalize(inst.raw);
    const auto report = spectral_solve(canon.network, cfg.policy(), cfg.eigen());
    const SpinState state = canon.to_original(report.final_state);
    const double e = canon.offset + report.final_energy;

    if (cfg.json) {
        emit(Json{{"input",
                   {{"path", path},
                    {"format", inst.format == FileFormat::matrix ? "matrix" : "edges"},
                    {"n", canon.original_size},
                    {"symmetrized", inst.symmetrized},
                    {"trace_offset", canon.offset},
                    {"threshold_absorbed", canon.absorbed}}},
                  {"solve", to_json(report)},
                  {"state", to_json(state)},
                  {"energy", e}});
    } else {
        std::cout << "n: " << canon.original_size << (canon.absorbed ? " (+1 threshold node)" : "") << '\n'
                  << "top eigenvalue: " << num(report.eigenpair.value) << " (residual "
                  << num(report.eigenpair.residual) << ")\n"
                  << "initial corner: " << show(report.init_corner) << '\n'
                  << "shortcut: " << to_string(report.shortcut_used) << '\n'
                  << "termination: " << to_string(report.run.termination) << " after "
                  << report.run.sweeps_used << " sweep(s), " << report.run.flips << " flip(s)\n"
                  << "state: " << show(state) << '\n'
                  << "energy: " << num(e) << '\n';
        if (report.degenerate_top) std::cout << "note: top eigenvalue is degenerate\n";
    }
    return report.run.termination == Termination::budget_exhausted ? Exit::numeric_budget : Exit::ok;
}

int cmd_exact(const Config& cfg, const std::string& path) {
    const auto inst = load_instance(cfg, path);
    CensusOptions opt;
    opt.workers = cfg.workers;
    opt.zero_rule = cfg.zero_rule();
    const auto c = census(symmetrize(inst.raw.B), inst.raw.T, opt);
    if (cfg.json) {
        emit(to_json(c));
        return Exit::ok;
    }
    std::cout << "n: " << c.n << '\n'
              << "corners: " << c.corners_evaluated << '\n'
              << "global max: " << num(c.global_max) << " at " << c.argmax.size() << " corner(s)\n";
    for (auto m : c.argmax) std::cout << "  " << show(c.state(m)) << '\n';
    std::cout << "global min: " << num(c.global_min) << " at " << c.argmin.size() << " corner(s)\n";
    for (auto m : c.argmin) std::cout << "  " << show(c.state(m)) << '\n';
    std::cout << "stable states: " << c.stable.size() << '\n';
    for (auto m : c.stable) std::cout << "  " << show(c.state(m)) << '\n';
    if (!inst.raw.T.isZero(0)) {
        std::cout << "antistable states: n/a (nonzero thresholds)\n";
    } else {
        std::cout << "antistable states: " << c.antistable.size() << '\n';
        for (auto m : c.antistable) std::cout << "  " << show(c.state(m)) << '\n';
    }
    return Exit::ok;
}

int cmd_audit(const Config& cfg, const std::string& cls, Index n, std::uint64_t count, bool csv) {
    AuditOptions opt;
    opt.policy = cfg.policy();
    opt.eigen = cfg.eigen();
    opt.workers = cfg.workers;
    const auto r = audit_spectral(parse_instance_class(cls), n, count, cfg.seed, opt);
    if (csv) {
        std::cout << audit_csv_header() << '\n' << audit_csv_row(r) << '\n';
    } else if (cfg.json) {
        emit(to_json(r));
    } else {
        std::cout << "class: " << r.class_label << "  n: " << r.n << "  seed: " << r.seed << '\n'
                  << "instances: " << r.instances << "  successes: " << r.successes
                  << "  success rate: " << num(r.success_rate) << '\n'
                  << "relative gap: mean " << num(r.gap_mean) << ", max " << num(r.gap_max) << '\n'
                  << "shortcuts: perron " << r.perron_shortcuts << ", eigencorner "
                  << r.eigencorner_shortcuts << '\n'
                  << "degenerate top eigenvalue: " << r.degenerate_top
                  << "  sweep budget exhausted: " << r.budget_exhausted << '\n';
    }
    return Exit::ok;
}

int cmd_mincut(const Config& cfg, const std::string& path, bool require_nonempty) {
    const Graph g = load_graph(cfg, path);
    const auto spectral = min_cut_spectral(g, cfg.policy(), cfg.eigen());
    std::optional<CutResult> exact;
    if (g.size() <= kMaxEnumerationDim) {
        exact = brute_min_cut(g, require_nonempty);
    } else if (require_nonempty) {
        throw EnumerationBudgetExceeded("mincut: --require-nonempty needs exact enumeration, limited to N <= " +
                                        std::to_string(kMaxEnumerationDim));
    }

    if (cfg.json) {
        emit(Json{{"n", g.size()},
                  {"edges", g.edges().size()},
                  {"total_weight", g.total_weight()},
                  {"require_nonempty", require_nonempty},
                  {"spectral", to_json(spectral)},
                  {"exact", exact ? to_json(*exact) : Json(nullptr)}});
        return Exit::ok;
    }
    std::cout << "n: " << g.size() << "  edges: " << g.edges().size() << "  total weight: "
              << num(g.total_weight()) << '\n'
              << "spectral cut: " << num(spectral.cut_weight) << "  side " << show(spectral.side) << '\n';
    if (exact)
        std::cout << "exact min cut" << (require_nonempty ? " (both sides nonempty)" : "") << ": "
                  << num(exact->cut_weight) << "  side " << show(exact->side) << '\n';
    else
        std::cout << "exact min cut: skipped (N > " << kMaxEnumerationDim << ")\n";
    return Exit::ok;
}

std::vector<double> broadcast(const std::vector<double>& values, std::size_t count, const char* name) {
    if (values.empty()) return std::vector<double>(count, 1.0);
    if (values.size() == 1) return std::vector<double>(count, values.front());
    if (values.size() != count)
        throw InvalidInput(std::string(name) + ": expected 1 or " + std::to_string(count) + " values, got " +
                           std::to_string(values.size()));
    return values;
}

struct SynthArgs {
    std::string patterns;
    Index hadamard = 0;
    Index count = 0;
    std::string stable;
    std::string antistable;
    std::vector<double> mu;
    std::vector<double> beta;
    std::string out;
};

int cmd_synth(const Config& cfg, const SynthArgs& a) {
    const bool spectral = !a.stable.empty() || !a.antistable.empty();
    const int sources = int(!a.patterns.empty()) + int(a.hadamard > 0) + int(spectral);
    if (sources != 1)
        throw InvalidInput("synth: give exactly one of --patterns, --hadamard, or --stable/--antistable");

    struct Check {
        SpinState pattern;
        std::string kind;
        double eigenvalue;
    };
    std::vector<Check> checks;
    WeightMatrix<double> w;
    std::string method;

    if (!spectral) {
        std::vector<SpinState> pats;
        if (a.hadamard > 0) {
            auto h = hadamard_patterns(a.hadamard);
            const Index s = a.count > 0 ? a.count : 1;
            if (s > Index(h.size())) throw InvalidInput("synth: --count exceeds the Hadamard order");
            pats.assign(h.begin(), h.begin() + s);
        } else {
            pats = load_patterns(a.patterns);
        }
        const Index n = pats.front().size();
        PatternSet ps(n, pats);
        w = hopfield_synthesize(ps);
        method = "hopfield";
        for (const auto& p : pats) checks.push_back({p, "stable", double(n - ps.count())});
    } else {
        SpectrumSpec spec;
        if (!a.stable.empty()) {
            const auto pats = load_patterns(a.stable);
            const auto mu = broadcast(a.mu, pats.size(), "--mu");
            for (std::size_t k = 0; k < pats.size(); ++k) spec.stable.push_back({pats[k], mu[k]});
        }
        if (!a.antistable.empty()) {
            const auto pats = load_patterns(a.antistable);
            const auto beta = broadcast(a.beta, pats.size(), "--beta");
            for (std::size_t k = 0; k < pats.size(); ++k) spec.antistable.push_back({pats[k], beta[k]});
        }
        w = spectral_synthesize(spec);
        method = "spectral";
        for (const auto& [p, mu] : spec.stable) checks.push_back({p, "stable", mu});
        for (const auto& [p, beta] : spec.antistable) checks.push_back({p, "antistable", -beta});
    }

    Json rows = Json::array();
    bool all_ok = true;
    for (const auto& c : checks) {
        const Vector<double> v = c.pattern.as<double>();
        const double residual = (w.entries() * v - c.eigenvalue * v).norm();
        const bool realized =
            c.kind == "stable" ? satisfies_stable(w, c.pattern) : satisfies_antistable(w, c.pattern);
        all_ok = all_ok && realized && residual <= 1e-10;
        rows.push_back(Json{{"pattern", to_json(c.pattern)},
                            {"kind", c.kind},
                            {"eigenvalue", c.eigenvalue},
                            {"residual", residual},
                            {"realized", realized}});
    }

    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f) throw InvalidInput("cannot write '" + a.out + "'");
        write_matrix(f, w.entries());
    }

    if (cfg.json) {
        emit(Json{{"method", method},
                  {"n", w.size()},
                  {"trace", w.trace()},
                  {"W", matrix_json(w.entries())},
                  {"patterns", rows},
                  {"verified", all_ok}});
    } else {
        std::cout << "method: " << method << "  n: " << w.size() << "  trace: " << num(w.trace()) << '\n'
                  << "W:\n";
        for (Index i = 0; i < w.size(); ++i) std::cout << "  " << show(Vector<double>(w.entries().row(i).transpose())) << '\n';
        for (const auto& r : rows)
            std::cout << r["kind"].get<std::string>() << ' ' << r["pattern"].dump()
                      << "  eigenvalue " << num(r["eigenvalue"].get<double>()) << "  residual "
                      << num(r["residual"].get<double>()) << (r["realized"].get<bool>() ? "  ok" : "  FAILED")
                      << '\n';
    }
    return all_ok ? Exit::ok : Exit::failure;
}

QuantizeRule parse_rule(const std::string& s) { return s == "round" ? QuantizeRule::round : QuantizeRule::floor; }

template <typename T, typename F>
std::vector<std::int64_t> pairwise(const std::vector<T>& a, const std::vector<T>& b, F&& f) {
    if (a.size() != b.size())
        throw InvalidInput("geom: inputs hold " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                           " entries; they must match");
    std::vector<std::int64_t> out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(f(a[k], b[k]));
    return out;
}

int print_values(const Config& cfg, const std::string& measure, const std::vector<std::int64_t>& values) {
    if (cfg.json) {
        emit(Json{{"measure", measure}, {"values", values}});
    } else {
        for (auto v : values) std::cout << v << '\n';
    }
    return Exit::ok;
}

struct GeomArgs {
    std::string a;
    std::string b;
    std::string rule = "floor";
    Index n = 0;
};

int cmd_geom(const Config& cfg, const std::string& what, const GeomArgs& g) {
    const auto rule = parse_rule(g.rule);
    if (what == "hamming")
        return print_values(cfg, what, pairwise(load_patterns(g.a), load_patterns(g.b),
                                                [](const SpinState& x, const SpinState& y) {
                                                    return std::int64_t(hamming_like(x, y));
                                                }));
    if (what == "induced")
        return print_values(cfg, what, pairwise(load_vectors(g.a), load_vectors(g.b),
                                                [&](const Vector<double>& x, const Vector<double>& y) {
                                                    return std::int64_t(induced_hamming(x, y, cfg.corner_rule()));
                                                }));
    if (what == "ghamming")
        return print_values(cfg, what, pairwise(load_vectors(g.a), load_vectors(g.b),
                                                [&](const Vector<double>& x, const Vector<double>& y) {
                                                    return std::int64_t(generalized_induced_hamming(x, y, rule));
                                                }));
    if (what == "manhattan")
        return print_values(cfg, what, pairwise(load_vectors(g.a), load_vectors(g.b),
                                                [&](const Vector<double>& x, const Vector<double>& y) {
                                                    return induced_manhattan(x, y, rule);
                                                }));
    if (what == "weight") {
        std::vector<std::int64_t> w;
        for (const auto& p : load_patterns(g.a)) w.push_back(corner_weight(p));
        return print_values(cfg, what, w);
    }
    if (what == "distribution") {
        const auto d = weight_distribution(g.n);
        if (cfg.json) {
            emit(Json{{"measure", what}, {"n", g.n}, {"counts", d}});
        } else {
            for (std::size_t k = 0; k < d.size(); ++k) std::cout << k << ' ' << d[k] << '\n';
        }
        return Exit::ok;
    }
    // orthogonal
    const bool exists = orthogonal_pattern_exists(g.n);
    if (cfg.json) {
        emit(Json{{"measure", what}, {"n", g.n}, {"exists", exists}});
    } else {
        std::cout << (exists ? "yes" : "no") << '\n';
    }
    return Exit::ok;
}

int cmd_canon(const Config& cfg, const std::string& path, const std::string& out) {
    const auto inst = load_instance(cfg, path);
    const auto canon = canonicalize(inst.raw);
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw InvalidInput("cannot write '" + out + "'");
        write_matrix(f, canon.network.W());
    }
    if (cfg.json) {
        emit(Json{{"n", canon.network.size()},
                  {"original_n", canon.original_size},
                  {"symmetrized", inst.symmetrized},
                  {"trace_offset", canon.offset},
                  {"threshold_absorbed", canon.absorbed},
                  {"W", matrix_json(canon.network.W())}});
    } else {
        std::cout << "# original n: " << canon.original_size << '\n'
                  << "# trace offset: " << num(canon.offset) << '\n'
                  << "# threshold node: " << (canon.absorbed ? "appended" : "none") << '\n';
        write_matrix(std::cout, canon.network.W());
    }
    return Exit::ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic forms over the hypercube: canonicalize, solve, enumerate, audit."};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--seed", cfg.seed, "Seed for instance generation and permuted order")->capture_default_str();
    app.add_option("--tol", cfg.tol, "Eigen residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--max-sweeps", cfg.max_sweeps, "Dynamics sweep budget (0: 4N+64)")->capture_default_str();
    app.add_option("--max-iter", cfg.max_iter, "Eigensolver budget (0: 10N^2)")->capture_default_str();
    app.add_option("--zero-as", cfg.zero_as, "Sign of a zero field or component")
        ->check(CLI::IsMember({"keep", "+1", "-1"}))
        ->capture_default_str();
    app.add_option("--order", cfg.order, "Serial visiting order")
        ->check(CLI::IsMember({"cyclic", "permuted"}))
        ->capture_default_str();
    app.add_option("--format", cfg.format, "Input format")
        ->check(CLI::IsMember({"auto", "matrix", "edges"}))
        ->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads for enumeration (0: all cores)");
    app.add_flag("--json", cfg.json, "JSON output");

    std::string input;
    auto* solve = app.add_subcommand("solve", "Spectral initialization plus serial dynamics");
    solve->add_option("input", input, "Matrix file or edge list")->required();

    auto* exact = app.add_subcommand("exact", "Exhaustive corner census (N <= 24)");
    exact->add_option("input", input, "Matrix file or edge list")->required();

    std::string cls = "gaussian";
    Index audit_n = 10;
    std::uint64_t audit_count = 100;
    bool csv = false;
    auto* audit = app.add_subcommand("audit", "Spectral heuristic against the exhaustive optimum");
    audit->add_option("--class", cls, "gaussian | nonnegative | sparse_graph | eigencorner")->capture_default_str();
    audit->add_option("--n", audit_n, "Dimension (<= 20)")->capture_default_str();
    audit->add_option("--count", audit_count, "Number of instances")->capture_default_str();
    audit->add_flag("--csv", csv, "CSV header and row");

    bool require_nonempty = false;
    auto* mincut = app.add_subcommand("mincut", "Minimum cut of a weighted undirected graph");
    mincut->add_option("input", input, "Edge list")->required();
    mincut->add_flag("--require-nonempty", require_nonempty, "Exclude the all-on-one-side partition");

    SynthArgs sa;
    auto* synth = app.add_subcommand("synth", "Weights with prescribed stable / antistable corners");
    synth->add_option("--patterns", sa.patterns, "Pattern file for the Hopfield construction");
    synth->add_option("--hadamard", sa.hadamard, "Use Hadamard rows of this order (power of two)");
    synth->add_option("--count", sa.count, "Number of Hadamard rows to store");
    synth->add_option("--stable", sa.stable, "Stable pattern file (spectral construction)");
    synth->add_option("--antistable", sa.antistable, "Antistable pattern file (spectral construction)");
    synth->add_option("--mu", sa.mu, "Positive eigenvalues for stable patterns");
    synth->add_option("--beta", sa.beta, "Magnitudes of negative eigenvalues for antistable patterns");
    synth->add_option("--out", sa.out, "Write W as a matrix file");

    GeomArgs ga;
    std::string measure;
    auto* geom = app.add_subcommand("geom", "Distances and corner counts");
    geom->add_option("measure", measure, "hamming | induced | ghamming | manhattan | weight | distribution | orthogonal")
        ->required()
        ->check(CLI::IsMember({"hamming", "induced", "ghamming", "manhattan", "weight", "distribution", "orthogonal"}));
    geom->add_option("a", ga.a, "First file");
    geom->add_option("b", ga.b, "Second file");
    geom->add_option("--n", ga.n, "Dimension for distribution / orthogonal");
    geom->add_option("--rule", ga.rule, "Quantization rule")->check(CLI::IsMember({"floor", "round"}));

    std::string canon_out;
    auto* canon = app.add_subcommand("canon", "Print the canonical zero-diagonal, zero-threshold form");
    canon->add_option("input", input, "Matrix file or edge list")->required();
    canon->add_option("--out", canon_out, "Write the canonical matrix file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::parse_failure;
    }

    try {
        if (*solve) return cmd_solve(cfg, input);
        if (*exact) return cmd_exact(cfg, input);
        if (*audit) return cmd_audit(cfg, cls, audit_n, audit_count, csv);
        if (*mincut) return cmd_mincut(cfg, input, require_nonempty);
        if (*synth) return cmd_synth(cfg, sa);
        if (*geom) {
            const bool two_files = measure != "weight" && measure != "distribution" && measure != "orthogonal";
            if (measure == "weight" && ga.a.empty()) throw InvalidInput("geom weight: pattern file required");
            if (two_files && (ga.a.empty() || ga.b.empty()))
                throw InvalidInput("geom " + measure + ": two input files required");
            if (measure == "orthogonal" && ga.n < 1) throw InvalidInput("geom orthogonal: --n must be positive");
            return cmd_geom(cfg, measure, ga);
        }
        if (*canon) return cmd_canon(cfg, input, canon_out);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::parse_failure;
    } catch (const NumericBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (best residual " << num(e.best_residual()) << ")\n";
        return Exit::numeric_budget;
    } catch (const EnumerationBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::enumeration_budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::failure;
    }
    return Exit::failure;
}
