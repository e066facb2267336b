#include "hyperq/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

namespace hyperq {

namespace {

constexpr unsigned kChunkBits = 6;
constexpr std::uint64_t kResyncPeriod = 1024;

unsigned resolve_workers(unsigned requested, std::uint64_t jobs) {
    unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(jobs, 1)));
}

/// Runs job(i) for i in [0, jobs) on `workers` threads.
template <typename Job>
void parallel_for(std::uint64_t jobs, unsigned workers, Job&& job) {
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < jobs; ++i) job(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::uint64_t i = next++; i < jobs && !failed; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

struct Candidate {
    std::uint64_t mask;
    double energy;
};

/// Running optimum with every corner within kEnergyTol of it.
class Extremum {
public:
    explicit Extremum(bool maximize) : sign_(maximize ? 1.0 : -1.0) {}

    void offer(std::uint64_t mask, double e) {
        const double v = sign_ * e;
        if (v > best_) {
            best_ = v;
            std::erase_if(list_, [&](const Candidate& c) { return sign_ * c.energy < best_ - kEnergyTol; });
        }
        if (v >= best_ - kEnergyTol) list_.push_back({mask, e});
    }

    void merge(const Extremum& other) {
        for (const auto& c : other.list_) offer(c.mask, c.energy);
    }

    const std::vector<Candidate>& candidates() const { return list_; }

private:
    double sign_;
    double best_ = -std::numeric_limits<double>::infinity();
    std::vector<Candidate> list_;
};

struct ChunkResult {
    Extremum max{true};
    Extremum min{false};
    std::vector<std::uint64_t> stable;
    std::vector<std::uint64_t> antistable;
    std::uint64_t evaluated = 0;
};

/// True when all entries are multiples of 2^-10 of moderate size, so the
/// incremental field updates are exact in double precision.
bool exactly_representable(const Matrix<double>& M, const Vector<double>& T) {
    auto ok = [](double v) {
        const double s = v * 1024.0;
        return std::abs(s) < 1e9 && s == std::round(s);
    };
    for (Index i = 0; i < M.size(); ++i)
        if (!ok(M.data()[i])) return false;
    for (Index i = 0; i < T.size(); ++i)
        if (!ok(T(i))) return false;
    return true;
}

double direct_energy(const Matrix<double>& M, const Vector<double>& T, std::uint64_t mask, Index n) {
    return energy<double>(M, T, SpinState::from_mask(mask, n));
}

/// Picks the final optimum from merged candidates after recomputing their
/// energies from scratch.
void finalize(const Extremum& ext, bool maximize, const Matrix<double>& M, const Vector<double>& T,
              Index n, double& value, std::vector<std::uint64_t>& masks) {
    std::vector<Candidate> exact;
    exact.reserve(ext.candidates().size());
    for (const auto& c : ext.candidates()) exact.push_back({c.mask, direct_energy(M, T, c.mask, n)});
    const double s = maximize ? 1.0 : -1.0;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : exact) best = std::max(best, s * c.energy);
    masks.clear();
    for (const auto& c : exact)
        if (s * c.energy >= best - kEnergyTol) masks.push_back(c.mask);
    std::sort(masks.begin(), masks.end());
    value = s * best;
}

}  // namespace

std::vector<SpinState> CornerCensus::states(const std::vector<std::uint64_t>& masks) const {
    std::vector<SpinState> out;
    out.reserve(masks.size());
    for (auto m : masks) out.push_back(state(m));
    return out;
}

CornerCensus census(const WeightMatrix<double>& Mw, const Vector<double>& T, const CensusOptions& opt) {
    const Index n = Mw.size();
    if (n < 1) throw InvalidInput("census: empty instance");
    if (T.size() != n) throw DimensionMismatch(n, T.size(), "census thresholds");
    if (n > kMaxEnumerationDim)
        throw EnumerationBudgetExceeded(
            "census: N = " + std::to_string(n) + " exceeds the enumeration limit of " +
            std::to_string(kMaxEnumerationDim) + "; use the spectral solver for larger instances");

    const Matrix<double>& M = Mw.entries();
    const bool pure = !(T.array() != 0.0).any();
    const bool exact = exactly_representable(M, T);
    // With zero thresholds x and -x share energy and stability: fix the last spin.
    const unsigned free_bits = static_cast<unsigned>(n) - (pure ? 1u : 0u);
    const unsigned chunk_bits = std::min(free_bits, kChunkBits);
    const unsigned low_bits = free_bits - chunk_bits;
    const std::uint64_t chunks = std::uint64_t{1} << chunk_bits;
    const std::uint64_t per_chunk = std::uint64_t{1} << low_bits;
    const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    const Vector<double> row_scale = M.cwiseAbs().rowwise().sum() + T.cwiseAbs();

    std::vector<ChunkResult> results(chunks);

    auto run_chunk = [&](std::uint64_t chunk) {
        ChunkResult& out = results[chunk];
        std::uint64_t mask = chunk << low_bits;
        Vector<double> x(n);
        for (Index i = 0; i < n; ++i) x(i) = ((mask >> i) & 1U) ? -1.0 : 1.0;
        Vector<double> h = M * x;
        double e = x.dot(h) - 2.0 * x.dot(T);

        auto record = [&](std::uint64_t m) {
            out.max.offer(m, e);
            out.min.offer(m, e);
        };

        for (std::uint64_t k = 0; k < per_chunk; ++k) {
            if (k > 0) {
                const auto i = static_cast<Index>(std::countr_zero(k));
                const double s = x(i);
                e += -4.0 * s * (h(i) - M(i, i) * s) + 4.0 * s * T(i);
                h.noalias() -= (2.0 * s) * M.col(i);
                x(i) = -s;
                mask ^= (std::uint64_t{1} << i);
                if (!exact && k % kResyncPeriod == 0) {
                    h.noalias() = M * x;
                    e = x.dot(h) - 2.0 * x.dot(T);
                }
            }
            ++out.evaluated;

            bool near_zero = false;
            for (Index j = 0; j < n && !near_zero; ++j)
                near_zero = std::abs(h(j) - T(j)) <= 1e-9 * (1.0 + row_scale(j));
            if (near_zero && !exact) {
                h.noalias() = M * x;
                e = x.dot(h) - 2.0 * x.dot(T);
            }

            bool stable = true;
            bool anti = pure;
            for (Index j = 0; j < n && (stable || anti); ++j) {
                const double f = h(j) - T(j);
                const int xj = x(j) > 0 ? 1 : -1;
                if (sign_of(f, opt.zero_rule, xj) != xj) stable = false;
                if (x(j) * f > 0) anti = false;
            }

            record(mask);
            if (stable) out.stable.push_back(mask);
            if (anti) out.antistable.push_back(mask);
            if (pure) {
                const std::uint64_t neg = mask ^ full;
                record(neg);
                if (stable) out.stable.push_back(neg);
                if (anti) out.antistable.push_back(neg);
                ++out.evaluated;
            }
        }
    };

    parallel_for(chunks, resolve_workers(opt.workers, chunks), run_chunk);

    Extremum max{true}, min{false};
    CornerCensus c;
    c.n = n;
    for (auto& r : results) {
        max.merge(r.max);
        min.merge(r.min);
        c.stable.insert(c.stable.end(), r.stable.begin(), r.stable.end());
        c.antistable.insert(c.antistable.end(), r.antistable.begin(), r.antistable.end());
        c.corners_evaluated += r.evaluated;
    }
    std::sort(c.stable.begin(), c.stable.end());
    std::sort(c.antistable.begin(), c.antistable.end());
    finalize(max, true, M, T, n, c.global_max, c.argmax);
    finalize(min, false, M, T, n, c.global_min, c.argmin);
    return c;
}

CornerCensus census(const Network<double>& net, const CensusOptions& opt) {
    return census(net.weights(), net.T(), opt);
}

CutResult brute_min_cut(const Graph& g, bool require_nonempty) {
    const Index n = g.size();
    if (n > kMaxEnumerationDim)
        throw EnumerationBudgetExceeded("brute_min_cut: N = " + std::to_string(n) +
                                        " exceeds the enumeration limit of " +
                                        std::to_string(kMaxEnumerationDim));
    if (require_nonempty && n < 2)
        throw InvalidInput("brute_min_cut: a nonempty bipartition needs at least two vertices");

    std::vector<std::vector<std::pair<Index, double>>> adj(static_cast<std::size_t>(n));
    for (const auto& e : g.edges()) {
        adj[std::size_t(e.u)].push_back({e.v, e.w});
        adj[std::size_t(e.v)].push_back({e.u, e.w});
    }

    // Vertex 0 stays on the +1 side; Gray code over vertices 1..n-1.
    std::vector<int> x(static_cast<std::size_t>(n), 1);
    std::uint64_t mask = 0;
    double cut = 0;
    bool have = false;
    double best = 0;
    std::uint64_t best_mask = 0;
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    for (std::uint64_t k = 0; k < total; ++k) {
        if (k > 0) {
            const auto v = static_cast<Index>(std::countr_zero(k)) + 1;
            for (const auto& [u, w] : adj[std::size_t(v)]) cut += (x[std::size_t(u)] == x[std::size_t(v)]) ? w : -w;
            x[std::size_t(v)] = -x[std::size_t(v)];
            mask ^= (std::uint64_t{1} << v);
        }
        if (require_nonempty && mask == 0) continue;
        if (!have || cut < best - kEnergyTol) {
            have = true;
            best = cut;
            best_mask = mask;
        } else if (cut <= best + kEnergyTol && mask < best_mask) {
            best = std::min(best, cut);
            best_mask = mask;
        }
    }
    SpinState side = SpinState::from_mask(best_mask, n);
    return {side, cut_weight(g, side), energy(graph_to_network(g), side)};
}

std::string_view to_string(InstanceClass c) {
    switch (c) {
    case InstanceClass::gaussian: return "gaussian";
    case InstanceClass::nonnegative: return "nonnegative";
    case InstanceClass::sparse_graph: return "sparse_graph";
    case InstanceClass::eigencorner: return "eigencorner";
    case InstanceClass::custom: return "custom";
    }
    return "unknown";
}

InstanceClass parse_instance_class(std::string_view name) {
    for (auto c : {InstanceClass::gaussian, InstanceClass::nonnegative, InstanceClass::sparse_graph,
                   InstanceClass::eigencorner, InstanceClass::custom})
        if (to_string(c) == name) return c;
    throw InvalidInput("unknown instance class '" + std::string(name) + "'");
}

std::uint64_t instance_seed(std::uint64_t batch_seed, std::uint64_t i) {
    // splitmix64 finalizer
    std::uint64_t z = batch_seed + 0x9E3779B97F4A7C15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

Matrix<double> symmetric_zero_diag(Matrix<double> a) {
    Matrix<double> w = 0.5 * (a + a.transpose());
    w.diagonal().setZero();
    return w;
}

std::vector<Index> random_derangement(Index n, std::mt19937_64& rng) {
    std::vector<Index> p(static_cast<std::size_t>(n));
    for (;;) {
        std::iota(p.begin(), p.end(), Index{0});
        std::shuffle(p.begin(), p.end(), rng);
        bool fixed = false;
        for (Index i = 0; i < n; ++i) fixed = fixed || p[std::size_t(i)] == i;
        if (!fixed) return p;
    }
}

Network<double> eigencorner_instance(Index n, std::mt19937_64& rng) {
    if (n == 1) return Network<double>(Matrix<double>::Zero(1, 1));
    std::uniform_real_distribution<double> coeff(0.5, 1.5);
    std::bernoulli_distribution coin(0.5);
    Matrix<double> a = Matrix<double>::Zero(n, n);
    // Sum of symmetrized derangements: zero diagonal, every row sums to 2*sum(c).
    for (int k = 0; k < 3 || !is_irreducible(WeightMatrix<double>(a)); ++k) {
        const auto p = random_derangement(n, rng);
        const double c = coeff(rng);
        for (Index i = 0; i < n; ++i) {
            a(i, p[std::size_t(i)]) += c;
            a(p[std::size_t(i)], i) += c;
        }
    }
    Vector<double> d(n);
    for (Index i = 0; i < n; ++i) d(i) = coin(rng) ? 1.0 : -1.0;
    return Network<double>(Matrix<double>(d.asDiagonal() * a * d.asDiagonal()));
}

}  // namespace

Network<double> generate_instance(InstanceClass cls, Index n, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("generate_instance: n must be positive");
    std::mt19937_64 rng(seed);
    switch (cls) {
    case InstanceClass::gaussian: {
        std::normal_distribution<double> d(0.0, 1.0);
        Matrix<double> a(n, n);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < n; ++i) a(i, j) = d(rng);
        return Network<double>(symmetric_zero_diag(std::move(a)));
    }
    case InstanceClass::nonnegative: {
        std::uniform_real_distribution<double> d(0.0, 1.0);
        Matrix<double> a(n, n);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < n; ++i) a(i, j) = d(rng);
        return Network<double>(symmetric_zero_diag(std::move(a)));
    }
    case InstanceClass::sparse_graph: {
        std::bernoulli_distribution edge(0.5);
        std::uniform_real_distribution<double> w(-1.0, 1.0);
        std::vector<Edge> edges;
        for (Index u = 0; u < n; ++u)
            for (Index v = u + 1; v < n; ++v)
                if (edge(rng)) edges.push_back({u, v, w(rng)});
        return graph_to_network(Graph(n, std::move(edges)));
    }
    case InstanceClass::eigencorner:
        return eigencorner_instance(n, rng);
    case InstanceClass::custom:
        break;
    }
    throw InvalidInput("generate_instance: the custom class has no generator");
}

namespace {

struct InstanceOutcome {
    bool success = false;
    double gap = 0;
    Shortcut shortcut = Shortcut::none;
    bool degenerate = false;
    bool budget = false;
};

InstanceOutcome audit_one(const Network<double>& net, const AuditOptions& opt) {
    const auto solved = spectral_solve(net, opt.policy, opt.eigen);
    CensusOptions copt;
    copt.workers = 1;
    const auto truth = census(net, copt);
    InstanceOutcome o;
    o.gap = (truth.global_max - solved.final_energy) / std::max(1.0, std::abs(truth.global_max));
    o.success = solved.final_energy >= truth.global_max - kEnergyTol;
    o.shortcut = solved.shortcut_used;
    o.degenerate = solved.degenerate_top;
    o.budget = solved.run.termination == Termination::budget_exhausted;
    return o;
}

AuditReport summarize(const std::vector<InstanceOutcome>& outcomes) {
    AuditReport r;
    r.instances = outcomes.size();
    double gap_sum = 0;
    for (const auto& o : outcomes) {
        r.successes += o.success ? 1 : 0;
        gap_sum += o.gap;
        r.gap_max = std::max(r.gap_max, o.gap);
        r.perron_shortcuts += o.shortcut == Shortcut::perron;
        r.eigencorner_shortcuts += o.shortcut == Shortcut::eigencorner;
        r.degenerate_top += o.degenerate;
        r.budget_exhausted += o.budget;
    }
    if (r.instances > 0) {
        r.success_rate = double(r.successes) / double(r.instances);
        r.gap_mean = gap_sum / double(r.instances);
    }
    return r;
}

}  // namespace

AuditReport audit_spectral(InstanceClass cls, Index n, std::uint64_t count, std::uint64_t seed,
                           const AuditOptions& opt) {
    if (n < 1 || n > 20) throw InvalidInput("audit: n must lie in [1, 20]");
    std::vector<InstanceOutcome> outcomes(count);
    parallel_for(count, resolve_workers(opt.workers, count), [&](std::uint64_t i) {
        outcomes[i] = audit_one(generate_instance(cls, n, instance_seed(seed, i)), opt);
    });
    AuditReport r = summarize(outcomes);
    r.class_label = std::string(to_string(cls));
    r.n = n;
    r.seed = seed;
    return r;
}

AuditReport audit_spectral(const std::vector<Network<double>>& instances, const AuditOptions& opt) {
    std::vector<InstanceOutcome> outcomes(instances.size());
    for (const auto& net : instances)
        if (net.size() > 20) throw InvalidInput("audit: n must lie in [1, 20]");
    parallel_for(instances.size(), resolve_workers(opt.workers, instances.size()),
                 [&](std::uint64_t i) { outcomes[i] = audit_one(instances[i], opt); });
    AuditReport r = summarize(outcomes);
    r.class_label = "custom";
    r.n = instances.empty() ? 0 : instances.front().size();
    return r;
}

}  // namespace hyperq
