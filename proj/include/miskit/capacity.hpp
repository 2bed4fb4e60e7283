#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "miskit/exact.hpp"
#include "miskit/graph.hpp"
#include "miskit/pipelines.hpp"

namespace miskit {

enum class CapacitySolver { Auto, Exact, Dga, QuboG, SupQuboG };

inline CapacitySolver capacity_solver_from_name(const std::string& name) {
    if (name == "auto") return CapacitySolver::Auto;
    if (name == "exact") return CapacitySolver::Exact;
    if (name == "dga") return CapacitySolver::Dga;
    if (name == "qubo-g") return CapacitySolver::QuboG;
    if (name == "sup-qubo-g") return CapacitySolver::SupQuboG;
    throw std::invalid_argument("unknown capacity solver: " + name);
}

struct CapacityRecord {
    int k = 1;
    long long num_vertices = 0;
    int alpha_lower = 0;        // size of the best independent set found in G^k
    std::string solver;         // what produced the winning witness
    bool optimal = false;       // true only when an exact search completed
    double elapsed_s = 0.0;
    IndependentSet witness;     // concrete set in G^k backing alpha_lower
};

struct CapacityEstimate {
    std::vector<CapacityRecord> records;
    double capacity_lb = 0.0;  // max over k of alpha_lower(k)^(1/k)
    bool truncated = false;    // vertex budget stopped the ladder before k_max
};

namespace detail {

// Product of an independent set in G^j with one in G^(k-j): concatenating
// words keeps independence in the strong product, so sizes multiply.
inline IndependentSet product_set(const IndependentSet& left, const IndependentSet& right,
                                  long long right_vertex_count, long long total_vertices) {
    IndependentSet out;
    out.members.assign(static_cast<std::size_t>(total_vertices), false);
    for (std::size_t a = 0; a < left.members.size(); ++a) {
        if (!left.members[a]) continue;
        for (std::size_t b = 0; b < right.members.size(); ++b) {
            if (!right.members[b]) continue;
            out.members[a * static_cast<std::size_t>(right_vertex_count) + b] = true;
            ++out.size;
        }
    }
    return out;
}

}  // namespace detail

// Climb the power ladder G, G^2, ..., G^k_max, find a large independent set
// in each, and report the best k-th-root lower bound on the Shannon
// capacity. Each alpha_lower is backed by a validated witness set; product
// combinations of earlier witnesses are always considered, so
// alpha_lower(k) >= alpha_lower(1)^k. Powers beyond the vertex budget are
// skipped and the estimate marked truncated.
inline CapacityEstimate estimate_capacity(const Graph& g, int k_max,
                                          CapacitySolver solver_choice, const SolveConfig& config,
                                          const TrainedModel* model = nullptr,
                                          int exact_threshold = 200,
                                          long long vertex_budget = kDefaultVertexBudget) {
    if (k_max < 1) throw std::invalid_argument("estimate_capacity: k_max must be >= 1");
    if (g.num_vertices() < 1) throw std::invalid_argument("estimate_capacity: empty graph");
    if ((solver_choice == CapacitySolver::SupQuboG) && model == nullptr)
        throw std::invalid_argument("estimate_capacity: sup-qubo-g needs a trained model");

    CapacityEstimate estimate;
    Graph power;
    for (int k = 1; k <= k_max; ++k) {
        if (power_vertex_count(g.num_vertices(), k, vertex_budget) < 0) {
            estimate.truncated = true;
            break;
        }
        power = (k == 1) ? g : strong_product(power, g);

        SolveConfig per_k = config;
        per_k.seed = mix_seed(config.seed, static_cast<std::uint64_t>(k));
        CapacityRecord rec;
        rec.k = k;
        rec.num_vertices = power.num_vertices();

        const auto start = std::chrono::steady_clock::now();
        CapacitySolver actual = solver_choice;
        if (actual == CapacitySolver::Auto)
            actual = power.num_vertices() <= exact_threshold ? CapacitySolver::Exact
                                                             : CapacitySolver::QuboG;
        switch (actual) {
            case CapacitySolver::Exact: {
                const ExactResult ex = exact_mis(power, config.exact_time_limit_s);
                rec.witness = ex.set;
                rec.alpha_lower = ex.alpha;
                rec.optimal = ex.optimal;
                rec.solver = "exact-bnb";
                break;
            }
            case CapacitySolver::Dga: {
                rec.witness = dga(power, config.k_exponent);
                rec.alpha_lower = rec.witness.size;
                rec.solver = "dga";
                break;
            }
            case CapacitySolver::QuboG: {
                const SolveResult r = solve_qubo_unsup(power, per_k);
                rec.witness = r.set;
                rec.alpha_lower = r.set.size;
                rec.solver = "qubo-g";
                break;
            }
            case CapacitySolver::SupQuboG: {
                const SolveResult r = solve_supervised_qubo_g(power, *model, per_k);
                rec.witness = r.set;
                rec.alpha_lower = r.set.size;
                rec.solver = "sup-qubo-g";
                break;
            }
            case CapacitySolver::Auto: break;  // resolved above
        }

        // Word concatenation of earlier witnesses can only help; it also
        // guarantees super-multiplicativity of the reported bounds.
        for (int j = 1; j < k; ++j) {
            const CapacityRecord& left = estimate.records[static_cast<std::size_t>(j - 1)];
            const CapacityRecord& right = estimate.records[static_cast<std::size_t>(k - j - 1)];
            if (static_cast<long long>(left.witness.members.size()) *
                    static_cast<long long>(right.witness.members.size()) !=
                rec.num_vertices)
                continue;
            IndependentSet candidate = detail::product_set(left.witness, right.witness,
                                                           right.num_vertices, rec.num_vertices);
            if (candidate.size > rec.alpha_lower && is_independent(power, candidate)) {
                rec.alpha_lower = candidate.size;
                rec.witness = std::move(candidate);
                rec.solver = "product(" + std::to_string(j) + "," + std::to_string(k - j) + ")";
            }
        }

        if (!is_independent(power, rec.witness))
            throw std::logic_error("estimate_capacity: witness failed validation");
        rec.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        estimate.records.push_back(std::move(rec));
    }

    for (const auto& rec : estimate.records)
        estimate.capacity_lb = std::max(
            estimate.capacity_lb, std::pow(static_cast<double>(rec.alpha_lower), 1.0 / rec.k));
    return estimate;
}

// Decode a capacity witness into k-letter words over the base alphabet.
inline std::vector<std::vector<int>> witness_words(const CapacityRecord& rec, int alphabet_size) {
    std::vector<std::vector<int>> words;
    words.reserve(static_cast<std::size_t>(rec.witness.size));
    for (int v : rec.witness.vertices())
        words.push_back(decode_word(v, alphabet_size, rec.k));
    return words;
}

struct ConfusionCell {
    int k = 1;
    std::string method;
    int size = 0;
    double drop_pct = 0.0;  // vs. the exact solver at the same k
    double elapsed_s = 0.0;
};

struct ConfusionReport {
    std::string name;
    int alphabet_size = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    int k_max = 0;
    std::vector<ConfusionCell> cells;  // k-major, methods exact-bnb, dga, sup-qubo-g
};

// Confusion-channel experiment: solve the word graphs G, G^2, ..., G^k_max
// with the exact solver, the degree-based greedy baseline and the combined
// supervised+QUBO pipeline, reporting size, drop against exact, and time.
inline ConfusionReport confusion_experiment_on(const Graph& g, int k_max,
                                               const SolveConfig& config,
                                               const TrainedModel& model,
                                               const std::string& name = "confusion") {
    if (k_max < 1) throw std::invalid_argument("confusion_experiment: k_max must be >= 1");
    ConfusionReport report;
    report.name = name;
    report.alphabet_size = g.num_vertices();
    report.k_max = k_max;
    Graph power;
    for (int k = 1; k <= k_max; ++k) {
        power = (k == 1) ? g : strong_product(power, g);
        SolveConfig per_k = config;
        per_k.seed = mix_seed(config.seed, static_cast<std::uint64_t>(k));

        auto timed = [&](auto&& solve) {
            const auto start = std::chrono::steady_clock::now();
            IndependentSet set = solve();
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (!is_independent(power, set))
                throw std::logic_error("confusion_experiment: invalid set");
            return std::pair<IndependentSet, double>{std::move(set), secs};
        };

        auto [exact_set, exact_time] =
            timed([&] { return exact_mis(power, config.exact_time_limit_s).set; });
        auto [dga_set, dga_time] = timed([&] { return dga(power, config.k_exponent); });
        auto [sqg_set, sqg_time] =
            timed([&] { return solve_supervised_qubo_g(power, model, per_k).set; });

        const double exact_size = static_cast<double>(exact_set.size);
        report.cells.push_back({k, "exact-bnb", exact_set.size, 0.0, exact_time});
        report.cells.push_back(
            {k, "dga", dga_set.size, 100.0 * (exact_size - dga_set.size) / exact_size, dga_time});
        report.cells.push_back({k, "sup-qubo-g", sqg_set.size,
                                100.0 * (exact_size - sqg_set.size) / exact_size, sqg_time});
    }
    return report;
}

inline ConfusionReport confusion_experiment(int alphabet_size, double p, std::uint64_t seed,
                                            int k_max, const SolveConfig& config,
                                            const TrainedModel& model) {
    Graph g = random_confusion_graph(alphabet_size, p, seed);
    ConfusionReport report = confusion_experiment_on(g, k_max, config, model);
    report.p = p;
    report.seed = seed;
    return report;
}

}  // namespace miskit
