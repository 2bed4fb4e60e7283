#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "miskit/capacity.hpp"
#include "miskit/decode.hpp"
#include "miskit/exact.hpp"
#include "miskit/io.hpp"
#include "miskit/pipelines.hpp"

namespace miskit {

enum class Method { Dga, Ga, QuboG, SupG, SupQuboG, Exact };

inline Method method_from_name(const std::string& token) {
    if (token == "dga") return Method::Dga;
    if (token == "ga") return Method::Ga;
    if (token == "qubo-g") return Method::QuboG;
    if (token == "sup-g") return Method::SupG;
    if (token == "sup-qubo-g") return Method::SupQuboG;
    if (token == "exact" || token == "exact-bnb") return Method::Exact;
    throw std::invalid_argument("unknown method: '" + token + "'");
}

inline std::string method_report_name(Method m) {
    switch (m) {
        case Method::Dga: return "dga";
        case Method::Ga: return "ga";
        case Method::QuboG: return "qubo-g";
        case Method::SupG: return "sup-g";
        case Method::SupQuboG: return "sup-qubo-g";
        case Method::Exact: return "exact-bnb";
    }
    throw std::logic_error("method_report_name: bad enum");
}

inline bool method_needs_model(Method m) {
    return m == Method::SupG || m == Method::SupQuboG;
}

// Run one method on one graph; wall time covers the solve only.
inline SolveResult solve_with_method(const Graph& g, Method method, const SolveConfig& config,
                                     const TrainedModel* model = nullptr) {
    if (method_needs_model(method) && model == nullptr)
        throw std::invalid_argument("method '" + method_report_name(method) +
                                    "' requires a trained model");
    switch (method) {
        case Method::QuboG: return solve_qubo_unsup(g, config);
        case Method::SupG: return solve_supervised_g(g, *model, config);
        case Method::SupQuboG: return solve_supervised_qubo_g(g, *model, config);
        case Method::Dga:
        case Method::Ga:
        case Method::Exact: {
            const auto start = std::chrono::steady_clock::now();
            SolveResult r;
            r.method = method_report_name(method);
            if (method == Method::Dga) {
                r.set = dga(g, config.k_exponent);
            } else if (method == Method::Ga) {
                r.set = greedy_random(g, config.seed);
            } else {
                r.set = exact_mis(g, config.exact_time_limit_s).set;
            }
            r.valid = is_independent(g, r.set);
            r.elapsed_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return r;
        }
    }
    throw std::logic_error("solve_with_method: bad enum");
}

// 100 * (exact_avg - method_avg) / exact_avg
inline double drop_pct(double exact_avg, double method_avg) {
    if (exact_avg <= 0.0) throw std::invalid_argument("drop_pct: exact average must be positive");
    return 100.0 * (exact_avg - method_avg) / exact_avg;
}

struct NamedGraph {
    std::string id;
    Graph graph;
};

struct DatasetDesc {
    std::string name;
    int num_graphs = 0;
    std::string params;
    std::uint64_t seed = 0;
};

struct BenchRow {
    std::string method;
    double avg_size = 0.0;
    double drop_pct = 0.0;
    double total_time_s = 0.0;
};

struct BenchCell {
    std::string graph_id;
    std::string method;
    SolveResult result;
};

struct BenchReport {
    DatasetDesc dataset;
    std::vector<BenchRow> rows;
    std::vector<BenchCell> cells;  // witness sets backing every average
};

// Benchmark harness. Every (graph, method) cell gets its own seed derived
// from (config.seed, graph index, method index), so results do not depend
// on worker count or execution order; timing columns are only reproducible
// with jobs = 1. The exact baseline comes from the label records; graphs
// without a label are solved exactly on the fly. A method failing on any
// graph aborts the whole report naming that graph.
inline BenchReport bench_run(const std::vector<NamedGraph>& graphs,
                             const std::vector<Method>& methods, const SolveConfig& config,
                             const TrainedModel* model = nullptr,
                             const std::vector<LabelRecord>* labels = nullptr, int jobs = 1,
                             DatasetDesc dataset = {}) {
    if (graphs.empty()) throw std::invalid_argument("bench_run: no graphs");
    if (methods.empty()) throw std::invalid_argument("bench_run: no methods");
    if (jobs < 1) throw std::invalid_argument("bench_run: jobs must be >= 1");
    for (Method m : methods)
        if (method_needs_model(m) && model == nullptr)
            throw std::invalid_argument("bench_run: method '" + method_report_name(m) +
                                        "' requires a trained model");

    std::map<std::string, double> baseline;
    if (labels) {
        for (const auto& rec : *labels) baseline[rec.graph_id] = static_cast<double>(rec.alpha);
    }
    double baseline_sum = 0.0;
    for (const auto& ng : graphs) {
        auto it = baseline.find(ng.id);
        if (it == baseline.end()) {
            const ExactResult ex = exact_mis(ng.graph, config.exact_time_limit_s);
            it = baseline.emplace(ng.id, static_cast<double>(ex.alpha)).first;
        }
        baseline_sum += it->second;
    }
    const double exact_avg = baseline_sum / static_cast<double>(graphs.size());

    BenchReport report;
    report.dataset = std::move(dataset);
    report.dataset.num_graphs = static_cast<int>(graphs.size());
    report.cells.resize(graphs.size() * methods.size());

    std::atomic<std::size_t> next_cell{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t cell = next_cell.fetch_add(1);
            if (cell >= report.cells.size() || failed.load()) return;
            const std::size_t gi = cell / methods.size();
            const std::size_t mi = cell % methods.size();
            SolveConfig cell_config = config;
            cell_config.seed = mix_seed(config.seed, gi, mi);
            try {
                SolveResult result =
                    solve_with_method(graphs[gi].graph, methods[mi], cell_config, model);
                report.cells[cell] = BenchCell{graphs[gi].id, method_report_name(methods[mi]),
                                               std::move(result)};
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                if (failure_message.empty())
                    failure_message = "bench: method '" + method_report_name(methods[mi]) +
                                      "' failed on graph '" + graphs[gi].id + "': " + e.what();
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(failure_message);

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        BenchRow row;
        row.method = method_report_name(methods[mi]);
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const BenchCell& cell = report.cells[gi * methods.size() + mi];
            row.avg_size += static_cast<double>(cell.result.set.size);
            row.total_time_s += cell.result.elapsed_s;
        }
        row.avg_size /= static_cast<double>(graphs.size());
        row.drop_pct =
            methods[mi] == Method::Exact ? 0.0 : drop_pct(exact_avg, row.avg_size);
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace detail {
inline std::string format_fixed(double value, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}
}  // namespace detail

// CSV schema shared by bench and capacity reports:
// dataset,method,avg_size,drop_pct,time_s
inline std::string bench_report_csv(const BenchReport& report, bool include_timing = true) {
    std::string out = "dataset,method,avg_size,drop_pct,time_s\n";
    for (const auto& row : report.rows) {
        out += report.dataset.name + "," + row.method + "," + detail::format_fixed(row.avg_size) +
               "," + detail::format_fixed(row.drop_pct) + "," +
               detail::format_fixed(include_timing ? row.total_time_s : 0.0) + "\n";
    }
    return out;
}

inline std::string bench_report_markdown(const BenchReport& report, bool include_timing = true) {
    std::string out;
    out += "### " + report.dataset.name + " (" + std::to_string(report.dataset.num_graphs) +
           " graphs";
    if (!report.dataset.params.empty()) out += ", " + report.dataset.params;
    out += ")\n\n";
    out += "| Method | Avg Size | Drop (%) | Time (s) |\n";
    out += "|---|---:|---:|---:|\n";
    for (const auto& row : report.rows) {
        out += "| " + row.method + " | " + detail::format_fixed(row.avg_size, 3) + " | " +
               detail::format_fixed(row.drop_pct, 2) + " | " +
               detail::format_fixed(include_timing ? row.total_time_s : 0.0, 3) + " |\n";
    }
    return out;
}

inline std::string bench_witness_lines(const BenchReport& report, bool include_timing = false) {
    std::string out;
    for (const auto& cell : report.cells) {
        nlohmann::json j = solve_result_to_json(cell.result, cell.graph_id, include_timing);
        j["method"] = cell.method;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline std::string capacity_report_csv(const CapacityEstimate& estimate, const std::string& name,
                                       bool include_timing = true) {
    std::string out = "dataset,method,avg_size,drop_pct,time_s\n";
    for (const auto& rec : estimate.records) {
        out += name + "^" + std::to_string(rec.k) + "," + rec.solver + "," +
               detail::format_fixed(static_cast<double>(rec.alpha_lower)) + "," +
               detail::format_fixed(0.0) + "," +
               detail::format_fixed(include_timing ? rec.elapsed_s : 0.0) + "\n";
    }
    return out;
}

inline std::string capacity_report_markdown(const CapacityEstimate& estimate,
                                            const std::string& name, int alphabet_size,
                                            bool include_timing = true) {
    std::string out = "### Shannon capacity lower bound for " + name + "\n\n";
    out += "| k | Vertices | alpha lower bound | Solver | Optimal | Time (s) |\n";
    out += "|---:|---:|---:|---|---|---:|\n";
    for (const auto& rec : estimate.records) {
        out += "| " + std::to_string(rec.k) + " | " + std::to_string(rec.num_vertices) + " | " +
               std::to_string(rec.alpha_lower) + " | " + rec.solver + " | " +
               (rec.optimal ? "yes" : "no") + " | " +
               detail::format_fixed(include_timing ? rec.elapsed_s : 0.0, 3) + " |\n";
    }
    out += "\ncapacity lower bound: max_k alpha(G^k)^(1/k) = " +
           detail::format_fixed(estimate.capacity_lb) + "\n";
    if (!estimate.records.empty()) {
        const auto& last = estimate.records.back();
        out += "\nWitness words for k=" + std::to_string(last.k) + " (" +
               std::to_string(last.witness.size) + " safely distinguishable words):\n\n";
        for (const auto& word : witness_words(last, alphabet_size)) {
            out += "- ";
            for (std::size_t i = 0; i < word.size(); ++i) {
                if (i) out += ".";
                out += std::to_string(word[i]);
            }
            out += "\n";
        }
    }
    return out;
}

inline std::string confusion_report_csv(const ConfusionReport& report,
                                        bool include_timing = true) {
    std::string out = "dataset,method,avg_size,drop_pct,time_s\n";
    for (const auto& cell : report.cells) {
        out += std::to_string(cell.k) + "-letter," + cell.method + "," +
               detail::format_fixed(static_cast<double>(cell.size)) + "," +
               detail::format_fixed(cell.drop_pct) + "," +
               detail::format_fixed(include_timing ? cell.elapsed_s : 0.0) + "\n";
    }
    return out;
}

inline std::string confusion_report_markdown(const ConfusionReport& report,
                                             bool include_timing = true) {
    std::string out = "### Confusion graph experiment: " + report.name + "\n\n";
    out += "| Words | Method | Size | Drop (%) | Time (s) |\n";
    out += "|---|---|---:|---:|---:|\n";
    for (const auto& cell : report.cells) {
        out += "| " + std::to_string(cell.k) + "-letter | " + cell.method + " | " +
               std::to_string(cell.size) + " | " + detail::format_fixed(cell.drop_pct, 2) +
               " | " + detail::format_fixed(include_timing ? cell.elapsed_s : 0.0, 3) + " |\n";
    }
    return out;
}

// Directory loader: every *.dimacs, *.col, *.graph or *.txt file, sorted by
// name so ids and derived seeds are stable.
inline std::vector<NamedGraph> load_graph_dir(const std::string& dir,
                                              std::vector<std::string>* warnings = nullptr) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".dimacs" || ext == ".col" || ext == ".graph" || ext == ".txt")
            paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<NamedGraph> graphs;
    graphs.reserve(paths.size());
    for (const auto& path : paths)
        graphs.push_back(NamedGraph{path.stem().string(), load_graph_file(path.string(), warnings)});
    if (graphs.empty()) throw std::runtime_error("no graph files found in " + dir);
    return graphs;
}

// Join graphs with optimal labels for supervised training. Graphs whose
// label is missing or non-optimal are skipped and reported.
inline std::vector<LabeledGraph> make_labeled_dataset(const std::vector<NamedGraph>& graphs,
                                                      const std::vector<LabelRecord>& labels,
                                                      std::vector<std::string>* skipped = nullptr) {
    std::map<std::string, const LabelRecord*> by_id;
    for (const auto& rec : labels) by_id[rec.graph_id] = &rec;
    std::vector<LabeledGraph> dataset;
    for (const auto& ng : graphs) {
        auto it = by_id.find(ng.id);
        if (it == by_id.end() || !it->second->optimal ||
            it->second->n != ng.graph.num_vertices()) {
            if (skipped) skipped->push_back(ng.id);
            continue;
        }
        LabeledGraph lg;
        lg.id = ng.id;
        lg.graph = ng.graph;
        lg.labels.assign(static_cast<std::size_t>(ng.graph.num_vertices()), 0);
        for (int v : it->second->members) lg.labels[static_cast<std::size_t>(v)] = 1;
        dataset.push_back(std::move(lg));
    }
    return dataset;
}

}  // namespace miskit
