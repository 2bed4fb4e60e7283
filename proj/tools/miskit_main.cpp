// miskit command line: generate datasets, ingest CNF, compute exact labels,
// solve single graphs, train the supervised model, run benchmarks and
// Shannon-capacity experiments. All randomness flows from --seed; outputs
// are byte-identical across runs unless timing is explicitly enabled.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "miskit/miskit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string four_digits(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d", i);
    return buf;
}

miskit::SolveConfig load_config(const std::string& path, std::uint64_t seed, bool seed_given) {
    miskit::SolveConfig config;
    if (!path.empty())
        config = miskit::solve_config_from_json(json::parse(miskit::read_text_file(path)));
    if (seed_given) config.seed = seed;
    return config;
}

miskit::TrainedModel load_model(const std::string& path) {
    return miskit::trained_model_from_json(json::parse(miskit::read_text_file(path)));
}

// Deterministic fallback model for sup-* methods when no --model is given:
// a small seeded batch of exactly labeled ER(10, 0.5) graphs.
miskit::TrainedModel train_default_model(const miskit::SolveConfig& config) {
    std::cerr << "note: no --model given, training a default model on 120 labeled ER(10,0.5) graphs\n";
    std::vector<miskit::LabeledGraph> dataset;
    for (int i = 0; i < 120; ++i) {
        miskit::LabeledGraph lg;
        lg.id = "default_" + four_digits(i);
        lg.graph = miskit::erdos_renyi(10, 0.5, miskit::mix_seed(config.seed, 0xD0DEull, i));
        const miskit::ExactResult ex = miskit::exact_mis(lg.graph, 10.0);
        lg.labels.assign(10, 0);
        for (int v : ex.set.vertices()) lg.labels[static_cast<std::size_t>(v)] = 1;
        dataset.push_back(std::move(lg));
    }
    return miskit::train_supervised(dataset, config, "default-er10");
}

int run_gen(const std::string& model, int n, double p, int count, std::uint64_t seed,
            const std::string& out_dir) {
    fs::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
        const std::uint64_t graph_seed = miskit::mix_seed(seed, static_cast<std::uint64_t>(i));
        const miskit::Graph g = model == "er" ? miskit::erdos_renyi(n, p, graph_seed)
                                              : miskit::random_confusion_graph(n, p, graph_seed);
        miskit::write_text_file((fs::path(out_dir) / (model + "_" + four_digits(i) + ".dimacs")).string(),
                                miskit::write_dimacs(g));
    }
    json manifest{{"model", model}, {"n", n}, {"p", p}, {"count", count}, {"seed", seed}};
    miskit::write_text_file((fs::path(out_dir) / "dataset.json").string(), manifest.dump(2) + "\n");
    std::cout << json{{"generated", count}, {"out", out_dir}}.dump() << "\n";
    return 0;
}

int run_convert(const std::string& cnf_path, const std::string& out_path) {
    const miskit::CnfReduction red = miskit::cnf_to_mis_graph(miskit::read_text_file(cnf_path));
    std::string text = "c converted from CNF, clauses=" + std::to_string(red.clause_count) + "\n" +
                       miskit::write_dimacs(red.graph);
    miskit::write_text_file(out_path, text);
    std::cout << json{{"vertices", red.graph.num_vertices()},
                      {"edges", red.graph.num_edges()},
                      {"clauses", red.clause_count},
                      {"out", out_path}}
                     .dump()
              << "\n";
    return 0;
}

int run_label(const std::string& in_dir, double time_limit, const std::string& out_path) {
    const auto graphs = miskit::load_graph_dir(in_dir);
    std::vector<miskit::LabelRecord> records;
    int timeouts = 0;
    for (const auto& ng : graphs) {
        const miskit::ExactResult ex = miskit::exact_mis(ng.graph, time_limit);
        if (!ex.optimal) {
            ++timeouts;
            std::cerr << "note: " << ng.id << " hit the time limit; labeled optimal=false\n";
        }
        records.push_back(miskit::LabelRecord{ng.id, ng.graph.num_vertices(), ex.alpha,
                                              ex.set.vertices(), ex.optimal});
    }
    miskit::write_text_file(out_path, miskit::write_label_lines(records));
    std::cout << json{{"labeled", records.size()}, {"timeouts", timeouts}, {"out", out_path}}.dump()
              << "\n";
    return 0;
}

int run_solve(const std::string& graph_path, const std::string& method_token,
              const std::string& model_path, const std::string& config_path, std::uint64_t seed,
              bool seed_given, bool timing) {
    const miskit::Method method = miskit::method_from_name(method_token);
    miskit::SolveConfig config = load_config(config_path, seed, seed_given);
    std::vector<std::string> warnings;
    const miskit::Graph g = miskit::load_graph_file(graph_path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    std::optional<miskit::TrainedModel> model;
    if (miskit::method_needs_model(method))
        model = model_path.empty() ? train_default_model(config) : load_model(model_path);
    const miskit::SolveResult result =
        miskit::solve_with_method(g, method, config, model ? &*model : nullptr);
    std::cout << miskit::solve_result_to_json(result, fs::path(graph_path).stem().string(), timing)
                     .dump()
              << "\n";
    return 0;
}

int run_train(const std::string& data_dir, const std::string& labels_path, int epochs,
              const std::string& out_path, const std::string& config_path, std::uint64_t seed,
              bool seed_given) {
    miskit::SolveConfig config = load_config(config_path, seed, seed_given);
    if (epochs > 0) config.epochs_supervised = epochs;
    const auto graphs = miskit::load_graph_dir(data_dir);
    const auto labels = miskit::parse_label_lines(miskit::read_text_file(labels_path));
    std::vector<std::string> skipped;
    const auto dataset = miskit::make_labeled_dataset(graphs, labels, &skipped);
    for (const auto& id : skipped)
        std::cerr << "note: skipping " << id << " (missing or non-optimal label)\n";
    if (dataset.empty()) throw std::runtime_error("train: no usable labeled graphs");
    const miskit::TrainedModel tm =
        miskit::train_supervised(dataset, config, fs::path(data_dir).filename().string());
    miskit::write_text_file(out_path, miskit::trained_model_to_json(tm).dump(2) + "\n");
    std::cout << json{{"trained_on", dataset.size()},
                      {"final_bce", tm.metadata.at("final_bce").get<double>()},
                      {"out", out_path}}
                     .dump()
              << "\n";
    return 0;
}

int run_bench(const std::string& data_dir, const std::string& labels_path,
              const std::string& methods_csv, const std::string& config_path,
              const std::string& out_path, const std::string& markdown_path,
              const std::string& model_path, std::uint64_t seed, bool seed_given, int jobs,
              bool no_timing) {
    miskit::SolveConfig config = load_config(config_path, seed, seed_given);
    std::vector<miskit::Method> methods;
    std::stringstream ss(methods_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) methods.push_back(miskit::method_from_name(token));
    }
    if (methods.empty()) throw std::runtime_error("bench: empty method list");

    const auto graphs = miskit::load_graph_dir(data_dir);
    std::vector<miskit::LabelRecord> labels;
    if (!labels_path.empty())
        labels = miskit::parse_label_lines(miskit::read_text_file(labels_path));

    std::optional<miskit::TrainedModel> model;
    const bool needs_model = std::any_of(methods.begin(), methods.end(), miskit::method_needs_model);
    if (needs_model)
        model = model_path.empty() ? train_default_model(config) : load_model(model_path);

    miskit::DatasetDesc desc;
    desc.name = fs::path(data_dir).filename().string();
    desc.seed = config.seed;
    const miskit::BenchReport report =
        miskit::bench_run(graphs, methods, config, model ? &*model : nullptr,
                          labels.empty() ? nullptr : &labels, jobs, desc);
    miskit::write_text_file(out_path, miskit::bench_report_csv(report, !no_timing));
    miskit::write_text_file(out_path + ".witnesses.jsonl",
                            miskit::bench_witness_lines(report, false));
    if (!markdown_path.empty())
        miskit::write_text_file(markdown_path, miskit::bench_report_markdown(report, !no_timing));
    std::cout << json{{"graphs", graphs.size()}, {"methods", methods.size()}, {"out", out_path}}.dump()
              << "\n";
    return 0;
}

int run_capacity(const std::string& graph_path, const std::string& random_spec, int k_max,
                 const std::string& out_path, const std::string& markdown_path,
                 const std::string& model_path, const std::string& solver_name,
                 const std::string& config_path, std::uint64_t seed, bool seed_given,
                 bool compare, long long budget, bool no_timing) {
    miskit::SolveConfig config = load_config(config_path, seed, seed_given);
    miskit::Graph g;
    std::string name = "graph";
    if (!graph_path.empty()) {
        g = miskit::load_graph_file(graph_path);
        name = fs::path(graph_path).stem().string();
    } else if (!random_spec.empty()) {
        int n = 0;
        double p = 0.0;
        unsigned long long s = 0;
        if (std::sscanf(random_spec.c_str(), "%d,%lf,%llu", &n, &p, &s) != 3)
            throw std::runtime_error("capacity: --random expects n,p,seed");
        g = miskit::random_confusion_graph(n, p, s);
        name = "confusion-n" + std::to_string(n);
    } else {
        throw std::runtime_error("capacity: need --graph or --random");
    }

    const miskit::CapacitySolver solver = miskit::capacity_solver_from_name(solver_name);
    std::optional<miskit::TrainedModel> model;
    if (compare || solver == miskit::CapacitySolver::SupQuboG)
        model = model_path.empty() ? train_default_model(config) : load_model(model_path);

    if (compare) {
        const miskit::ConfusionReport report =
            miskit::confusion_experiment_on(g, k_max, config, *model, name);
        miskit::write_text_file(out_path, miskit::confusion_report_csv(report, !no_timing));
        if (!markdown_path.empty())
            miskit::write_text_file(markdown_path,
                                    miskit::confusion_report_markdown(report, !no_timing));
        std::cout << json{{"name", name}, {"k_max", k_max}, {"out", out_path}}.dump() << "\n";
        return 0;
    }

    const miskit::CapacityEstimate estimate = miskit::estimate_capacity(
        g, k_max, solver, config, model ? &*model : nullptr, 200, budget);
    miskit::write_text_file(out_path, miskit::capacity_report_csv(estimate, name, !no_timing));
    if (!markdown_path.empty())
        miskit::write_text_file(markdown_path, miskit::capacity_report_markdown(
                                                   estimate, name, g.num_vertices(), !no_timing));
    json records = json::array();
    for (const auto& rec : estimate.records)
        records.push_back({{"k", rec.k},
                           {"vertices", rec.num_vertices},
                           {"alpha_lower", rec.alpha_lower},
                           {"solver", rec.solver},
                           {"optimal", rec.optimal}});
    std::cout << json{{"name", name},
                      {"capacity_lb", estimate.capacity_lb},
                      {"truncated", estimate.truncated},
                      {"records", records},
                      {"out", out_path}}
                     .dump()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"miskit: maximum independent set solver toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random graph dataset");
    std::string gen_model = "er";
    int gen_n = 10, gen_count = 1;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--model", gen_model, "er|confusion")
        ->check(CLI::IsMember({"er", "confusion"}));
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--p", gen_p, "edge probability (the paper leaves it unstated; 0.5 is a guess)")
        ->required();
    gen->add_option("--count", gen_count, "number of graphs")->required();
    gen->add_option("--seed", gen_seed, "master seed")->required();
    gen->add_option("--out", gen_out, "output directory")->required();

    // convert
    auto* convert = app.add_subcommand("convert", "reduce a DIMACS CNF to a MIS graph");
    std::string conv_cnf, conv_out;
    convert->add_option("--cnf", conv_cnf, "CNF input file")->required();
    convert->add_option("--out", conv_out, "DIMACS output file")->required();

    // label
    auto* label = app.add_subcommand("label", "compute exact labels for a graph directory");
    std::string label_in, label_out;
    double label_limit = 60.0;
    label->add_option("--in", label_in, "graph directory")->required();
    label->add_option("--time-limit", label_limit, "seconds per graph (default 60)");
    label->add_option("--out", label_out, "label file (one JSON record per line)")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "solve one graph");
    std::string solve_graph, solve_method, solve_model, solve_config;
    std::uint64_t solve_seed = 0;
    bool solve_timing = false;
    solve->add_option("--graph", solve_graph, "graph file (DIMACS or edge list)")->required();
    solve->add_option("--method", solve_method, "dga|ga|qubo-g|sup-g|sup-qubo-g|exact")->required();
    solve->add_option("--model", solve_model, "trained model file (sup-* methods)");
    solve->add_option("--config", solve_config, "JSON solve config");
    auto* solve_seed_opt = solve->add_option("--seed", solve_seed, "seed override");
    solve->add_flag("--timing", solve_timing, "emit real wall time (breaks byte-identical output)");

    // train
    auto* train = app.add_subcommand("train", "train the supervised model");
    std::string train_data, train_labels, train_out, train_config;
    int train_epochs = 0;
    std::uint64_t train_seed = 0;
    train->add_option("--data", train_data, "graph directory")->required();
    train->add_option("--labels", train_labels, "label file")->required();
    train->add_option("--epochs", train_epochs, "training epochs (default 60)");
    train->add_option("--out", train_out, "model output file")->required();
    train->add_option("--config", train_config, "JSON solve config");
    auto* train_seed_opt = train->add_option("--seed", train_seed, "seed override");

    // bench
    auto* bench = app.add_subcommand("bench", "benchmark methods on a dataset");
    std::string bench_data, bench_labels, bench_methods, bench_config, bench_out, bench_md,
        bench_model;
    std::uint64_t bench_seed = 0;
    int bench_jobs = 1;
    bool bench_no_timing = false;
    bench->add_option("--data", bench_data, "graph directory")->required();
    bench->add_option("--labels", bench_labels, "label file (optional; exact solved on the fly)");
    bench->add_option("--methods", bench_methods, "comma list of methods")->required();
    bench->add_option("--config", bench_config, "JSON solve config");
    bench->add_option("--out", bench_out, "CSV report path")->required();
    bench->add_option("--markdown", bench_md, "optional Markdown report path");
    bench->add_option("--model", bench_model, "trained model file");
    auto* bench_seed_opt = bench->add_option("--seed", bench_seed, "seed override");
    bench->add_option("--jobs", bench_jobs, "worker count (default 1; timing reproducible only at 1)");
    bench->add_flag("--no-timing", bench_no_timing, "zero the time column for byte-stable reports");

    // capacity
    auto* capacity = app.add_subcommand("capacity", "Shannon capacity lower bounds via graph powers");
    std::string cap_graph, cap_random, cap_out, cap_md, cap_model, cap_solver = "auto", cap_config;
    int cap_kmax = 2;
    std::uint64_t cap_seed = 0;
    long long cap_budget = miskit::kDefaultVertexBudget;
    bool cap_compare = false, cap_no_timing = false;
    capacity->add_option("--graph", cap_graph, "confusion graph file");
    capacity->add_option("--random", cap_random, "generate: n,p,seed");
    capacity->add_option("--kmax", cap_kmax, "largest word length")->required();
    capacity->add_option("--out", cap_out, "CSV report path")->required();
    capacity->add_option("--markdown", cap_md, "optional Markdown report path");
    capacity->add_option("--model", cap_model, "trained model (sup-qubo-g / --compare)");
    capacity->add_option("--solver", cap_solver, "auto|exact|dga|qubo-g|sup-qubo-g");
    capacity->add_option("--config", cap_config, "JSON solve config");
    auto* cap_seed_opt = capacity->add_option("--seed", cap_seed, "seed override");
    capacity->add_flag("--compare", cap_compare,
                       "run the exact/dga/sup-qubo-g comparison instead of the bound ladder");
    capacity->add_option("--budget", cap_budget, "vertex budget for powers (default 1e6)");
    capacity->add_flag("--no-timing", cap_no_timing, "zero time columns for byte-stable reports");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen(gen_model, gen_n, gen_p, gen_count, gen_seed, gen_out);
        if (convert->parsed()) return run_convert(conv_cnf, conv_out);
        if (label->parsed()) return run_label(label_in, label_limit, label_out);
        if (solve->parsed())
            return run_solve(solve_graph, solve_method, solve_model, solve_config, solve_seed,
                             !solve_seed_opt->empty(), solve_timing);
        if (train->parsed())
            return run_train(train_data, train_labels, train_epochs, train_out, train_config,
                             train_seed, !train_seed_opt->empty());
        if (bench->parsed())
            return run_bench(bench_data, bench_labels, bench_methods, bench_config, bench_out,
                             bench_md, bench_model, bench_seed, !bench_seed_opt->empty(),
                             bench_jobs, bench_no_timing);
        if (capacity->parsed())
            return run_capacity(cap_graph, cap_random, cap_kmax, cap_out, cap_md, cap_model,
                                cap_solver, cap_config, cap_seed, !cap_seed_opt->empty(),
                                cap_compare, cap_budget, cap_no_timing);
        throw std::runtime_error("no subcommand given");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"error", std::string(e.what())}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", std::string(e.what())}}.dump() << "\n";
        return 1;
    }
}
