#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "miskit/decode.hpp"
#include "miskit/features.hpp"
#include "miskit/gcn.hpp"
#include "miskit/graph.hpp"
#include "miskit/qubo.hpp"

namespace miskit {

struct SolveConfig {
    int epochs_unsup = 2000;       // unsupervised QUBO training epochs
    int epochs_refine = 200;       // QUBO refinement epochs in the combined pipeline
    int epochs_supervised = 60;    // supervised training epochs
    double penalty_threshold = -1.0;  // rerun trigger; negative means auto (0.5 * penalty)
    int max_reinits = 5;
    int max_reruns = 3;
    int warmup_epochs = 100;
    double c1 = 2.0;  // weight of GNN probabilities in the decode score
    double c2 = 3.0;  // weight of initial node features in the decode score
    double penalty = 2.0;          // P
    double reward_exponent = 1.0;  // n in R = P|E| / |V|^n
    double k_exponent = 1.0;       // degree-init range exponent
    int hidden = 64;
    double lr_unsup = 1e-2;
    double lr_supervised = 1e-3;
    std::uint64_t seed = 0;
    HiddenActivation unsup_hidden_act = HiddenActivation::Relu;  // {relu, none}
    double exact_time_limit_s = 60.0;

    double effective_penalty_threshold() const {
        return penalty_threshold >= 0.0 ? penalty_threshold : 0.5 * penalty;
    }

    void validate() const {
        if (epochs_unsup < 1 || epochs_refine < 1 || epochs_supervised < 1)
            throw std::invalid_argument("config: epoch counts must be positive");
        if (max_reinits < 0 || max_reruns < 0 || warmup_epochs < 1)
            throw std::invalid_argument("config: retry counts must be nonnegative, warmup positive");
        if (!(penalty > 0.0)) throw std::invalid_argument("config: penalty must be positive");
        if (!(k_exponent > 0.0)) throw std::invalid_argument("config: k_exponent must be positive");
        if (hidden < 1) throw std::invalid_argument("config: hidden must be positive");
    }
};

inline nlohmann::json solve_config_to_json(const SolveConfig& c) {
    return nlohmann::json{{"epochs_unsup", c.epochs_unsup},
                          {"epochs_refine", c.epochs_refine},
                          {"epochs_supervised", c.epochs_supervised},
                          {"penalty_threshold", c.penalty_threshold},
                          {"max_reinits", c.max_reinits},
                          {"max_reruns", c.max_reruns},
                          {"warmup_epochs", c.warmup_epochs},
                          {"c1", c.c1},
                          {"c2", c.c2},
                          {"penalty", c.penalty},
                          {"reward_exponent", c.reward_exponent},
                          {"k_exponent", c.k_exponent},
                          {"hidden", c.hidden},
                          {"lr_unsup", c.lr_unsup},
                          {"lr_supervised", c.lr_supervised},
                          {"seed", c.seed},
                          {"unsup_hidden_act", activation_name(c.unsup_hidden_act)},
                          {"exact_time_limit_s", c.exact_time_limit_s}};
}

// Every field is optional; absent fields keep the values in `base`.
inline SolveConfig solve_config_from_json(const nlohmann::json& j, SolveConfig base = {}) {
    SolveConfig c = base;
    c.epochs_unsup = j.value("epochs_unsup", c.epochs_unsup);
    c.epochs_refine = j.value("epochs_refine", c.epochs_refine);
    c.epochs_supervised = j.value("epochs_supervised", c.epochs_supervised);
    c.penalty_threshold = j.value("penalty_threshold", c.penalty_threshold);
    c.max_reinits = j.value("max_reinits", c.max_reinits);
    c.max_reruns = j.value("max_reruns", c.max_reruns);
    c.warmup_epochs = j.value("warmup_epochs", c.warmup_epochs);
    c.c1 = j.value("c1", c.c1);
    c.c2 = j.value("c2", c.c2);
    c.penalty = j.value("penalty", c.penalty);
    c.reward_exponent = j.value("reward_exponent", c.reward_exponent);
    c.k_exponent = j.value("k_exponent", c.k_exponent);
    c.hidden = j.value("hidden", c.hidden);
    c.lr_unsup = j.value("lr_unsup", c.lr_unsup);
    c.lr_supervised = j.value("lr_supervised", c.lr_supervised);
    c.seed = j.value("seed", c.seed);
    if (j.contains("unsup_hidden_act"))
        c.unsup_hidden_act = activation_from_name(j.at("unsup_hidden_act").get<std::string>());
    c.exact_time_limit_s = j.value("exact_time_limit_s", c.exact_time_limit_s);
    c.validate();
    return c;
}

struct SolveResult {
    IndependentSet set;
    std::string method;
    std::vector<double> loss_trace;  // per-epoch energies of finished attempts
    int reinit_count = 0;
    int rerun_count = 0;
    double elapsed_s = 0.0;
    std::vector<double> final_probabilities;
    double final_loss = 0.0;
    bool valid = false;
};

// Timing is wall time around the solve; when include_timing is false the
// field is emitted as 0.0 so repeated runs are byte-identical.
inline nlohmann::json solve_result_to_json(const SolveResult& r, const std::string& graph_id,
                                           bool include_timing = false) {
    return nlohmann::json{{"graph_id", graph_id},
                          {"method", r.method},
                          {"size", r.set.size},
                          {"members", r.set.vertices()},
                          {"valid", r.valid},
                          {"elapsed_s", include_timing ? r.elapsed_s : 0.0},
                          {"reinits", r.reinit_count},
                          {"reruns", r.rerun_count},
                          {"final_loss", r.final_loss}};
}

inline std::span<const double> as_span(const Eigen::VectorXd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

namespace detail {

struct UnsupOutcome {
    Eigen::VectorXd p;
    double final_loss = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> trace;
    bool usable = false;  // false when every reinit diverged
};

// One complete training run with the reinit rule applied. The loss is
// evaluated once per epoch before that epoch's update; the final epoch is
// evaluation-only, so its entry is the final loss. When the loss at the
// warmup or final epoch is above zero the parameters are reinitialized
// with a fresh seed and the run restarts, while reinits remain. Divergence
// (non-finite loss, activations or gradients) is treated the same way.
inline UnsupOutcome run_unsup_training(const NormalizedAdjacency& adjacency,
                                       const Eigen::MatrixXd& features, const QuboInstance& qubo,
                                       int epochs, const SolveConfig& config, SeedSequence& seeds,
                                       int& reinit_count) {
    UnsupOutcome outcome;
    while (true) {
        GcnModel model = init_params(static_cast<int>(features.cols()), config.hidden,
                                     config.unsup_hidden_act, seeds.next());
        AdamState adam = AdamState::for_model(model, config.lr_unsup);
        std::vector<double> trace;
        trace.reserve(static_cast<std::size_t>(epochs));
        Eigen::VectorXd p;
        double loss = std::numeric_limits<double>::quiet_NaN();
        bool diverged = false;
        bool restart = false;
        for (int epoch = 1; epoch <= epochs && !diverged && !restart; ++epoch) {
            ForwardCache cache;
            try {
                cache = forward(model, adjacency, features);
                p = cache.p;
                loss = qubo_loss(qubo, as_span(p));
            } catch (const NumericError&) {
                diverged = true;
                break;
            }
            trace.push_back(loss);
            if (!std::isfinite(loss)) {
                diverged = true;
                break;
            }
            if ((epoch == config.warmup_epochs || epoch == epochs) && loss > 0.0 &&
                reinit_count < config.max_reinits) {
                ++reinit_count;
                restart = true;
                break;
            }
            if (epoch == epochs) break;
            const std::vector<double> grad = qubo_grad(qubo, as_span(p));
            const Eigen::VectorXd dloss_dp =
                Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(grad.size()));
            try {
                GcnGradients grads = backward(model, cache, dloss_dp);
                optimizer_step(model, grads, adam);
            } catch (const NumericError&) {
                diverged = true;
            }
        }
        if (restart) continue;
        if (diverged) {
            if (reinit_count < config.max_reinits) {
                ++reinit_count;
                continue;
            }
            outcome.usable = false;
            return outcome;
        }
        outcome.p = std::move(p);
        outcome.final_loss = loss;
        outcome.trace = std::move(trace);
        outcome.usable = true;
        return outcome;
    }
}

// Shared engine of the unsupervised pipelines: train the sigmoid-head GCN
// against the modified Hamiltonian built from `mix_features`, rerun while
// the final penalty stays above the threshold, then greedily decode
// c1 * p + c2 * mix_features. On exhausted retries the best-energy attempt
// is decoded instead, so the output is always a valid maximal set.
inline SolveResult run_qubo_pipeline(const Graph& g, const std::vector<double>& mix_features,
                                     int epochs, const SolveConfig& config,
                                     const std::string& method) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    const int n = g.num_vertices();
    if (n < 1) throw std::invalid_argument(method + ": graph must have at least one vertex");

    NodeFeatures feats;
    feats.x = mix_features;
    feats.k_exponent = config.k_exponent;
    const QuboInstance qubo = make_qubo(g, feats, config.penalty, config.reward_exponent);
    const NormalizedAdjacency adjacency(g);
    Eigen::MatrixXd features(n, 1);
    for (int v = 0; v < n; ++v) features(v, 0) = mix_features[static_cast<std::size_t>(v)];

    SolveResult result;
    result.method = method;
    SeedSequence seeds(config.seed);
    const double threshold = config.effective_penalty_threshold();

    std::optional<UnsupOutcome> accepted;
    std::optional<UnsupOutcome> best;
    for (int attempt = 0;; ++attempt) {
        UnsupOutcome out =
            run_unsup_training(adjacency, features, qubo, epochs, config, seeds, result.reinit_count);
        bool accept = false;
        if (out.usable) {
            result.loss_trace.insert(result.loss_trace.end(), out.trace.begin(), out.trace.end());
            if (!best || out.final_loss < best->final_loss) best = out;
            if (penalty_term(qubo, as_span(out.p)) <= threshold) accept = true;
        }
        if (accept) {
            accepted = std::move(out);
            break;
        }
        if (attempt >= config.max_reruns) break;
        ++result.rerun_count;
    }

    Eigen::VectorXd p_final;
    if (accepted) {
        p_final = std::move(accepted->p);
        result.final_loss = accepted->final_loss;
    } else if (best) {
        p_final = best->p;
        result.final_loss = best->final_loss;
    } else {
        // every attempt diverged: neutral probabilities fall back to the
        // feature ordering, which still decodes to a valid maximal set
        p_final = Eigen::VectorXd::Constant(n, 0.5);
        result.final_loss = qubo_loss(qubo, as_span(p_final));
    }
    result.final_probabilities.assign(p_final.data(), p_final.data() + n);
    const std::vector<double> scores =
        combined_score(result.final_probabilities, mix_features, config.c1, config.c2);
    result.set = greedy_decode(g, scores);
    result.valid = is_independent(g, result.set);
    result.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace detail

// Unsupervised pipeline: degree-based features, reward-weighted QUBO, GCN
// training with reinit/rerun rules, greedy decode of c1 * p + c2 * x.
inline SolveResult solve_qubo_unsup(const Graph& g, const SolveConfig& config) {
    const std::vector<double> x = degree_init(g, config.k_exponent).x;
    return detail::run_qubo_pipeline(g, x, config.epochs_unsup, config, "qubo-g");
}

struct LabeledGraph {
    std::string id;
    Graph graph;
    std::vector<int> labels;  // 0/1 membership in an optimal set
};

struct TrainedModel {
    GcnModel model;
    nlohmann::json metadata;
};

inline nlohmann::json trained_model_to_json(const TrainedModel& tm) {
    return model_to_json(tm.model, tm.metadata);
}

inline TrainedModel trained_model_from_json(const nlohmann::json& j) {
    auto [model, metadata] = model_from_json(j);
    return TrainedModel{std::move(model), std::move(metadata)};
}

// Supervised training: tanh-hidden GCN, BCE over all nodes of every
// training graph, one optimizer step per graph, graph order reshuffled
// each epoch from the seed. Labels must mark membership in an optimal set.
inline TrainedModel train_supervised(const std::vector<LabeledGraph>& dataset,
                                     const SolveConfig& config,
                                     const std::string& dataset_id = "") {
    config.validate();
    if (dataset.empty()) throw std::invalid_argument("train_supervised: empty dataset");
    for (const auto& ex : dataset) {
        if (ex.graph.num_vertices() < 1)
            throw std::invalid_argument("train_supervised: empty graph " + ex.id);
        if (static_cast<int>(ex.labels.size()) != ex.graph.num_vertices())
            throw std::invalid_argument("train_supervised: label size mismatch for graph " + ex.id);
    }

    std::vector<NormalizedAdjacency> adjacencies;
    adjacencies.reserve(dataset.size());
    std::vector<Eigen::MatrixXd> features;
    std::vector<Eigen::VectorXd> targets;
    for (const auto& ex : dataset) {
        adjacencies.emplace_back(ex.graph);
        const auto x = degree_init(ex.graph, config.k_exponent).x;
        Eigen::MatrixXd f(ex.graph.num_vertices(), 1);
        Eigen::VectorXd y(ex.graph.num_vertices());
        for (int v = 0; v < ex.graph.num_vertices(); ++v) {
            f(v, 0) = x[static_cast<std::size_t>(v)];
            y(v) = static_cast<double>(ex.labels[static_cast<std::size_t>(v)]);
        }
        features.push_back(std::move(f));
        targets.push_back(std::move(y));
    }

    GcnModel model = init_params(1, config.hidden, HiddenActivation::Tanh, mix_seed(config.seed, 0));
    AdamState adam = AdamState::for_model(model, config.lr_supervised);
    Xoshiro256StarStar order_rng(mix_seed(config.seed, 1));
    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.epochs_supervised; ++epoch) {
        order_rng.shuffle(order);
        for (std::size_t idx : order) {
            const ForwardCache cache = forward(model, adjacencies[idx], features[idx]);
            const auto [loss, dloss_dp] = bce_loss(cache.p, targets[idx]);
            const GcnGradients grads = backward(model, cache, dloss_dp);
            optimizer_step(model, grads, adam);
        }
    }

    double final_bce = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const ForwardCache cache = forward(model, adjacencies[i], features[i]);
        final_bce += bce_loss(cache.p, targets[i]).first;
    }
    final_bce /= static_cast<double>(dataset.size());

    TrainedModel tm;
    tm.model = std::move(model);
    tm.metadata = nlohmann::json{{"dataset_id", dataset_id},
                                 {"epochs", config.epochs_supervised},
                                 {"final_bce", final_bce},
                                 {"num_graphs", dataset.size()},
                                 {"seed", config.seed}};
    return tm;
}

// Raw probabilities from the trained model, degree-based features as input.
inline std::vector<double> predict_supervised(const TrainedModel& tm, const Graph& g,
                                              double k_exponent = 1.0) {
    const int n = g.num_vertices();
    if (n < 1) throw std::invalid_argument("predict_supervised: empty graph");
    const NormalizedAdjacency adjacency(g);
    const auto x = degree_init(g, k_exponent).x;
    Eigen::MatrixXd features(n, 1);
    for (int v = 0; v < n; ++v) features(v, 0) = x[static_cast<std::size_t>(v)];
    const ForwardCache cache = forward(tm.model, adjacency, features);
    return std::vector<double>(cache.p.data(), cache.p.data() + n);
}

// Supervised predictions refined only by greedy decoding.
inline SolveResult solve_supervised_g(const Graph& g, const TrainedModel& model,
                                      const SolveConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    SolveResult result;
    result.method = "sup-g";
    result.final_probabilities = predict_supervised(model, g, config.k_exponent);
    const std::vector<double> x = degree_init(g, config.k_exponent).x;
    const std::vector<double> scores =
        combined_score(result.final_probabilities, x, config.c1, config.c2);
    result.set = greedy_decode(g, scores);
    result.valid = is_independent(g, result.set);
    result.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

// Combined pipeline: supervised probabilities replace the degree-based
// features everywhere they appear (QUBO rewards, GCN input and the decode
// mixing term), then the unsupervised procedure runs for the shorter
// refinement epoch budget.
inline SolveResult solve_supervised_qubo_g(const Graph& g, const TrainedModel& model,
                                           const SolveConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> p_sup = predict_supervised(model, g, config.k_exponent);
    SolveResult result =
        detail::run_qubo_pipeline(g, p_sup, config.epochs_refine, config, "sup-qubo-g");
    result.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace miskit
