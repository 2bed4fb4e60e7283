#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "miskit/features.hpp"
#include "miskit/graph.hpp"

namespace miskit {

// MIS Hamiltonian with degree-dependent rewards, evaluated over relaxed
// variables x in [0,1]^n:
//
//   H(x) = -sum_i r_i x_i + P * sum_{(i,j) in E} x_i x_j
//
// Stored sparse as (rewards, penalty, edge list); evaluation is O(n + |E|).
struct QuboInstance {
    std::vector<double> rewards;  // r_i = R * x_init_i, all >= 0
    double penalty = 2.0;         // P > 0
    std::vector<Edge> edges;
    double reward_exponent = 1.0;  // the n in R = P|E| / |V|^n
    double reward_factor = 0.0;    // R
};

// R = P * |E| / |V|^n. Smaller n gives larger rewards.
inline double reward_factor(const Graph& g, double penalty, double n_exp) {
    if (g.num_vertices() < 1) throw std::invalid_argument("reward_factor: empty graph");
    if (!(penalty > 0.0)) throw std::invalid_argument("reward_factor: P must be positive");
    return penalty * static_cast<double>(g.num_edges()) /
           std::pow(static_cast<double>(g.num_vertices()), n_exp);
}

inline std::vector<double> node_rewards(double factor, const NodeFeatures& features) {
    std::vector<double> r(features.x.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = factor * features.x[i];
    return r;
}

inline QuboInstance make_qubo(const Graph& g, const NodeFeatures& features, double penalty,
                              double n_exp) {
    if (static_cast<int>(features.x.size()) != g.num_vertices())
        throw std::invalid_argument("make_qubo: feature/graph size mismatch");
    QuboInstance q;
    q.penalty = penalty;
    q.reward_exponent = n_exp;
    q.reward_factor = reward_factor(g, penalty, n_exp);
    q.rewards = node_rewards(q.reward_factor, features);
    q.edges = g.edges();
    return q;
}

namespace detail {
inline void check_dimension(const QuboInstance& q, std::span<const double> x, const char* who) {
    if (x.size() != q.rewards.size())
        throw std::invalid_argument(std::string(who) + ": expected " +
                                    std::to_string(q.rewards.size()) + " values, got " +
                                    std::to_string(x.size()));
}
}  // namespace detail

inline double qubo_loss(const QuboInstance& q, std::span<const double> x) {
    detail::check_dimension(q, x, "qubo_loss");
    double reward = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) reward += q.rewards[i] * x[i];
    double conflict = 0.0;
    for (const auto& [i, j] : q.edges)
        conflict += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    return -reward + q.penalty * conflict;
}

// dH/dx_i = -r_i + P * sum over neighbors j of x_j
inline std::vector<double> qubo_grad(const QuboInstance& q, std::span<const double> x) {
    detail::check_dimension(q, x, "qubo_grad");
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) grad[i] = -q.rewards[i];
    for (const auto& [i, j] : q.edges) {
        grad[static_cast<std::size_t>(i)] += q.penalty * x[static_cast<std::size_t>(j)];
        grad[static_cast<std::size_t>(j)] += q.penalty * x[static_cast<std::size_t>(i)];
    }
    return grad;
}

// P * sum_{(i,j) in E} x_i x_j; zero exactly on (indicators of) independent sets.
inline double penalty_term(const QuboInstance& q, std::span<const double> x) {
    detail::check_dimension(q, x, "penalty_term");
    double conflict = 0.0;
    for (const auto& [i, j] : q.edges)
        conflict += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    return q.penalty * conflict;
}

// The unmodified Hamiltonian (constant reward 1 per node), kept as a baseline.
inline double classic_hamiltonian(const Graph& g, double penalty, std::span<const double> x) {
    if (static_cast<int>(x.size()) != g.num_vertices())
        throw std::invalid_argument("classic_hamiltonian: dimension mismatch");
    double total = 0.0;
    for (double xi : x) total -= xi;
    for (const auto& [i, j] : g.edges())
        total += penalty * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    return total;
}

}  // namespace miskit
