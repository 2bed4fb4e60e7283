#pragma once

// Shared test oracles, independent of the library's fast paths: dense QUBO
// matrices, exhaustive set enumeration and finite differences.

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "miskit/gcn.hpp"
#include "miskit/graph.hpp"
#include "miskit/qubo.hpp"

namespace testsupport {

// Upper-triangular dense realization: Q_ii = -r_i, Q_ij = P on edges (i<j).
inline Eigen::MatrixXd dense_q(const miskit::QuboInstance& q) {
    const auto n = static_cast<Eigen::Index>(q.rewards.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = -q.rewards[static_cast<std::size_t>(i)];
    for (const auto& [u, v] : q.edges) m(std::min(u, v), std::max(u, v)) = q.penalty;
    return m;
}

inline double quadratic_form(const Eigen::MatrixXd& q, const std::vector<double>& x) {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = x[static_cast<std::size_t>(i)];
    return v.transpose() * q * v;
}

inline std::vector<double> mask_to_vector(std::uint32_t mask, int n) {
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) x[static_cast<std::size_t>(v)] = 1.0;
    return x;
}

inline bool mask_is_independent(const miskit::Graph& g, std::uint32_t mask) {
    for (const auto& [u, v] : g.edges())
        if ((mask >> u & 1u) && (mask >> v & 1u)) return false;
    return true;
}

// Exhaustive maximum-total-reward independent set value.
inline double best_reward_over_independent_sets(const miskit::Graph& g,
                                                const std::vector<double>& rewards) {
    const int n = g.num_vertices();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!mask_is_independent(g, mask)) continue;
        double total = 0.0;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) total += rewards[static_cast<std::size_t>(v)];
        best = std::max(best, total);
    }
    return best;
}

// Central finite differences through the QUBO energy.
inline std::vector<double> fd_qubo_grad(const miskit::QuboInstance& q, std::vector<double> x,
                                        double h = 1e-6) {
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double keep = x[i];
        x[i] = keep + h;
        const double up = miskit::qubo_loss(q, x);
        x[i] = keep - h;
        const double down = miskit::qubo_loss(q, x);
        x[i] = keep;
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

// Central finite differences of an arbitrary scalar loss over the model
// parameters, matching the layout of GcnGradients.
inline miskit::GcnGradients fd_param_grads(miskit::GcnModel model,
                                           const std::function<double(const miskit::GcnModel&)>& loss,
                                           double h = 1e-5) {
    miskit::GcnGradients grads;
    grads.w1.resize(model.w1.rows(), model.w1.cols());
    grads.w2.resize(model.w2.rows(), model.w2.cols());
    for (Eigen::Index r = 0; r < model.w1.rows(); ++r) {
        for (Eigen::Index c = 0; c < model.w1.cols(); ++c) {
            const double keep = model.w1(r, c);
            model.w1(r, c) = keep + h;
            const double up = loss(model);
            model.w1(r, c) = keep - h;
            const double down = loss(model);
            model.w1(r, c) = keep;
            grads.w1(r, c) = (up - down) / (2.0 * h);
        }
    }
    for (Eigen::Index r = 0; r < model.w2.rows(); ++r) {
        const double keep = model.w2(r, 0);
        model.w2(r, 0) = keep + h;
        const double up = loss(model);
        model.w2(r, 0) = keep - h;
        const double down = loss(model);
        model.w2(r, 0) = keep;
        grads.w2(r, 0) = (up - down) / (2.0 * h);
    }
    return grads;
}

inline double max_rel_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            const double denom = std::max({std::abs(a(r, c)), std::abs(b(r, c)), 1e-6});
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)) / denom);
        }
    return worst;
}

// All labeled graphs on n vertices (n small), by edge-subset enumeration.
inline std::vector<miskit::Graph> all_labeled_graphs(int n) {
    std::vector<miskit::Edge> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<miskit::Graph> graphs;
    const std::uint32_t total = 1u << pairs.size();
    graphs.reserve(total);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        std::vector<miskit::Edge> edges;
        for (std::size_t e = 0; e < pairs.size(); ++e)
            if (mask & (1u << e)) edges.push_back(pairs[e]);
        graphs.emplace_back(n, edges);
    }
    return graphs;
}

inline miskit::Graph path_graph(int n) {
    std::vector<miskit::Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return miskit::Graph(n, edges);
}

inline miskit::Graph cycle_graph(int n) {
    std::vector<miskit::Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return miskit::Graph(n, edges);
}

inline miskit::Graph complete_graph(int n) {
    std::vector<miskit::Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return miskit::Graph(n, edges);
}

inline miskit::Graph star_graph(int leaves) {
    std::vector<miskit::Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return miskit::Graph(leaves + 1, edges);
}

}  // namespace testsupport
