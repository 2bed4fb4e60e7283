#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "miskit/features.hpp"
#include "miskit/graph.hpp"
#include "miskit/rng.hpp"

namespace miskit {

struct IndependentSet {
    std::vector<bool> members;  // indicator over vertices
    int size = 0;

    std::vector<int> vertices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size));
        for (std::size_t v = 0; v < members.size(); ++v)
            if (members[v]) out.push_back(static_cast<int>(v));
        return out;
    }

    bool operator==(const IndependentSet& other) const = default;
};

inline bool is_independent(const Graph& g, const std::vector<bool>& members) {
    for (const auto& [u, v] : g.edges())
        if (members[static_cast<std::size_t>(u)] && members[static_cast<std::size_t>(v)])
            return false;
    return true;
}

inline bool is_independent(const Graph& g, const IndependentSet& set) {
    return is_independent(g, set.members);
}

// Every vertex outside the set has a neighbor inside it.
inline bool is_maximal(const Graph& g, const IndependentSet& set) {
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (set.members[static_cast<std::size_t>(v)]) continue;
        bool blocked = false;
        for (int u : g.neighbors(v)) {
            if (set.members[static_cast<std::size_t>(u)]) {
                blocked = true;
                break;
            }
        }
        if (!blocked) return false;
    }
    return true;
}

// Final score mixing GNN probabilities with initial node features:
// score = c1 * p + c2 * x. With c1 = 0 the ordering is purely degree-based.
inline std::vector<double> combined_score(std::span<const double> p_gnn,
                                          std::span<const double> x_init, double c1, double c2) {
    if (p_gnn.size() != x_init.size())
        throw std::invalid_argument("combined_score: dimension mismatch");
    std::vector<double> score(p_gnn.size());
    for (std::size_t i = 0; i < score.size(); ++i) score[i] = c1 * p_gnn[i] + c2 * x_init[i];
    return score;
}

// Visit vertices in descending score order (ties broken by ascending index)
// and add each vertex whose neighbors are all still outside the set. The
// result is always a valid, maximal independent set.
inline IndependentSet greedy_decode(const Graph& g, std::span<const double> scores) {
    const int n = g.num_vertices();
    if (static_cast<int>(scores.size()) != n)
        throw std::invalid_argument("greedy_decode: score/graph size mismatch");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double sa = scores[static_cast<std::size_t>(a)];
        const double sb = scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    });
    IndependentSet set;
    set.members.assign(static_cast<std::size_t>(n), false);
    for (int v : order) {
        bool blocked = false;
        for (int u : g.neighbors(v)) {
            if (set.members[static_cast<std::size_t>(u)]) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            set.members[static_cast<std::size_t>(v)] = true;
            ++set.size;
        }
    }
    return set;
}

// Greedy over a seed-determined random vertex order (the paper's GA baseline).
inline IndependentSet greedy_random(const Graph& g, std::uint64_t seed) {
    const int n = g.num_vertices();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Xoshiro256StarStar rng(seed);
    rng.shuffle(perm);
    // position in the permutation becomes the (descending) score
    std::vector<double> scores(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos)
        scores[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])] =
            static_cast<double>(n - pos);
    return greedy_decode(g, scores);
}

// Degree-based greedy (static degrees): identical to the combined pipeline
// at c1 = 0, since degree features order vertices by ascending degree.
inline IndependentSet dga(const Graph& g, double k_exponent = 1.0) {
    if (g.num_vertices() == 0) return IndependentSet{};
    return greedy_decode(g, degree_init(g, k_exponent).x);
}

// Dynamic-degree greedy baseline: repeatedly pick a minimum-residual-degree
// vertex (ties by index) and delete its closed neighborhood. Not the DGA
// the combined pipeline reduces to; kept as a separate baseline.
inline IndependentSet dga_dynamic(const Graph& g) {
    const int n = g.num_vertices();
    IndependentSet set;
    set.members.assign(static_cast<std::size_t>(n), false);
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    std::vector<int> residual_degree(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) residual_degree[static_cast<std::size_t>(v)] = g.degree(v);
    int remaining = n;
    while (remaining > 0) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            if (best < 0 || residual_degree[static_cast<std::size_t>(v)] <
                                residual_degree[static_cast<std::size_t>(best)])
                best = v;
        }
        set.members[static_cast<std::size_t>(best)] = true;
        ++set.size;
        std::vector<int> removed{best};
        for (int u : g.neighbors(best))
            if (alive[static_cast<std::size_t>(u)]) removed.push_back(u);
        for (int dead : removed) {
            alive[static_cast<std::size_t>(dead)] = false;
            --remaining;
            for (int u : g.neighbors(dead))
                if (alive[static_cast<std::size_t>(u)]) --residual_degree[static_cast<std::size_t>(u)];
        }
    }
    return set;
}

}  // namespace miskit
