#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "miskit/rng.hpp"

namespace miskit {

using Edge = std::pair<int, int>;

// Immutable simple undirected graph. Vertices are 0-indexed. Edges are
// stored normalized (u < v), deduplicated and sorted; adjacency lists are
// sorted and symmetric. Safe to share across threads once built.
class Graph {
public:
    Graph() = default;

    Graph(int n, const std::vector<Edge>& edge_list) : n_(n) {
        if (n < 0) throw std::invalid_argument("graph: vertex count must be nonnegative");
        edges_.reserve(edge_list.size());
        for (const auto& [a, b] : edge_list) {
            if (a == b)
                throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(a));
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw std::invalid_argument("graph: edge (" + std::to_string(a) + "," +
                                            std::to_string(b) + ") out of range for n=" +
                                            std::to_string(n));
            edges_.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        adj_.assign(static_cast<std::size_t>(n), {});
        for (const auto& [u, v] : edges_) {
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    int num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<int>& neighbors(int v) const {
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const {
        return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
    }

    bool has_edge(int u, int v) const {
        const auto& nb = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    int min_degree() const {
        int d = n_ > 0 ? degree(0) : 0;
        for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

inline Graph new_graph(int n, const std::vector<Edge>& edges) { return Graph(n, edges); }

// G(n, p): each of the C(n,2) pairs is included independently with
// probability p. One uniform draw is consumed per pair (in (i,j) row-major
// order) so the generated edge set is a pure function of (n, p, seed).
inline Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("erdos_renyi: n must be nonnegative");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p must be in [0,1]");
    Xoshiro256StarStar rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_double() < p) edges.emplace_back(i, j);
        }
    }
    return Graph(n, edges);
}

// Confusion graph over an alphabet: letters are vertices, an edge marks a
// pair of letters at risk of being mistaken for one another. Same contract
// as erdos_renyi, kept under its domain name.
inline Graph random_confusion_graph(int alphabet_size, double p, std::uint64_t seed) {
    return erdos_renyi(alphabet_size, p, seed);
}

// Flat index of product vertex (u, x): u * |V(H)| + x. Stable and
// invertible, so independent sets in powers decode back to words.
inline int product_index(int u, int x, int h_n) { return u * h_n + x; }

// Strong product G ⊠ H: (u,x) ~ (v,y) iff
//   uv ∈ E(G) and x = y,  or  u = v and xy ∈ E(H),  or  uv ∈ E(G) and xy ∈ E(H).
inline Graph strong_product(const Graph& g, const Graph& h) {
    const int gn = g.num_vertices();
    const int hn = h.num_vertices();
    const long long nn = static_cast<long long>(gn) * hn;
    if (nn > INT32_MAX)
        throw std::invalid_argument("strong_product: product has too many vertices");
    std::vector<Edge> edges;
    edges.reserve(g.num_edges() * hn + static_cast<std::size_t>(gn) * h.num_edges() +
                  2 * g.num_edges() * h.num_edges());
    for (const auto& [u, v] : g.edges())
        for (int x = 0; x < hn; ++x)
            edges.emplace_back(product_index(u, x, hn), product_index(v, x, hn));
    for (int u = 0; u < gn; ++u)
        for (const auto& [x, y] : h.edges())
            edges.emplace_back(product_index(u, x, hn), product_index(u, y, hn));
    for (const auto& [u, v] : g.edges()) {
        for (const auto& [x, y] : h.edges()) {
            edges.emplace_back(product_index(u, x, hn), product_index(v, y, hn));
            edges.emplace_back(product_index(u, y, hn), product_index(v, x, hn));
        }
    }
    return Graph(static_cast<int>(nn), edges);
}

inline constexpr long long kDefaultVertexBudget = 1'000'000;

// Number of vertices of G^k, or -1 if it exceeds the budget.
inline long long power_vertex_count(int base_n, int k, long long budget = kDefaultVertexBudget) {
    long long count = 1;
    for (int i = 0; i < k; ++i) {
        if (base_n != 0 && count > budget / base_n) return -1;
        count *= base_n;
        if (count > budget) return -1;
    }
    return count;
}

// k-th strong power: G^1 = G, G^k = G^(k-1) ⊠ G. Vertices of G^k encode
// k-letter words over V(G) as base-|V(G)| digits, most significant first.
inline Graph graph_power(const Graph& g, int k, long long vertex_budget = kDefaultVertexBudget) {
    if (k < 1) throw std::invalid_argument("graph_power: k must be >= 1");
    if (power_vertex_count(g.num_vertices(), k, vertex_budget) < 0)
        throw std::invalid_argument("graph_power: |V|^k exceeds vertex budget of " +
                                    std::to_string(vertex_budget));
    Graph power = g;
    for (int i = 2; i <= k; ++i) power = strong_product(power, g);
    return power;
}

// Decode a vertex of G^k back to its k-letter word over V(G).
inline std::vector<int> decode_word(long long index, int alphabet_size, int k) {
    std::vector<int> word(static_cast<std::size_t>(k));
    for (int pos = k - 1; pos >= 0; --pos) {
        word[static_cast<std::size_t>(pos)] = static_cast<int>(index % alphabet_size);
        index /= alphabet_size;
    }
    return word;
}

}  // namespace miskit
