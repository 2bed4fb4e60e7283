#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "miskit/decode.hpp"
#include "miskit/graph.hpp"

namespace miskit {

struct ExactResult {
    IndependentSet set;
    int alpha = 0;
    bool optimal = false;
    std::uint64_t nodes_explored = 0;
    double elapsed_s = 0.0;
};

// Exhaustive enumeration over all 2^n vertex subsets. Guaranteed optimal;
// only sensible for small n.
inline ExactResult brute_force_mis(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 25) throw std::invalid_argument("brute_force_mis: n must be <= 25");
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::uint32_t> adj_mask(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v)) adj_mask[static_cast<std::size_t>(v)] |= 1u << u;
    std::uint32_t best_mask = 0;
    int best = 0;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t mask64 = 0; mask64 < total; ++mask64) {
        const auto mask = static_cast<std::uint32_t>(mask64);
        if (std::popcount(mask) <= best) continue;
        std::uint32_t rest = mask;
        bool independent = true;
        while (rest) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (adj_mask[static_cast<std::size_t>(v)] & mask) {
                independent = false;
                break;
            }
        }
        if (independent) {
            best = std::popcount(mask);
            best_mask = mask;
        }
    }
    ExactResult result;
    result.set.members.assign(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v)
        if (best_mask & (1u << v)) result.set.members[static_cast<std::size_t>(v)] = true;
    result.set.size = best;
    result.alpha = best;
    result.optimal = true;
    result.nodes_explored = total;
    result.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace detail {

// Branch and bound over a shrinking alive-vertex bitset:
//   - include isolated and degree-1 vertices outright (safe reductions),
//   - residual graphs of maximum degree <= 2 are disjoint cycles after the
//     reductions and are solved directly,
//   - otherwise branch on a maximum-degree vertex (include: delete its
//     closed neighborhood; exclude: delete the vertex),
//   - prune when |picked| + |alive| cannot beat the incumbent.
// The incumbent starts at a dynamic-degree greedy solution, so the best-found
// set is valid even when the time limit cuts the search short.
class MisBranchAndBound {
public:
    MisBranchAndBound(const Graph& g, double time_limit_s)
        : n_(g.num_vertices()),
          blocks_((n_ + 63) / 64),
          adj_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(blocks_), 0) {
        for (int v = 0; v < n_; ++v)
            for (int u : g.neighbors(v)) row(v)[u >> 6] |= 1ull << (u & 63);
        IndependentSet warm = dga_dynamic(g);
        best_size_ = warm.size;
        best_set_ = warm.vertices();
        if (time_limit_s > 0) {
            has_deadline_ = true;
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(time_limit_s));
        }
    }

    ExactResult run() {
        const auto start = Clock::now();
        std::vector<std::uint64_t> alive(static_cast<std::size_t>(blocks_), 0);
        for (int v = 0; v < n_; ++v) alive[static_cast<std::size_t>(v >> 6)] |= 1ull << (v & 63);
        std::vector<int> picked;
        picked.reserve(static_cast<std::size_t>(n_));
        recurse(std::move(alive), n_, 0, picked);
        ExactResult result;
        result.set.members.assign(static_cast<std::size_t>(n_), false);
        for (int v : best_set_) result.set.members[static_cast<std::size_t>(v)] = true;
        result.set.size = best_size_;
        result.alpha = best_size_;
        result.optimal = !timed_out_;
        result.nodes_explored = nodes_;
        result.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
        return result;
    }

private:
    using Clock = std::chrono::steady_clock;

    std::uint64_t* row(int v) {
        return adj_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(blocks_);
    }

    static bool test_bit(const std::uint64_t* bits, int v) {
        return (bits[v >> 6] >> (v & 63)) & 1ull;
    }
    static void clear_bit(std::uint64_t* bits, int v) { bits[v >> 6] &= ~(1ull << (v & 63)); }

    int alive_degree(const std::uint64_t* alive, int v) {
        const std::uint64_t* r = row(v);
        int d = 0;
        for (int b = 0; b < blocks_; ++b) d += std::popcount(r[b] & alive[b]);
        return d;
    }

    template <typename Fn>
    void for_each_alive_neighbor(const std::uint64_t* alive, int v, Fn&& fn) {
        const std::uint64_t* r = row(v);
        for (int b = 0; b < blocks_; ++b) {
            std::uint64_t word = r[b] & alive[b];
            while (word) {
                fn((b << 6) + std::countr_zero(word));
                word &= word - 1;
            }
        }
    }

    void maybe_update_best(int size, const std::vector<int>& picked) {
        if (size > best_size_) {
            best_size_ = size;
            best_set_ = picked;
        }
    }

    // Residual graphs here are 2-regular (reductions removed everything of
    // degree < 2): alternate around each cycle, taking floor(len/2).
    int solve_cycles(const std::uint64_t* alive, std::vector<int>& picked) {
        std::vector<bool> visited(static_cast<std::size_t>(n_), false);
        int total = 0;
        for (int start = 0; start < n_; ++start) {
            if (!test_bit(alive, start) || visited[static_cast<std::size_t>(start)]) continue;
            std::vector<int> cycle;
            int prev = -1, cur = start;
            do {
                visited[static_cast<std::size_t>(cur)] = true;
                cycle.push_back(cur);
                int next = -1;
                for_each_alive_neighbor(alive, cur, [&](int u) {
                    if (u != prev && next < 0) next = u;
                });
                prev = cur;
                cur = next;
            } while (cur != start);
            const int take = static_cast<int>(cycle.size()) / 2;
            for (int t = 0; t < take; ++t) picked.push_back(cycle[static_cast<std::size_t>(2 * t)]);
            total += take;
        }
        return total;
    }

    void recurse(std::vector<std::uint64_t> alive, int alive_count, int cur,
                 std::vector<int>& picked) {
        if (timed_out_) return;
        ++nodes_;
        if (has_deadline_ && (nodes_ & 1023u) == 0 && Clock::now() > deadline_) {
            timed_out_ = true;
            return;
        }
        const std::size_t mark = picked.size();

        bool changed = true;
        while (changed && alive_count > 0) {
            changed = false;
            for (int v = 0; v < n_; ++v) {
                if (!test_bit(alive.data(), v)) continue;
                const int d = alive_degree(alive.data(), v);
                if (d == 0) {
                    clear_bit(alive.data(), v);
                    --alive_count;
                    picked.push_back(v);
                    ++cur;
                    changed = true;
                } else if (d == 1) {
                    int u = -1;
                    for_each_alive_neighbor(alive.data(), v, [&](int w) {
                        if (u < 0) u = w;
                    });
                    clear_bit(alive.data(), v);
                    clear_bit(alive.data(), u);
                    alive_count -= 2;
                    picked.push_back(v);
                    ++cur;
                    changed = true;
                }
            }
        }

        if (alive_count == 0) {
            maybe_update_best(cur, picked);
            picked.resize(mark);
            return;
        }
        if (cur + alive_count <= best_size_) {
            picked.resize(mark);
            return;
        }

        int branch_vertex = -1;
        int max_degree = -1;
        for (int v = 0; v < n_; ++v) {
            if (!test_bit(alive.data(), v)) continue;
            const int d = alive_degree(alive.data(), v);
            if (d > max_degree) {
                max_degree = d;
                branch_vertex = v;
            }
        }

        if (max_degree <= 2) {
            const int extra = solve_cycles(alive.data(), picked);
            maybe_update_best(cur + extra, picked);
            picked.resize(mark);
            return;
        }

        {
            std::vector<std::uint64_t> included = alive;
            int removed = 1;
            clear_bit(included.data(), branch_vertex);
            for_each_alive_neighbor(alive.data(), branch_vertex, [&](int u) {
                clear_bit(included.data(), u);
                ++removed;
            });
            picked.push_back(branch_vertex);
            recurse(std::move(included), alive_count - removed, cur + 1, picked);
            picked.pop_back();
        }

        clear_bit(alive.data(), branch_vertex);
        recurse(std::move(alive), alive_count - 1, cur, picked);
        picked.resize(mark);
    }

    int n_;
    int blocks_;
    std::vector<std::uint64_t> adj_;
    std::vector<int> best_set_;
    int best_size_ = 0;
    std::uint64_t nodes_ = 0;
    bool has_deadline_ = false;
    bool timed_out_ = false;
    Clock::time_point deadline_;
};

}  // namespace detail

// Exact alpha(G) by branch and bound. Returns optimal=true when the search
// completed within the time limit; otherwise the best set found so far
// (still a valid independent set) with optimal=false. A nonpositive
// time_limit_s disables the limit.
inline ExactResult exact_mis(const Graph& g, double time_limit_s = 60.0) {
    detail::MisBranchAndBound solver(g, time_limit_s);
    return solver.run();
}

// Label file schema: one JSON record per graph, one record per line.
struct LabelRecord {
    std::string graph_id;
    int n = 0;
    int alpha = 0;
    std::vector<int> members;
    bool optimal = false;
};

inline nlohmann::json label_to_json(const LabelRecord& rec) {
    return nlohmann::json{{"graph_id", rec.graph_id},
                          {"n", rec.n},
                          {"alpha", rec.alpha},
                          {"members", rec.members},
                          {"optimal", rec.optimal}};
}

inline LabelRecord label_from_json(const nlohmann::json& j) {
    LabelRecord rec;
    rec.graph_id = j.at("graph_id").get<std::string>();
    rec.n = j.at("n").get<int>();
    rec.alpha = j.at("alpha").get<int>();
    rec.members = j.at("members").get<std::vector<int>>();
    rec.optimal = j.at("optimal").get<bool>();
    return rec;
}

inline std::string write_label_lines(const std::vector<LabelRecord>& records) {
    std::string out;
    for (const auto& rec : records) {
        out += label_to_json(rec).dump();
        out += '\n';
    }
    return out;
}

inline std::vector<LabelRecord> parse_label_lines(const std::string& text) {
    std::vector<LabelRecord> records;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        if (end > pos) {
            const std::string line = text.substr(pos, end - pos);
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                records.push_back(label_from_json(nlohmann::json::parse(line)));
        }
        pos = end + 1;
    }
    return records;
}

}  // namespace miskit
