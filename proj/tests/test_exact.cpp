#include <catch2/catch_amalgamated.hpp>

#include "miskit/exact.hpp"
#include "test_support.hpp"

using namespace miskit;

TEST_CASE("brute force on small named graphs") {
    REQUIRE(brute_force_mis(testsupport::cycle_graph(5)).alpha == 2);
    const auto p3 = brute_force_mis(testsupport::path_graph(3));
    REQUIRE(p3.alpha == 2);
    REQUIRE(p3.set.vertices() == std::vector<int>{0, 2});
    REQUIRE(brute_force_mis(testsupport::complete_graph(6)).alpha == 1);
    REQUIRE(brute_force_mis(Graph(0, {})).alpha == 0);
    REQUIRE(brute_force_mis(Graph(12, {})).alpha == 12);
    REQUIRE_THROWS_AS(brute_force_mis(Graph(26, {})), std::invalid_argument);
}

TEST_CASE("branch and bound agrees with brute force on random graphs") {
    std::uint64_t seed = 1000;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 1 + trial % 16;
        const double p = 0.1 + 0.08 * (trial % 10);
        const Graph g = erdos_renyi(n, p, seed++);
        const ExactResult bb = exact_mis(g, 30.0);
        const ExactResult bf = brute_force_mis(g);
        REQUIRE(bb.optimal);
        REQUIRE(bb.alpha == bf.alpha);
        REQUIRE(is_independent(g, bb.set));
        REQUIRE(bb.set.size == bb.alpha);
    }
}

TEST_CASE("exact solver handles the C5 square") {
    const Graph sq = graph_power(testsupport::cycle_graph(5), 2);
    const ExactResult bb = exact_mis(sq, 60.0);
    REQUIRE(bb.optimal);
    REQUIRE(bb.alpha == 5);
    REQUIRE(is_independent(sq, bb.set));
    const ExactResult bf = brute_force_mis(sq);
    REQUIRE(bf.alpha == 5);
}

TEST_CASE("timeout yields a valid set flagged non-optimal") {
    const Graph g = erdos_renyi(300, 0.5, 17);
    const ExactResult r = exact_mis(g, 0.02);
    REQUIRE_FALSE(r.optimal);
    REQUIRE(r.alpha >= 1);
    REQUIRE(is_independent(g, r.set));
    REQUIRE(r.set.size == r.alpha);
}

TEST_CASE("exact dominates heuristics and powers are super-multiplicative") {
    std::uint64_t seed = 2000;
    for (int trial = 0; trial < 25; ++trial) {
        const Graph g = erdos_renyi(4 + trial % 5, 0.45, seed++);
        const ExactResult ex = exact_mis(g, 30.0);
        REQUIRE(ex.optimal);
        REQUIRE(ex.alpha >= dga(g).size);
        const int alpha1 = ex.alpha;
        for (int k = 2; k <= 3; ++k) {
            if (power_vertex_count(g.num_vertices(), k, 200) < 0) break;
            const ExactResult pk = exact_mis(graph_power(g, k), 60.0);
            if (!pk.optimal) break;
            int lower = 1;
            for (int i = 0; i < k; ++i) lower *= alpha1;
            REQUIRE(pk.alpha >= lower);
        }
    }
}

TEST_CASE("label records round trip through JSON lines") {
    std::vector<LabelRecord> records;
    records.push_back(LabelRecord{"g0", 5, 2, {0, 3}, true});
    records.push_back(LabelRecord{"g1", 3, 1, {2}, false});
    const std::string text = write_label_lines(records);
    const auto parsed = parse_label_lines(text);
    REQUIRE(parsed.size() == 2);
    REQUIRE(parsed[0].graph_id == "g0");
    REQUIRE(parsed[0].alpha == 2);
    REQUIRE(parsed[0].members == std::vector<int>{0, 3});
    REQUIRE(parsed[0].optimal);
    REQUIRE(parsed[1].graph_id == "g1");
    REQUIRE_FALSE(parsed[1].optimal);
}
