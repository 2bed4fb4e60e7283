#include <catch2/catch_amalgamated.hpp>

#include "miskit/features.hpp"
#include "test_support.hpp"

using namespace miskit;

TEST_CASE("degree_init on a path, k = 1") {
    const auto f = degree_init(testsupport::path_graph(3), 1.0);
    REQUIRE(f.x[0] == Catch::Approx(1.0));
    REQUIRE(f.x[1] == Catch::Approx(0.5));
    REQUIRE(f.x[2] == Catch::Approx(1.0));
}

TEST_CASE("degree_init on a star, k = 2 spans [0.25, 1]") {
    const auto f = degree_init(testsupport::star_graph(3), 2.0);
    REQUIRE(f.x[0] == Catch::Approx(0.25));
    REQUIRE(f.x[1] == Catch::Approx(1.0));
    REQUIRE(f.x[2] == Catch::Approx(1.0));
    REQUIRE(f.x[3] == Catch::Approx(1.0));
}

TEST_CASE("regular graphs get the all-ones initialization") {
    const auto cycle = degree_init(testsupport::cycle_graph(6), 2.0);
    for (double v : cycle.x) REQUIRE(v == 1.0);
    const auto edgeless = degree_init(Graph(4, {}), 1.0);
    for (double v : edgeless.x) REQUIRE(v == 1.0);
}

TEST_CASE("degree_init rejects bad input") {
    REQUIRE_THROWS_AS(degree_init(Graph(0, {}), 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(degree_init(testsupport::path_graph(3), 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(degree_init(testsupport::path_graph(3), -1.0), std::invalid_argument);
}

TEST_CASE("isolated vertices always receive feature 1") {
    const Graph g(4, {{0, 1}, {1, 2}});  // vertex 3 isolated
    const auto f = degree_init(g, 1.5);
    REQUIRE(f.x[3] == 1.0);
}

TEST_CASE("features are monotone in degree and contained in the stated range") {
    std::uint64_t seed = 10;
    for (double k : {1.0, 2.0, 3.5}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Graph g = erdos_renyi(3 + trial, 0.4, seed++);
            const auto f = degree_init(g, k);
            const double floor = std::pow(0.5, k);
            const bool regular = g.min_degree() == g.max_degree();
            for (int i = 0; i < g.num_vertices(); ++i) {
                REQUIRE(f.x[i] > 0.0);
                REQUIRE(f.x[i] <= 1.0);
                REQUIRE(f.x[i] >= floor - 1e-12);
                if (!regular) {
                    if (g.degree(i) == g.max_degree()) REQUIRE(f.x[i] == Catch::Approx(floor));
                    if (g.degree(i) == g.min_degree()) REQUIRE(f.x[i] == 1.0);
                    if (f.x[i] == Catch::Approx(floor).epsilon(1e-12))
                        REQUIRE(g.degree(i) == g.max_degree());
                }
                for (int j = 0; j < g.num_vertices(); ++j)
                    if (g.degree(i) <= g.degree(j)) REQUIRE(f.x[i] >= f.x[j] - 1e-12);
            }
        }
    }
}
