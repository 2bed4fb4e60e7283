#include <catch2/catch_amalgamated.hpp>

#include "miskit/capacity.hpp"
#include "test_support.hpp"

using namespace miskit;

namespace {

SolveConfig quick_config(std::uint64_t seed) {
    SolveConfig c;
    c.epochs_unsup = 150;
    c.epochs_refine = 100;
    c.warmup_epochs = 40;
    c.hidden = 16;
    c.seed = seed;
    return c;
}

TrainedModel quick_model(std::uint64_t seed) {
    std::vector<LabeledGraph> dataset;
    for (int i = 0; i < 12; ++i) {
        LabeledGraph lg;
        lg.id = "t" + std::to_string(i);
        lg.graph = erdos_renyi(9, 0.5, mix_seed(seed, static_cast<std::uint64_t>(i)));
        const ExactResult ex = exact_mis(lg.graph, 10.0);
        lg.labels.assign(9, 0);
        for (int v : ex.set.vertices()) lg.labels[static_cast<std::size_t>(v)] = 1;
        dataset.push_back(std::move(lg));
    }
    SolveConfig c = quick_config(seed);
    c.epochs_supervised = 15;
    return train_supervised(dataset, c);
}

}  // namespace

TEST_CASE("edgeless alphabets have capacity equal to their size") {
    const CapacityEstimate est =
        estimate_capacity(Graph(3, {}), 2, CapacitySolver::Exact, quick_config(1));
    REQUIRE(est.records.size() == 2);
    REQUIRE(est.records[0].alpha_lower == 3);
    REQUIRE(est.records[1].alpha_lower == 9);
    REQUIRE(est.capacity_lb == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("complete alphabets have capacity one") {
    const CapacityEstimate est =
        estimate_capacity(testsupport::complete_graph(4), 2, CapacitySolver::Exact, quick_config(2));
    REQUIRE(est.records[0].alpha_lower == 1);
    REQUIRE(est.records[1].alpha_lower == 1);
    REQUIRE(est.capacity_lb == Catch::Approx(1.0));
}

TEST_CASE("C5 at k_max = 2 reaches the sqrt(5) bound") {
    const CapacityEstimate est = estimate_capacity(testsupport::cycle_graph(5), 2,
                                                   CapacitySolver::Exact, quick_config(3));
    REQUIRE(est.records.size() == 2);
    REQUIRE(est.records[0].alpha_lower == 2);
    REQUIRE(est.records[0].optimal);
    REQUIRE(est.records[1].alpha_lower == 5);
    REQUIRE(est.records[1].optimal);
    REQUIRE(std::abs(est.capacity_lb - std::sqrt(5.0)) < 1e-12);
}

TEST_CASE("capacity bound never decreases with k_max") {
    const Graph g = erdos_renyi(5, 0.5, 404);
    const CapacityEstimate one =
        estimate_capacity(g, 1, CapacitySolver::Exact, quick_config(4));
    const CapacityEstimate two =
        estimate_capacity(g, 2, CapacitySolver::Exact, quick_config(4));
    REQUIRE(two.capacity_lb >= one.capacity_lb - 1e-12);
    REQUIRE(two.capacity_lb >= static_cast<double>(two.records[0].alpha_lower));
}

TEST_CASE("witnesses are concrete independent sets and super-multiplicative") {
    std::uint64_t seed = 11;
    for (int trial = 0; trial < 4; ++trial) {
        const Graph g = erdos_renyi(5, 0.4, seed++);
        const CapacityEstimate est =
            estimate_capacity(g, 3, CapacitySolver::Dga, quick_config(seed));
        Graph power;
        const int alpha1 = est.records[0].alpha_lower;
        int expected_lower = 1;
        for (const auto& rec : est.records) {
            power = rec.k == 1 ? g : strong_product(power, g);
            REQUIRE(rec.witness.size == rec.alpha_lower);
            REQUIRE(is_independent(power, rec.witness));
            expected_lower *= alpha1;
            REQUIRE(rec.alpha_lower >= expected_lower);
        }
    }
}

TEST_CASE("vertex budget truncates the ladder with partial results") {
    const CapacityEstimate est = estimate_capacity(testsupport::cycle_graph(5), 4,
                                                   CapacitySolver::Dga, quick_config(5), nullptr,
                                                   200, 30);
    REQUIRE(est.truncated);
    REQUIRE(est.records.size() == 2);  // 5 and 25 fit, 125 does not
    REQUIRE_THROWS_AS(
        estimate_capacity(Graph(0, {}), 2, CapacitySolver::Exact, quick_config(6)),
        std::invalid_argument);
    REQUIRE_THROWS_AS(estimate_capacity(testsupport::cycle_graph(5), 0, CapacitySolver::Exact,
                                        quick_config(7)),
                      std::invalid_argument);
}

TEST_CASE("witness words decode through the positional index") {
    const CapacityEstimate est = estimate_capacity(testsupport::cycle_graph(5), 2,
                                                   CapacitySolver::Exact, quick_config(8));
    const auto words = witness_words(est.records[1], 5);
    REQUIRE(words.size() == 5);
    for (const auto& word : words) {
        REQUIRE(word.size() == 2);
        for (int letter : word) {
            REQUIRE(letter >= 0);
            REQUIRE(letter < 5);
        }
    }
}

TEST_CASE("confusion experiment has the three-method table shape") {
    const TrainedModel tm = quick_model(21);
    SolveConfig config = quick_config(22);
    const ConfusionReport report =
        confusion_experiment_on(testsupport::cycle_graph(5), 2, config, tm, "c5");
    REQUIRE(report.cells.size() == 6);  // 3 methods x 2 powers
    for (int k = 1; k <= 2; ++k) {
        const auto* exact_cell = &report.cells[static_cast<std::size_t>((k - 1) * 3)];
        REQUIRE(exact_cell->method == "exact-bnb");
        REQUIRE(exact_cell->drop_pct == 0.0);
    }
    REQUIRE(report.cells[0].size == 2);  // alpha(C5)
    REQUIRE(report.cells[3].size == 5);  // alpha(C5^2)
    for (const auto& cell : report.cells) {
        if (cell.method == "sup-qubo-g") {
            const auto& dga_cell = *std::find_if(
                report.cells.begin(), report.cells.end(),
                [&](const ConfusionCell& c) { return c.k == cell.k && c.method == "dga"; });
            REQUIRE(cell.size >= dga_cell.size);
        }
    }
}

TEST_CASE("random confusion experiment is reproducible") {
    const TrainedModel tm = quick_model(31);
    SolveConfig config = quick_config(32);
    const ConfusionReport a = confusion_experiment(5, 0.4, 99, 2, config, tm);
    const ConfusionReport b = confusion_experiment(5, 0.4, 99, 2, config, tm);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        REQUIRE(a.cells[i].size == b.cells[i].size);
        REQUIRE(a.cells[i].method == b.cells[i].method);
    }
}
