#include <catch2/catch_amalgamated.hpp>

#include "miskit/bench.hpp"
#include "test_support.hpp"

using namespace miskit;

namespace {

SolveConfig quick_config(std::uint64_t seed) {
    SolveConfig c;
    c.epochs_unsup = 100;
    c.epochs_refine = 60;
    c.warmup_epochs = 30;
    c.hidden = 8;
    c.seed = seed;
    return c;
}

std::vector<NamedGraph> er_batch(int count, int n, std::uint64_t seed) {
    std::vector<NamedGraph> out;
    for (int i = 0; i < count; ++i)
        out.push_back(NamedGraph{"g" + std::to_string(i),
                                 erdos_renyi(n, 0.5, mix_seed(seed, static_cast<std::uint64_t>(i)))});
    return out;
}

}  // namespace

TEST_CASE("drop_pct reproduces the published rows") {
    // ER10: exact 3.877 vs DGA 3.714 -> 4.20% ; SATLIB: 403 vs 384.33 -> 4.63%
    REQUIRE(drop_pct(3.877, 3.714) == Catch::Approx(4.2043).margin(5e-4));
    REQUIRE(std::round(drop_pct(3.877, 3.714) * 100.0) / 100.0 == Catch::Approx(4.20));
    REQUIRE(drop_pct(403.0, 384.33) == Catch::Approx(4.6327).margin(5e-4));
    REQUIRE(std::round(drop_pct(403.0, 384.33) * 100.0) / 100.0 == Catch::Approx(4.63));
    REQUIRE(drop_pct(3.877, 3.76) == Catch::Approx(3.0178).margin(5e-4));
    REQUIRE(drop_pct(5.0, 5.0) == 0.0);
    REQUIRE_THROWS_AS(drop_pct(0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(drop_pct(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("method parsing and report names") {
    REQUIRE(method_from_name("dga") == Method::Dga);
    REQUIRE(method_from_name("sup-qubo-g") == Method::SupQuboG);
    REQUIRE(method_report_name(Method::Exact) == "exact-bnb");
    try {
        method_from_name("gurobi");
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        REQUIRE(std::string(e.what()).find("gurobi") != std::string::npos);
    }
}

TEST_CASE("bench on edgeless graphs: every method is exact") {
    std::vector<NamedGraph> graphs;
    for (int i = 0; i < 5; ++i) graphs.push_back(NamedGraph{"e" + std::to_string(i), Graph(7, {})});
    const auto report = bench_run(graphs, {Method::Dga, Method::Ga, Method::Exact},
                                  quick_config(1), nullptr, nullptr, 1,
                                  DatasetDesc{"edgeless", 0, "n=7", 1});
    REQUIRE(report.rows.size() == 3);
    for (const auto& row : report.rows) {
        REQUIRE(row.avg_size == Catch::Approx(7.0));
        REQUIRE(row.drop_pct == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("bench rows aggregate the stored witness cells") {
    const auto graphs = er_batch(6, 9, 77);
    const auto report =
        bench_run(graphs, {Method::Dga, Method::QuboG}, quick_config(2), nullptr, nullptr, 1,
                  DatasetDesc{"er9", 0, "p=0.5", 77});
    REQUIRE(report.rows.size() == 2);
    REQUIRE(report.cells.size() == 12);
    for (std::size_t mi = 0; mi < 2; ++mi) {
        double sum = 0.0;
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const auto& cell = report.cells[gi * 2 + mi];
            REQUIRE(cell.result.valid);
            REQUIRE(is_independent(graphs[gi].graph, cell.result.set));
            sum += cell.result.set.size;
        }
        REQUIRE(report.rows[mi].avg_size == Catch::Approx(sum / 6.0));
    }
}

TEST_CASE("bench respects provided labels for the baseline") {
    const auto graphs = er_batch(4, 8, 55);
    std::vector<LabelRecord> labels;
    for (const auto& ng : graphs) {
        const ExactResult ex = exact_mis(ng.graph, 10.0);
        labels.push_back(LabelRecord{ng.id, 8, ex.alpha, ex.set.vertices(), ex.optimal});
    }
    const auto report = bench_run(graphs, {Method::Dga, Method::Exact}, quick_config(3), nullptr,
                                  &labels, 1, DatasetDesc{"er8", 0, "", 55});
    double avg_alpha = 0.0;
    for (const auto& rec : labels) avg_alpha += rec.alpha;
    avg_alpha /= 4.0;
    const auto& exact_row = report.rows[1];
    REQUIRE(exact_row.method == "exact-bnb");
    REQUIRE(exact_row.avg_size == Catch::Approx(avg_alpha));
    REQUIRE(exact_row.drop_pct == 0.0);
    REQUIRE(report.rows[0].drop_pct >= -1e-12);
}

TEST_CASE("bench is deterministic and worker-count independent") {
    const auto graphs = er_batch(4, 10, 99);
    const auto a = bench_run(graphs, {Method::Dga, Method::QuboG}, quick_config(4), nullptr,
                             nullptr, 1, DatasetDesc{"er10", 0, "", 99});
    const auto b = bench_run(graphs, {Method::Dga, Method::QuboG}, quick_config(4), nullptr,
                             nullptr, 2, DatasetDesc{"er10", 0, "", 99});
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        REQUIRE(a.rows[i].avg_size == b.rows[i].avg_size);
        REQUIRE(a.rows[i].drop_pct == b.rows[i].drop_pct);
    }
    for (std::size_t i = 0; i < a.cells.size(); ++i)
        REQUIRE(a.cells[i].result.set == b.cells[i].result.set);
    REQUIRE(bench_report_csv(a, false) == bench_report_csv(b, false));
}

TEST_CASE("bench rejects model-less supervised methods and empty input") {
    const auto graphs = er_batch(2, 6, 5);
    REQUIRE_THROWS_AS(bench_run(graphs, {Method::SupG}, quick_config(5)), std::invalid_argument);
    REQUIRE_THROWS_AS(bench_run({}, {Method::Dga}, quick_config(6)), std::invalid_argument);
    REQUIRE_THROWS_AS(bench_run(graphs, {}, quick_config(7)), std::invalid_argument);
}

TEST_CASE("csv and markdown reports carry the fixed schema") {
    const auto graphs = er_batch(3, 7, 31);
    const auto report = bench_run(graphs, {Method::Dga}, quick_config(8), nullptr, nullptr, 1,
                                  DatasetDesc{"unit", 0, "p=0.5", 31});
    const std::string csv = bench_report_csv(report, false);
    REQUIRE(csv.rfind("dataset,method,avg_size,drop_pct,time_s\n", 0) == 0);
    REQUIRE(csv.find("unit,dga,") != std::string::npos);
    REQUIRE(csv.find(",0.000000\n") != std::string::npos);  // timing zeroed
    const std::string md = bench_report_markdown(report);
    REQUIRE(md.find("| Method | Avg Size | Drop (%) | Time (s) |") != std::string::npos);
    const std::string witnesses = bench_witness_lines(report);
    REQUIRE(std::count(witnesses.begin(), witnesses.end(), '\n') == 3);
}

TEST_CASE("capacity and confusion reports share the csv schema") {
    SolveConfig config = quick_config(9);
    const CapacityEstimate est =
        estimate_capacity(testsupport::cycle_graph(5), 2, CapacitySolver::Exact, config);
    const std::string csv = capacity_report_csv(est, "c5", false);
    REQUIRE(csv.rfind("dataset,method,avg_size,drop_pct,time_s\n", 0) == 0);
    REQUIRE(csv.find("c5^1,exact-bnb,2.000000") != std::string::npos);
    REQUIRE(csv.find("c5^2,exact-bnb,5.000000") != std::string::npos);
    const std::string md = capacity_report_markdown(est, "c5", 5, false);
    REQUIRE(md.find("2.236068") != std::string::npos);  // sqrt(5)
    REQUIRE(md.find("Witness words") != std::string::npos);
}

TEST_CASE("labeled dataset assembly skips unusable records") {
    const auto graphs = er_batch(3, 6, 61);
    std::vector<LabelRecord> labels;
    labels.push_back(LabelRecord{"g0", 6, 2, {0, 1}, true});
    labels.push_back(LabelRecord{"g1", 6, 2, {0, 1}, false});  // non-optimal
    // g2 missing entirely
    std::vector<std::string> skipped;
    const auto dataset = make_labeled_dataset(graphs, labels, &skipped);
    REQUIRE(dataset.size() == 1);
    REQUIRE(dataset[0].id == "g0");
    REQUIRE(dataset[0].labels == std::vector<int>{1, 1, 0, 0, 0, 0});
    REQUIRE(skipped == std::vector<std::string>{"g1", "g2"});
}
