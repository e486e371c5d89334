#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include <nlohmann/json.hpp>

#include "unicl/simulation.hpp"

using namespace unicl;

namespace {

CoverageConfig tiny_coverage(int reps) {
    CoverageConfig cfg;
    cfg.theta0_grid = {1.0};
    cfg.n1_grid = {24};
    cfg.alpha = 0.05;
    cfg.reps = reps;
    cfg.base_seed = 90210;
    cfg.threads = 2;
    return cfg;
}

std::string to_csv(const ExperimentReport& r) {
    std::ostringstream os;
    write_report_csv(os, r);
    return os.str();
}

} // namespace

TEST_CASE("coverage report: aggregation matches the replicate details") {
    const auto report = run_coverage(tiny_coverage(8));
    REQUIRE(report.rows.size() == 4); // 2 methods x {cp, as}
    REQUIRE(report.details.size() == 2);
    for (const auto& cell : report.details) {
        double covered = 0.0, diam = 0.0;
        int excluded = 0;
        for (const auto& rep : cell.reps) {
            covered += rep.covered ? 1.0 : 0.0;
            if (rep.unbounded)
                ++excluded;
            else
                diam += rep.diameter;
        }
        const double cp = covered / double(cell.reps.size());
        const double as = diam / double(cell.reps.size() - excluded);
        for (const auto& row : report.rows) {
            if (row.method != cell.method) continue;
            if (row.metric == "cp") CHECK(row.value == doctest::Approx(cp).epsilon(1e-12));
            if (row.metric == "as") CHECK(row.value == doctest::Approx(as).epsilon(1e-12));
            CHECK(row.excluded == excluded);
            CHECK(row.reps == 8);
        }
    }
}

TEST_CASE("coverage proportion arithmetic on a fixed membership pattern") {
    // CP of memberships [1,1,0,1] is 0.75; exercised through a seed whose
    // outcomes we then recompute from the details.
    const auto report = run_coverage(tiny_coverage(4));
    for (const auto& cell : report.details) {
        int covered = 0;
        for (const auto& rep : cell.reps) covered += rep.covered ? 1 : 0;
        for (const auto& row : report.rows)
            if (row.method == cell.method && row.metric == "cp")
                CHECK(row.value == doctest::Approx(covered / 4.0).epsilon(1e-15));
    }
}

TEST_CASE("identical configs give byte-identical reports") {
    const auto a = to_csv(run_coverage(tiny_coverage(6)));
    const auto b = to_csv(run_coverage(tiny_coverage(6)));
    CHECK(a == b);
    CHECK(a.rfind("method,param,n1,metric,value,reps,excluded\n", 0) == 0);
}

TEST_CASE("replicate seeds are isolated from the replicate count") {
    const auto small = run_coverage(tiny_coverage(3));
    const auto large = run_coverage(tiny_coverage(5));
    REQUIRE(small.details.size() == large.details.size());
    for (std::size_t c = 0; c < small.details.size(); ++c) {
        for (std::size_t j = 0; j < small.details[c].reps.size(); ++j) {
            const auto& s = small.details[c].reps[j];
            const auto& l = large.details[c].reps[j];
            CHECK(s.covered == l.covered);
            CHECK(s.diameter == l.diameter); // bitwise: same draws, same sets
        }
    }
}

TEST_CASE("power report: smoke run and schema") {
    PowerConfig cfg;
    cfg.c0_grid = {0.0, 5.0};
    cfg.n1_grid = {30};
    cfg.reps = 4;
    cfg.base_seed = 5;
    cfg.threads = 2;
    const auto report = run_power(cfg);
    REQUIRE(report.rows.size() == 4); // 2 c0 x 1 n1 x 2 methods
    for (const auto& row : report.rows) {
        CHECK(row.metric == "reject");
        CHECK(row.value >= 0.0);
        CHECK(row.value <= 1.0);
        CHECK(row.excluded >= 0);
    }
    const auto again = run_power(cfg);
    CHECK(to_csv(report) == to_csv(again));
}

TEST_CASE("config validation") {
    CoverageConfig cfg = tiny_coverage(2);
    cfg.alpha = 1.5;
    CHECK_THROWS_AS(run_coverage(cfg), std::invalid_argument);
    cfg = tiny_coverage(2);
    cfg.model_id = "lognorm-cond"; // not a scalar-parameter model
    CHECK_THROWS_AS(run_coverage(cfg), std::invalid_argument);
    cfg = tiny_coverage(0);
    CHECK_THROWS_AS(run_coverage(cfg), std::invalid_argument);

    PowerConfig pc;
    pc.c0_grid = {0.0};
    pc.n1_grid = {20};
    pc.null_coord = 1; // unsupported null coordinate
    CHECK_THROWS_AS(run_power(pc), std::invalid_argument);
}

TEST_CASE("config JSON parsing") {
    const auto j = nlohmann::json::parse(R"({
        "model": "exp-cond",
        "theta0_grid": [1, [5.0], 10],
        "n1_grid": [100, 1000],
        "alpha": 0.1,
        "reps": 7,
        "base_seed": 99,
        "methods": ["swap"]
    })");
    const auto cfg = coverage_config_from_json(j);
    CHECK(cfg.theta0_grid == std::vector<double>{1.0, 5.0, 10.0});
    CHECK(cfg.n1_grid == std::vector<std::size_t>{100, 1000});
    CHECK(cfg.alpha == 0.1);
    CHECK(cfg.reps == 7);
    CHECK(cfg.base_seed == 99);
    REQUIRE(cfg.methods.size() == 1);
    CHECK(cfg.methods[0] == Method::swap);

    const auto pj = nlohmann::json::parse(R"({
        "model": "lognorm-cond",
        "c0_grid": [0, 1, 5],
        "n1_grid": [100],
        "reps": 3
    })");
    const auto pcfg = power_config_from_json(pj);
    CHECK(pcfg.c0_grid == std::vector<double>{0.0, 1.0, 5.0});
    CHECK(pcfg.theta0_base == std::vector<double>{2.0, 1.0, 2.0, 1.0, 0.0});

    CHECK_THROWS(coverage_config_from_json(nlohmann::json::parse(R"({"n1_grid": [10]})")));
    CHECK_THROWS(coverage_config_from_json(nlohmann::json::parse(
        R"({"theta0_grid": [1], "n1_grid": [10], "methods": ["bogus"]})")));
}

TEST_CASE("report CSV formatting") {
    ExperimentReport r;
    r.rows.push_back({"split", 1.0, 100, "cp", 0.97, 100, 0});
    r.rows.push_back({"swap", 10.0, 10000, "as", 7.4034567, 100, 2});
    const std::string csv = to_csv(r);
    CHECK(csv ==
          "method,param,n1,metric,value,reps,excluded\n"
          "split,1,100,cp,0.97,100,0\n"
          "swap,10,10000,as,7.40346,100,2\n");
}
