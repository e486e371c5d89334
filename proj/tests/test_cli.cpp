#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "unicl/csv.hpp"
#include "unicl/estimation.hpp"
#include "unicl/models/lognorm_cond.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "unicl_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = std::string(UNICL_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

} // namespace

TEST_CASE("sample: positive entries, reproducible, correct shape") {
    const auto r = run_cli("sample --model exp-cond --params [1] --n 10 --seed 1");
    REQUIRE(r.exit_code == 0);
    std::istringstream is(r.out);
    const auto data = unicl::load_dataset_csv(is, 2);
    CHECK(data.rows() == 10);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        CHECK(data(i, 0) > 0.0);
        CHECK(data(i, 1) > 0.0);
    }
    const auto again = run_cli("sample --model exp-cond --params [1] --n 10 --seed 1");
    CHECK(again.out == r.out);
    const auto other = run_cli("sample --model exp-cond --params [1] --n 10 --seed 2");
    CHECK(other.out != r.out);
}

TEST_CASE("sample accepts parameters from a JSON file") {
    const fs::path params = work_dir() / "params.json";
    {
        std::ofstream out(params);
        out << "[2.0]\n";
    }
    const auto from_file =
        run_cli("sample --model exp-cond --params " + params.string() + " --n 8 --seed 4");
    const auto inline_form = run_cli("sample --model exp-cond --params [2.0] --n 8 --seed 4");
    REQUIRE(from_file.exit_code == 0);
    CHECK(from_file.out == inline_form.out);
    CHECK(run_cli("sample --model exp-cond --params /nope.json --n 3").exit_code == 3);
    CHECK(run_cli("sample --model lognorm-cond --params [1,1] --n 3").exit_code == 3);
}

TEST_CASE("sample then fit recovers the truth within the consistency band") {
    const fs::path csv = work_dir() / "roundtrip.csv";
    REQUIRE(run_cli("sample --model exp-cond --params [1] --n 10000 --seed 99 --out " +
                    csv.string())
                .exit_code == 0);
    const auto r = run_cli("fit --model exp-cond --data " + csv.string());
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("converged").get<bool>());
    CHECK(std::abs(j.at("params")[0].get<double>() - 1.0) < 0.15);
}

TEST_CASE("fit --null-c0 equals the closed form") {
    const fs::path csv = work_dir() / "ln.csv";
    REQUIRE(run_cli("sample --model lognorm-cond --params [2,1,2,1,1] --n 400 --seed 3 --out " +
                    csv.string())
                .exit_code == 0);
    const auto r = run_cli("fit --model lognorm-cond --data " + csv.string() + " --null-c0");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);

    const auto data = unicl::load_dataset_csv(csv.string(), 2);
    const auto model = unicl::make_model("lognorm-cond");
    const auto w = unicl::WeightScheme::all_conditionals(2, 0.5);
    const auto closed = unicl::mcle_lognorm(*model, w, data, {}, true);
    for (int k = 0; k < 5; ++k)
        CHECK(j.at("params")[k].get<double>() ==
              doctest::Approx(closed.theta_hat[static_cast<std::size_t>(k)]).epsilon(1e-5));
    CHECK(j.at("params")[4].get<double>() == 0.0);
}

TEST_CASE("confint contains the truth for most seeds") {
    int contains = 0;
    for (int seed = 0; seed < 20; ++seed) {
        const fs::path csv = work_dir() / ("ci" + std::to_string(seed) + ".csv");
        REQUIRE(run_cli("sample --model exp-cond --params [1] --n 200 --seed " +
                        std::to_string(1000 + seed) + " --out " + csv.string())
                    .exit_code == 0);
        const auto r =
            run_cli("confint --data " + csv.string() + " --alpha 0.05 --method split");
        REQUIRE(r.exit_code == 0);
        const auto j = json::parse(r.out);
        for (const auto& iv : j.at("intervals"))
            if (iv[0].get<double>() <= 1.0 && 1.0 <= iv[1].get<double>()) ++contains;
    }
    CHECK(contains >= 18); // expected ~19+ of 20 at the 95% level
}

TEST_CASE("confint with --seed uses a reproducible random split") {
    const fs::path csv = work_dir() / "ci_seed.csv";
    REQUIRE(run_cli("sample --model exp-cond --params [1] --n 150 --seed 77 --out " +
                    csv.string())
                .exit_code == 0);
    const auto a = run_cli("confint --data " + csv.string() + " --alpha 0.05 --method swap --seed 5");
    const auto b = run_cli("confint --data " + csv.string() + " --alpha 0.05 --method swap --seed 5");
    const auto c = run_cli("confint --data " + csv.string() + " --alpha 0.05 --method swap");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(json::parse(c.out).at("diameter").get<double>() > 0.0);
}

TEST_CASE("test subcommand rejects under strong dependence, not under the null") {
    const fs::path strong = work_dir() / "strong.csv";
    REQUIRE(run_cli("sample --model lognorm-cond --params [2,1,2,1,5] --n 2000 --seed 8 --out " +
                    strong.string())
                .exit_code == 0);
    const auto r =
        run_cli("test --model lognorm-cond --data " + strong.string() + " --alpha 0.05 --method swap");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).at("reject").get<bool>());

    const fs::path null = work_dir() / "null.csv";
    REQUIRE(run_cli("sample --model lognorm-cond --params [2,1,2,1,0] --n 400 --seed 9 --out " +
                    null.string())
                .exit_code == 0);
    const auto rn =
        run_cli("test --model lognorm-cond --data " + null.string() + " --alpha 0.05 --method split");
    REQUIRE(rn.exit_code == 0);
    const auto jn = json::parse(rn.out);
    CHECK_FALSE(jn.at("reject").get<bool>());
    CHECK(jn.at("log_statistic").is_number());
}

TEST_CASE("sim-coverage emits the grid-sized CSV") {
    const fs::path cfg = work_dir() / "cov.json";
    {
        std::ofstream out(cfg);
        out << R"({"model":"exp-cond","theta0_grid":[1,5,10],"n1_grid":[20,40,60],)"
            << R"("alpha":0.05,"reps":2,"base_seed":1,"methods":["split","swap"]})";
    }
    const fs::path csv = work_dir() / "cov.csv";
    const auto r = run_cli("sim-coverage --config " + cfg.string() + " --threads 2 --out " +
                           csv.string());
    REQUIRE(r.exit_code == 0);
    std::istringstream is(slurp(csv));
    std::string line;
    std::getline(is, line);
    CHECK(line == "method,param,n1,metric,value,reps,excluded");
    int cp_rows = 0, as_rows = 0;
    while (std::getline(is, line)) {
        if (line.find(",cp,") != std::string::npos) ++cp_rows;
        if (line.find(",as,") != std::string::npos) ++as_rows;
    }
    CHECK(cp_rows == 18); // 3 theta x 3 n1 x 2 methods per metric
    CHECK(as_rows == 18);
}

TEST_CASE("sim-power runs a small grid") {
    const fs::path cfg = work_dir() / "pow.json";
    {
        std::ofstream out(cfg);
        out << R"({"model":"lognorm-cond","c0_grid":[0,5],"n1_grid":[25],)"
            << R"("alpha":0.05,"reps":2,"base_seed":4,"methods":["split"]})";
    }
    const auto r = run_cli("sim-power --config " + cfg.string() + " --threads 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("method,param,n1,metric,value,reps,excluded\n", 0) == 0);
    CHECK(r.out.find(",reject,") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("sample --model no-such-model --params [1] --n 5").exit_code == 2);
    CHECK(run_cli("fit --model exp-cond").exit_code == 2); // missing --data
    CHECK(run_cli("confint --data x.csv --alpha 0.05 --method bogus").exit_code == 2);
    CHECK(run_cli("wat").exit_code == 2);
    CHECK(run_cli("").exit_code == 2); // a subcommand is required
    const fs::path csv = work_dir() / "usage.csv";
    REQUIRE(run_cli("sample --model exp-cond --params [1] --n 6 --out " + csv.string())
                .exit_code == 0);
    CHECK(run_cli("fit --model exp-cond --data " + csv.string() + " --null-c0").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("data errors exit with code 3 and carry the line number") {
    const fs::path bad = work_dir() / "bad.csv";
    {
        std::ofstream out(bad);
        out << "1.0,2.0\nnot,numbers\n";
    }
    const auto r = run_cli("fit --model exp-cond --data " + bad.string());
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("line 2") != std::string::npos);

    CHECK(run_cli("fit --model exp-cond --data /no/such/file.csv").exit_code == 3);
    CHECK(run_cli("sim-coverage --config /no/such/cfg.json").exit_code == 3);

    const fs::path ragged = work_dir() / "ragged.csv";
    {
        std::ofstream out(ragged);
        out << "1.0,2.0\n3.0\n";
    }
    const auto rr = run_cli("fit --model exp-cond --data " + ragged.string());
    CHECK(rr.exit_code == 3);
    CHECK(rr.err.find("line 2") != std::string::npos);
}
