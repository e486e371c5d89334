#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "unicl/csv.hpp"
#include "unicl/errors.hpp"
#include "unicl/estimation.hpp"
#include "unicl/inference.hpp"
#include "unicl/model.hpp"
#include "unicl/simulation.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

double sig6(double v) { return std::strtod(unicl::format_sig(v, 6).c_str(), nullptr); }

json round_numbers(const json& j) {
    if (j.is_number_float()) return sig6(j.get<double>());
    if (j.is_array() || j.is_object()) {
        json out = j;
        for (auto& e : out) e = round_numbers(e);
        return out;
    }
    return j;
}

std::vector<double> parse_params(const std::string& text) {
    json j;
    if (!text.empty() && text.front() == '[') {
        j = json::parse(text);
    } else {
        std::ifstream in(text);
        if (!in) throw unicl::DataFormatError("cannot open parameter file '" + text + "'");
        j = json::parse(in);
    }
    if (!j.is_array()) throw unicl::DataFormatError("parameters must be a JSON array");
    return j.get<std::vector<double>>();
}

unicl::SplitSample make_split(const unicl::Dataset& data, bool random_split,
                              std::uint64_t seed) {
    return random_split ? unicl::split(data, unicl::SplitRule::random, seed)
                        : unicl::split(data, unicl::SplitRule::first_half);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << round_numbers(j).dump() << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw unicl::DataFormatError("cannot open '" + out_path + "' for writing");
        out << round_numbers(j).dump() << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-sample valid inference via composite likelihoods"};
    app.require_subcommand(1);
    const std::vector<std::string> model_ids{"exp-cond", "lognorm-cond"};

    // --- sample ---
    auto* cmd_sample = app.add_subcommand("sample", "Draw IID observations from a model");
    std::string s_model, s_params, s_out;
    std::size_t s_n = 0;
    std::uint64_t s_seed = 0;
    cmd_sample->add_option("--model", s_model, "Model id")->required()->check(CLI::IsMember(model_ids));
    cmd_sample->add_option("--params", s_params, "JSON array (inline or file path)")->required();
    cmd_sample->add_option("--n", s_n, "Number of rows")->required()->check(CLI::PositiveNumber);
    cmd_sample->add_option("--seed", s_seed, "RNG seed");
    cmd_sample->add_option("--out", s_out, "Output CSV path (default: stdout)");

    // --- fit ---
    auto* cmd_fit = app.add_subcommand("fit", "Maximum composite likelihood estimate");
    std::string f_model, f_data;
    bool f_null_c0 = false;
    cmd_fit->add_option("--model", f_model, "Model id")->required()->check(CLI::IsMember(model_ids));
    cmd_fit->add_option("--data", f_data, "Input CSV")->required();
    cmd_fit->add_flag("--null-c0", f_null_c0, "Constrain c = 0 (lognorm-cond only)");

    // --- confint ---
    auto* cmd_confint = app.add_subcommand("confint", "Scalar confidence set");
    std::string ci_model = "exp-cond", ci_data, ci_method;
    double ci_alpha = 0.05;
    std::uint64_t ci_seed = 0;
    cmd_confint->add_option("--model", ci_model, "Model id")
        ->check(CLI::IsMember({"exp-cond"}));
    cmd_confint->add_option("--data", ci_data, "Input CSV")->required();
    cmd_confint->add_option("--alpha", ci_alpha, "Level in (0,1)")->required();
    cmd_confint->add_option("--method", ci_method, "split or swap")
        ->required()
        ->check(CLI::IsMember({"split", "swap"}));
    cmd_confint->add_option("--seed", ci_seed, "Use a seeded random split instead of first-half");

    // --- test ---
    auto* cmd_test = app.add_subcommand("test", "Test c = 0 in the lognorm-cond model");
    std::string t_model = "lognorm-cond", t_data, t_method;
    double t_alpha = 0.05;
    std::uint64_t t_seed = 0;
    cmd_test->add_option("--model", t_model, "Model id")->check(CLI::IsMember({"lognorm-cond"}));
    cmd_test->add_option("--data", t_data, "Input CSV")->required();
    cmd_test->add_option("--alpha", t_alpha, "Level in (0,1)")->required();
    cmd_test->add_option("--method", t_method, "split or swap")
        ->required()
        ->check(CLI::IsMember({"split", "swap"}));
    cmd_test->add_option("--seed", t_seed, "Use a seeded random split instead of first-half");

    // --- sim-coverage / sim-power ---
    auto* cmd_cov = app.add_subcommand("sim-coverage", "Coverage/size sweep (CP and AS)");
    auto* cmd_pow = app.add_subcommand("sim-power", "Rejection-proportion sweep");
    std::string cov_config, cov_out, pow_config, pow_out;
    int cov_threads = -1, pow_threads = -1;
    cmd_cov->add_option("--config", cov_config, "JSON config")->required();
    cmd_cov->add_option("--out", cov_out, "Output CSV path (default: stdout)");
    cmd_cov->add_option("--threads", cov_threads, "Worker cap (default: machine parallelism)");
    cmd_pow->add_option("--config", pow_config, "JSON config")->required();
    cmd_pow->add_option("--out", pow_out, "Output CSV path (default: stdout)");
    cmd_pow->add_option("--threads", pow_threads, "Worker cap (default: machine parallelism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_sample) {
            const auto model = unicl::make_model(s_model);
            const auto params = parse_params(s_params);
            unicl::Rng rng(s_seed);
            const unicl::Dataset data = model->sample(params, s_n, rng);
            if (s_out.empty())
                unicl::save_dataset_csv(std::cout, data);
            else
                unicl::save_dataset_csv(s_out, data);
        } else if (*cmd_fit) {
            const auto model = unicl::make_model(f_model);
            const auto data = unicl::load_dataset_csv(f_data, 2);
            const auto w = unicl::WeightScheme::all_conditionals(model->dim(), 0.5);
            if (f_null_c0 && f_model != "lognorm-cond") {
                std::cerr << "--null-c0 applies only to lognorm-cond\n";
                return kExitUsage;
            }
            const unicl::EstimateResult est =
                f_model == "exp-cond"
                    ? unicl::mcle_scalar(*model, w, data)
                    : unicl::mcle_lognorm(*model, w, data, {}, f_null_c0);
            json j;
            j["model"] = f_model;
            j["params"] = est.theta_hat;
            j["logcl"] = est.logcl_at_max;
            j["converged"] = est.converged;
            j["iterations"] = est.iterations;
            emit(j, "");
        } else if (*cmd_confint) {
            const auto model = unicl::make_model(ci_model);
            const auto data = unicl::load_dataset_csv(ci_data, 2);
            const auto w = unicl::WeightScheme::all_conditionals(model->dim(), 0.5);
            const auto ss = make_split(data, cmd_confint->count("--seed") > 0, ci_seed);
            const auto est1 = unicl::mcle_scalar(*model, w, ss.part1, {}, unicl::SamplePart::part1);
            const auto est2 = unicl::mcle_scalar(*model, w, ss.part2, {}, unicl::SamplePart::part2);
            const auto method = ci_method == "split" ? unicl::Method::split : unicl::Method::swap;
            const auto set = unicl::confidence_set_1d(*model, w, ss, ci_alpha, {est1, est2}, method);
            emit(unicl::to_json(set), "");
        } else if (*cmd_test) {
            const auto model = unicl::make_model(t_model);
            const auto data = unicl::load_dataset_csv(t_data, 2);
            const auto w = unicl::WeightScheme::all_conditionals(model->dim(), 0.5);
            const auto ss = make_split(data, cmd_test->count("--seed") > 0, t_seed);
            std::pair<unicl::EstimateResult, unicl::EstimateResult> nulls{
                unicl::mcle_lognorm(*model, w, ss.part1, {}, true, unicl::SamplePart::part1),
                unicl::mcle_lognorm(*model, w, ss.part2, {}, true, unicl::SamplePart::part2)};
            std::pair<unicl::EstimateResult, unicl::EstimateResult> frees{
                unicl::mcle_lognorm(*model, w, ss.part1, {}, false, unicl::SamplePart::part1),
                unicl::mcle_lognorm(*model, w, ss.part2, {}, false, unicl::SamplePart::part2)};
            const auto method = t_method == "split" ? unicl::Method::split : unicl::Method::swap;
            const auto result = unicl::clr_test(*model, w, ss, t_alpha, nulls, frees, method);
            emit(unicl::to_json(result), "");
        } else if (*cmd_cov || *cmd_pow) {
            const bool cov = static_cast<bool>(*cmd_cov);
            const std::string& cfg_path = cov ? cov_config : pow_config;
            const std::string& out_path = cov ? cov_out : pow_out;
            const int threads = cov ? cov_threads : pow_threads;
            std::ifstream in(cfg_path);
            if (!in) throw unicl::DataFormatError("cannot open config '" + cfg_path + "'");
            const json cfg_json = json::parse(in);
            unicl::ExperimentReport report;
            if (cov) {
                auto cfg = unicl::coverage_config_from_json(cfg_json);
                if (threads >= 0) cfg.threads = threads;
                report = unicl::run_coverage(cfg);
            } else {
                auto cfg = unicl::power_config_from_json(cfg_json);
                if (threads >= 0) cfg.threads = threads;
                report = unicl::run_power(cfg);
            }
            if (out_path.empty()) {
                unicl::write_report_csv(std::cout, report);
            } else {
                std::ofstream out(out_path);
                if (!out)
                    throw unicl::DataFormatError("cannot open '" + out_path + "' for writing");
                unicl::write_report_csv(out, report);
            }
        }
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
