#include "unicl/simulation.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "unicl/csv.hpp"
#include "unicl/errors.hpp"
#include "unicl/estimation.hpp"

namespace unicl {

namespace {

/// Run fn(0..count) across a fixed-size worker pool. Work items are
/// independent; callers aggregate results in index order afterwards. The
/// first exception thrown by a work item stops the pool and is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, count == 0 ? 1 : static_cast<unsigned>(count));
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    next.store(count); // drain remaining work
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::uint64_t replicate_seed(std::uint64_t base, double cell_param, std::size_t n1, int rep) {
    return mix_seed({base, std::bit_cast<std::uint64_t>(cell_param),
                     static_cast<std::uint64_t>(n1), static_cast<std::uint64_t>(rep)});
}

const char* method_name(Method m) { return m == Method::split ? "split" : "swap"; }

std::vector<Method> methods_from_json(const nlohmann::json& j) {
    std::vector<Method> out;
    for (const auto& m : j) {
        const std::string s = m.get<std::string>();
        if (s == "split")
            out.push_back(Method::split);
        else if (s == "swap")
            out.push_back(Method::swap);
        else
            throw std::invalid_argument("unknown method '" + s + "' (expected split|swap)");
    }
    if (out.empty()) throw std::invalid_argument("methods must be nonempty");
    return out;
}

void check_common(double alpha, int reps) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
}

} // namespace

ExperimentReport run_coverage(const CoverageConfig& cfg) {
    check_common(cfg.alpha, cfg.reps);
    const auto model = make_model(cfg.model_id);
    if (model->param_dim() != 1)
        throw std::invalid_argument("run_coverage: model must have a scalar parameter");
    if (cfg.theta0_grid.empty() || cfg.n1_grid.empty())
        throw std::invalid_argument("run_coverage: empty grid");
    for (const double th : cfg.theta0_grid) {
        const double t0[1] = {th};
        model->require_theta(t0);
    }
    for (const std::size_t n1 : cfg.n1_grid)
        if (n1 < 1) throw std::invalid_argument("run_coverage: n1 must be >= 1");
    const WeightScheme w = WeightScheme::all_conditionals(model->dim(), 0.5);

    const auto t_start = std::chrono::steady_clock::now();
    ExperimentReport report;
    for (const double theta0 : cfg.theta0_grid) {
        for (const std::size_t n1 : cfg.n1_grid) {
            std::vector<std::vector<ReplicateOutcome>> out(
                cfg.methods.size(), std::vector<ReplicateOutcome>(cfg.reps));
            parallel_for(static_cast<std::size_t>(cfg.reps), cfg.threads, [&](std::size_t j) {
                Rng rng(replicate_seed(cfg.base_seed, theta0, n1, static_cast<int>(j)));
                const double t0[1] = {theta0};
                const Dataset data = model->sample(t0, 2 * n1, rng);
                const SplitSample ss = split(data, SplitRule::first_half);
                const auto est1 = mcle_scalar(*model, w, ss.part1, {}, SamplePart::part1);
                const auto est2 = mcle_scalar(*model, w, ss.part2, {}, SamplePart::part2);
                const auto estimates = std::make_pair(est1, est2);
                for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
                    ReplicateOutcome& o = out[m][j];
                    o.covered = member(*model, w, ss, cfg.alpha, estimates, cfg.methods[m], t0);
                    const ConfidenceSet1D set =
                        confidence_set_1d(*model, w, ss, cfg.alpha, estimates, cfg.methods[m]);
                    o.diameter = set.diameter;
                    o.unbounded = set.unbounded;
                    o.converged = est1.converged && est2.converged;
                }
            });
            for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
                int covered = 0, excluded = 0;
                double diam_sum = 0.0;
                for (const ReplicateOutcome& o : out[m]) {
                    covered += o.covered ? 1 : 0;
                    if (o.unbounded)
                        ++excluded;
                    else
                        diam_sum += o.diameter;
                }
                const int included = cfg.reps - excluded;
                const double cp = double(covered) / double(cfg.reps);
                const double as = included > 0 ? diam_sum / double(included) : 0.0;
                const std::string name = method_name(cfg.methods[m]);
                report.rows.push_back({name, theta0, n1, "cp", cp, cfg.reps, excluded});
                report.rows.push_back({name, theta0, n1, "as", as, cfg.reps, excluded});
                report.details.push_back({name, theta0, n1, std::move(out[m])});
            }
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

ExperimentReport run_power(const PowerConfig& cfg) {
    check_common(cfg.alpha, cfg.reps);
    const auto model = make_model(cfg.model_id);
    if (cfg.model_id != "lognorm-cond" || cfg.null_coord != 5 || cfg.null_value != 0.0)
        throw std::invalid_argument(
            "run_power: only the c = 0 null of the lognorm-cond model is supported");
    if (cfg.theta0_base.size() != 5)
        throw std::invalid_argument("run_power: theta0_base must have 5 coordinates");
    if (cfg.c0_grid.empty() || cfg.n1_grid.empty())
        throw std::invalid_argument("run_power: empty grid");
    for (const double c0 : cfg.c0_grid) {
        std::vector<double> theta0 = cfg.theta0_base;
        theta0[4] = c0;
        model->require_theta(theta0);
    }
    for (const std::size_t n1 : cfg.n1_grid)
        if (n1 < 3) throw std::invalid_argument("run_power: n1 must be >= 3 for the 5-parameter fit");
    const WeightScheme w = WeightScheme::all_conditionals(model->dim(), 0.5);

    const auto t_start = std::chrono::steady_clock::now();
    ExperimentReport report;
    for (const double c0 : cfg.c0_grid) {
        for (const std::size_t n1 : cfg.n1_grid) {
            std::vector<std::vector<ReplicateOutcome>> out(
                cfg.methods.size(), std::vector<ReplicateOutcome>(cfg.reps));
            parallel_for(static_cast<std::size_t>(cfg.reps), cfg.threads, [&](std::size_t j) {
                Rng rng(replicate_seed(cfg.base_seed, c0, n1, static_cast<int>(j)));
                std::vector<double> theta0 = cfg.theta0_base;
                theta0[4] = c0;
                const Dataset data = model->sample(theta0, 2 * n1, rng);
                const SplitSample ss = split(data, SplitRule::first_half);

                bool fits_ok = true;
                std::pair<EstimateResult, EstimateResult> nulls, frees;
                try {
                    nulls.first = mcle_lognorm(*model, w, ss.part1, {}, true, SamplePart::part1);
                    nulls.second = mcle_lognorm(*model, w, ss.part2, {}, true, SamplePart::part2);
                    OptimizerSettings settings;
                    const auto fit_free = [&](const Dataset& part, SamplePart src) {
                        EstimateResult e = mcle_lognorm(*model, w, part, settings, false, src);
                        if (!e.converged) {
                            // one retry with a longer multi-start schedule
                            OptimizerSettings retry = settings;
                            retry.restarts = settings.restarts + 2;
                            e = mcle_lognorm(*model, w, part, retry, false, src);
                        }
                        return e;
                    };
                    frees.first = fit_free(ss.part1, SamplePart::part1);
                    frees.second = fit_free(ss.part2, SamplePart::part2);
                    fits_ok = frees.first.converged && frees.second.converged;
                } catch (const DegenerateDataError&) {
                    fits_ok = false;
                }
                for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
                    ReplicateOutcome& o = out[m][j];
                    o.converged = fits_ok;
                    if (!fits_ok) {
                        o.rejected = false; // conservative: never reject on a failed fit
                        continue;
                    }
                    const TestResult t =
                        clr_test(*model, w, ss, cfg.alpha, nulls, frees, cfg.methods[m]);
                    o.rejected = t.reject;
                    o.log_statistic = t.statistic_log;
                }
            });
            for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
                int rejected = 0, failed = 0;
                for (const ReplicateOutcome& o : out[m]) {
                    rejected += o.rejected ? 1 : 0;
                    failed += o.converged ? 0 : 1;
                }
                const double prop = double(rejected) / double(cfg.reps);
                const std::string name = method_name(cfg.methods[m]);
                report.rows.push_back({name, c0, n1, "reject", prop, cfg.reps, failed});
                report.details.push_back({name, c0, n1, std::move(out[m])});
            }
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
    out << "method,param,n1,metric,value,reps,excluded\n";
    for (const ReportRow& r : report.rows) {
        out << r.method << ',' << format_sig(r.param, 6) << ',' << r.n1 << ',' << r.metric << ','
            << format_sig(r.value, 6) << ',' << r.reps << ',' << r.excluded << '\n';
    }
}

CoverageConfig coverage_config_from_json(const nlohmann::json& j) {
    CoverageConfig cfg;
    cfg.model_id = j.value("model", cfg.model_id);
    for (const auto& v : j.at("theta0_grid")) {
        if (v.is_array()) {
            if (v.size() != 1)
                throw std::invalid_argument("theta0_grid entries must be scalars");
            cfg.theta0_grid.push_back(v[0].get<double>());
        } else {
            cfg.theta0_grid.push_back(v.get<double>());
        }
    }
    cfg.n1_grid = j.at("n1_grid").get<std::vector<std::size_t>>();
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.reps = j.value("reps", cfg.reps);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    if (j.contains("methods")) cfg.methods = methods_from_json(j.at("methods"));
    cfg.threads = j.value("threads", cfg.threads);
    return cfg;
}

PowerConfig power_config_from_json(const nlohmann::json& j) {
    PowerConfig cfg;
    cfg.model_id = j.value("model", cfg.model_id);
    if (j.contains("theta0_base")) cfg.theta0_base = j.at("theta0_base").get<std::vector<double>>();
    cfg.null_coord = j.value("null_coord", cfg.null_coord);
    cfg.null_value = j.value("null_value", cfg.null_value);
    cfg.c0_grid = j.at("c0_grid").get<std::vector<double>>();
    cfg.n1_grid = j.at("n1_grid").get<std::vector<std::size_t>>();
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.reps = j.value("reps", cfg.reps);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    if (j.contains("methods")) cfg.methods = methods_from_json(j.at("methods"));
    cfg.threads = j.value("threads", cfg.threads);
    return cfg;
}

} // namespace unicl
