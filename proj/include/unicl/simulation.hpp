#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "unicl/inference.hpp"

#include <nlohmann/json_fwd.hpp>

namespace unicl {

/// Coverage/size sweep over a grid of true parameters and half-sizes
/// (n2 = n1), with r seeded replicates per cell.
struct CoverageConfig {
    std::string model_id = "exp-cond";
    std::vector<double> theta0_grid;
    std::vector<std::size_t> n1_grid;
    double alpha = 0.05;
    int reps = 100;
    std::uint64_t base_seed = 0;
    std::vector<Method> methods = {Method::split, Method::swap};
    int threads = 0; // 0 = hardware concurrency
};

/// Rejection-proportion sweep for the test of c = 0 in the log-normal
/// model: the DGP pins theta0 except for the scanned dependence coordinate.
struct PowerConfig {
    std::string model_id = "lognorm-cond";
    std::vector<double> theta0_base = {2.0, 1.0, 2.0, 1.0, 0.0};
    int null_coord = 5;       // 1-based; only c (coordinate 5) is supported
    double null_value = 0.0;  // only 0 is supported
    std::vector<double> c0_grid;
    std::vector<std::size_t> n1_grid;
    double alpha = 0.05;
    int reps = 100;
    std::uint64_t base_seed = 0;
    std::vector<Method> methods = {Method::split, Method::swap};
    int threads = 0;
};

struct ReportRow {
    std::string method; // "split" or "swap"
    double param;       // theta0 or c0
    std::size_t n1;
    std::string metric; // "cp", "as" or "reject"
    double value;
    int reps;
    int excluded; // unbounded sets (coverage) or unconverged fits (power)
};

/// One replicate's outcome for one method, kept for diagnostics and the
/// seed-isolation tests; not part of the CSV.
struct ReplicateOutcome {
    bool covered = false;
    double diameter = 0.0;
    bool unbounded = false;
    bool rejected = false;
    bool converged = true;
    double log_statistic = 0.0;
};

struct CellDetail {
    std::string method;
    double param;
    std::size_t n1;
    std::vector<ReplicateOutcome> reps;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::vector<CellDetail> details;
    double wall_seconds = 0.0; // not serialized; reports are byte-stable
};

ExperimentReport run_coverage(const CoverageConfig& cfg);
ExperimentReport run_power(const PowerConfig& cfg);

/// CSV with header `method,param,n1,metric,value,reps,excluded`; values at
/// 6 significant digits. Byte-identical for identical configs.
void write_report_csv(std::ostream& out, const ExperimentReport& report);

CoverageConfig coverage_config_from_json(const nlohmann::json& j);
PowerConfig power_config_from_json(const nlohmann::json& j);

} // namespace unicl
