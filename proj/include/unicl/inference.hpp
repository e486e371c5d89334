#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "unicl/cl_eval.hpp"
#include "unicl/estimation.hpp"
#include "unicl/model.hpp"

#include <nlohmann/json_fwd.hpp>

namespace unicl {

enum class SplitRule { first_half, random };

/// A dataset cut into two halves, with the rule and seed that produced the
/// cut recorded. With an odd row count part1 receives the extra row.
struct SplitSample {
    Dataset part1;
    Dataset part2;
    SplitRule rule = SplitRule::first_half;
    std::uint64_t seed = 0;

    std::size_t n1() const { return part1.rows(); }
    std::size_t n2() const { return part2.rows(); }
};

SplitSample split(const Dataset& data, SplitRule rule, std::uint64_t seed = 0);

enum class Method { split, swap };
enum class StatKind { split1, split2, swap };

/// Log-domain value of one of the CL ratio statistics at a queried
/// parameter, with the threshold it is compared against.
struct LogRatioStatistic {
    StatKind kind;
    double log_value;
    std::vector<double> theta_query;
    double alpha_threshold_log; // -log(alpha)
};

/// log of U_k at theta: the part-k composite log-likelihood at the estimate
/// from the opposite half minus the one at theta. A -inf denominator yields
/// +inf. Throws ProvenanceError unless estimate_other is tagged as coming
/// from part 3-k.
double log_u_split(const ConditionalModel& model, const WeightScheme& w, const SplitSample& ss,
                   int k, const EstimateResult& estimate_other, std::span<const double> theta);

/// log of the swapped statistic: logsumexp(log_u1, log_u2) - log 2,
/// overflow-safe for inputs of any magnitude.
double log_u_swap(double log_u1, double log_u2);

/// Evaluate a statistic of the given kind at theta. estimates holds the
/// part-1 and part-2 plug-in estimates, in that order.
LogRatioStatistic log_ratio_statistic(const ConditionalModel& model, const WeightScheme& w,
                                      const SplitSample& ss,
                                      const std::pair<EstimateResult, EstimateResult>& estimates,
                                      StatKind kind, std::span<const double> theta, double alpha);

/// Membership test of theta in the level-alpha confidence set: true iff the
/// method's log statistic at theta is <= -log(alpha). Points outside the
/// parameter space are not members.
bool member(const ConditionalModel& model, const WeightScheme& w, const SplitSample& ss,
            double alpha, const std::pair<EstimateResult, EstimateResult>& estimates,
            Method method, std::span<const double> theta);

struct SearchSettings {
    double theta_max_init = 1.0;
    double bracket_growth = 2.0;
    int max_doublings = 60;
    int linear_grid = 96;     // linear grid points per scan
    double bisect_tol = 1e-6; // absolute endpoint tolerance
    double margin_log = 1.0;  // required exceedance over the threshold at the upper extreme
};

/// Scalar confidence set as a union of disjoint intervals in [0, inf).
/// diameter is max endpoint - min endpoint of the union (0 if empty,
/// +inf when the bracket search never found a rejected upper extreme).
struct ConfidenceSet1D {
    double alpha = 0.0;
    std::vector<std::array<double, 2>> intervals;
    double diameter = 0.0;
    Method method = Method::split;
    bool unbounded = false;
};

ConfidenceSet1D confidence_set_1d(const ConditionalModel& model, const WeightScheme& w,
                                  const SplitSample& ss, double alpha,
                                  const std::pair<EstimateResult, EstimateResult>& estimates,
                                  Method method, const SearchSettings& search = {});

struct TestResult {
    double statistic_log = 0.0;
    bool reject = false;
    double alpha = 0.0;
    Method method = Method::split;
    double e_value = 0.0; // exp(statistic_log); may overflow to +inf, the log is authoritative
};

/// Split / swap CL ratio test of a null region. null_maximizers are the
/// CL maximizers over the null on their own halves; free_estimates are the
/// unconstrained plug-ins, each evaluated on the opposite half. Rejects
/// when the statistic is >= 1/alpha (log-domain comparison).
TestResult clr_test(const ConditionalModel& model, const WeightScheme& w, const SplitSample& ss,
                    double alpha,
                    const std::pair<EstimateResult, EstimateResult>& null_maximizers,
                    const std::pair<EstimateResult, EstimateResult>& free_estimates,
                    Method method);

nlohmann::json to_json(const ConfidenceSet1D& set);
nlohmann::json to_json(const TestResult& result);

} // namespace unicl
