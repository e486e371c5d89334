#pragma once

#include <vector>

#include "unicl/cl_eval.hpp"
#include "unicl/model.hpp"

namespace unicl {

struct OptimizerSettings {
    double rel_tol = 1e-8;
    int max_iters = 500;
    int restarts = 3;
    double bracket_growth = 4.0;
};

/// Which half of a split sample produced an estimate. Inference statistics
/// check this tag: validity requires the plug-in parameter to be
/// independent of the half it is evaluated on.
enum class SamplePart { unspecified, part1, part2 };

struct EstimateResult {
    std::vector<double> theta_hat;
    double logcl_at_max = 0.0;
    bool converged = false;
    int iterations = 0;
    SamplePart source = SamplePart::unspecified;
};

/// Wrap an arbitrary plug-in parameter value (any estimator, or none) with
/// a declared provenance. The caller asserts the value was produced without
/// looking at the other half.
EstimateResult external_estimate(std::vector<double> theta, SamplePart source);

/// Maximum composite likelihood estimate for a scalar parameter on
/// [0, inf): bracket expansion from [0, 1] by bracket_growth, then
/// golden-section refinement to rel_tol. Non-convergence is flagged on the
/// result, not thrown.
EstimateResult mcle_scalar(const ConditionalModel& model, const WeightScheme& w,
                           const Dataset& data, const OptimizerSettings& settings = {},
                           SamplePart source = SamplePart::unspecified);

/// Maximum composite likelihood estimate for the log-normal-conditionals
/// model. With fix_c_to_zero the maximizer is closed-form (per-coordinate
/// Gaussian fit of the log data with divisor n, c = 0). Otherwise a
/// multi-start Nelder-Mead search runs in transformed coordinates
/// (log-variances, log(c + 1e-10)), and the exact c = 0 boundary candidate
/// is always evaluated and kept if better.
EstimateResult mcle_lognorm(const ConditionalModel& model, const WeightScheme& w,
                            const Dataset& data, const OptimizerSettings& settings = {},
                            bool fix_c_to_zero = false,
                            SamplePart source = SamplePart::unspecified);

} // namespace unicl
