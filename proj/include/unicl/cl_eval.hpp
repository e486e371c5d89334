#pragma once

#include <span>

#include "unicl/dataset.hpp"
#include "unicl/index_sets.hpp"
#include "unicl/model.hpp"

namespace unicl {

/// Weighted individual composite log-density at a single observation:
/// sum over subsets of (sigma_S / upsilon) * log p(x_S; theta) plus sum over
/// divisions of (tau_T / upsilon) * log p(x_left | x_right; theta).
///
/// Zero-weight terms are skipped without touching the model, so a model may
/// leave marginals unimplemented under a conditional-only scheme. Returns
/// -inf off-support; throws CapabilityError if a positively weighted
/// marginal is unsupported.
double icl_log_density(const ConditionalModel& model, const WeightScheme& w,
                       std::span<const double> x, std::span<const double> theta);

/// Composite log-likelihood of a dataset: the row-wise sum of ICL
/// log-densities, computed entirely in the log domain.
double cl_log_likelihood(const ConditionalModel& model, const WeightScheme& w,
                         const Dataset& data, std::span<const double> theta);

} // namespace unicl
