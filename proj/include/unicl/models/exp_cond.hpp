#pragma once

#include <limits>

#include "unicl/model.hpp"

namespace unicl {

/// Parameters of the bivariate exponential-conditionals model. The joint
/// density on (0,inf)^2 is kappa(theta) * exp(-x1 - x2 - theta*x1*x2) with
/// theta >= 0; each conditional X_k | X_{3-k} = x is Exponential with rate
/// 1 + theta*x.
struct ExpCondParams {
    double theta = 0.0;
};

/// log p(x_k | x_{3-k}; theta) = log(lambda) - lambda * x_k with
/// lambda = 1 + theta * x_{3-k}. Returns -inf off (0,inf)^2.
double exp_conditional_logpdf(int k, double x1, double x2, const ExpCondParams& p);

/// Normalizing constant of the joint density, by adaptive quadrature of the
/// exponential-integral denominator (relative accuracy ~1e-8 or better).
/// Requires theta > 0; the theta -> 0 limit is handled by the joint
/// log-density directly.
double exp_kappa(double theta);

/// Joint log-density; theta = 0 is the independent unit-exponential case
/// and never routes through kappa.
double exp_joint_logpdf(double x1, double x2, const ExpCondParams& p);

/// Exact IID draws by rejection: propose X1 ~ Exp(1), accept with
/// probability 1/(1 + theta*X1), then draw X2 ~ Exp(1 + theta*X1). The
/// accepted X1 has the model's marginal density, proportional to
/// exp(-x)/(1 + theta*x).
Dataset exp_sample(const ExpCondParams& p, std::size_t count, Rng& rng);

class ExpCondModel final : public ConditionalModel {
public:
    const std::string& id() const override { return id_; }
    int dim() const override { return 2; }
    int param_dim() const override { return 1; }
    const std::vector<ParamBounds>& param_space() const override { return space_; }

    // No marginals: the base-class CapabilityError stands. Conditional-only
    // weight schemes never ask for them.
    double log_conditional(const DivisionIndex& t, std::span<const double> x,
                           std::span<const double> theta) const override;
    Dataset sample(std::span<const double> theta, std::size_t count, Rng& rng) const override;

private:
    std::string id_ = "exp-cond";
    std::vector<ParamBounds> space_{{0.0, std::numeric_limits<double>::infinity()}};
};

} // namespace unicl
