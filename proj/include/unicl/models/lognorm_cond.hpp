#pragma once

#include <limits>

#include "unicl/model.hpp"

namespace unicl {

/// Parameters of the bivariate log-normal-conditionals model, in file order
/// [mu1, s1sq, mu2, s2sq, c]. Writing z_k = (log x_k - mu_k)/sigma_k, the
/// joint density on (0,inf)^2 is
///   kappa(c)/(2 pi sigma1 sigma2 x1 x2) * exp{-(z1^2 + z2^2 + c z1^2 z2^2)/2},
/// and each conditional X_k | X_{3-k} is log-normal with location mu_k and
/// squared scale s_ksq / (1 + c z_{3-k}^2).
struct LogNormCondParams {
    double mu1 = 0.0;
    double s1sq = 1.0;
    double mu2 = 0.0;
    double s2sq = 1.0;
    double c = 0.0;

    static LogNormCondParams from_vector(std::span<const double> v);
    std::vector<double> to_vector() const { return {mu1, s1sq, mu2, s2sq, c}; }
};

/// log of f_LN(x; mu, s2) = (x sqrt(2 pi s2))^{-1} exp{-(log x - mu)^2/(2 s2)}.
double lognorm_logpdf(double x, double mu, double s2);

/// Conditional log-density of coordinate k given the other one.
double lognorm_conditional_logpdf(int k, double x1, double x2, const LogNormCondParams& p);

/// Normalizing constant kappa(c) = sqrt(2c) / U(1/2, 1, 1/(2c)) where U is
/// the confluent hypergeometric function, evaluated through its integral
/// representation. Substituting t = 2c v^2 in that representation gives the
/// numerically stable form used here,
///   kappa(c) = sqrt(pi) / (2 * integral_0^inf exp(-v^2) (1 + 2c v^2)^{-1/2} dv),
/// valid for all c > 0. Relative accuracy ~1e-7 or better.
double lognorm_kappa(double c);

/// Joint log-density; c = 0 is the independent log-normal case and never
/// routes through kappa.
double lognorm_joint_logpdf(double x1, double x2, const LogNormCondParams& p);

/// Exact IID draws in standardized coordinates: propose Z ~ N(0,1), accept
/// with probability (1 + c Z^2)^{-1/2}, draw the partner from
/// N(0, 1/(1 + c Z^2)), and map through x_k = exp(mu_k + sigma_k z_k).
/// A fair coin decides which coordinate plays the proposal role.
Dataset lognorm_sample(const LogNormCondParams& p, std::size_t count, Rng& rng);

class LogNormCondModel final : public ConditionalModel {
public:
    const std::string& id() const override { return id_; }
    int dim() const override { return 2; }
    int param_dim() const override { return 5; }
    const std::vector<ParamBounds>& param_space() const override { return space_; }

    /// Marginals are tractable once kappa(c) is known: both singletons and
    /// the full joint are implemented (via quadrature for c > 0).
    bool has_marginal(const SubsetIndex& s) const override;
    double log_marginal(const SubsetIndex& s, std::span<const double> x_sub,
                        std::span<const double> theta) const override;
    double log_conditional(const DivisionIndex& t, std::span<const double> x,
                           std::span<const double> theta) const override;
    Dataset sample(std::span<const double> theta, std::size_t count, Rng& rng) const override;

private:
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    // The variance bounds use the smallest positive double as a stand-in
    // for the open constraint s^2 > 0.
    static constexpr double kPosMin = std::numeric_limits<double>::min();
    std::string id_ = "lognorm-cond";
    std::vector<ParamBounds> space_{
        {-kInf, kInf}, {kPosMin, kInf}, {-kInf, kInf}, {kPosMin, kInf}, {0.0, kInf}};
};

} // namespace unicl
