#include "unicl/models/exp_cond.hpp"

#include <cmath>
#include <limits>

#include "unicl/quadrature.hpp"

namespace unicl {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double exp_conditional_logpdf(int k, double x1, double x2, const ExpCondParams& p) {
    if (k != 1 && k != 2) throw std::invalid_argument("exp_conditional_logpdf: k must be 1 or 2");
    if (!(x1 > 0.0) || !(x2 > 0.0)) return kNegInf;
    const double target = (k == 1) ? x1 : x2;
    const double given = (k == 1) ? x2 : x1;
    const double lambda = 1.0 + p.theta * given;
    return std::log(lambda) - lambda * target;
}

double exp_kappa(double theta) {
    if (!(theta > 0.0)) throw std::domain_error("exp_kappa: theta must be strictly positive");
    // kappa = theta * exp(-a) / E1(a) with a = 1/theta. Shifting the E1
    // integrand by a cancels exp(-a), which would underflow for small theta:
    // kappa = theta / integral_0^inf exp(-s)/(a + s) ds.
    const double a = 1.0 / theta;
    const double denom = quad::integrate_half_line(
        [a](double s) { return std::exp(-s) / (a + s); }, 0.0, 1.0);
    return theta / denom;
}

double exp_joint_logpdf(double x1, double x2, const ExpCondParams& p) {
    if (!(x1 > 0.0) || !(x2 > 0.0)) return kNegInf;
    const double base = -x1 - x2 - p.theta * x1 * x2;
    if (p.theta == 0.0) return base; // kappa(0+) = 1
    return std::log(exp_kappa(p.theta)) + base;
}

Dataset exp_sample(const ExpCondParams& p, std::size_t count, Rng& rng) {
    if (count < 1) throw std::invalid_argument("exp_sample: count must be positive");
    Dataset out(count, 2);
    for (std::size_t i = 0; i < count; ++i) {
        double x1;
        for (;;) {
            x1 = rng.exponential(1.0);
            if (rng.uniform() < 1.0 / (1.0 + p.theta * x1)) break;
        }
        out(i, 0) = x1;
        out(i, 1) = rng.exponential(1.0 + p.theta * x1);
    }
    return out;
}

double ExpCondModel::log_conditional(const DivisionIndex& t, std::span<const double> x,
                                     std::span<const double> theta) const {
    if (x.size() != 2) throw std::invalid_argument("exp-cond: expected a 2-vector observation");
    if (t.left().size() != 1 || t.right().size() != 1 || !t.valid_for(2))
        throw CapabilityError("exp-cond: only the two singleton conditionals are specified");
    const int k = t.left().members()[0];
    return exp_conditional_logpdf(k, x[0], x[1], ExpCondParams{theta[0]});
}

Dataset ExpCondModel::sample(std::span<const double> theta, std::size_t count, Rng& rng) const {
    require_theta(theta);
    return exp_sample(ExpCondParams{theta[0]}, count, rng);
}

} // namespace unicl
