#include "unicl/models/lognorm_cond.hpp"

#include <cmath>
#include <numbers>

#include "unicl/quadrature.hpp"

namespace unicl {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112; // log(2*pi)
} // namespace

LogNormCondParams LogNormCondParams::from_vector(std::span<const double> v) {
    if (v.size() != 5)
        throw std::invalid_argument("lognorm-cond: expected 5 parameters [mu1,s1sq,mu2,s2sq,c]");
    return {v[0], v[1], v[2], v[3], v[4]};
}

double lognorm_logpdf(double x, double mu, double s2) {
    if (!(x > 0.0)) return kNegInf;
    const double lx = std::log(x);
    const double z2 = (lx - mu) * (lx - mu) / s2;
    return -lx - 0.5 * (kLog2Pi + std::log(s2)) - 0.5 * z2;
}

double lognorm_conditional_logpdf(int k, double x1, double x2, const LogNormCondParams& p) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("lognorm_conditional_logpdf: k must be 1 or 2");
    if (!(x1 > 0.0) || !(x2 > 0.0)) return kNegInf;
    const double target = (k == 1) ? x1 : x2;
    const double mu = (k == 1) ? p.mu1 : p.mu2;
    const double s2 = (k == 1) ? p.s1sq : p.s2sq;
    const double given = (k == 1) ? x2 : x1;
    const double mu_g = (k == 1) ? p.mu2 : p.mu1;
    const double s2_g = (k == 1) ? p.s2sq : p.s1sq;
    const double zg = (std::log(given) - mu_g) / std::sqrt(s2_g);
    return lognorm_logpdf(target, mu, s2 / (1.0 + p.c * zg * zg));
}

double lognorm_kappa(double c) {
    if (!(c > 0.0)) throw std::domain_error("lognorm_kappa: c must be strictly positive");
    const double denom = quad::integrate_half_line(
        [c](double v) { return std::exp(-v * v) / std::sqrt(1.0 + 2.0 * c * v * v); }, 0.0, 1.0);
    return std::sqrt(std::numbers::pi) / (2.0 * denom);
}

double lognorm_joint_logpdf(double x1, double x2, const LogNormCondParams& p) {
    if (!(x1 > 0.0) || !(x2 > 0.0)) return kNegInf;
    const double s1 = std::sqrt(p.s1sq), s2 = std::sqrt(p.s2sq);
    const double z1 = (std::log(x1) - p.mu1) / s1;
    const double z2 = (std::log(x2) - p.mu2) / s2;
    const double logk = (p.c == 0.0) ? 0.0 : std::log(lognorm_kappa(p.c));
    return logk - kLog2Pi - std::log(s1 * s2 * x1 * x2) -
           0.5 * (z1 * z1 + z2 * z2 + p.c * z1 * z1 * z2 * z2);
}

Dataset lognorm_sample(const LogNormCondParams& p, std::size_t count, Rng& rng) {
    if (count < 1) throw std::invalid_argument("lognorm_sample: count must be positive");
    const double s1 = std::sqrt(p.s1sq), s2 = std::sqrt(p.s2sq);
    Dataset out(count, 2);
    for (std::size_t i = 0; i < count; ++i) {
        double za;
        for (;;) {
            za = rng.normal();
            if (rng.uniform() < 1.0 / std::sqrt(1.0 + p.c * za * za)) break;
        }
        const double zb = rng.normal() / std::sqrt(1.0 + p.c * za * za);
        // Exchangeable construction: a coin assigns the proposal coordinate.
        const bool first = rng.coin();
        const double z1 = first ? za : zb;
        const double z2 = first ? zb : za;
        out(i, 0) = std::exp(p.mu1 + s1 * z1);
        out(i, 1) = std::exp(p.mu2 + s2 * z2);
    }
    return out;
}

bool LogNormCondModel::has_marginal(const SubsetIndex& s) const {
    return s.valid_for(2);
}

double LogNormCondModel::log_marginal(const SubsetIndex& s, std::span<const double> x_sub,
                                      std::span<const double> theta) const {
    const auto p = LogNormCondParams::from_vector(theta);
    if (!s.valid_for(2)) throw CapabilityError("lognorm-cond: subset out of range");
    if (s.size() == 2) return lognorm_joint_logpdf(x_sub[0], x_sub[1], p);
    const int k = s.members()[0];
    const double x = x_sub[0];
    if (!(x > 0.0)) return kNegInf;
    const double mu = (k == 1) ? p.mu1 : p.mu2;
    const double sd = std::sqrt((k == 1) ? p.s1sq : p.s2sq);
    const double z = (std::log(x) - mu) / sd;
    // Integrating the joint over the other coordinate leaves
    // kappa(c) * phi(z) / sqrt(1 + c z^2), transformed back to x.
    const double logk = (p.c == 0.0) ? 0.0 : std::log(lognorm_kappa(p.c));
    return logk - std::log(x * sd) - 0.5 * (kLog2Pi + z * z) -
           0.5 * std::log1p(p.c * z * z);
}

double LogNormCondModel::log_conditional(const DivisionIndex& t, std::span<const double> x,
                                         std::span<const double> theta) const {
    if (x.size() != 2)
        throw std::invalid_argument("lognorm-cond: expected a 2-vector observation");
    if (t.left().size() != 1 || t.right().size() != 1 || !t.valid_for(2))
        throw CapabilityError("lognorm-cond: only the two singleton conditionals are specified");
    const int k = t.left().members()[0];
    return lognorm_conditional_logpdf(k, x[0], x[1], LogNormCondParams::from_vector(theta));
}

Dataset LogNormCondModel::sample(std::span<const double> theta, std::size_t count,
                                 Rng& rng) const {
    require_theta(theta);
    return lognorm_sample(LogNormCondParams::from_vector(theta), count, rng);
}

} // namespace unicl
