#include "unicl/quadrature.hpp"

#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace unicl::quad {

namespace {
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt) {
    return GK::integrate(f, a, b, opt.max_depth, opt.rel_tol);
}

double integrate_half_line(const std::function<double(double)>& f, double a, double split_at,
                           const Options& opt) {
    if (split_at > a) {
        const double head = GK::integrate(f, a, split_at, opt.max_depth, opt.rel_tol);
        const double tail = GK::integrate(f, split_at, kInf, opt.max_depth, opt.rel_tol);
        return head + tail;
    }
    return GK::integrate(f, a, kInf, opt.max_depth, opt.rel_tol);
}

double integrate_real_line(const std::function<double(double)>& f, double split_at,
                           const Options& opt) {
    const double lo = GK::integrate(f, -kInf, split_at, opt.max_depth, opt.rel_tol);
    const double hi = GK::integrate(f, split_at, kInf, opt.max_depth, opt.rel_tol);
    return lo + hi;
}

} // namespace unicl::quad
