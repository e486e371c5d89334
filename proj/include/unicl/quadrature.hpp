#pragma once

#include <functional>

namespace unicl::quad {

struct Options {
    double rel_tol = 1e-11;
    unsigned max_depth = 15;
};

/// Adaptive Gauss-Kronrod integral over a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

/// Integral over (a, inf). If split_at > a, the interval is split there
/// (put it at the integrand's mode) and the pieces are integrated
/// separately; absolute contributions below 1e-12 are accepted as-is.
double integrate_half_line(const std::function<double(double)>& f, double a,
                           double split_at = 0.0, const Options& opt = {});

/// Integral over the whole real line, split at the given interior point.
double integrate_real_line(const std::function<double(double)>& f, double split_at = 0.0,
                           const Options& opt = {});

} // namespace unicl::quad
