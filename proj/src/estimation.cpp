#include "unicl/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "unicl/errors.hpp"
#include "unicl/models/lognorm_cond.hpp"

namespace unicl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.61803398874989484820; // (sqrt(5) - 1) / 2

struct GoldenResult {
    double x;
    double fx;
    bool converged;
    int evals;
};

/// Maximize a unimodal f on [lo, hi] by golden-section search.
GoldenResult golden_max(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol, int max_iters) {
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int evals = 2;
    bool converged = false;
    while (evals < max_iters) {
        if (b - a <= rel_tol * (1.0 + 0.5 * std::abs(a + b))) {
            converged = true;
            break;
        }
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
        ++evals;
    }
    const double xm = (f1 >= f2) ? x1 : x2;
    const double fm = std::max(f1, f2);
    return {xm, fm, converged, evals};
}

// ---------------------------------------------------------------------------
// Nelder-Mead, used for the 5-parameter log-normal fit.

struct SimplexResult {
    std::vector<double> x;
    double fx;
    bool converged;
    int iterations;
};

SimplexResult nelder_mead_max(const std::function<double(std::span<const double>)>& f,
                              std::span<const double> start, std::span<const double> step,
                              double rel_tol, int max_iters) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> pts(n + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    int iter = 0;
    bool converged = false;
    while (iter < max_iters) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] > fv[b]; });
        const std::size_t best = order[0], worst = order[n];
        if (fv[best] - fv[worst] <= rel_tol * (std::abs(fv[best]) + 1e-10)) {
            converged = true;
            break;
        }
        ++iter;
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[order[r]][i] / double(n);

        auto blend = [&](std::vector<double>& out, double coef) {
            for (std::size_t i = 0; i < n; ++i)
                out[i] = centroid[i] + coef * (pts[worst][i] - centroid[i]);
        };
        blend(trial, -1.0); // reflection
        const double fr = f(trial);
        if (fr > fv[order[0]]) {
            blend(trial2, -2.0); // expansion
            const double fe = f(trial2);
            if (fe > fr) {
                pts[worst] = trial2;
                fv[worst] = fe;
            } else {
                pts[worst] = trial;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr > fv[order[n - 1]]) {
            pts[worst] = trial;
            fv[worst] = fr;
            continue;
        }
        blend(trial, 0.5); // contraction toward the better side
        const double fc = f(trial);
        if (fc > fv[worst]) {
            pts[worst] = trial;
            fv[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t r = 1; r <= n; ++r) {
            const std::size_t idx = order[r];
            for (std::size_t i = 0; i < n; ++i)
                pts[idx][i] = pts[order[0]][i] + 0.5 * (pts[idx][i] - pts[order[0]][i]);
            fv[idx] = f(pts[idx]);
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] > fv[best]) best = i;
    return {pts[best], fv[best], converged, iter};
}

// ---------------------------------------------------------------------------
// Fast conditional-only objective for the log-normal model. Equal in value
// to cl_log_likelihood with the same weights (covered by tests); it only
// avoids re-taking logs of the data at every parameter query.

struct CondOnlyExponents {
    double e12; // exponent on p(x1 | x2)
    double e21; // exponent on p(x2 | x1)
};

/// Exponents of the two conditional factors if w is conditional-only over
/// the singleton divisions of [2]; nullopt-like flag otherwise.
bool conditional_only_exponents(const WeightScheme& w, CondOnlyExponents& out) {
    if (w.d != 2) return false;
    for (const auto& [s, v] : w.sigma)
        if (v != 0.0) return false;
    const double upsilon = total_weight(w);
    out = {0.0, 0.0};
    for (const auto& [t, v] : w.tau) {
        if (v == 0.0) continue;
        if (t.left().size() != 1 || t.right().size() != 1) return false;
        if (t.left().members()[0] == 1)
            out.e12 += v / upsilon;
        else
            out.e21 += v / upsilon;
    }
    return true;
}

struct LogColumns {
    std::vector<double> lx1, lx2;
    double n = 0.0;
};

LogColumns take_logs(const Dataset& data) {
    LogColumns lc;
    const std::size_t n = data.rows();
    lc.lx1.resize(n);
    lc.lx2.resize(n);
    lc.n = double(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(data(i, 0) > 0.0) || !(data(i, 1) > 0.0))
            throw std::invalid_argument("lognorm fit: data must be strictly positive");
        lc.lx1[i] = std::log(data(i, 0));
        lc.lx2[i] = std::log(data(i, 1));
    }
    return lc;
}

double lognorm_cond_logcl(const LogColumns& lc, const CondOnlyExponents& e,
                          const LogNormCondParams& p) {
    if (!std::isfinite(p.mu1) || !std::isfinite(p.mu2) || !std::isfinite(p.s1sq) ||
        !std::isfinite(p.s2sq) || !std::isfinite(p.c) || !(p.s1sq > 0.0) || !(p.s2sq > 0.0) ||
        p.c < 0.0)
        return kNegInf;
    const double inv_s1 = 1.0 / std::sqrt(p.s1sq), inv_s2 = 1.0 / std::sqrt(p.s2sq);
    const double log2pi = 1.8378770664093454835606594728112;
    const double const12 = -0.5 * (log2pi + std::log(p.s1sq));
    const double const21 = -0.5 * (log2pi + std::log(p.s2sq));
    double acc = 0.0;
    const std::size_t n = lc.lx1.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = (lc.lx1[i] - p.mu1) * inv_s1;
        const double z2 = (lc.lx2[i] - p.mu2) * inv_s2;
        const double t2 = 1.0 + p.c * z2 * z2; // shrink factor for x1 | x2
        const double t1 = 1.0 + p.c * z1 * z1;
        const double lp12 = -lc.lx1[i] + const12 + 0.5 * std::log(t2) - 0.5 * z1 * z1 * t2;
        const double lp21 = -lc.lx2[i] + const21 + 0.5 * std::log(t1) - 0.5 * z2 * z2 * t1;
        acc += e.e12 * lp12 + e.e21 * lp21;
    }
    return acc;
}

} // namespace

EstimateResult external_estimate(std::vector<double> theta, SamplePart source) {
    EstimateResult r;
    r.theta_hat = std::move(theta);
    r.logcl_at_max = std::numeric_limits<double>::quiet_NaN();
    r.converged = false; // not a fitted result
    r.iterations = 0;
    r.source = source;
    return r;
}

EstimateResult mcle_scalar(const ConditionalModel& model, const WeightScheme& w,
                           const Dataset& data, const OptimizerSettings& settings,
                           SamplePart source) {
    if (model.param_dim() != 1)
        throw std::invalid_argument("mcle_scalar: model parameter must be scalar");
    const auto f = [&](double theta) {
        const double t[1] = {theta};
        return cl_log_likelihood(model, w, data, t);
    };

    // Bracket the maximum starting from [0, 1].
    int evals = 2;
    double lo = 0.0, hi = 1.0;
    double flo = f(lo), fhi = f(hi);
    bool bracketed = true;
    if (fhi > flo) {
        double a = lo, b = hi, fb = fhi;
        for (;;) {
            const double c = b * settings.bracket_growth;
            const double fc = f(c);
            ++evals;
            if (fc <= fb) {
                lo = a;
                hi = c;
                break;
            }
            a = b;
            b = c;
            fb = fc;
            if (evals >= settings.max_iters || c > 1e12) {
                lo = a;
                hi = c;
                bracketed = false;
                break;
            }
        }
    }

    const GoldenResult g =
        golden_max(f, lo, hi, settings.rel_tol, settings.max_iters - evals);
    EstimateResult r;
    r.theta_hat = {std::max(0.0, g.x)};
    r.logcl_at_max = g.fx;
    r.converged = bracketed && g.converged && std::isfinite(g.fx);
    r.iterations = evals + g.evals;
    r.source = source;
    return r;
}

EstimateResult mcle_lognorm(const ConditionalModel& model, const WeightScheme& w,
                            const Dataset& data, const OptimizerSettings& settings,
                            bool fix_c_to_zero, SamplePart source) {
    if (model.id() != "lognorm-cond")
        throw std::invalid_argument("mcle_lognorm: expects the lognorm-cond model");
    if (data.rows() < (fix_c_to_zero ? std::size_t{2} : std::size_t{3}))
        throw std::invalid_argument("mcle_lognorm: too few rows");
    const LogColumns lc = take_logs(data);

    // Closed-form null maximizer: per-coordinate Gaussian fit of the log
    // data (divisor n) with c = 0. At c = 0 every conditional and marginal
    // factor is the plain log-normal, so this maximizes the CL restricted
    // to the null slice for any valid weight scheme.
    auto moments = [](const std::vector<double>& v) {
        const double n = double(v.size());
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return std::pair<double, double>{mean, ss / n};
    };
    const auto [mu1, s1sq] = moments(lc.lx1);
    const auto [mu2, s2sq] = moments(lc.lx2);
    if (!(s1sq > 0.0) || !(s2sq > 0.0))
        throw DegenerateDataError("mcle_lognorm: a log-column is constant");

    CondOnlyExponents exps{};
    const bool fast = conditional_only_exponents(w, exps);
    const auto objective = [&](const LogNormCondParams& p) {
        if (fast) return lognorm_cond_logcl(lc, exps, p);
        const auto v = p.to_vector();
        if (!model.in_param_space(v)) return kNegInf;
        return cl_log_likelihood(model, w, data, v);
    };

    const LogNormCondParams null_params{mu1, s1sq, mu2, s2sq, 0.0};
    const double null_logcl = objective(null_params);

    EstimateResult r;
    r.source = source;
    if (fix_c_to_zero) {
        r.theta_hat = null_params.to_vector();
        r.logcl_at_max = null_logcl;
        r.converged = true;
        r.iterations = 0;
        return r;
    }

    // Transformed coordinates keep iterates feasible:
    //   y = [mu1, log s1sq, mu2, log s2sq, log(c + eps_c)].
    constexpr double kEpsC = 1e-10;
    const auto from_y = [&](std::span<const double> y) {
        LogNormCondParams p;
        p.mu1 = y[0];
        p.s1sq = std::exp(y[1]);
        p.mu2 = y[2];
        p.s2sq = std::exp(y[3]);
        p.c = std::max(0.0, std::exp(y[4]) - kEpsC);
        return p;
    };
    const auto fy = [&](std::span<const double> y) { return objective(from_y(y)); };

    // The exact c = 0 boundary candidate competes against every search run.
    LogNormCondParams best = null_params;
    double best_f = null_logcl;
    bool winner_converged = false;
    bool any_converged = false;
    int iterations = 0;
    const std::vector<double> step{0.1 * std::sqrt(s1sq), 0.2, 0.1 * std::sqrt(s2sq), 0.2, 0.7};
    for (int j = 0; j < settings.restarts; ++j) {
        const double c_start = 0.25 * std::pow(3.0, j); // 0.25, 0.75, 2.25, ...
        const std::vector<double> start{mu1, std::log(s1sq), mu2, std::log(s2sq),
                                        std::log(c_start + kEpsC)};
        const SimplexResult s =
            nelder_mead_max(fy, start, step, settings.rel_tol, settings.max_iters);
        iterations += s.iterations;
        any_converged = any_converged || s.converged;
        if (s.fx > best_f) {
            best = from_y(s.x);
            best_f = s.fx;
            winner_converged = s.converged;
        }
    }

    r.theta_hat = best.to_vector();
    r.logcl_at_max = best_f;
    // If the boundary won, convergence means the interior search settled too.
    r.converged = (best_f == null_logcl) ? any_converged : winner_converged;
    r.iterations = iterations;
    return r;
}

} // namespace unicl
