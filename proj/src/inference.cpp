#include "unicl/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "unicl/errors.hpp"
#include "unicl/rng.hpp"

namespace unicl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
}

void check_provenance(const EstimateResult& est, SamplePart required, const char* role) {
    if (est.source != required)
        throw ProvenanceError(std::string("estimate used as ") + role +
                              " was not computed from the required half");
}

/// Log CL ratio with the numerator precomputed; -inf denominator => +inf.
double ratio_from_parts(double log_numerator, double log_denominator) {
    if (log_denominator == -kInf) return kInf;
    return log_numerator - log_denominator;
}

/// Evaluator with the theta-independent numerators cached, so grid scans
/// and bisections only pay for the denominator CL at each queried theta.
class StatEvaluator {
public:
    StatEvaluator(const ConditionalModel& model, const WeightScheme& w, const SplitSample& ss,
                  const std::pair<EstimateResult, EstimateResult>& estimates, Method method)
        : model_(model), w_(w), ss_(ss), method_(method) {
        check_provenance(estimates.second, SamplePart::part2, "the part-1 numerator plug-in");
        num1_ = cl_log_likelihood(model, w, ss.part1, estimates.second.theta_hat);
        if (method_ == Method::swap) {
            check_provenance(estimates.first, SamplePart::part1, "the part-2 numerator plug-in");
            num2_ = cl_log_likelihood(model, w, ss.part2, estimates.first.theta_hat);
        }
    }

    double operator()(std::span<const double> theta) const {
        const double u1 = ratio_from_parts(num1_, cl_log_likelihood(model_, w_, ss_.part1, theta));
        if (method_ == Method::split) return u1;
        const double u2 = ratio_from_parts(num2_, cl_log_likelihood(model_, w_, ss_.part2, theta));
        return log_u_swap(u1, u2);
    }

private:
    const ConditionalModel& model_;
    const WeightScheme& w_;
    const SplitSample& ss_;
    Method method_;
    double num1_ = 0.0;
    double num2_ = 0.0;
};

} // namespace

SplitSample split(const Dataset& data, SplitRule rule, std::uint64_t seed) {
    const std::size_t n = data.rows();
    if (n < 2) throw std::invalid_argument("split: need at least two rows");
    const std::size_t n1 = (n + 1) / 2;
    SplitSample ss;
    ss.rule = rule;
    ss.seed = seed;
    if (rule == SplitRule::first_half) {
        ss.part1 = data.slice(0, n1);
        ss.part2 = data.slice(n1, n);
        return ss;
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
        std::swap(perm[i], perm[j]);
    }
    Dataset p1(n1, data.cols()), p2(n - n1, data.cols());
    for (std::size_t r = 0; r < n; ++r) {
        Dataset& dst = (r < n1) ? p1 : p2;
        const std::size_t dr = (r < n1) ? r : r - n1;
        for (std::size_t c = 0; c < data.cols(); ++c) dst(dr, c) = data(perm[r], c);
    }
    ss.part1 = std::move(p1);
    ss.part2 = std::move(p2);
    return ss;
}

double log_u_split(const ConditionalModel& model, const WeightScheme& w, const SplitSample& ss,
                   int k, const EstimateResult& estimate_other, std::span<const double> theta) {
    if (k != 1 && k != 2) throw std::invalid_argument("log_u_split: k must be 1 or 2");
    check_provenance(estimate_other, k == 1 ? SamplePart::part2 : SamplePart::part1,
                     "the numerator plug-in");
    const Dataset& part = (k == 1) ? ss.part1 : ss.part2;
    const double num = cl_log_likelihood(model, w, part, estimate_other.theta_hat);
    const double den = cl_log_likelihood(model, w, part, theta);
    return ratio_from_parts(num, den);
}

double log_u_swap(double log_u1, double log_u2) {
    if (log_u1 == kInf || log_u2 == kInf) return kInf;
    const double m = std::max(log_u1, log_u2);
    if (m == -kInf) return -kInf;
    const double other = std::min(log_u1, log_u2);
    const double tail = (other == -kInf) ? 0.0 : std::exp(other - m);
    return m + std::log1p(tail) - 0.6931471805599453;
}

LogRatioStatistic log_ratio_statistic(const ConditionalModel& model, const WeightScheme& w,
                                      const SplitSample& ss,
                                      const std::pair<EstimateResult, EstimateResult>& estimates,
                                      StatKind kind, std::span<const double> theta, double alpha) {
    check_alpha(alpha);
    LogRatioStatistic s;
    s.kind = kind;
    s.theta_query.assign(theta.begin(), theta.end());
    s.alpha_threshold_log = -std::log(alpha);
    switch (kind) {
    case StatKind::split1:
        s.log_value = log_u_split(model, w, ss, 1, estimates.second, theta);
        break;
    case StatKind::split2:
        s.log_value = log_u_split(model, w, ss, 2, estimates.first, theta);
        break;
    case StatKind::swap:
        s.log_value = log_u_swap(log_u_split(model, w, ss, 1, estimates.second, theta),
                                 log_u_split(model, w, ss, 2, estimates.first, theta));
        break;
    }
    return s;
}

bool member(const ConditionalModel& model, const WeightScheme& w, const SplitSample& ss,
            double alpha, const std::pair<EstimateResult, EstimateResult>& estimates,
            Method method, std::span<const double> theta) {
    check_alpha(alpha);
    if (theta.size() != static_cast<std::size_t>(model.param_dim()))
        throw std::invalid_argument("member: parameter vector has wrong length");
    if (!model.in_param_space(theta)) return false;
    const StatEvaluator stat(model, w, ss, estimates, method);
    return stat(theta) <= -std::log(alpha);
}

ConfidenceSet1D confidence_set_1d(const ConditionalModel& model, const WeightScheme& w,
                                  const SplitSample& ss, double alpha,
                                  const std::pair<EstimateResult, EstimateResult>& estimates,
                                  Method method, const SearchSettings& search) {
    check_alpha(alpha);
    if (model.param_dim() != 1)
        throw std::invalid_argument("confidence_set_1d: model parameter must be scalar");
    if (estimates.first.theta_hat.size() != 1 || estimates.second.theta_hat.size() != 1)
        throw std::invalid_argument("confidence_set_1d: both half estimates must be scalar");
    const StatEvaluator stat(model, w, ss, estimates, method);
    const double threshold = -std::log(alpha);
    const auto accepted = [&](double theta) {
        const double t[1] = {theta};
        return stat(t) <= threshold;
    };
    const auto stat_at = [&](double theta) {
        const double t[1] = {theta};
        return stat(t);
    };

    ConfidenceSet1D set;
    set.alpha = alpha;
    set.method = method;

    // Expand the upper extreme until the statistic clears the threshold
    // with margin; beyond max_doublings the set is reported unbounded.
    double theta_max = std::max(search.theta_max_init,
                                2.0 * std::max(estimates.first.theta_hat[0],
                                               estimates.second.theta_hat[0]));
    bool bounded = false;
    for (int i = 0; i <= search.max_doublings; ++i) {
        if (stat_at(theta_max) > threshold + search.margin_log) {
            bounded = true;
            break;
        }
        theta_max *= search.bracket_growth;
    }
    set.unbounded = !bounded;

    // Scan grid: linear sweep, a geometric tail toward zero, and the two
    // estimates with small neighborhoods (accepted islands live near them).
    std::set<double> grid{0.0, theta_max};
    for (int i = 1; i < search.linear_grid; ++i)
        grid.insert(theta_max * double(i) / double(search.linear_grid));
    for (double g = theta_max / double(search.linear_grid); g > 1e-9; g *= 0.5) grid.insert(g);
    for (const double e : {estimates.first.theta_hat[0], estimates.second.theta_hat[0]}) {
        for (const double off : {-0.02, -0.005, 0.0, 0.005, 0.02}) {
            const double v = e * (1.0 + off);
            if (v >= 0.0 && v <= theta_max) grid.insert(v);
        }
    }
    const std::vector<double> points(grid.begin(), grid.end());
    std::vector<char> ok(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) ok[i] = accepted(points[i]);

    // Refine each acceptance change by bisection, then assemble intervals.
    const auto refine = [&](double lo, double hi) {
        // invariant: acceptance differs between lo and hi
        const bool lo_ok = accepted(lo);
        while (hi - lo > search.bisect_tol) {
            const double mid = 0.5 * (lo + hi);
            if (accepted(mid) == lo_ok)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    bool open = false;
    double start = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (ok[i] && !open) {
            open = true;
            start = (i == 0) ? points[0] : refine(points[i - 1], points[i]);
        } else if (!ok[i] && open) {
            open = false;
            set.intervals.push_back({start, refine(points[i - 1], points[i])});
        }
    }
    if (open) set.intervals.push_back({start, points.back()});

    if (set.unbounded) {
        set.diameter = kInf;
    } else if (set.intervals.empty()) {
        set.diameter = 0.0;
    } else {
        set.diameter = set.intervals.back()[1] - set.intervals.front()[0];
    }
    return set;
}

TestResult clr_test(const ConditionalModel& model, const WeightScheme& w, const SplitSample& ss,
                    double alpha,
                    const std::pair<EstimateResult, EstimateResult>& null_maximizers,
                    const std::pair<EstimateResult, EstimateResult>& free_estimates,
                    Method method) {
    check_alpha(alpha);
    check_provenance(null_maximizers.first, SamplePart::part1, "the part-1 null maximizer");
    const double v1 =
        log_u_split(model, w, ss, 1, free_estimates.second, null_maximizers.first.theta_hat);
    TestResult r;
    r.alpha = alpha;
    r.method = method;
    if (method == Method::split) {
        r.statistic_log = v1;
    } else {
        check_provenance(null_maximizers.second, SamplePart::part2, "the part-2 null maximizer");
        const double v2 =
            log_u_split(model, w, ss, 2, free_estimates.first, null_maximizers.second.theta_hat);
        r.statistic_log = log_u_swap(v1, v2);
    }
    r.reject = r.statistic_log >= -std::log(alpha);
    r.e_value = std::exp(r.statistic_log);
    return r;
}

nlohmann::json to_json(const ConfidenceSet1D& set) {
    nlohmann::json j;
    j["alpha"] = set.alpha;
    j["method"] = set.method == Method::split ? "split" : "swap";
    j["intervals"] = nlohmann::json::array();
    for (const auto& iv : set.intervals) j["intervals"].push_back({iv[0], iv[1]});
    j["diameter"] = set.diameter;
    j["unbounded"] = set.unbounded;
    return j;
}

nlohmann::json to_json(const TestResult& result) {
    nlohmann::json j;
    j["method"] = result.method == Method::split ? "split" : "swap";
    j["alpha"] = result.alpha;
    j["log_statistic"] = result.statistic_log;
    j["reject"] = result.reject;
    j["e_value"] = result.e_value;
    return j;
}

} // namespace unicl
