#include "unicl/cl_eval.hpp"

#include <cmath>
#include <limits>

#include "unicl/errors.hpp"

namespace unicl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Active (nonzero-weight) terms with exponents sigma/upsilon, tau/upsilon.
struct IclPlan {
    std::vector<std::pair<const SubsetIndex*, double>> marginals;
    std::vector<std::pair<const DivisionIndex*, double>> conditionals;

    IclPlan(const ConditionalModel& model, const WeightScheme& w) {
        if (w.d != model.dim())
            throw std::invalid_argument("weight scheme dimension does not match the model");
        const double upsilon = total_weight(w); // validates the scheme
        for (const auto& [s, v] : w.sigma) {
            if (v == 0.0) continue;
            if (!model.has_marginal(s))
                throw CapabilityError("model '" + model.id() +
                                      "' does not implement the requested marginal");
            marginals.emplace_back(&s, v / upsilon);
        }
        for (const auto& [t, v] : w.tau) {
            if (v == 0.0) continue;
            conditionals.emplace_back(&t, v / upsilon);
        }
    }

    double eval(const ConditionalModel& model, std::span<const double> x,
                std::span<const double> theta, std::vector<double>& scratch) const {
        double acc = 0.0;
        for (const auto& [s, e] : marginals) {
            scratch.clear();
            for (int i : s->members()) scratch.push_back(x[static_cast<std::size_t>(i - 1)]);
            const double lp = model.log_marginal(*s, scratch, theta);
            if (lp == kNegInf) return kNegInf;
            acc += e * lp;
        }
        for (const auto& [t, e] : conditionals) {
            const double lp = model.log_conditional(*t, x, theta);
            if (lp == kNegInf) return kNegInf;
            acc += e * lp;
        }
        return acc;
    }
};

} // namespace

double icl_log_density(const ConditionalModel& model, const WeightScheme& w,
                       std::span<const double> x, std::span<const double> theta) {
    if (x.size() != static_cast<std::size_t>(model.dim()))
        throw std::invalid_argument("icl_log_density: observation has wrong dimension");
    model.require_theta(theta);
    IclPlan plan(model, w);
    std::vector<double> scratch;
    return plan.eval(model, x, theta, scratch);
}

double cl_log_likelihood(const ConditionalModel& model, const WeightScheme& w,
                         const Dataset& data, std::span<const double> theta) {
    if (data.empty()) throw std::invalid_argument("cl_log_likelihood: empty dataset");
    if (data.cols() != static_cast<std::size_t>(model.dim()))
        throw std::invalid_argument("cl_log_likelihood: dataset has wrong dimension");
    model.require_theta(theta);
    IclPlan plan(model, w);
    std::vector<double> scratch;
    double acc = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const double v = plan.eval(model, data.row(i), theta, scratch);
        if (v == kNegInf) return kNegInf;
        acc += v;
    }
    return acc;
}

} // namespace unicl
