#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "unicl/cl_eval.hpp"
#include "unicl/errors.hpp"
#include "unicl/models/exp_cond.hpp"
#include "unicl/models/lognorm_cond.hpp"

using namespace unicl;

namespace {
const WeightScheme kHalf = WeightScheme::all_conditionals(2, 0.5);
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
} // namespace

TEST_CASE("conditional-only ICL is the weighted sum of both conditionals") {
    const ExpCondModel exp_model;
    const double theta[1] = {0.7};
    const double x[2] = {0.9, 2.1};
    const double direct = 0.5 * exp_conditional_logpdf(1, x[0], x[1], {0.7}) +
                          0.5 * exp_conditional_logpdf(2, x[0], x[1], {0.7});
    CHECK(icl_log_density(exp_model, kHalf, x, theta) == doctest::Approx(direct).epsilon(1e-14));

    const LogNormCondModel ln_model;
    const double lt[5] = {2.0, 1.0, 1.5, 0.5, 1.2};
    const LogNormCondParams lp{2.0, 1.0, 1.5, 0.5, 1.2};
    const double y[2] = {3.0, 8.0};
    const double ln_direct = 0.5 * lognorm_conditional_logpdf(1, y[0], y[1], lp) +
                             0.5 * lognorm_conditional_logpdf(2, y[0], y[1], lp);
    CHECK(icl_log_density(ln_model, kHalf, y, lt) == doctest::Approx(ln_direct).epsilon(1e-14));
}

TEST_CASE("joint recovery: sigma on the full set reproduces the joint log-density") {
    const LogNormCondModel model;
    const auto joint = WeightScheme::joint_only(2);
    const double theta[5] = {2.0, 1.0, 2.0, 1.0, 1.0};
    for (const auto& [x1, x2] : {std::pair{3.0, 9.0}, {7.4, 7.4}, {0.2, 40.0}}) {
        const double x[2] = {x1, x2};
        const double expected = lognorm_joint_logpdf(x1, x2, {2.0, 1.0, 2.0, 1.0, 1.0});
        CHECK(icl_log_density(model, joint, x, theta) == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("scaling every weight by a common factor leaves the ICL unchanged") {
    const ExpCondModel model;
    const double theta[1] = {2.5};
    const double x[2] = {0.4, 1.8};
    const double base = icl_log_density(model, kHalf, x, theta);
    for (const double lambda : {7.0, 0.03, 1234.5}) {
        const auto scaled = WeightScheme::all_conditionals(2, 0.5 * lambda);
        const double v = icl_log_density(model, scaled, x, theta);
        CHECK(v == doctest::Approx(base).epsilon(1e-12));
    }

    // property over generated uneven schemes and scale factors
    const LogNormCondModel ln;
    const double lt[5] = {0.5, 1.2, -0.3, 0.8, 2.0};
    Rng rng(8675309);
    for (int trial = 0; trial < 40; ++trial) {
        WeightScheme w;
        w.d = 2;
        w.sigma.emplace(SubsetIndex({1}), rng.uniform());
        w.sigma.emplace(SubsetIndex({2}), rng.uniform());
        w.sigma.emplace(SubsetIndex({1, 2}), rng.uniform());
        for (const auto& t : enumerate_divisions(2)) w.tau.emplace(t, rng.uniform());
        const double lambda = std::exp(4.0 * rng.normal());
        WeightScheme scaled = w;
        for (auto& [s, v] : scaled.sigma) v *= lambda;
        for (auto& [t, v] : scaled.tau) v *= lambda;
        const double y[2] = {std::exp(rng.normal()), std::exp(rng.normal())};
        const double a = icl_log_density(ln, w, y, lt);
        const double b = icl_log_density(ln, scaled, y, lt);
        CHECK(b == doctest::Approx(a).epsilon(1e-12));
    }
}

TEST_CASE("composite log-likelihood structure") {
    const ExpCondModel model;
    const double theta[1] = {1.0};
    Rng rng(11);
    const Dataset data = exp_sample({1.0}, 5, rng);

    SUBCASE("single row equals the ICL") {
        const Dataset one = data.slice(0, 1);
        CHECK(cl_log_likelihood(model, kHalf, one, theta) ==
              doctest::Approx(icl_log_density(model, kHalf, one.row(0), theta)).epsilon(1e-15));
    }

    SUBCASE("duplicated rows double the value") {
        const Dataset doubled = Dataset::concat(data, data);
        CHECK(cl_log_likelihood(model, kHalf, doubled, theta) ==
              doctest::Approx(2.0 * cl_log_likelihood(model, kHalf, data, theta))
                  .epsilon(1e-12));
    }

    SUBCASE("concatenation adds") {
        Rng rng2(12);
        const Dataset other = exp_sample({1.0}, 9, rng2);
        const Dataset both = Dataset::concat(data, other);
        const double sum = cl_log_likelihood(model, kHalf, data, theta) +
                           cl_log_likelihood(model, kHalf, other, theta);
        CHECK(cl_log_likelihood(model, kHalf, both, theta) ==
              doctest::Approx(sum).epsilon(1e-10));
    }

    SUBCASE("matches a per-row hand computation at theta = 1") {
        // Independent transcription: f_Exp(x; lambda) = lambda exp(-lambda x),
        // lambda = 1 + theta * (other coordinate), both conditionals at weight 1/2.
        double expected = 0.0;
        for (std::size_t i = 0; i < data.rows(); ++i) {
            const double x1 = data(i, 0), x2 = data(i, 1);
            const double l1 = 1.0 + x2, l2 = 1.0 + x1;
            expected += 0.5 * (std::log(l1) - l1 * x1) + 0.5 * (std::log(l2) - l2 * x2);
        }
        CHECK(cl_log_likelihood(model, kHalf, data, theta) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("off-support observations give -inf, not errors") {
    const ExpCondModel model;
    const double theta[1] = {1.0};
    const double bad[2] = {-0.5, 1.0};
    CHECK(icl_log_density(model, kHalf, bad, theta) == kNegInf);

    Dataset data(2, 2);
    data(0, 0) = 1.0;
    data(0, 1) = 2.0;
    data(1, 0) = 0.0; // boundary: not in the open support
    data(1, 1) = 1.0;
    CHECK(cl_log_likelihood(model, kHalf, data, theta) == kNegInf);
}

TEST_CASE("marginal capability") {
    const ExpCondModel model; // implements no marginals
    const double theta[1] = {1.0};
    const double x[2] = {1.0, 1.0};

    WeightScheme with_marginal = kHalf;
    with_marginal.sigma.emplace(SubsetIndex({1}), 0.25);
    CHECK_THROWS_AS(icl_log_density(model, with_marginal, x, theta), CapabilityError);

    // A zero weight on the same marginal must never be evaluated.
    WeightScheme zero_marginal = kHalf;
    zero_marginal.sigma.emplace(SubsetIndex({1}), 0.0);
    CHECK(icl_log_density(model, zero_marginal, x, theta) ==
          doctest::Approx(icl_log_density(model, kHalf, x, theta)).epsilon(1e-15));
}

TEST_CASE("dimension and parameter validation") {
    const ExpCondModel model;
    const double theta[1] = {1.0};
    const double x3[3] = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(icl_log_density(model, kHalf, x3, theta), std::invalid_argument);

    const double x[2] = {1.0, 1.0};
    const double bad_theta[1] = {-0.5};
    CHECK_THROWS_AS(icl_log_density(model, kHalf, x, bad_theta), std::invalid_argument);

    WeightScheme wrong_d = WeightScheme::all_conditionals(3, 0.5);
    CHECK_THROWS_AS(icl_log_density(model, wrong_d, x, theta), std::invalid_argument);
}
