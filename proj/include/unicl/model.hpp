#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "unicl/dataset.hpp"
#include "unicl/index_sets.hpp"
#include "unicl/rng.hpp"

namespace unicl {

/// Closed box constraint for one parameter coordinate; +/-inf where open.
struct ParamBounds {
    double lo;
    double hi;
};

/// Capability contract for a conditionally specified model: log-densities
/// of whatever marginals/conditionals it supports, plus an exact sampler.
///
/// Conventions:
///  - log-densities return -inf for x outside the support (never throw);
///  - a marginal the model does not implement throws CapabilityError;
///  - implementations are immutable and freely shareable across threads.
class ConditionalModel {
public:
    virtual ~ConditionalModel() = default;

    virtual const std::string& id() const = 0;
    virtual int dim() const = 0;
    virtual int param_dim() const = 0;
    virtual const std::vector<ParamBounds>& param_space() const = 0;

    virtual bool has_marginal(const SubsetIndex& /*s*/) const { return false; }

    /// log p(x_S; theta); x_sub holds the coordinates of S in order.
    virtual double log_marginal(const SubsetIndex& s, std::span<const double> x_sub,
                                std::span<const double> theta) const;

    /// log p(x_left | x_right; theta); x is the full d-vector.
    virtual double log_conditional(const DivisionIndex& t, std::span<const double> x,
                                   std::span<const double> theta) const = 0;

    /// Exact IID draws, count rows by dim() columns, from the given stream.
    virtual Dataset sample(std::span<const double> theta, std::size_t count, Rng& rng) const = 0;

    bool in_param_space(std::span<const double> theta) const;

    /// Throws std::invalid_argument if theta has the wrong length or lies
    /// outside the parameter space.
    void require_theta(std::span<const double> theta) const;
};

/// Factory by identifier: "exp-cond" or "lognorm-cond".
std::unique_ptr<ConditionalModel> make_model(const std::string& id);

} // namespace unicl
