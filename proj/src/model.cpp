#include "unicl/model.hpp"

#include "unicl/errors.hpp"
#include "unicl/models/exp_cond.hpp"
#include "unicl/models/lognorm_cond.hpp"

namespace unicl {

double ConditionalModel::log_marginal(const SubsetIndex&, std::span<const double>,
                                      std::span<const double>) const {
    throw CapabilityError("model '" + id() + "' implements no marginal densities");
}

bool ConditionalModel::in_param_space(std::span<const double> theta) const {
    const auto& space = param_space();
    if (theta.size() != space.size()) return false;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!(theta[i] >= space[i].lo && theta[i] <= space[i].hi)) return false;
    }
    return true;
}

void ConditionalModel::require_theta(std::span<const double> theta) const {
    if (theta.size() != static_cast<std::size_t>(param_dim()))
        throw std::invalid_argument("parameter vector has wrong length for model '" + id() + "'");
    if (!in_param_space(theta))
        throw std::invalid_argument("parameter vector lies outside the parameter space of '" +
                                    id() + "'");
}

std::unique_ptr<ConditionalModel> make_model(const std::string& id) {
    if (id == "exp-cond") return std::make_unique<ExpCondModel>();
    if (id == "lognorm-cond") return std::make_unique<LogNormCondModel>();
    throw std::invalid_argument("unknown model id '" + id + "'");
}

} // namespace unicl
