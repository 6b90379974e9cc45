#include "reinsure/menu.hpp"

#include "reinsure/errors.hpp"

#include <algorithm>
#include <cmath>

namespace reinsure {

std::string_view to_string(ContractClass cls) {
    switch (cls) {
    case ContractClass::stop_loss:
        return "stop_loss";
    case ContractClass::quota_share:
        return "quota_share";
    case ContractClass::change_loss:
        return "change_loss";
    }
    return "stop_loss";
}

ContractClass parse_contract_class(std::string_view name) {
    if (name == "stop_loss") {
        return ContractClass::stop_loss;
    }
    if (name == "quota_share") {
        return ContractClass::quota_share;
    }
    if (name == "change_loss") {
        return ContractClass::change_loss;
    }
    throw DomainError("unknown contract class '" + std::string(name) + "'");
}

double Contract::indemnity(double x) const {
    if (is_null()) {
        return 0.0;
    }
    return lambda * std::max(x - deductible, 0.0);
}

double Contract::cost(const CostFunctional& cost, const LossModel& loss) const {
    if (is_null()) {
        return 0.0;
    }
    return lambda * stop_loss_cost(cost, loss, deductible);
}

} // namespace reinsure
