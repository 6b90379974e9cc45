#pragma once

#include "reinsure/risk_model.hpp"

#include <string>
#include <string_view>

namespace reinsure {

enum class ContractClass { stop_loss, quota_share, change_loss };

std::string_view to_string(ContractClass cls);
/// Accepts "stop_loss", "quota_share", "change_loss".
ContractClass parse_contract_class(std::string_view name);

/// Indemnity I(x) = λ (x - d)_+. Stop-loss has λ = 1, quota-share has d = 0.
/// The null contract is λ = 0 or d = +∞.
struct Contract {
    ContractClass cls = ContractClass::stop_loss;
    double lambda = 1.0;
    double deductible = kInfinity;

    static Contract stop_loss(double d) { return {ContractClass::stop_loss, 1.0, d}; }
    static Contract quota_share(double lambda) { return {ContractClass::quota_share, lambda, 0.0}; }
    static Contract change_loss(double lambda, double d) {
        return {ContractClass::change_loss, lambda, d};
    }

    bool is_null() const { return lambda == 0.0 || deductible == kInfinity; }
    double indemnity(double x) const;
    /// H[I(X)] = λ H[(X - d)_+].
    double cost(const CostFunctional& cost, const LossModel& loss) const;
};

/// A contract with its premium.
struct MenuEntry {
    Contract contract;
    double premium = 0.0;

    /// I(a) - P: the VaR reduction for an agent at risk level a.
    double risk_reduction(double a) const { return contract.indemnity(a) - premium; }
};

} // namespace reinsure
