#pragma once

#include "reinsure/menu.hpp"
#include "reinsure/solver_common.hpp"
#include "reinsure/type_space.hpp"
#include "reinsure/verification.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace reinsure::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAuditFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitAssumption = 3;

/// Malformed or out-of-domain configuration or input file.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MenuGrid {
    int a_points = 41;
    int k_points = 21;
};

struct ScenarioConfig {
    CostFunctional cost;
    TypeDistribution types = TypeDistribution::discrete({{0.5, 1.0, 1.0}}, LossFamily::exponential());
    ContractClass contract_class = ContractClass::stop_loss;
    SolverOptions solver;
    MenuGrid menu_grid;
    std::uint64_t seed = 0;
};

/// Strict parse: unknown keys, wrong types and out-of-domain values throw
/// InputError.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);

/// The solved menu rule for the configured contract class. Throws
/// UnsupportedError when a change-loss market violates sup θ* <= L.
std::unique_ptr<MenuRule> solve_menu(const ScenarioConfig& config);

/// Class-specific objective at kink t.
double objective_at(const ScenarioConfig& config, double t);

/// Types at which menu.csv samples the menu: for each of k_points values of k,
/// a_points values of a across the conditional support. Discrete markets use
/// their atoms.
std::vector<TransformedType> menu_types(const ScenarioConfig& config);

std::string format_number(double x);

void write_menu_csv(const std::filesystem::path& path, const verification::GenericMenu& menu);
verification::GenericMenu read_menu_csv(const std::filesystem::path& path);

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace reinsure::cli
