#include "cli.hpp"

#include "reinsure/change_loss.hpp"
#include "reinsure/errors.hpp"
#include "reinsure/quota_share.hpp"
#include "reinsure/stop_loss.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace reinsure::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Strict JSON access

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) {
        throw InputError(where + " must be an object");
    }
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    require_object(j, where);
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) {
            throw InputError("unknown key '" + where + "." + key + "'");
        }
    }
}

double get_number(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) {
        throw InputError("missing key '" + where + "." + key + "'");
    }
    const json& v = j.at(key);
    if (!v.is_number()) {
        throw InputError("'" + where + "." + key + "' must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw InputError("'" + where + "." + key + "' must be finite");
    }
    return x;
}

double get_number_or(const json& j, const std::string& where, const char* key, double fallback) {
    return j.contains(key) ? get_number(j, where, key) : fallback;
}

int get_int_or(const json& j, const std::string& where, const char* key, int fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_number_integer()) {
        throw InputError("'" + where + "." + key + "' must be an integer");
    }
    return j.at(key).get<int>();
}

std::string get_string(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw InputError("'" + where + "." + key + "' must be a string");
    }
    return j.at(key).get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw InputError("'" + where + "." + key + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& x : j.at(key)) {
        if (!x.is_number()) {
            throw InputError("'" + where + "." + key + "' must be an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Config sections

Distortion parse_distortion(const json& j) {
    const std::string where = "cost.distortion";
    require_object(j, where);
    const std::string kind = get_string(j, where, "kind");
    if (kind == "identity") {
        allow_keys(j, where, {"kind"});
        return Distortion::identity();
    }
    if (kind == "power" || kind == "proportional_hazard") {
        allow_keys(j, where, {"kind", "param"});
        const double c = get_number(j, where, "param");
        if (!(c > 0.0 && c <= 1.0)) {
            throw InputError("'cost.distortion.param' must lie in (0, 1]");
        }
        return kind == "power" ? Distortion::power(c) : Distortion::proportional_hazard(c);
    }
    if (kind == "tabulated") {
        allow_keys(j, where, {"kind", "u", "h"});
        return Distortion::tabulated(get_numbers(j, where, "u"), get_numbers(j, where, "h"));
    }
    throw InputError("unknown distortion kind '" + kind + "'");
}

CostFunctional parse_cost(const json& j) {
    allow_keys(j, "cost", {"theta", "distortion"});
    CostFunctional cost;
    cost.theta = get_number(j, "cost", "theta");
    cost.distortion =
        j.contains("distortion") ? parse_distortion(j.at("distortion")) : Distortion::identity();
    cost.validate();
    return cost;
}

LossFamily parse_loss(const json& j) {
    allow_keys(j, "loss", {"family", "params"});
    const std::string family = get_string(j, "loss", "family");
    const json params = j.contains("params") ? j.at("params") : json::object();
    const std::string where = "loss.params";
    if (family == "exponential") {
        allow_keys(params, where, {"point_mass_at_zero"});
        const double p0 = get_number_or(params, where, "point_mass_at_zero", 0.0);
        if (!(p0 >= 0.0 && p0 < 1.0)) {
            throw InputError("'loss.params.point_mass_at_zero' must lie in [0, 1)");
        }
        return LossFamily::exponential(p0);
    }
    if (family == "pareto") {
        allow_keys(params, where, {"shape", "point_mass_at_zero"});
        const double shape = get_number(params, where, "shape");
        const double p0 = get_number_or(params, where, "point_mass_at_zero", 0.0);
        if (!(shape > 1.0)) {
            throw InputError("'loss.params.shape' must exceed 1");
        }
        if (!(p0 >= 0.0 && p0 < 1.0)) {
            throw InputError("'loss.params.point_mass_at_zero' must lie in [0, 1)");
        }
        return LossFamily::lomax(shape, p0);
    }
    throw InputError("unknown loss family '" + family + "'");
}

UniformRange parse_k(const json& types) {
    if (!types.contains("k_dist")) {
        throw InputError("missing key 'types.k_dist'");
    }
    const json& k = types.at("k_dist");
    allow_keys(k, "types.k_dist", {"lo", "hi"});
    return {get_number(k, "types.k_dist", "lo"), get_number(k, "types.k_dist", "hi")};
}

TypeDistribution parse_types(const json& j, const LossFamily& family, double tail_cap) {
    require_object(j, "types");
    const std::string variant = get_string(j, "types", "variant");
    const std::string where = "types.alpha_dist";
    if (variant == "discrete") {
        allow_keys(j, "types", {"variant", "atoms"});
        if (!j.contains("atoms") || !j.at("atoms").is_array()) {
            throw InputError("'types.atoms' must be an array");
        }
        std::vector<TypeAtom> atoms;
        for (const auto& atom : j.at("atoms")) {
            allow_keys(atom, "types.atoms[]", {"alpha", "k", "weight"});
            atoms.push_back({get_number(atom, "types.atoms[]", "alpha"),
                             get_number(atom, "types.atoms[]", "k"),
                             get_number(atom, "types.atoms[]", "weight")});
        }
        if (atoms.empty()) {
            throw InputError("'types.atoms' must not be empty");
        }
        return TypeDistribution::discrete(std::move(atoms), family);
    }
    allow_keys(j, "types", {"variant", "k_dist", "alpha_dist"});
    const UniformRange k = parse_k(j);
    if (!j.contains("alpha_dist")) {
        throw InputError("missing key 'types.alpha_dist'");
    }
    const json& a = j.at("alpha_dist");
    require_object(a, where);
    if (variant == "product") {
        if (a.contains("log_lo") || a.contains("log_hi")) {
            allow_keys(a, where, {"log_lo", "log_hi"});
            return TypeDistribution::product_log_alpha(k, get_number(a, where, "log_lo"),
                                                       get_number(a, where, "log_hi"), family);
        }
        allow_keys(a, where, {"lo", "hi"});
        return TypeDistribution::product(k, get_number(a, where, "lo"), get_number(a, where, "hi"),
                                         family, tail_cap);
    }
    if (variant == "degenerate_alpha") {
        if (a.contains("log_value")) {
            allow_keys(a, where, {"log_value"});
            return TypeDistribution::degenerate_log_alpha(k, get_number(a, where, "log_value"),
                                                          family);
        }
        allow_keys(a, where, {"value"});
        return TypeDistribution::degenerate_alpha(k, get_number(a, where, "value"), family);
    }
    throw InputError("unknown type variant '" + variant + "'");
}

// ---------------------------------------------------------------------------
// Output helpers

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InputError("cannot create output directory '" + dir.string() + "'");
    }
}

void write_json(const fs::path& path, const json& doc) {
    std::ofstream f(path);
    if (!f) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    f << doc.dump(2) << '\n';
}

json number(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

double parse_double(const std::string& s, const std::string& what) {
    if (s == "inf") {
        return kInfinity;
    }
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InputError("malformed " + what + " '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(x)) {
        throw InputError("malformed " + what + " '" + s + "'");
    }
    return x;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

struct Common {
    std::string config;
    std::string out = ".";
    std::string cls;
    int grid = 0;
    long long seed = -1;
};

ScenarioConfig load_with_overrides(const Common& c) {
    ScenarioConfig config = load_config(c.config);
    if (!c.cls.empty()) {
        try {
            config.contract_class = parse_contract_class(c.cls);
        } catch (const DomainError& e) {
            throw InputError(e.what());
        }
    }
    if (c.grid != 0) {
        if (c.grid < 2) {
            throw InputError("--grid must be at least 2");
        }
        config.solver.grid_points = c.grid;
    }
    if (c.seed >= 0) {
        config.seed = static_cast<std::uint64_t>(c.seed);
    }
    return config;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_solve(const Common& c, std::ostream& out) {
    const ScenarioConfig config = load_with_overrides(c);
    const double lower = lower_support(config.types);
    double sup_theta = 0.0;
    bool holds = true;
    {
        const auto check = change_loss::assumption_check(config.types, config.cost);
        sup_theta = check.sup_theta_star;
        holds = check.holds;
    }
    const auto rule = solve_menu(config);
    const auto types = menu_types(config);
    const auto menu = verification::tabulate(*rule, types);

    ensure_dir(c.out);
    write_menu_csv(fs::path(c.out) / "menu.csv", menu);
    const double value = rule->kink() == kInfinity ? 0.0 : objective_at(config, rule->kink());
    json summary = {{"contract_class", std::string(to_string(config.contract_class))},
                    {"tau_star", number(rule->kink())},
                    {"objective_value", value},
                    {"L", lower},
                    {"sup_theta_star", number(sup_theta)},
                    {"assumption_holds", holds},
                    {"grid_points", config.solver.grid_points},
                    {"menu_rows", menu.size()}};
    write_json(fs::path(c.out) / "summary.json", summary);
    out << "tau_star " << format_number(rule->kink()) << "\n";
    return kExitOk;
}

int cmd_curve(const Common& c, double t_lo, double t_hi, int n, std::ostream& out) {
    const ScenarioConfig config = load_with_overrides(c);
    if (std::isnan(t_hi)) {
        t_hi = upper_support(config.types);
    }
    if (!(t_lo < t_hi) || n < 2) {
        throw InputError("curve needs t_lo < t_hi and n >= 2");
    }
    ensure_dir(c.out);
    const fs::path path = fs::path(c.out) / "curve.csv";
    std::ofstream f(path);
    if (!f) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    f << "t,J\n";
    for (int i = 0; i < n; ++i) {
        const double t = i == n - 1 ? t_hi : t_lo + (t_hi - t_lo) * i / (n - 1);
        f << format_number(t) << ',' << format_number(objective_at(config, t)) << '\n';
    }
    out << "wrote " << path.string() << "\n";
    return kExitOk;
}

int cmd_verify(const Common& c, const std::string& menu_path, std::ostream& out) {
    (void)load_with_overrides(c);
    const auto menu = read_menu_csv(menu_path);

    const auto ic = verification::check_ic(menu);
    const auto ir = verification::check_ir(menu);

    // Indirect utility must be increasing, convex and 1-Lipschitz.
    double a_lo = kInfinity, a_hi = -kInfinity;
    for (const auto& e : menu) {
        a_lo = std::min(a_lo, e.type.a);
        a_hi = std::max(a_hi, e.type.a);
    }
    constexpr int kPoints = 1000;
    std::vector<double> v(kPoints);
    const double step = a_hi > a_lo ? (a_hi - a_lo) / (kPoints - 1) : 1.0;
    for (int i = 0; i < kPoints; ++i) {
        v[i] = verification::indirect_utility(menu, a_lo + step * i);
    }
    double shape_violation = 0.0;
    for (int i = 1; i < kPoints; ++i) {
        const double dv = v[i] - v[i - 1];
        shape_violation = std::max({shape_violation, -dv, dv - step});
        if (i + 1 < kPoints) {
            shape_violation = std::max(shape_violation, 2 * v[i] - v[i - 1] - v[i + 1]);
        }
    }
    const bool shape_ok = shape_violation <= verification::kAuditTolerance;

    json report = {{"rows", menu.size()},
                   {"ic", verification::to_json(ic)},
                   {"ir", verification::to_json(ir)},
                   {"indirect_utility", {{"pass", shape_ok}, {"max_violation", shape_violation}}},
                   {"pass", ic.pass && ir.pass && shape_ok}};
    ensure_dir(c.out);
    write_json(fs::path(c.out) / "report.json", report);
    const bool pass = report["pass"].get<bool>();
    out << (pass ? "PASS" : "FAIL") << " max IC violation " << format_number(ic.max_violation)
        << ", max IR violation " << format_number(ir.max_violation) << "\n";
    return pass ? kExitOk : kExitAuditFailed;
}

int cmd_first_best(const Common& c, const std::vector<std::string>& pairs, int count,
                   std::ostream& out) {
    const ScenarioConfig config = load_with_overrides(c);
    std::vector<std::pair<TransformedType, TransformedType>> todo;
    for (const auto& p : pairs) {
        const auto parts = split(p, ',');
        if (parts.size() != 4) {
            throw InputError("--pair expects a_high,k_high,a_low,k_low");
        }
        todo.push_back({{parse_double(parts[0], "a"), parse_double(parts[1], "k")},
                        {parse_double(parts[2], "a"), parse_double(parts[3], "k")}});
    }
    if (todo.empty()) {
        std::mt19937_64 rng(config.seed);
        while (static_cast<int>(todo.size()) < count) {
            TransformedType x = config.types.sample(rng);
            TransformedType y = config.types.sample(rng);
            if (x.a == y.a) {
                continue;
            }
            if (x.a < y.a) {
                std::swap(x, y);
            }
            todo.push_back({x, y});
        }
    }
    json reports = json::array();
    bool all = true;
    for (const auto& [high, low] : todo) {
        const auto r = verification::first_best_demo(high, low, config.types, config.cost);
        all = all && r.chain_holds;
        reports.push_back(verification::to_json(r));
    }
    ensure_dir(c.out);
    write_json(fs::path(c.out) / "report.json", {{"pairs", reports}, {"all_chains_hold", all}});
    out << (all ? "mimicry chain holds for all pairs" : "mimicry chain FAILED") << "\n";
    return kExitOk;
}

int cmd_simulate(const Common& c, const std::string& menu_path, long long n, std::ostream& out) {
    const ScenarioConfig config = load_with_overrides(c);
    if (n < 1) {
        throw InputError("--n must be at least 1");
    }
    const auto rule = solve_menu(config);
    const double analytic = rule->kink() == kInfinity ? 0.0 : objective_at(config, rule->kink());
    verification::MonteCarloEstimate est;
    if (menu_path.empty()) {
        est = verification::monte_carlo_profit(*rule, config.types, config.cost,
                                               static_cast<std::size_t>(n), config.seed);
    } else {
        est = verification::monte_carlo_profit(read_menu_csv(menu_path), config.types,
                                               config.cost, static_cast<std::size_t>(n),
                                               config.seed);
    }
    const double diff = est.estimate - analytic;
    const double z = est.std_error > 0.0 ? diff / est.std_error
                     : diff == 0.0       ? 0.0
                                         : std::copysign(kInfinity, diff);
    json doc = {{"estimate", est.estimate},
                {"std_error", est.std_error},
                {"n", est.n},
                {"seed", config.seed},
                {"menu", menu_path.empty() ? "solver" : "file"},
                {"analytic_objective", analytic},
                {"z_score", number(z)}};
    ensure_dir(c.out);
    write_json(fs::path(c.out) / "estimate.json", doc);
    out << "estimate " << format_number(est.estimate) << " +/- " << format_number(est.std_error)
        << " (analytic " << format_number(analytic) << ")\n";
    return kExitOk;
}

} // namespace

// ---------------------------------------------------------------------------

ScenarioConfig parse_config(const json& doc) {
    allow_keys(doc, "config", {"cost", "loss", "types", "solver", "quadrature", "menu_grid", "seed"});
    for (const char* key : {"cost", "loss", "types"}) {
        if (!doc.contains(key)) {
            throw InputError(std::string("missing key '") + key + "'");
        }
    }
    try {
        ScenarioConfig config;
        config.cost = parse_cost(doc.at("cost"));
        const LossFamily family = parse_loss(doc.at("loss"));

        double tail_cap = 1e-9;
        if (doc.contains("solver")) {
            const json& s = doc.at("solver");
            allow_keys(s, "solver", {"class", "grid_points", "refine_tol", "a_quantile_cap"});
            if (s.contains("class")) {
                config.contract_class = parse_contract_class(get_string(s, "solver", "class"));
            }
            config.solver.grid_points = get_int_or(s, "solver", "grid_points", 10001);
            config.solver.refine_tol = get_number_or(s, "solver", "refine_tol", 1e-6);
            tail_cap = get_number_or(s, "solver", "a_quantile_cap", tail_cap);
            if (config.solver.grid_points < 2) {
                throw InputError("'solver.grid_points' must be at least 2");
            }
            if (!(config.solver.refine_tol > 0.0)) {
                throw InputError("'solver.refine_tol' must be positive");
            }
            if (!(tail_cap > 0.0 && tail_cap < 1.0)) {
                throw InputError("'solver.a_quantile_cap' must lie in (0, 1)");
            }
        }
        if (doc.contains("quadrature")) {
            const json& q = doc.at("quadrature");
            allow_keys(q, "quadrature", {"outer_nodes", "simpson_tol"});
            config.solver.quadrature.outer_nodes = get_int_or(q, "quadrature", "outer_nodes", 256);
            config.solver.quadrature.simpson_tol =
                get_number_or(q, "quadrature", "simpson_tol", 1e-10);
            if (config.solver.quadrature.outer_nodes < 1 ||
                !(config.solver.quadrature.simpson_tol > 0.0)) {
                throw InputError("quadrature settings must be positive");
            }
        }
        if (doc.contains("menu_grid")) {
            const json& g = doc.at("menu_grid");
            allow_keys(g, "menu_grid", {"a_points", "k_points"});
            config.menu_grid.a_points = get_int_or(g, "menu_grid", "a_points", 41);
            config.menu_grid.k_points = get_int_or(g, "menu_grid", "k_points", 21);
            if (config.menu_grid.a_points < 1 || config.menu_grid.k_points < 1) {
                throw InputError("menu_grid sizes must be positive");
            }
        }
        if (doc.contains("seed")) {
            if (!doc.at("seed").is_number_unsigned()) {
                throw InputError("'seed' must be a nonnegative integer");
            }
            config.seed = doc.at("seed").get<std::uint64_t>();
        }
        config.types = parse_types(doc.at("types"), family, tail_cap);
        return config;
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
}

ScenarioConfig load_config(const fs::path& path) {
    std::ifstream f(path);
    if (!f) {
        throw InputError("cannot read config '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::exception& e) {
        throw InputError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

std::unique_ptr<MenuRule> solve_menu(const ScenarioConfig& config) {
    switch (config.contract_class) {
    case ContractClass::stop_loss:
        return std::make_unique<stop_loss::StopLossMenu>(
            stop_loss::solve(config.types, config.cost, config.solver));
    case ContractClass::quota_share:
        return std::make_unique<quota_share::QuotaShareMenu>(
            quota_share::solve(config.types, config.cost, config.solver));
    case ContractClass::change_loss:
        return std::make_unique<change_loss::ChangeLossMenu>(
            change_loss::solve(config.types, config.cost, config.solver));
    }
    throw DomainError("unknown contract class");
}

double objective_at(const ScenarioConfig& config, double t) {
    const auto& q = config.solver.quadrature;
    switch (config.contract_class) {
    case ContractClass::stop_loss:
        return stop_loss::objective(t, config.types, config.cost, q);
    case ContractClass::quota_share:
        return quota_share::j_phi(t, config.types, config.cost, q);
    case ContractClass::change_loss:
        return change_loss::j_phi_cl(t, config.types, config.cost, q);
    }
    throw DomainError("unknown contract class");
}

std::vector<TransformedType> menu_types(const ScenarioConfig& config) {
    const TypeDistribution& d = config.types;
    std::vector<TransformedType> out;
    if (d.has_atoms()) {
        for (const auto& atom : d.atoms()) {
            out.push_back(transform(d, atom.alpha, atom.k));
        }
        return out;
    }
    const auto& g = config.menu_grid;
    const UniformRange kr = d.k_range();
    for (int i = 0; i < g.k_points; ++i) {
        const double k = g.k_points == 1 || kr.hi == kr.lo
                             ? 0.5 * (kr.lo + kr.hi)
                             : kr.lo + (kr.hi - kr.lo) * i / (g.k_points - 1);
        const UniformRange ar = d.a_range(k);
        const int na = ar.hi > ar.lo ? g.a_points : 1;
        for (int j = 0; j < na; ++j) {
            const double a = na == 1 ? ar.lo : ar.lo + (ar.hi - ar.lo) * j / (na - 1);
            out.push_back({a, k});
        }
    }
    return out;
}

std::string format_number(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

static constexpr const char* kMenuHeader =
    "a,k,contract_class,lambda,deductible,premium,risk_reduction";

void write_menu_csv(const fs::path& path, const verification::GenericMenu& menu) {
    std::ofstream f(path);
    if (!f) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    f << kMenuHeader << '\n';
    for (const auto& e : menu) {
        const Contract& c = e.entry.contract;
        f << format_number(e.type.a) << ',' << format_number(e.type.k) << ','
          << to_string(c.cls) << ',' << format_number(c.lambda) << ','
          << format_number(c.deductible) << ',' << format_number(e.entry.premium) << ','
          << format_number(e.entry.risk_reduction(e.type.a)) << '\n';
    }
}

verification::GenericMenu read_menu_csv(const fs::path& path) {
    std::ifstream f(path);
    if (!f) {
        throw InputError("cannot read menu '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(f, line) || line != kMenuHeader) {
        throw InputError("menu file must start with the header '" + std::string(kMenuHeader) +
                         "'");
    }
    verification::GenericMenu menu;
    std::size_t row = 1;
    while (std::getline(f, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 7) {
            throw InputError("menu row " + std::to_string(row) + " does not have 7 columns");
        }
        verification::TypedEntry e;
        e.type = {parse_double(cells[0], "a"), parse_double(cells[1], "k")};
        try {
            e.entry.contract.cls = parse_contract_class(cells[2]);
        } catch (const DomainError& err) {
            throw InputError(err.what());
        }
        e.entry.contract.lambda = parse_double(cells[3], "lambda");
        e.entry.contract.deductible = parse_double(cells[4], "deductible");
        e.entry.premium = parse_double(cells[5], "premium");
        const Contract& c = e.entry.contract;
        if (!(c.lambda >= 0.0 && c.lambda <= 1.0) || !(c.deductible >= 0.0) ||
            !(e.entry.premium >= 0.0)) {
            throw InputError("menu row " + std::to_string(row) + " is outside the contract domain");
        }
        menu.push_back(e);
    }
    if (menu.empty()) {
        throw InputError("menu file has no entries");
    }
    return menu;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal reinsurance menus under adverse selection"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "scenario config (JSON)")->required();
        sub->add_option("--out", common.out, "output directory");
        sub->add_option("--class", common.cls, "stop_loss | quota_share | change_loss");
        sub->add_option("--grid", common.grid, "grid points for the kink search");
        sub->add_option("--seed", common.seed, "random seed")->check(CLI::NonNegativeNumber);
    };

    auto* solve = app.add_subcommand("solve", "solve for the optimal menu");
    add_common(solve);

    double t_lo = 0.0;
    double t_hi = std::nan("");
    int n_curve = 201;
    auto* curve = app.add_subcommand("curve", "tabulate the objective over the kink");
    add_common(curve);
    curve->add_option("--t-lo", t_lo, "first kink value");
    curve->add_option("--t-hi", t_hi, "last kink value (default: sup of a)");
    curve->add_option("--n", n_curve, "number of points");

    std::string menu_path;
    auto* verify = app.add_subcommand("verify", "audit a menu for IC and IR");
    add_common(verify);
    verify->add_option("--menu", menu_path, "menu.csv to audit")->required();

    std::vector<std::string> pairs;
    int n_pairs = 20;
    auto* first_best = app.add_subcommand("first-best", "show first-best pricing invites mimicry");
    add_common(first_best);
    first_best->add_option("--pair", pairs, "a_high,k_high,a_low,k_low (repeatable)");
    first_best->add_option("--pairs", n_pairs, "number of random pairs when none given");

    long long n_sim = 100000;
    std::string sim_menu;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of menu profit");
    add_common(simulate);
    simulate->add_option("--menu", sim_menu, "menu.csv (default: the solved menu rule)");
    simulate->add_option("--n", n_sim, "number of sampled types");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(common, out);
        }
        if (curve->parsed()) {
            return cmd_curve(common, t_lo, t_hi, n_curve, out);
        }
        if (verify->parsed()) {
            return cmd_verify(common, menu_path, out);
        }
        if (first_best->parsed()) {
            return cmd_first_best(common, pairs, n_pairs, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(common, sim_menu, n_sim, out);
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DivergenceError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const UnsupportedError& e) {
        err << "assumption violated: " << e.what() << "\n";
        return kExitAssumption;
    }
    return kExitInput;
}

} // namespace reinsure::cli
