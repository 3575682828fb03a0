#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chlab/error.hpp"
#include "chlab/experiments.hpp"
#include "chlab/lagrangian_solver.hpp"

namespace chlab::config {

/// Invalid configuration; key() names the offending entry.
class ConfigError : public InvalidArgument {
public:
    ConfigError(std::string key, const std::string& what);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

using Value = std::variant<bool, std::int64_t, double, std::string, std::vector<double>, std::vector<std::string>>;

/// Flattened key/value pairs: "solver.dt" -> 1e-3.
using Table = std::map<std::string, Value>;

/// Reads the TOML subset used by run configs: [table] headers, dotted and
/// bare keys, strings, numbers, booleans, and (possibly multi-line) arrays
/// of numbers or strings. `#` starts a comment outside strings.
Table parse_toml(std::string_view text);
Table load_toml(const std::filesystem::path& path);

/// Parses "key=value"; the value uses TOML syntax, bare words are strings.
void apply_override(Table& table, std::string_view assignment);

struct PicardSettings {
    std::size_t n_max = 40;
    double tol = 1e-8;
    std::size_t time_steps = 64;
};

struct ExperimentSettings {
    std::vector<double> eps{1e-2, 1e-3, 1e-4};
    experiments::Profile perturbation{"bump", 1.0, 1.0, 2.0, 0.0, {}, {}};
    std::string rule = "amplitude";
    std::vector<int> levels{1, 2, 3, 4, 5};
    double delta0 = 0.1;
    std::size_t samples = 16;
    double c = 1.0;
};

struct AuditSettings {
    std::size_t corpus = 100;
    double log_epsilon = 0.5;
    bool transport = true;
};

struct PeakonSettings {
    std::size_t M = 3;      // random ensemble size when initial.kind is not a peaked profile
    double dt = 1e-3;
    double T = 5.0;
    std::size_t stride = 100;
};

struct RunConfig {
    std::string command = "simulate";
    std::string equation = "ch";
    double L = 40.0;
    std::size_t N = 1024;
    experiments::Profile initial;
    SolverConfig solver;
    bool T_auto = true;  // solver.T absent or 0: use suggested_T
    bool write_states = false;
    PicardSettings picard;
    ExperimentSettings experiment;
    AuditSettings audit;
    PeakonSettings peakon;
    std::filesystem::path out = "out";
    std::uint64_t seed = 0;
};

inline const std::vector<std::string> kCommands{"simulate", "stability", "dependence", "besov-audit",
                                                "peakon",   "picard",    "w1inf-demo"};

/// Validates every key (unknown keys are errors) and fills a RunConfig.
RunConfig resolve(const Table& table);

}  // namespace chlab::config
