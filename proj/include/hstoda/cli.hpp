#pragma once

#include "hstoda/dynamics.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hstoda {

// Config schema violation (exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { exit_ok = 0, exit_checks_failed = 1, exit_config = 2, exit_numerical = 3 };

enum class RunMode { verify, simulate, casimir, closed_form, sweep };

struct RunConfig {
    RunMode mode = RunMode::simulate;
    int n = 0;
    std::uint64_t seed = 0;
    std::optional<DeformationSequence> a;
    std::optional<DeformationSequence> b;
    nlohmann::json bracket = nlohmann::json::object();
    nlohmann::json hamiltonian;
    nlohmann::json initial = nlohmann::json::object();
    IntegratorConfig integrator;
    std::vector<InvariantId> watch;
    std::vector<std::string> plot_coordinates;
    std::vector<InvariantId> plot_invariants;
    nlohmann::json closed_form = nlohmann::json::object();
    nlohmann::json sweep = nlohmann::json::object();
    std::filesystem::path out_dir = "out";
    nlohmann::json raw;
};

// Throws ConfigError on schema violations.
RunConfig parse_config(const nlohmann::json& j);

// Runs one config, writing artifacts under cfg.out_dir; returns the exit code.
// Numerical failures are written to error.json.
int run(const RunConfig& cfg);

// Reads the file, applies the --seed / --out overlay, and runs.
int run_file(const std::filesystem::path& config, std::optional<std::uint64_t> seed,
             std::optional<std::filesystem::path> out);

// Gnuplot-ready CSV: t, the selected coordinate columns, then the selected
// invariants.  An empty selection yields the header line only.
std::string emit_plot_columns(const Trajectory& traj, const std::vector<std::string>& coordinates,
                              const std::vector<std::pair<std::string, TrajectoryFunction>>& invariants);

// Full trajectory CSV with header "t,<names>".
std::string trajectory_csv(const Trajectory& traj);

// Locale-independent shortest round-trip formatting.
std::string format_double(double x);

// ---- verification suite ------------------------------------------------------------

struct VerifyCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

std::vector<VerifyCheck> run_verify_suite(int n, const DeformationSequence& a, std::mt19937_64& rng);

}  // namespace hstoda
