#pragma once

// Command-line front end: constants, roots, evaluate, search, dual, verify.
//
// Exit status: 0 success, 1 invariant breach (or a failed acceptance criterion),
// 2 bad input (flags, config file, parameters).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autocorr/errors.hpp"

namespace autocorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitBadInput = 2;

struct RunConfig {
    std::string command;
    std::string weight = "interval";
    double a = 2.0 * 3.14159265358979323846;
    double p_min = 2.0;
    double p_max = 12.0;
    std::string family;      // evaluate: gaussian|indicator|piecewise|bs-example; search: indicator|gaussian|piecewise
    std::string functional;  // mean|gauss|min12|min01
    std::size_t cells = 16;
    std::string support;     // piecewise search: "free" or a half-width; empty picks the default
    double b = 1.0;
    double half_width = 0.5;
    std::vector<double> values;
    std::string bump;        // dual: standard|cosine|betaK; empty runs the three default families
    double scale = 1.0;
    std::optional<std::size_t> budget;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::vector<int> criteria;  // verify: subset of 1..9
    std::string out;            // report directory
    std::string json;           // explicit JSON report path
    int inject_fault = 0;       // verify, test mode only
};

// Bad config file or flag combination. line is 0 when not tied to a file line.
class ConfigError : public PreconditionError {
public:
    ConfigError(const std::string& message, std::string key, int line)
        : PreconditionError(message), key_(std::move(key)), line_(line) {}
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

// Strict JSON config: every key must be a RunConfig field (underscored), with the right type.
// Values are applied on top of `base`.
RunConfig load_config(const std::string& path, RunConfig base = {});

// Fill command-dependent defaults (family, functional, budget, support).
RunConfig resolve(RunConfig config);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Write via a sibling temporary file and rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace autocorr::cli
