#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nadc/coeffs.hpp"
#include "nadc/gaussian.hpp"

namespace nadc::cli {

/// Malformed command line or configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

enum class CoefficientMethod { Auto, Analytic, Numeric };

struct TimeSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    [[nodiscard]] bool is_grid() const { return count > 1; }
    [[nodiscard]] std::vector<double> values() const;
};

/// Run configuration. Amplitudes are given in polar form (modulus, phase in radians).
struct RunConfig {
    double lambda1 = 1.0;
    std::optional<double> lambda2;  // defaults to lambda1/sqrt(2)
    std::optional<double> lambda3;
    std::array<double, 3> alpha_abs{0.0, 0.0, 0.0};
    std::array<double, 3> alpha_phase{0.0, 0.0, 0.0};
    ModeId mode = ModeId::Signal;
    TimeSpec time;
    std::optional<int> n_max;
    int theta_points = 721;
    double wigner_half_width = 5.0;
    int wigner_resolution = 201;
    bool wigner_q = false;
    int cutoff = 15;
    double tolerance_scale = 1.0;
    CoefficientMethod method = CoefficientMethod::Auto;
    std::string output;
    OutputFormat format = OutputFormat::Csv;

    [[nodiscard]] CouplerParams params() const;
    /// Throws ConfigError.
    void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment, blank lines are ignored.
/// Keys are lower-cased with '-' folded to '_'. Duplicate keys: last wins.
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Applies one setting. Recognized keys:
///   lambda1 lambda2 lambda3 alpha phase alpha1..3 phase1..3 mode t t_start
///   t_stop t_count n_max theta_points wigner_width wigner_resolution wigner_q
///   cutoff tolerance_scale method output format
void apply_setting(RunConfig& config, std::string key, std::string_view value);

void apply_settings(RunConfig& config, const std::map<std::string, std::string>& settings);

/// Reads and applies a config file; throws ConfigError if it cannot be read.
void load_config_file(RunConfig& config, const std::string& path);

std::vector<std::string> known_keys();

}  // namespace nadc::cli
