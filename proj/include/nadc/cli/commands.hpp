#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nadc/cli/config.hpp"
#include "nadc/cli/figures.hpp"
#include "nadc/cli/output.hpp"

namespace nadc::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitConfigError = 2,
    kExitNumericRange = 3,
};

Dataset coeffs_dataset(const RunConfig& config);
Dataset variances_dataset(const RunConfig& config);
Dataset pnd_dataset(const RunConfig& config);
Dataset phase_dataset(const RunConfig& config);
Dataset wigner_dataset(const RunConfig& config);
Dataset figure_dataset(const FigurePreset& preset);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Errors go to `err` as
///   nadc: error: <message> [code=<config_error|numeric_range|verification_failed>]
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nadc::cli
