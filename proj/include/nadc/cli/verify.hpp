#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nadc::cli {

struct CheckResult {
    std::string group;
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t failures() const;
};

struct VerifyOptions {
    bool include_oracle = true;
    int oracle_start_cutoff = 15;
    /// Multiplies every tolerance.
    double tolerance_scale = 1.0;
};

/// Invariant, closed-form and oracle checks. Residuals are absolute unless
/// the check name says otherwise; a check passes when residual <= tolerance.
/// Contains no timing information, so repeated runs give identical reports.
VerifyReport run_verification(const VerifyOptions& options = {});

nlohmann::ordered_json to_json(const VerifyReport& report);

}  // namespace nadc::cli
