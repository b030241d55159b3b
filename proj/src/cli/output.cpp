#include "nadc/cli/output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#ifndef NADC_VERSION
#define NADC_VERSION "unknown"
#endif

namespace nadc::cli {

namespace {

// JSON has no literal for non-finite numbers.
std::string json_number(double value) {
    if (!std::isfinite(value)) return "null";
    return format_number(value);
}

}  // namespace

void Dataset::add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

void Dataset::add_meta(std::string key, double value) {
    metadata.emplace_back(std::move(key), format_number(value));
}

void Dataset::add_meta(std::string key, int value) {
    metadata.emplace_back(std::move(key), std::to_string(value));
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string library_version() { return NADC_VERSION; }

void write_csv(const Dataset& data, std::ostream& out) {
    out << "# command: " << data.command << '\n';
    out << "# library_version: " << library_version() << '\n';
    for (const auto& [key, value] : data.metadata) out << "# " << key << ": " << value << '\n';
    for (const auto& w : data.warnings) out << "# warning: " << w << '\n';
    for (std::size_t i = 0; i < data.columns.size(); ++i) {
        out << (i ? "," : "") << data.columns[i];
    }
    out << '\n';
    for (const auto& row : data.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << '\n';
    }
}

void write_json(const Dataset& data, std::ostream& out) {
    nlohmann::ordered_json meta;
    meta["command"] = data.command;
    meta["library_version"] = library_version();
    for (const auto& [key, value] : data.metadata) meta[key] = value;

    out << "{\n\"metadata\": " << meta.dump() << ",\n";
    out << "\"warnings\": " << nlohmann::json(data.warnings).dump() << ",\n";
    out << "\"columns\": " << nlohmann::json(data.columns).dump() << ",\n";
    out << "\"data\": [";
    for (std::size_t r = 0; r < data.rows.size(); ++r) {
        out << (r ? ",\n" : "\n") << '[';
        const auto& row = data.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << json_number(row[i]);
        }
        out << ']';
    }
    out << "\n]\n}\n";
}

}  // namespace nadc::cli
