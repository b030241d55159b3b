#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace nadc::cli {

/// A table of numbers plus the metadata needed to reproduce it.
struct Dataset {
    std::string command;
    std::vector<std::pair<std::string, std::string>> metadata;  // emitted in insertion order
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> warnings;

    void add_meta(std::string key, std::string value);
    void add_meta(std::string key, double value);
    void add_meta(std::string key, int value);
};

/// "%.17g"; non-finite values print as nan/inf/-inf.
std::string format_number(double value);

std::string library_version();

/// `# key: value` comment block, header row, one data row per line.
void write_csv(const Dataset& data, std::ostream& out);

/// {"metadata": {...}, "warnings": [...], "columns": [...], "data": [[...], ...]}
/// with numbers in the same 17-digit format as the CSV writer.
void write_json(const Dataset& data, std::ostream& out);

}  // namespace nadc::cli
