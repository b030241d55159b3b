#include "nadc/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nadc::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string normalize_key(std::string key) {
    for (char& c : key) {
        c = c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return key;
}

double to_double(std::string_view key, std::string_view value) {
    const std::string text = trim(value);
    double out = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        throw ConfigError("invalid number for '" + std::string(key) + "': '" + text + "'");
    }
    return out;
}

int to_int(std::string_view key, std::string_view value) {
    const std::string text = trim(value);
    int out = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("invalid integer for '" + std::string(key) + "': '" + text + "'");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view value) {
    const std::string text = normalize_key(trim(value));
    if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
    if (text == "0" || text == "false" || text == "no" || text == "off") return false;
    throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + text + "'");
}

const std::vector<std::string> kKeys = {
    "lambda1", "lambda2",      "lambda3",      "alpha",       "phase",
    "alpha1",  "alpha2",       "alpha3",       "phase1",      "phase2",
    "phase3",  "mode",         "t",            "t_start",     "t_stop",
    "t_count", "n_max",        "theta_points", "wigner_width", "wigner_resolution",
    "wigner_q", "cutoff",      "tolerance_scale", "method",   "output",
    "format"};

}  // namespace

std::vector<double> TimeSpec::values() const {
    if (count <= 1) return {start};
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
    out.back() = stop;
    return out;
}

CouplerParams RunConfig::params() const {
    CouplerParams p = CouplerParams::restricted(lambda1);
    if (lambda2) p.lambda2 = *lambda2;
    if (lambda3) p.lambda3 = *lambda3;
    p.alpha1 = std::polar(alpha_abs[0], alpha_phase[0]);
    p.alpha2 = std::polar(alpha_abs[1], alpha_phase[1]);
    p.alpha3 = std::polar(alpha_abs[2], alpha_phase[2]);
    return p;
}

void RunConfig::validate() const {
    if (!(lambda1 > 0.0)) throw ConfigError("lambda1 must be > 0");
    if (lambda2 && *lambda2 < 0.0) throw ConfigError("lambda2 must be >= 0");
    if (lambda3 && *lambda3 < 0.0) throw ConfigError("lambda3 must be >= 0");
    for (double a : alpha_abs) {
        if (a < 0.0) throw ConfigError("amplitude moduli must be >= 0");
    }
    if (time.count < 1) throw ConfigError("t_count must be >= 1");
    if (time.count == 1 && time.stop != time.start && time.stop != 0.0) {
        // t_stop without t_count is almost certainly a mistake
        throw ConfigError("t_stop given but t_count < 2");
    }
    if (n_max && *n_max < 0) throw ConfigError("n_max must be >= 0");
    if (theta_points < 2) throw ConfigError("theta_points must be >= 2");
    if (wigner_resolution < 2) throw ConfigError("wigner_resolution must be >= 2");
    if (!(wigner_half_width > 0.0)) throw ConfigError("wigner_width must be > 0");
    if (cutoff < 1) throw ConfigError("cutoff must be >= 1");
    if (!(tolerance_scale > 0.0)) throw ConfigError("tolerance_scale must be > 0");
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key = normalize_key(trim(std::string_view(content).substr(0, eq)));
        std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        out[std::move(key)] = std::move(value);
    }
    return out;
}

void apply_setting(RunConfig& c, std::string key, std::string_view value) {
    key = normalize_key(std::move(key));
    auto amp_index = [&](char digit) { return static_cast<std::size_t>(digit - '1'); };

    if (key == "lambda1") {
        c.lambda1 = to_double(key, value);
    } else if (key == "lambda2") {
        c.lambda2 = to_double(key, value);
    } else if (key == "lambda3") {
        c.lambda3 = to_double(key, value);
    } else if (key == "alpha") {
        c.alpha_abs.fill(to_double(key, value));
    } else if (key == "phase") {
        c.alpha_phase.fill(to_double(key, value));
    } else if (key.size() == 6 && key.starts_with("alpha") && key[5] >= '1' && key[5] <= '3') {
        c.alpha_abs[amp_index(key[5])] = to_double(key, value);
    } else if (key.size() == 6 && key.starts_with("phase") && key[5] >= '1' && key[5] <= '3') {
        c.alpha_phase[amp_index(key[5])] = to_double(key, value);
    } else if (key == "mode") {
        try {
            c.mode = parse_mode(normalize_key(trim(value)));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "t") {
        c.time.start = c.time.stop = to_double(key, value);
        c.time.count = 1;
    } else if (key == "t_start") {
        c.time.start = to_double(key, value);
    } else if (key == "t_stop") {
        c.time.stop = to_double(key, value);
    } else if (key == "t_count") {
        c.time.count = to_int(key, value);
    } else if (key == "n_max") {
        c.n_max = to_int(key, value);
    } else if (key == "theta_points") {
        c.theta_points = to_int(key, value);
    } else if (key == "wigner_width") {
        c.wigner_half_width = to_double(key, value);
    } else if (key == "wigner_resolution") {
        c.wigner_resolution = to_int(key, value);
    } else if (key == "wigner_q") {
        c.wigner_q = to_bool(key, value);
    } else if (key == "cutoff") {
        c.cutoff = to_int(key, value);
    } else if (key == "tolerance_scale") {
        c.tolerance_scale = to_double(key, value);
    } else if (key == "method") {
        const std::string m = normalize_key(trim(value));
        if (m == "auto") c.method = CoefficientMethod::Auto;
        else if (m == "analytic") c.method = CoefficientMethod::Analytic;
        else if (m == "numeric") c.method = CoefficientMethod::Numeric;
        else throw ConfigError("method must be auto, analytic or numeric");
    } else if (key == "output") {
        c.output = trim(value);
    } else if (key == "format") {
        const std::string f = normalize_key(trim(value));
        if (f == "csv") c.format = OutputFormat::Csv;
        else if (f == "json") c.format = OutputFormat::Json;
        else throw ConfigError("format must be csv or json");
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void apply_settings(RunConfig& config, const std::map<std::string, std::string>& settings) {
    // t first so that an explicit grid (t_start/t_stop/t_count) in the same file wins.
    if (const auto it = settings.find("t"); it != settings.end()) {
        apply_setting(config, it->first, it->second);
    }
    for (const auto& [key, value] : settings) {
        if (key != "t") apply_setting(config, key, value);
    }
}

void load_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    apply_settings(config, parse_key_values(buffer.str()));
}

std::vector<std::string> known_keys() { return kKeys; }

}  // namespace nadc::cli
