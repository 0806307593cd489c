#include "depf/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "depf/errors.hpp"

namespace depf {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item =
            trim(comma == std::string::npos ? text.substr(start)
                                            : text.substr(start, comma - start));
        if (!item.empty()) items.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return items;
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("config", "cannot open " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig("config",
                                "line " + std::to_string(lineno) + " is not key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw InvalidConfig("config", "line " + std::to_string(lineno) + " has no key");
        }
        entries[key] = value;
    }
    return entries;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& field) {
    std::vector<std::size_t> out;
    for (const std::string& item : split_list(text)) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
        if (end == item.c_str() || *end != '\0') {
            throw InvalidConfig(field, "'" + item + "' is not an integer");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw InvalidConfig(field, "list is empty");
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
    std::vector<double> out;
    for (const std::string& item : split_list(text)) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0') {
            throw InvalidConfig(field, "'" + item + "' is not a number");
        }
        out.push_back(v);
    }
    if (out.empty()) throw InvalidConfig(field, "list is empty");
    return out;
}

std::vector<Variant> parse_variants(const std::string& text, const std::string& field) {
    if (text == "tpf") return {Variant::Tpf};
    if (text == "depf") return {Variant::Depf};
    if (text == "both") return {Variant::Tpf, Variant::Depf};
    throw InvalidConfig(field, "'" + text + "' is not one of tpf|depf|both");
}

std::vector<PriorFamilyKind> parse_priors(const std::string& text, const std::string& field) {
    std::vector<PriorFamilyKind> out;
    for (const std::string& item : split_list(text)) {
        if (item == "all") {
            out = {PriorFamilyKind::Uniform,     PriorFamilyKind::Beta,
                   PriorFamilyKind::Gaussian,    PriorFamilyKind::Dirichlet,
                   PriorFamilyKind::Star,        PriorFamilyKind::QuarterRing,
                   PriorFamilyKind::HalfRing,    PriorFamilyKind::ThreeQuarterRing};
            continue;
        }
        bool found = false;
        for (int k = 0; k <= static_cast<int>(PriorFamilyKind::ThreeQuarterRing); ++k) {
            const auto kind = static_cast<PriorFamilyKind>(k);
            if (item == prior_name(kind)) {
                out.push_back(kind);
                found = true;
                break;
            }
        }
        if (!found) throw InvalidConfig(field, "'" + item + "' is not a known prior family");
    }
    if (out.empty()) throw InvalidConfig(field, "list is empty");
    return out;
}

AvgStepMode parse_avg_step_mode(const std::string& text, const std::string& field) {
    if (text == "all") return AvgStepMode::AllTrials;
    if (text == "success-only") return AvgStepMode::SuccessOnly;
    throw InvalidConfig(field, "'" + text + "' is not one of all|success-only");
}

OutputFormat parse_format(const std::string& text, const std::string& field) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw InvalidConfig(field, "'" + text + "' is not one of csv|json");
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
        throw InvalidConfig(field, "'" + text + "' is not an unsigned integer");
    }
    return v;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "dims",   "particles",  "exploration_ratios", "priors", "scopes",
        "trials", "iterations", "variant",            "seed",   "out",
        "format", "jobs",       "avg_step_mode"};
    return keys;
}

void apply_config_entry(SweepConfig& cfg, std::string& out_path, OutputFormat& format,
                        const std::string& key, const std::string& value) {
    if (key == "dims") {
        cfg.dims = parse_size_list(value, key);
    } else if (key == "particles") {
        cfg.particle_counts = parse_size_list(value, key);
    } else if (key == "exploration_ratios") {
        cfg.exploration_ratios = parse_double_list(value, key);
    } else if (key == "priors") {
        cfg.priors = parse_priors(value, key);
    } else if (key == "scopes") {
        cfg.scopes = parse_double_list(value, key);
    } else if (key == "trials") {
        cfg.trials = parse_size_list(value, key).front();
    } else if (key == "iterations") {
        const std::size_t v = parse_size_list(value, key).front();
        if (cfg.phase == Phase::One) {
            cfg.iterations = v;
        } else {
            cfg.max_steps = v;
        }
    } else if (key == "variant") {
        cfg.variants = parse_variants(value, key);
    } else if (key == "seed") {
        cfg.base_seed = parse_u64(value, key);
    } else if (key == "out") {
        out_path = value;
    } else if (key == "format") {
        format = parse_format(value, key);
    } else if (key == "jobs") {
        cfg.jobs = parse_size_list(value, key).front();
    } else if (key == "avg_step_mode") {
        cfg.avg_step_mode = parse_avg_step_mode(value, key);
    } else {
        throw InvalidConfig(key, "unknown config key");
    }
}

}  // namespace depf
