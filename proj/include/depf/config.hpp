#pragma once

#include <map>
#include <string>
#include <vector>

#include "depf/sweep.hpp"

namespace depf {

/// Flat `key = value` file; `#` starts a comment, lists are comma-separated.
/// Unknown keys raise InvalidConfig. Values use the same vocabulary as the
/// matching CLI flags (flags win over file entries).
std::map<std::string, std::string> parse_config_file(const std::string& path);

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& field);
std::vector<double> parse_double_list(const std::string& text, const std::string& field);
std::vector<Variant> parse_variants(const std::string& text, const std::string& field);
std::vector<PriorFamilyKind> parse_priors(const std::string& text, const std::string& field);
AvgStepMode parse_avg_step_mode(const std::string& text, const std::string& field);
OutputFormat parse_format(const std::string& text, const std::string& field);
std::uint64_t parse_u64(const std::string& text, const std::string& field);

/// The config-file keys a sweep accepts (mirrors the CLI flag names).
const std::vector<std::string>& config_keys();

/// Apply one key's value onto the config. Throws InvalidConfig for unknown
/// keys or malformed values. `out` and `format` land in the two out-params.
void apply_config_entry(SweepConfig& cfg, std::string& out_path, OutputFormat& format,
                        const std::string& key, const std::string& value);

}  // namespace depf
