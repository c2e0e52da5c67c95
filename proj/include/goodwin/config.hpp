#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "goodwin/country_data.hpp"
#include "goodwin/evaluation.hpp"
#include "goodwin/unit_root.hpp"

namespace goodwin {

/// One study country: its id (also the CSV base name) and sample window.
struct CountryConfig {
    std::string name;
    YearWindow window{1960, 2010};
};

/**
 * Everything the pipeline needs beyond the input files themselves.
 *
 * File format: one `key = value` pair per line, '#' comments. Keys:
 *   data_dir, output_dir, countries (comma-separated ids),
 *   window.default = first,last     window.<id> = first,last
 *   max_lag_p, adf_spec (constant | constant_trend),
 *   k_deflator (gdp | investment), mse_mode (joint | per_variable),
 *   seed, column_map (path to a name-mapping file, resolved against the
 *   config file's directory).
 *
 * Country data is read from <data_dir>/<id>.csv. Unless configured
 * otherwise, windows default to 1960-2010, except Germany (1960-1990,
 * stopping before reunification changes the statistical basis).
 */
struct PipelineConfig {
    std::filesystem::path data_dir;
    std::vector<CountryConfig> countries;
    std::size_t max_lag_p = 4;
    DeterministicSpec adf_spec = DeterministicSpec::kConstant;
    KDeflator k_deflator = KDeflator::kGdpDeflator;
    OrbitSelection mse_mode = OrbitSelection::kJoint;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 42;
    std::filesystem::path column_map_path;  // empty = identity mapping
};

/// The ten-country panel with default windows.
[[nodiscard]] std::vector<CountryConfig> default_countries();

/// Default window for a country id (1960-1990 for Germany, else 1960-2010).
[[nodiscard]] YearWindow default_window(const std::string& country);

/// Parses a config file. Unknown keys, bad enum values, inverted windows
/// and an empty country list raise ConfigError; unreadable files IoFailure.
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);

/// Applies GOODWIN_DATA_DIR and GOODWIN_OUTPUT_DIR environment overrides.
void apply_env_overrides(PipelineConfig& cfg);

/// Canonical one-line-per-field rendering; equal configs serialize equally.
[[nodiscard]] std::string canonical_description(const PipelineConfig& cfg);

/// 64-bit FNV-1a hash of the canonical description, as 16 hex digits.
/// Stamped into every output file header for reproducibility.
[[nodiscard]] std::string config_hash(const PipelineConfig& cfg);

}  // namespace goodwin
