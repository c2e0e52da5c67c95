#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "goodwin/country_data.hpp"

namespace goodwin {

/// Maps canonical column names (e.g. "employees") to the names used in a
/// particular data file.  Unlisted columns keep their canonical name.
using ColumnMap = std::map<std::string, std::string>;

/**
 * Loads one country's annual inputs from a comma-separated file.
 *
 * The first header field must be "year"; remaining columns are matched by
 * name, after applying `columns`.  Years must increase by exactly one.
 * When `window` is set, rows are restricted to it; the window is clamped to
 * the data range and EmptyWindow is thrown when nothing remains.
 *
 * Throws IoFailure when the file cannot be read, MissingColumn when a
 * required column is absent, MalformedRow (with the 1-based line number)
 * when a row fails to parse, GapInYears on missing years.
 */
[[nodiscard]] CountrySeries load_country_csv(const std::filesystem::path& path,
                                             const std::string& country,
                                             std::optional<YearWindow> window = {},
                                             const ColumnMap& columns = {});

/**
 * Reads a "canonical=source" mapping file: one pair per line, '#' starts a
 * comment, blank lines are ignored, whitespace around keys and values is
 * trimmed.  Throws IoFailure or MalformedRow.
 */
[[nodiscard]] ColumnMap load_column_map(const std::filesystem::path& path);

}  // namespace goodwin
