#include "goodwin/csv_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "goodwin/errors.hpp"
#include "text_util.hpp"

namespace goodwin {

namespace {

using detail::trim;

std::vector<std::string> split_fields(const std::string& line) {
    return detail::split(line, ',');
}

[[noreturn]] void malformed(const std::filesystem::path& path, std::size_t line_no,
                            const std::string& why) {
    throw MalformedRow(path.string() + ":" + std::to_string(line_no) + ": " + why);
}

double parse_number(const std::string& field, const std::filesystem::path& path,
                    std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        malformed(path, line_no, "cannot parse numeric field '" + field + "'");
    }
    return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    if (in.bad()) throw IoFailure("error while reading " + path.string());
    return lines;
}

}  // namespace

CountrySeries load_country_csv(const std::filesystem::path& path,
                               const std::string& country,
                               std::optional<YearWindow> window,
                               const ColumnMap& columns) {
    static constexpr const char* kCanonical[] = {
        "gdp_current",       "net_taxes",
        "gdp_deflator",      "compensation",
        "employees",         "self_employed",
        "unemployed",        "net_capital_stock",
        "consumption_fixed_capital", "investment_deflator",
        "gross_capital_formation",
    };
    constexpr std::size_t kNumColumns = std::size(kCanonical);

    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw MalformedRow(path.string() + ": file is empty");

    const std::vector<std::string> header = split_fields(lines[0]);
    if (header.empty() || header[0] != "year") {
        throw MissingColumn(path.string() + ": first column must be 'year'");
    }

    std::size_t index[kNumColumns];
    for (std::size_t c = 0; c < kNumColumns; ++c) {
        const auto it = columns.find(kCanonical[c]);
        const std::string& wanted = (it != columns.end()) ? it->second : kCanonical[c];
        const auto pos = std::find(header.begin(), header.end(), wanted);
        if (pos == header.end()) {
            throw MissingColumn(path.string() + ": missing column '" + wanted + "'");
        }
        index[c] = static_cast<std::size_t>(pos - header.begin());
    }

    std::vector<int> years;
    std::vector<double> data[kNumColumns];
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (trim(lines[i]).empty()) continue;  // ignore trailing blank lines
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != header.size()) {
            malformed(path, line_no,
                      "expected " + std::to_string(header.size()) + " fields, got " +
                          std::to_string(fields.size()));
        }
        const double year_val = parse_number(fields[0], path, line_no);
        const int year = static_cast<int>(year_val);
        if (static_cast<double>(year) != year_val) {
            malformed(path, line_no, "year must be an integer");
        }
        if (!years.empty()) {
            if (year == years.back() + 1) {
                // consecutive, fine
            } else if (year <= years.back()) {
                malformed(path, line_no, "years must increase");
            } else {
                throw GapInYears(path.string() + ":" + std::to_string(line_no) +
                                 ": missing year " + std::to_string(years.back() + 1));
            }
        }
        years.push_back(year);
        for (std::size_t c = 0; c < kNumColumns; ++c) {
            data[c].push_back(parse_number(fields[index[c]], path, line_no));
        }
    }
    if (years.empty()) throw MalformedRow(path.string() + ": no data rows");

    int first = years.front();
    int last = years.back();
    if (window) {
        first = std::max(first, window->first);
        last = std::min(last, window->last);
        if (first > last) {
            throw EmptyWindow(path.string() + ": no rows in " +
                              std::to_string(window->first) + "-" +
                              std::to_string(window->last));
        }
    }
    const std::size_t offset = static_cast<std::size_t>(first - years.front());
    const std::size_t count = static_cast<std::size_t>(last - first + 1);

    auto make = [&](std::size_t c) {
        std::vector<double> v(data[c].begin() + static_cast<std::ptrdiff_t>(offset),
                              data[c].begin() + static_cast<std::ptrdiff_t>(offset + count));
        return AnnualSeries(first, std::move(v), kCanonical[c]);
    };
    return CountrySeries{country,  make(0), make(1), make(2), make(3), make(4),
                         make(5),  make(6), make(7), make(8), make(9), make(10)};
}

ColumnMap load_column_map(const std::filesystem::path& path) {
    const std::vector<std::string> lines = read_lines(path);
    ColumnMap map;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line = lines[i];
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw MalformedRow(path.string() + ":" + std::to_string(i + 1) +
                               ": expected 'canonical=source'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw MalformedRow(path.string() + ":" + std::to_string(i + 1) +
                               ": empty key or value");
        }
        map[key] = value;
    }
    return map;
}

}  // namespace goodwin
