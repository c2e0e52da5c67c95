#include "goodwin/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "goodwin/errors.hpp"
#include "text_util.hpp"

namespace goodwin {

namespace {

using detail::trim;

[[noreturn]] void bad(const std::filesystem::path& path, std::size_t line_no,
                      const std::string& why) {
    throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + why);
}

template <typename Int>
Int parse_int(const std::string& field, const std::filesystem::path& path,
              std::size_t line_no) {
    Int value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        bad(path, line_no, "cannot parse integer '" + field + "'");
    }
    return value;
}

YearWindow parse_window(const std::string& value, const std::filesystem::path& path,
                        std::size_t line_no) {
    const auto parts = detail::split(value, ',');
    if (parts.size() != 2) bad(path, line_no, "window must be 'first,last'");
    YearWindow w{parse_int<int>(parts[0], path, line_no),
                 parse_int<int>(parts[1], path, line_no)};
    if (w.first > w.last) bad(path, line_no, "window is inverted");
    return w;
}

}  // namespace

std::vector<CountryConfig> default_countries() {
    static const char* kIds[] = {"Australia", "Canada", "Denmark", "Finland", "France",
                                 "Germany",   "Italy",  "Norway",  "UK",      "US"};
    std::vector<CountryConfig> out;
    for (const char* id : kIds) out.push_back({id, default_window(id)});
    return out;
}

YearWindow default_window(const std::string& country) {
    if (country == "Germany") return {1960, 1990};
    return {1960, 2010};
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open config " + path.string());

    PipelineConfig cfg;
    std::vector<std::string> country_ids;
    std::optional<YearWindow> window_default;
    std::map<std::string, YearWindow> window_by_country;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) bad(path, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) bad(path, line_no, "empty key or value");

        if (key == "data_dir") {
            cfg.data_dir = value;
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "countries") {
            country_ids = detail::split(value, ',');
        } else if (key == "window.default") {
            window_default = parse_window(value, path, line_no);
        } else if (key.rfind("window.", 0) == 0) {
            window_by_country[key.substr(7)] = parse_window(value, path, line_no);
        } else if (key == "max_lag_p") {
            cfg.max_lag_p = parse_int<std::size_t>(value, path, line_no);
            if (cfg.max_lag_p == 0) bad(path, line_no, "max_lag_p must be >= 1");
        } else if (key == "adf_spec") {
            if (value == "constant") cfg.adf_spec = DeterministicSpec::kConstant;
            else if (value == "constant_trend") cfg.adf_spec = DeterministicSpec::kConstantTrend;
            else bad(path, line_no, "adf_spec must be constant or constant_trend");
        } else if (key == "k_deflator") {
            if (value == "gdp") cfg.k_deflator = KDeflator::kGdpDeflator;
            else if (value == "investment") cfg.k_deflator = KDeflator::kInvestmentDeflator;
            else bad(path, line_no, "k_deflator must be gdp or investment");
        } else if (key == "mse_mode") {
            if (value == "joint") cfg.mse_mode = OrbitSelection::kJoint;
            else if (value == "per_variable") cfg.mse_mode = OrbitSelection::kPerVariable;
            else bad(path, line_no, "mse_mode must be joint or per_variable");
        } else if (key == "seed") {
            cfg.seed = parse_int<std::uint64_t>(value, path, line_no);
        } else if (key == "column_map") {
            cfg.column_map_path = path.parent_path() / value;
        } else {
            bad(path, line_no, "unknown key '" + key + "'");
        }
    }
    if (in.bad()) throw IoFailure("error while reading " + path.string());

    if (country_ids.empty()) {
        cfg.countries = default_countries();
        for (auto& c : cfg.countries) {
            if (auto it = window_by_country.find(c.name); it != window_by_country.end()) {
                c.window = it->second;
            } else if (window_default) {
                c.window = *window_default;
            }
        }
    } else {
        for (const std::string& id : country_ids) {
            if (id.empty()) throw ConfigError(path.string() + ": empty country id");
            CountryConfig c{id, default_window(id)};
            if (auto it = window_by_country.find(id); it != window_by_country.end()) {
                c.window = it->second;
            } else if (window_default) {
                c.window = *window_default;
            }
            cfg.countries.push_back(std::move(c));
        }
    }
    if (cfg.data_dir.empty()) {
        throw ConfigError(path.string() + ": data_dir is required (or set GOODWIN_DATA_DIR)");
    }
    return cfg;
}

void apply_env_overrides(PipelineConfig& cfg) {
    if (const char* v = std::getenv("GOODWIN_DATA_DIR"); v != nullptr && *v != '\0') {
        cfg.data_dir = v;
    }
    if (const char* v = std::getenv("GOODWIN_OUTPUT_DIR"); v != nullptr && *v != '\0') {
        cfg.output_dir = v;
    }
}

std::string canonical_description(const PipelineConfig& cfg) {
    std::ostringstream out;
    out << "data_dir=" << cfg.data_dir.generic_string() << '\n';
    out << "output_dir=" << cfg.output_dir.generic_string() << '\n';
    out << "countries=";
    for (std::size_t i = 0; i < cfg.countries.size(); ++i) {
        const CountryConfig& c = cfg.countries[i];
        if (i != 0) out << ',';
        out << c.name << ':' << c.window.first << '-' << c.window.last;
    }
    out << '\n';
    out << "max_lag_p=" << cfg.max_lag_p << '\n';
    out << "adf_spec="
        << (cfg.adf_spec == DeterministicSpec::kConstant ? "constant" : "constant_trend")
        << '\n';
    out << "k_deflator="
        << (cfg.k_deflator == KDeflator::kGdpDeflator ? "gdp" : "investment") << '\n';
    out << "mse_mode="
        << (cfg.mse_mode == OrbitSelection::kJoint ? "joint" : "per_variable") << '\n';
    out << "seed=" << cfg.seed << '\n';
    out << "column_map=" << cfg.column_map_path.generic_string() << '\n';
    return out.str();
}

std::string config_hash(const PipelineConfig& cfg) {
    const std::string text = canonical_description(cfg);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* kHex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace goodwin
