#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "goodwin/country_data.hpp"
#include "goodwin/dynamics.hpp"

namespace goodwin {

/**
 * Recipe for a synthetic test country with known ground truth.
 *
 * Productivity and the labor force are exact exponentials in the truth's
 * alpha and beta; the capital-to-output ratio, depreciation rate and
 * accumulation rate are exactly constant at nu, delta and k; real wage
 * growth follows z_t = gamma + rho*lambda_t + noise with the employment
 * rate a mean-reverting process reflected inside a band. Every nominal
 * input is then back-constructed so that `derive` reproduces these
 * variables exactly.
 */
struct FixtureRecipe {
    std::string name = "goodwinia";
    int first_year = 1960;
    int last_year = 2010;
    std::uint64_t seed = 1;
    GoodwinParams truth;            // defaults to fixture_truth()
    double lambda_center = 0.93;    // matches the truth's equilibrium rate
    double lambda_band = 0.05;      // reflection half-width
    double lambda_persistence = 0.9;
    double lambda_innovation_sd = 0.012;
    double noise_sd = 1e-3;         // wage-equation residual sd
    std::optional<int> break_year;  // switch the wage-equation slope here
    double rho_after_break = 0.5;
};

/// The frozen ground-truth parameter set shared by the bundled fixtures.
[[nodiscard]] GoodwinParams fixture_truth();

/// Well-behaved fixture: every pipeline stage passes on it.
[[nodiscard]] FixtureRecipe stable_fixture_recipe();

/// Same process with a wage-equation slope jump mid-sample, so the
/// parameter-stability tests flag it while the run still completes.
[[nodiscard]] FixtureRecipe break_fixture_recipe();

/// Generates the raw national-accounts inputs for a recipe.
[[nodiscard]] CountrySeries make_fixture_country(const FixtureRecipe& recipe);

/// Writes <dir>/<name>.csv at full precision (round-trips exactly through
/// load_country_csv). Returns the path written; throws IoFailure.
std::filesystem::path write_fixture_csv(const CountrySeries& raw,
                                        const std::filesystem::path& dir);

}  // namespace goodwin
