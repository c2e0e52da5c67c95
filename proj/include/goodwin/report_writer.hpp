#pragma once

#include <filesystem>
#include <vector>

#include "goodwin/config.hpp"
#include "goodwin/pipeline.hpp"

namespace goodwin {

/**
 * Writes the study artifacts under cfg.output_dir (created on demand):
 * the four main tables and eight appendix tables as CSV (with unweighted
 * Average rows where the layout has one), per-country derived-variable,
 * trajectory and stability-path files for external plotting, and a run
 * summary listing warnings and failures. Every file starts with a
 * "# config <hash>" comment; equal inputs produce byte-identical files.
 * Missing stages print as NA. Returns the paths written; throws IoFailure.
 */
std::vector<std::filesystem::path> emit_reports(const std::vector<CountryReport>& reports,
                                                const PipelineConfig& cfg);

}  // namespace goodwin
