#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "scbench/correlation.hpp"
#include "scbench/downsample.hpp"
#include "scbench/evaluation.hpp"
#include "scbench/pipeline.hpp"
#include "scbench/reference.hpp"
#include "scbench/stats_comparison.hpp"
#include "scbench/synthetic.hpp"

namespace scbench {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

/// Correlation matrix distance as reported alongside every CMD value.
inline constexpr const char* kCmdFormula = "1 - trace(R1*R2) / (||R1||_F * ||R2||_F)";

Json to_json(const Preprocess& pre);
Json to_json(const ReferenceFilterConfig& cfg);
Json to_json(const FilterReport& report);
Json to_json(const SyntheticConfig& cfg);
Json to_json(const Quantiles& q);
Json to_json(const ClusteringSpec& spec);
Json to_json(const MetricsReport& report);

/// {mode, seed, mean_efficiency, efficiency_cv, ipf: {...}, clamp_events}
Json downsample_provenance(const DownsampleConfig& cfg, const ScaledReference* ipf,
                           std::size_t clamp_events);

/// Three paired correlations plus the mode used.
Json stats_summary_json(const StatsComparison& cmp);

/// Empty optional serializes as null.
Json optional_number(const std::optional<double>& v);

/// Writes `doc` with two-space indentation and a trailing newline.
void write_json(const Json& doc, const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

}  // namespace scbench
