#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "xmaint/analysis.hpp"
#include "xmaint/config.hpp"

namespace xmaint {

// Rounding used for every number that reaches a report, so output is byte-stable.
double round_ratio(double v) noexcept;    ///< 4 decimals
double round_score(double v) noexcept;    ///< 2 decimals
long long round_minutes(double v) noexcept;

/// Flat, rounded key -> value view of one analysis (also the snapshot summary).
/// Keys: fileCount, totalLoc, physicalLines, codeLines, commentLines, blankLines,
/// mixedLines, commentRatio, unitCount, aHV, aCC, aLOC, maxCc,
/// tokenDuplicationRatio, lineDuplicationRatio, cloneBlocks, violations,
/// remediationMinutes, productionMinutes, tdr, grade, mi, sigOverall.
nlohmann::json metrics_summary(const ProjectAnalysis& analysis);

nlohmann::json project_json(const ProjectAnalysis& analysis);
nlohmann::json comparison_json(const Comparison& comparison);

/// Complete report documents. `generated_at` is the only run-dependent field.
nlohmann::json analyze_report(const ProjectAnalysis& analysis, const Config& config, const std::string& generated_at);
nlohmann::json compare_report(const Comparison& comparison, const Config& config, const std::string& generated_at);

/// JSON text with sorted keys and a trailing newline.
std::string render_json(const nlohmann::json& report);
/// Markdown and CSV projections of a report document.
std::string render_markdown(const nlohmann::json& report);
std::string render_csv(const nlohmann::json& report);
std::string render(const nlohmann::json& report, ReportFormat format);

/// Current UTC time as ISO-8601 with microseconds, e.g. 2024-11-21T09:30:00.000000Z.
std::string utc_timestamp();

} // namespace xmaint
