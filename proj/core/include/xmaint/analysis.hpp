#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xmaint/composite.hpp"
#include "xmaint/config.hpp"
#include "xmaint/debt_models.hpp"
#include "xmaint/duplication.hpp"
#include "xmaint/error.hpp"
#include "xmaint/metrics.hpp"
#include "xmaint/rules.hpp"

namespace xmaint {

/// In-memory source file, used by tests and by the file-system front end.
struct SourceText {
    std::string path;  ///< project-relative
    std::string profile_id;
    std::string content;
};

struct ProjectAnalysis {
    std::string project_id;
    std::vector<FileMetrics> files;  ///< sorted by path
    ProjectMetrics metrics;
    DuplicationReport duplication;
    std::map<std::string, RuleSet> rule_sets;  ///< by profile id, profiles present in the project
    std::vector<Violation> violations;         ///< sorted
    std::optional<MiResult> mi;                ///< absent when the project has no units
    std::optional<TdrResult> tdr;              ///< absent without any code line
    SigResult sig;
    double cost_per_line{30};
    Diagnostics diagnostics;  ///< sorted

    /// Enabled canonical rule ids shared by every profile of the project.
    [[nodiscard]] std::vector<RuleId> rule_ids() const;
};

/// Overrides applied to a rule set before checking, e.g. the intersection in compare mode.
using RuleSetOverride = std::map<std::string, RuleSet>;

/// Full pipeline over sources already in memory: tokenize, classify, units,
/// metrics, duplication, rules, MI, TDR and SIG. Files whose content is not
/// UTF-8 are dropped with an EncodingError diagnostic. Throws
/// Error(empty_project) when no file survives.
ProjectAnalysis analyze_sources(std::string project_id, std::vector<SourceText> sources, const Config& config,
                                const RuleSetOverride* rule_sets = nullptr);

/// Discovers and reads the files below `root`, then runs analyze_sources.
/// Reading is spread over config.workers threads; the result does not depend on
/// the worker count.
ProjectAnalysis analyze_path(const std::filesystem::path& root, const Config& config,
                             const RuleSetOverride* rule_sets = nullptr, std::string project_id = {});

/// Default project id for a root path: the last path component.
std::string project_id_for(const std::filesystem::path& root);

struct Comparison {
    std::vector<ProjectAnalysis> projects;  ///< in argument order
    RuleIntersection intersection;
    std::vector<CompositeScore> scores;     ///< ranked
    std::optional<SensitivityReport> sensitivity;
};

/// Compare mode: intersects the rule sets of every profile involved, checks
/// single counting and the production-effort estimator, analyzes each project
/// with the shared rules and ranks the composite scores. Throws
/// Error(single_project) for fewer than two projects.
Comparison compare_paths(const std::vector<std::filesystem::path>& roots, const Config& config);

/// Same as compare_paths on already gathered sources (project id -> files).
Comparison compare_sources(std::vector<std::pair<std::string, std::vector<SourceText>>> projects,
                           const Config& config);

/// Indicator raw values of an analysis under the given configuration.
ProjectIndicators project_indicators(const ProjectAnalysis& analysis, const CompositeConfig& config);

} // namespace xmaint
