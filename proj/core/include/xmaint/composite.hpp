#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xmaint/rules.hpp"

namespace xmaint {

enum class Indicator { comment_ratio, duplication_ratio, tdr, volumetry };

inline constexpr Indicator kAllIndicators[] = {Indicator::comment_ratio, Indicator::duplication_ratio,
                                               Indicator::tdr, Indicator::volumetry};

std::string_view to_string(Indicator i) noexcept;
std::optional<Indicator> parse_indicator(std::string_view text) noexcept;

enum class MappingShape { rising_linear, falling_linear, rising_then_falling, relative_min };

std::string_view to_string(MappingShape s) noexcept;
std::optional<MappingShape> parse_mapping_shape(std::string_view text) noexcept;

/// How a raw indicator value lands on the 0..100 reference scale.
///  - rising-linear: 0 at low, 100 at high
///  - falling-linear: 100 at low, 0 at high
///  - rising-then-falling: rising-linear up to high, then down with the same slope
///  - relative-min: falling-linear over value / min(values), bounds are multiples of the minimum
/// Values outside the bounds are clamped to [0, 100].
struct IndicatorMapping {
    Indicator indicator{Indicator::comment_ratio};
    MappingShape shape{MappingShape::rising_linear};
    double low{0};
    double high{1};
    double weight{0};
};

enum class DuplicationBasis { tokens, lines };

struct CompositeConfig {
    std::vector<IndicatorMapping> mappings;  ///< one per indicator, in kAllIndicators order
    DuplicationBasis duplication_basis{DuplicationBasis::tokens};
    double sensitivity_delta_pp{5};

    [[nodiscard]] const IndicatorMapping* find(Indicator i) const noexcept;
    [[nodiscard]] std::map<Indicator, double> weights() const;
    /// Throws Error(invalid_config): weights outside [0,1] or not summing to 1, low == high.
    void validate() const;
};

/// Weights 15/15/45/25; comment 15..40% rising then falling; duplication 5..15%
/// inversed; TDR 0..20% inversed; volumetry Min..1.5 x Min.
CompositeConfig default_composite_config();

double map_indicator(double value, const IndicatorMapping& mapping) noexcept;

/// TDR on the 0..100 scale with the default falling 0..20% mapping.
double map_tdr_indicator(double tdr);

/// Volumetry relative to the smallest compared project. Throws
/// Error(single_project) for fewer than two projects, Error(invalid_config)
/// for a non-positive LOC.
std::map<std::string, double> map_volumetry(const std::map<std::string, double>& loc_by_project,
                                            const IndicatorMapping& mapping);

struct IndicatorScore {
    double raw{0};
    double score{0};
};

struct ProjectIndicators {
    std::string project_id;
    std::optional<double> comment_ratio;
    std::optional<double> duplication_ratio;
    std::optional<double> tdr;
    std::optional<double> total_loc;
    double cost_per_line{30};
    std::vector<RuleId> rule_ids;  ///< enabled canonical ids the project was checked with
};

struct MappedProject {
    std::string project_id;
    std::map<Indicator, IndicatorScore> indicators;  ///< absent indicators omitted
};

struct CompositeScore {
    std::string project_id;
    std::map<Indicator, IndicatorScore> per_indicator;
    std::map<Indicator, double> weights;  ///< renormalized over present indicators
    double total{0};
    int rank{0};
};

/// Raw values to mapped scores. Volumetry is present only with >= 2 projects.
std::vector<MappedProject> map_projects(std::span<const ProjectIndicators> projects, const CompositeConfig& config);

/// Weighted totals with proportional redistribution of absent indicators,
/// ranked by descending total then project id.
std::vector<CompositeScore> aggregate_scores(std::span<const MappedProject> projects,
                                             const std::map<Indicator, double>& weights);

/// Checks estimator and rule-set consistency, maps and aggregates.
/// Throws Error(estimator_mismatch) or Error(rule_set_mismatch).
std::vector<CompositeScore> composite_score(std::span<const ProjectIndicators> projects,
                                            const CompositeConfig& config);

struct SingleCountingConflict {
    Indicator indicator;
    RuleId rule;
    std::string profile_id;
};

/// An attribute may be weighted as an indicator or charged as debt, not both.
std::vector<SingleCountingConflict> validate_single_counting(const CompositeConfig& config,
                                                            std::span<const RuleSet> rule_sets);

/// Throws Error(single_counting_violation) naming every conflicting pair.
void require_single_counting(const CompositeConfig& config, std::span<const RuleSet> rule_sets);

struct Perturbation {
    Indicator indicator{Indicator::comment_ratio};
    int direction{1};  ///< +1 or -1
    std::map<Indicator, double> weights;
    std::vector<CompositeScore> scores;  ///< ranked
    bool top1_changed{false};
    bool ranking_changed{false};
};

struct SensitivityReport {
    double delta_pp{5};
    std::vector<std::string> baseline_ranking;
    std::vector<Perturbation> perturbations;  ///< ordered by (indicator, +, -)
    bool top1_stable{true};
    bool full_ranking_stable{true};
    std::map<std::string, std::pair<double, double>> total_range;  ///< min/max total incl. baseline
};

/// Moves each weight by +/- delta percentage points (floored at 0),
/// renormalizes to 1 and re-ranks.
SensitivityReport sensitivity_analysis(std::span<const MappedProject> projects,
                                       const std::map<Indicator, double>& weights, double delta_pp);

} // namespace xmaint
