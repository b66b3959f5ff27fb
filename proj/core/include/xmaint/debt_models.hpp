#pragma once

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "xmaint/metrics.hpp"
#include "xmaint/rules.hpp"

namespace xmaint {

// ------------------------------------------------------------------ MI

struct MiResult {
    double a_hv{0};
    double a_cc{0};
    double a_loc{0};
    double mi{0};
};

/// Visual Studio flavour of the Maintainability Index:
/// max(0, 100 * (171 - 5.2 ln(aHV) - 0.23 aCC - 16.2 ln(aLOC)) / 171).
/// aHV and aLOC below 1 are clamped to 1, negative aCC to 0.
MiResult maintainability_index(double a_hv, double a_cc, double a_loc) noexcept;

enum class MiModule { unit, file };

/// Uses the unit (or file) averages of the project; throws Error(missing_units).
MiResult maintainability_index(const ProjectMetrics& project, MiModule module = MiModule::unit);

// ------------------------------------------------------------------ SQALE

enum class Grade { A, B, C, D, E };

char to_char(Grade g) noexcept;

/// A=[0,5%], B=]5,10%], C=]10,20%], D=]20,50%], E above (including > 100%).
/// Throws Error(negative_tdr).
Grade tdr_grade(double tdr);

/// totalLoc * costPerLine minutes.
double production_effort(double total_loc, double cost_per_line_minutes);

struct TdrResult {
    double remediation_minutes{0};
    double production_minutes{0};
    double tdr{0};  ///< raw, may exceed 1
    Grade grade{Grade::A};
};

/// Throws Error(zero_production_effort) when production_minutes <= 0.
TdrResult technical_debt_ratio(std::span<const Violation> violations, double production_minutes);

/// Compared projects must price production effort the same way.
/// Throws Error(estimator_mismatch).
void require_same_estimator(std::span<const double> cost_per_line_minutes);

// ------------------------------------------------------------------ SIG

/// Closed upper bounds: low <= low_max < moderate <= moderate_max < high <= high_max < very high.
struct RiskBands {
    double low_max{10};
    double moderate_max{20};
    double high_max{50};
};

struct RiskProfile {
    double low{0};
    double moderate{0};
    double high{0};
    double very_high{0};
};

struct RiskSample {
    double value{0};
    double loc{0};
};

/// Share of LOC per risk band. Throws Error(no_units) for an empty sample
/// and Error(invalid_config) for non-increasing bands.
RiskProfile sig_risk_profile(std::span<const RiskSample> samples, const RiskBands& bands);

enum class SigMetric { cc, loc };

/// Risk profile over unit metrics; `loc` values are divided by the verbosity
/// factor of each unit's profile so that bands keep their meaning across languages.
RiskProfile sig_risk_profile(std::span<const UnitMetrics> units, SigMetric metric, const RiskBands& bands,
                             const std::map<std::string, double>& verbosity_by_profile = {});

struct RiskCaps {
    double moderate{1};
    double high{1};
    double very_high{1};
};

/// Ordered best first: (rating, caps). A profile meeting no row rates 1.
using RiskRatingTable = std::vector<std::pair<int, RiskCaps>>;

RiskRatingTable default_risk_rating_table();

int sig_rate_risk(const RiskProfile& profile, const RiskRatingTable& table);

struct Ladder {
    bool higher_is_better{false};
    std::vector<std::pair<double, int>> steps;  ///< (bound, rating), checked in order
    int fallback{1};
};

int sig_rate_scalar(double value, const Ladder& ladder);

enum class SigProperty { volume, complexity, duplication, unit_size, unit_testing };
enum class SigCharacteristic { analysability, changeability, stability, testability };

std::string_view to_string(SigProperty p) noexcept;
std::string_view to_string(SigCharacteristic c) noexcept;

using PropertyRatings = std::map<SigProperty, int>;
using SigMatrix = std::map<SigCharacteristic, std::vector<SigProperty>>;

SigMatrix default_sig_matrix();

struct SigResult {
    PropertyRatings properties;
    std::map<SigCharacteristic, double> characteristics;  ///< absent characteristics omitted
    std::optional<double> overall;
};

/// Each characteristic is the mean of its present properties; overall is the
/// mean of the present characteristics.
SigResult sig_characteristics(const PropertyRatings& ratings, const SigMatrix& matrix);

struct SigConfig {
    RiskBands cc_bands{10, 20, 50};
    RiskBands unit_size_bands{30, 60, 120};
    RiskRatingTable risk_ratings = default_risk_rating_table();
    Ladder volume{false, {{66000, 5}, {246000, 4}, {665000, 3}, {1310000, 2}}, 1};
    Ladder duplication{false, {{0.03, 5}, {0.05, 4}, {0.10, 3}, {0.20, 2}}, 1};
    Ladder unit_testing{true, {{0.95, 5}, {0.80, 4}, {0.60, 3}, {0.20, 2}}, 1};
    SigMatrix matrix = default_sig_matrix();
};

/// Full SIG assessment. Properties needing units are absent when there are none;
/// unit testing is present only when coverage is supplied.
SigResult sig_assess(std::span<const UnitMetrics> units, int total_loc, double duplication_ratio,
                     std::optional<double> coverage, const std::map<std::string, double>& verbosity_by_profile,
                     const SigConfig& config);

} // namespace xmaint
