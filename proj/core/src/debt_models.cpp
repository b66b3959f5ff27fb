#include "xmaint/debt_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xmaint/error.hpp"

namespace xmaint {

MiResult maintainability_index(double a_hv, double a_cc, double a_loc) noexcept
{
    MiResult r{a_hv, a_cc, a_loc, 0.0};
    const double hv = std::max(1.0, a_hv);
    const double cc = std::max(0.0, a_cc);
    const double loc = std::max(1.0, a_loc);
    const double raw = 100.0 * (171.0 - 5.2 * std::log(hv) - 0.23 * cc - 16.2 * std::log(loc)) / 171.0;
    r.mi = std::max(0.0, raw);
    return r;
}

MiResult maintainability_index(const ProjectMetrics& project, MiModule module)
{
    const auto& averages = module == MiModule::unit ? project.unit_averages : project.file_averages;
    if (!averages) {
        throw Error(ErrorCode::missing_units, "maintainability index needs at least one unit");
    }
    return maintainability_index(averages->halstead_volume, averages->cc, averages->loc);
}

char to_char(Grade g) noexcept
{
    return static_cast<char>('A' + static_cast<int>(g));
}

Grade tdr_grade(double tdr)
{
    if (tdr < 0.0 || std::isnan(tdr)) {
        throw Error(ErrorCode::negative_tdr, "technical debt ratio must be >= 0");
    }
    if (tdr <= 0.05) return Grade::A;
    if (tdr <= 0.10) return Grade::B;
    if (tdr <= 0.20) return Grade::C;
    if (tdr <= 0.50) return Grade::D;
    return Grade::E;
}

double production_effort(double total_loc, double cost_per_line_minutes)
{
    if (!(cost_per_line_minutes > 0.0)) {
        throw Error(ErrorCode::invalid_config, "cost per line must be > 0");
    }
    return std::max(0.0, total_loc) * cost_per_line_minutes;
}

TdrResult technical_debt_ratio(std::span<const Violation> violations, double production_minutes)
{
    if (!(production_minutes > 0.0)) {
        throw Error(ErrorCode::zero_production_effort, "project has no lines of code to price");
    }
    TdrResult r;
    for (const auto& v : violations) r.remediation_minutes += v.effort_minutes;
    r.production_minutes = production_minutes;
    r.tdr = r.remediation_minutes / production_minutes;
    r.grade = tdr_grade(r.tdr);
    return r;
}

void require_same_estimator(std::span<const double> costs)
{
    for (double c : costs) {
        if (c != costs.front()) {
            throw Error(ErrorCode::estimator_mismatch,
                        "compared projects use different cost-per-line values for production effort");
        }
    }
}

RiskProfile sig_risk_profile(std::span<const RiskSample> samples, const RiskBands& bands)
{
    if (samples.empty()) {
        throw Error(ErrorCode::no_units, "risk profile needs at least one unit");
    }
    if (!(bands.low_max < bands.moderate_max && bands.moderate_max < bands.high_max)) {
        throw Error(ErrorCode::invalid_config, "risk bands must be strictly increasing");
    }
    double total = 0;
    RiskProfile p;
    for (const auto& s : samples) {
        total += s.loc;
        if (s.value <= bands.low_max) p.low += s.loc;
        else if (s.value <= bands.moderate_max) p.moderate += s.loc;
        else if (s.value <= bands.high_max) p.high += s.loc;
        else p.very_high += s.loc;
    }
    if (total <= 0) {
        throw Error(ErrorCode::no_units, "units carry no lines of code");
    }
    p.low /= total;
    p.moderate /= total;
    p.high /= total;
    p.very_high /= total;
    return p;
}

RiskProfile sig_risk_profile(std::span<const UnitMetrics> units, SigMetric metric, const RiskBands& bands,
                             const std::map<std::string, double>& verbosity_by_profile)
{
    std::vector<RiskSample> samples;
    samples.reserve(units.size());
    for (const auto& u : units) {
        double value = metric == SigMetric::cc ? u.cc : u.loc;
        if (metric == SigMetric::loc) {
            if (auto it = verbosity_by_profile.find(u.profile_id); it != verbosity_by_profile.end()) {
                value /= it->second;
            }
        }
        samples.push_back({value, static_cast<double>(u.loc)});
    }
    return sig_risk_profile(samples, bands);
}

RiskRatingTable default_risk_rating_table()
{
    return {
        {5, {0.25, 0.00, 0.00}},
        {4, {0.30, 0.05, 0.00}},
        {3, {0.40, 0.10, 0.00}},
        {2, {0.50, 0.15, 0.05}},
    };
}

int sig_rate_risk(const RiskProfile& profile, const RiskRatingTable& table)
{
    // tolerance for shares computed as ratios of integers
    constexpr double eps = 1e-12;
    int best = 1;
    for (const auto& [rating, caps] : table) {
        if (profile.moderate <= caps.moderate + eps && profile.high <= caps.high + eps &&
            profile.very_high <= caps.very_high + eps) {
            best = std::max(best, rating);
        }
    }
    return best;
}

int sig_rate_scalar(double value, const Ladder& ladder)
{
    for (const auto& [bound, rating] : ladder.steps) {
        if (ladder.higher_is_better ? value >= bound : value <= bound) return rating;
    }
    return ladder.fallback;
}

std::string_view to_string(SigProperty p) noexcept
{
    switch (p) {
    case SigProperty::volume: return "volume";
    case SigProperty::complexity: return "complexity";
    case SigProperty::duplication: return "duplication";
    case SigProperty::unit_size: return "unitSize";
    case SigProperty::unit_testing: return "unitTesting";
    }
    return "volume";
}

std::string_view to_string(SigCharacteristic c) noexcept
{
    switch (c) {
    case SigCharacteristic::analysability: return "analysability";
    case SigCharacteristic::changeability: return "changeability";
    case SigCharacteristic::stability: return "stability";
    case SigCharacteristic::testability: return "testability";
    }
    return "analysability";
}

SigMatrix default_sig_matrix()
{
    using P = SigProperty;
    return {
        {SigCharacteristic::analysability, {P::volume, P::duplication, P::unit_size, P::unit_testing}},
        {SigCharacteristic::changeability, {P::complexity, P::duplication}},
        {SigCharacteristic::stability, {P::unit_testing}},
        {SigCharacteristic::testability, {P::complexity, P::unit_size, P::unit_testing}},
    };
}

SigResult sig_characteristics(const PropertyRatings& ratings, const SigMatrix& matrix)
{
    SigResult r;
    r.properties = ratings;
    double sum = 0;
    for (const auto& [characteristic, properties] : matrix) {
        double row = 0;
        int present = 0;
        for (auto p : properties) {
            if (auto it = ratings.find(p); it != ratings.end()) {
                row += it->second;
                ++present;
            }
        }
        if (present == 0) continue;
        r.characteristics[characteristic] = row / present;
        sum += row / present;
    }
    if (!r.characteristics.empty()) {
        r.overall = sum / static_cast<double>(r.characteristics.size());
    }
    return r;
}

SigResult sig_assess(std::span<const UnitMetrics> units, int total_loc, double duplication_ratio,
                     std::optional<double> coverage, const std::map<std::string, double>& verbosity_by_profile,
                     const SigConfig& config)
{
    PropertyRatings ratings;
    ratings[SigProperty::volume] = sig_rate_scalar(total_loc, config.volume);
    ratings[SigProperty::duplication] = sig_rate_scalar(duplication_ratio, config.duplication);
    if (!units.empty()) {
        ratings[SigProperty::complexity] =
            sig_rate_risk(sig_risk_profile(units, SigMetric::cc, config.cc_bands), config.risk_ratings);
        ratings[SigProperty::unit_size] = sig_rate_risk(
            sig_risk_profile(units, SigMetric::loc, config.unit_size_bands, verbosity_by_profile), config.risk_ratings);
    }
    if (coverage) {
        ratings[SigProperty::unit_testing] = sig_rate_scalar(*coverage, config.unit_testing);
    }
    return sig_characteristics(ratings, config.matrix);
}

} // namespace xmaint
