#include "xmaint/composite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "xmaint/debt_models.hpp"
#include "xmaint/error.hpp"

namespace xmaint {

namespace {

constexpr double kTieTolerance = 1e-9;

double clamp_score(double s) noexcept
{
    return std::clamp(s, 0.0, 100.0);
}

double rising(double v, double low, double high) noexcept
{
    return clamp_score(100.0 * (v - low) / (high - low));
}

std::vector<std::string> ranking_of(const std::vector<CompositeScore>& scores)
{
    std::vector<std::string> ids;
    ids.reserve(scores.size());
    for (const auto& s : scores) ids.push_back(s.project_id);
    return ids;
}

std::map<Indicator, double> renormalized(std::map<Indicator, double> weights)
{
    double sum = 0;
    for (const auto& [i, w] : weights) sum += w;
    if (sum <= 0) return weights;
    for (auto& [i, w] : weights) w /= sum;
    return weights;
}

} // namespace

std::string_view to_string(Indicator i) noexcept
{
    switch (i) {
    case Indicator::comment_ratio: return "commentRatio";
    case Indicator::duplication_ratio: return "duplicationRatio";
    case Indicator::tdr: return "tdr";
    case Indicator::volumetry: return "volumetry";
    }
    return "commentRatio";
}

std::optional<Indicator> parse_indicator(std::string_view text) noexcept
{
    for (auto i : kAllIndicators) {
        if (to_string(i) == text) return i;
    }
    return std::nullopt;
}

std::string_view to_string(MappingShape s) noexcept
{
    switch (s) {
    case MappingShape::rising_linear: return "rising-linear";
    case MappingShape::falling_linear: return "falling-linear";
    case MappingShape::rising_then_falling: return "rising-then-falling";
    case MappingShape::relative_min: return "relative-min";
    }
    return "rising-linear";
}

std::optional<MappingShape> parse_mapping_shape(std::string_view text) noexcept
{
    for (auto s : {MappingShape::rising_linear, MappingShape::falling_linear, MappingShape::rising_then_falling,
                   MappingShape::relative_min}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

const IndicatorMapping* CompositeConfig::find(Indicator i) const noexcept
{
    auto it = std::find_if(mappings.begin(), mappings.end(), [i](const IndicatorMapping& m) { return m.indicator == i; });
    return it == mappings.end() ? nullptr : &*it;
}

std::map<Indicator, double> CompositeConfig::weights() const
{
    std::map<Indicator, double> w;
    for (const auto& m : mappings) w[m.indicator] = m.weight;
    return w;
}

void CompositeConfig::validate() const
{
    double sum = 0;
    std::set<Indicator> seen;
    for (const auto& m : mappings) {
        const auto name = std::string(to_string(m.indicator));
        if (!seen.insert(m.indicator).second) {
            throw Error(ErrorCode::invalid_config, "composite." + name + " declared twice");
        }
        if (m.weight < 0.0 || m.weight > 1.0) {
            throw Error(ErrorCode::invalid_config, "composite." + name + ".weight must lie in [0, 1]");
        }
        if (m.low == m.high) {
            throw Error(ErrorCode::invalid_config, "composite." + name + ": low and high bounds coincide");
        }
        sum += m.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorCode::invalid_config, "composite weights must sum to 1");
    }
    if (!(sensitivity_delta_pp > 0.0)) {
        throw Error(ErrorCode::invalid_config, "composite.sensitivity.delta_pp must be > 0");
    }
}

CompositeConfig default_composite_config()
{
    CompositeConfig c;
    c.mappings = {
        {Indicator::comment_ratio, MappingShape::rising_then_falling, 0.15, 0.40, 0.15},
        {Indicator::duplication_ratio, MappingShape::falling_linear, 0.05, 0.15, 0.15},
        {Indicator::tdr, MappingShape::falling_linear, 0.0, 0.20, 0.45},
        {Indicator::volumetry, MappingShape::relative_min, 1.0, 1.5, 0.25},
    };
    return c;
}

double map_indicator(double value, const IndicatorMapping& m) noexcept
{
    switch (m.shape) {
    case MappingShape::rising_linear: return rising(value, m.low, m.high);
    case MappingShape::falling_linear:
    case MappingShape::relative_min: return 100.0 - rising(value, m.low, m.high);
    case MappingShape::rising_then_falling:
        if (value <= m.high) return rising(value, m.low, m.high);
        return clamp_score(100.0 - 100.0 * (value - m.high) / (m.high - m.low));
    }
    return 0.0;
}

double map_tdr_indicator(double tdr)
{
    if (tdr < 0.0) {
        throw Error(ErrorCode::negative_tdr, "technical debt ratio must be >= 0");
    }
    return map_indicator(tdr, *default_composite_config().find(Indicator::tdr));
}

std::map<std::string, double> map_volumetry(const std::map<std::string, double>& loc_by_project,
                                            const IndicatorMapping& mapping)
{
    if (loc_by_project.size() < 2) {
        throw Error(ErrorCode::single_project, "volumetry needs at least two projects to compare");
    }
    double min_loc = loc_by_project.begin()->second;
    for (const auto& [id, loc] : loc_by_project) {
        if (!(loc > 0)) {
            throw Error(ErrorCode::invalid_config, "project '" + id + "' has no lines of code");
        }
        min_loc = std::min(min_loc, loc);
    }
    std::map<std::string, double> out;
    for (const auto& [id, loc] : loc_by_project) {
        out[id] = map_indicator(loc / min_loc, mapping);
    }
    return out;
}

std::vector<MappedProject> map_projects(std::span<const ProjectIndicators> projects, const CompositeConfig& config)
{
    std::vector<MappedProject> out;
    std::map<std::string, double> volumes;
    for (const auto& p : projects) {
        MappedProject m;
        m.project_id = p.project_id;
        auto put = [&](Indicator i, const std::optional<double>& raw) {
            const auto* mapping = config.find(i);
            if (mapping == nullptr || !raw) return;
            m.indicators[i] = {*raw, map_indicator(*raw, *mapping)};
        };
        put(Indicator::comment_ratio, p.comment_ratio);
        put(Indicator::duplication_ratio, p.duplication_ratio);
        put(Indicator::tdr, p.tdr);
        if (p.total_loc && *p.total_loc > 0) volumes[p.project_id] = *p.total_loc;
        out.push_back(std::move(m));
    }
    const auto* vol = config.find(Indicator::volumetry);
    if (vol != nullptr && volumes.size() >= 2 && volumes.size() == projects.size()) {
        const auto scores = map_volumetry(volumes, *vol);
        for (auto& m : out) {
            m.indicators[Indicator::volumetry] = {volumes.at(m.project_id), scores.at(m.project_id)};
        }
    }
    return out;
}

std::vector<CompositeScore> aggregate_scores(std::span<const MappedProject> projects,
                                             const std::map<Indicator, double>& weights)
{
    std::vector<CompositeScore> out;
    for (const auto& p : projects) {
        CompositeScore s;
        s.project_id = p.project_id;
        s.per_indicator = p.indicators;
        double present = 0;
        for (const auto& [i, w] : weights) {
            if (p.indicators.count(i) != 0) present += w;
        }
        for (const auto& [i, w] : weights) {
            auto it = p.indicators.find(i);
            if (it == p.indicators.end()) continue;
            const double share = present > 0 ? w / present : 0.0;
            s.weights[i] = share;
            s.total += share * it->second.score;
        }
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const CompositeScore& a, const CompositeScore& b) {
        if (std::abs(a.total - b.total) > kTieTolerance) return a.total > b.total;
        return a.project_id < b.project_id;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
    return out;
}

std::vector<CompositeScore> composite_score(std::span<const ProjectIndicators> projects,
                                            const CompositeConfig& config)
{
    config.validate();
    if (!projects.empty()) {
        std::vector<double> costs;
        for (const auto& p : projects) {
            costs.push_back(p.cost_per_line);
            if (p.rule_ids != projects.front().rule_ids) {
                throw Error(ErrorCode::rule_set_mismatch, "project '" + p.project_id +
                                                              "' was checked with a different rule set than '" +
                                                              projects.front().project_id + "'");
            }
        }
        require_same_estimator(costs);
    }
    const auto mapped = map_projects(projects, config);
    return aggregate_scores(mapped, config.weights());
}

std::vector<SingleCountingConflict> validate_single_counting(const CompositeConfig& config,
                                                            std::span<const RuleSet> rule_sets)
{
    std::vector<SingleCountingConflict> out;
    const std::pair<Indicator, RuleId> attributes[] = {
        {Indicator::duplication_ratio, RuleId::duplication_block},
        {Indicator::comment_ratio, RuleId::comment_density},
    };
    for (const auto& [indicator, rule] : attributes) {
        const auto* m = config.find(indicator);
        if (m == nullptr || m->weight <= 0.0) continue;
        for (const auto& set : rule_sets) {
            if (set.is_enabled(rule)) out.push_back({indicator, rule, set.profile_id});
        }
    }
    return out;
}

void require_single_counting(const CompositeConfig& config, std::span<const RuleSet> rule_sets)
{
    const auto conflicts = validate_single_counting(config, rule_sets);
    if (conflicts.empty()) return;
    std::string message = "attribute counted twice:";
    for (const auto& c : conflicts) {
        message += " (" + std::string(to_string(c.indicator)) + ", " + std::string(to_string(c.rule)) + ")";
        if (!c.profile_id.empty()) message += " in profile " + c.profile_id;
        message += ";";
    }
    message.pop_back();
    throw Error(ErrorCode::single_counting_violation, message);
}

SensitivityReport sensitivity_analysis(std::span<const MappedProject> projects,
                                       const std::map<Indicator, double>& weights, double delta_pp)
{
    SensitivityReport report;
    report.delta_pp = delta_pp;
    const auto baseline = aggregate_scores(projects, weights);
    report.baseline_ranking = ranking_of(baseline);
    for (const auto& s : baseline) report.total_range[s.project_id] = {s.total, s.total};

    const double delta = delta_pp / 100.0;
    for (const auto& [indicator, w0] : weights) {
        for (int direction : {+1, -1}) {
            auto w = weights;
            w[indicator] = std::max(0.0, w0 + direction * delta);
            Perturbation p;
            p.indicator = indicator;
            p.direction = direction;
            p.weights = renormalized(std::move(w));
            p.scores = aggregate_scores(projects, p.weights);
            const auto ranking = ranking_of(p.scores);
            p.top1_changed = !ranking.empty() && ranking.front() != report.baseline_ranking.front();
            p.ranking_changed = ranking != report.baseline_ranking;
            report.top1_stable = report.top1_stable && !p.top1_changed;
            report.full_ranking_stable = report.full_ranking_stable && !p.ranking_changed;
            for (const auto& s : p.scores) {
                auto& [lo, hi] = report.total_range[s.project_id];
                lo = std::min(lo, s.total);
                hi = std::max(hi, s.total);
            }
            report.perturbations.push_back(std::move(p));
        }
    }
    return report;
}

} // namespace xmaint
