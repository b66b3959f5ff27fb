#include "xmaint/rules.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>
#include <tuple>

#include "xmaint/error.hpp"

namespace xmaint {

namespace {

struct RuleDefault {
    RuleId id;
    int threshold;
    double effort;
    bool enabled;
};

constexpr RuleDefault kDefaults[] = {
    {RuleId::complexity_threshold, 15, 60, true},
    {RuleId::unit_size_threshold, 60, 45, true},
    {RuleId::too_many_params, 5, 20, true},
    {RuleId::nesting_depth, 4, 30, true},
    {RuleId::naming_convention, 0, 10, true},
    {RuleId::duplication_block, 0, 30, false},
    {RuleId::comment_density, 10, 15, false},
};

[[noreturn]] void bad(const std::string& key, const std::string& why)
{
    throw Error(ErrorCode::invalid_rule_config, key + ": " + why);
}

int effective_threshold(RuleId id, int base, const LanguageProfile& profile)
{
    if (id != RuleId::unit_size_threshold) return base;
    return static_cast<int>(std::lround(static_cast<double>(base) * profile.verbosity_factor));
}

void apply_entry(Rule& rule, const nlohmann::json& entry, const std::string& key, const LanguageProfile& profile)
{
    if (!entry.is_object()) bad(key, "expected an object");
    for (const auto& [field, value] : entry.items()) {
        if (field == "threshold") {
            if (rule.id == RuleId::naming_convention) bad(key + ".threshold", "naming-convention takes a pattern");
            if (!value.is_number_integer() || value.get<long long>() < 0) bad(key + ".threshold", "expected a non-negative integer");
            rule.base_threshold = value.get<int>();
            rule.threshold = effective_threshold(rule.id, rule.base_threshold, profile);
        } else if (field == "pattern") {
            if (rule.id != RuleId::naming_convention) bad(key + ".pattern", "only naming-convention takes a pattern");
            if (!value.is_string()) bad(key + ".pattern", "expected a string");
            rule.pattern = value.get<std::string>();
            try {
                std::regex check(rule.pattern);
            } catch (const std::regex_error&) {
                bad(key + ".pattern", "not a valid regular expression");
            }
        } else if (field == "effort_minutes") {
            if (!value.is_number() || !(value.get<double>() > 0)) bad(key + ".effort_minutes", "must be > 0");
            rule.effort_minutes = value.get<double>();
        } else if (field == "enabled") {
            if (!value.is_boolean()) bad(key + ".enabled", "expected a boolean");
            rule.enabled = value.get<bool>();
        } else {
            bad(key + "." + field, "unknown rule field");
        }
    }
}

void apply_section(RuleSet& set, const nlohmann::json& section, const std::string& prefix,
                   const LanguageProfile& profile, bool allow_profiles)
{
    if (!section.is_object()) bad(prefix.empty() ? "rules" : prefix, "expected an object");
    for (const auto& [key, entry] : section.items()) {
        if (key == "profiles" && allow_profiles) continue;
        const auto id = parse_rule_id(key);
        if (!id) bad(prefix + key, "unknown canonical rule id");
        auto it = std::find_if(set.rules.begin(), set.rules.end(), [&](const Rule& r) { return r.id == *id; });
        apply_entry(*it, entry, prefix + key, profile);
    }
}

} // namespace

std::string_view to_string(RuleId id) noexcept
{
    switch (id) {
    case RuleId::complexity_threshold: return "complexity-threshold";
    case RuleId::unit_size_threshold: return "unit-size-threshold";
    case RuleId::too_many_params: return "too-many-params";
    case RuleId::nesting_depth: return "nesting-depth";
    case RuleId::naming_convention: return "naming-convention";
    case RuleId::duplication_block: return "duplication-block";
    case RuleId::comment_density: return "comment-density";
    }
    return "complexity-threshold";
}

std::optional<RuleId> parse_rule_id(std::string_view text) noexcept
{
    for (auto id : kAllRuleIds) {
        if (to_string(id) == text) return id;
    }
    return std::nullopt;
}

const Rule* RuleSet::find(RuleId id) const noexcept
{
    auto it = std::find_if(rules.begin(), rules.end(), [id](const Rule& r) { return r.id == id; });
    return it == rules.end() ? nullptr : &*it;
}

bool RuleSet::is_enabled(RuleId id) const noexcept
{
    const auto* r = find(id);
    return r != nullptr && r->enabled;
}

std::vector<RuleId> RuleSet::enabled_ids() const
{
    std::vector<RuleId> out;
    for (const auto& r : rules) {
        if (r.enabled) out.push_back(r.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool violation_less(const Violation& a, const Violation& b)
{
    return std::tie(a.file, a.line, a.rule, a.unit_name) < std::tie(b.file, b.line, b.rule, b.unit_name);
}

RuleSet default_rule_set(const LanguageProfile& profile)
{
    RuleSet set;
    set.profile_id = profile.id;
    for (const auto& d : kDefaults) {
        Rule r;
        r.id = d.id;
        r.profile_id = profile.id;
        r.base_threshold = d.threshold;
        r.threshold = effective_threshold(d.id, d.threshold, profile);
        r.effort_minutes = d.effort;
        r.enabled = d.enabled;
        if (d.id == RuleId::naming_convention) {
            r.pattern = profile.naming_pattern;
            r.enabled = !r.pattern.empty();
        }
        set.rules.push_back(std::move(r));
    }
    return set;
}

RuleSet load_rule_set(const nlohmann::json& config, const LanguageProfile& profile)
{
    auto set = default_rule_set(profile);
    if (config.is_null()) return set;
    apply_section(set, config, "", profile, true);
    if (auto it = config.find("profiles"); it != config.end()) {
        if (!it->is_object()) bad("profiles", "expected an object keyed by profile id");
        if (auto p = it->find(profile.id); p != it->end()) {
            apply_section(set, *p, "profiles." + profile.id + ".", profile, false);
        }
    }
    for (const auto& r : set.rules) {
        if (r.id == RuleId::naming_convention && r.enabled && r.pattern.empty()) {
            bad("naming-convention", "enabled without a pattern for profile '" + profile.id + "'");
        }
    }
    return set;
}

nlohmann::json rule_set_to_json(const RuleSet& rules)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& r : rules.rules) {
        nlohmann::json e;
        if (r.id == RuleId::naming_convention) {
            e["pattern"] = r.pattern;
        } else {
            e["threshold"] = r.base_threshold;
            e["effective_threshold"] = r.threshold;
        }
        e["effort_minutes"] = r.effort_minutes;
        e["enabled"] = r.enabled;
        j[std::string(to_string(r.id))] = e;
    }
    return j;
}

std::vector<Violation> check_unit_rules(std::span<const UnitMetrics> units, const RuleSet& rules)
{
    std::vector<Violation> out;
    auto threshold_rule = [&](RuleId id, const UnitMetrics& u, int observed) {
        const auto* r = rules.find(id);
        if (r == nullptr || !r->enabled || observed <= r->threshold) return;
        out.push_back({id, u.unit.file, u.unit.start_line, u.unit.name, static_cast<double>(observed),
                       static_cast<double>(r->threshold), r->effort_minutes});
    };
    std::optional<std::regex> naming;
    const auto* naming_rule = rules.find(RuleId::naming_convention);
    if (naming_rule != nullptr && naming_rule->enabled) naming.emplace(naming_rule->pattern);

    for (const auto& u : units) {
        threshold_rule(RuleId::complexity_threshold, u, u.cc);
        threshold_rule(RuleId::unit_size_threshold, u, u.loc);
        threshold_rule(RuleId::too_many_params, u, u.param_count);
        threshold_rule(RuleId::nesting_depth, u, u.nesting_depth_max);
        if (naming && !std::regex_match(u.unit.name, *naming)) {
            out.push_back({RuleId::naming_convention, u.unit.file, u.unit.start_line, u.unit.name, 0, 0,
                           naming_rule->effort_minutes});
        }
    }
    std::sort(out.begin(), out.end(), violation_less);
    return out;
}

std::vector<Violation> check_rules(std::span<const FileMetrics> files, const DuplicationReport* duplication,
                                   const std::map<std::string, RuleSet>& rule_sets)
{
    std::vector<Violation> out;
    std::map<std::string_view, const RuleSet*> set_of_file;
    for (const auto& f : files) {
        auto it = rule_sets.find(f.profile_id);
        if (it == rule_sets.end()) continue;
        const auto& rules = it->second;
        set_of_file[f.path] = &rules;
        auto unit_violations = check_unit_rules(f.units, rules);
        out.insert(out.end(), unit_violations.begin(), unit_violations.end());
        if (const auto* r = rules.find(RuleId::comment_density); r != nullptr && r->enabled && f.lines.loc() > 0) {
            const double percent = 100.0 * comment_ratio(f.lines);
            if (percent < r->threshold) {
                out.push_back({RuleId::comment_density, f.path, 1, {}, percent, static_cast<double>(r->threshold),
                               r->effort_minutes});
            }
        }
    }
    if (duplication != nullptr) {
        for (const auto& b : duplication->blocks) {
            auto it = set_of_file.find(b.b.file);
            if (it == set_of_file.end()) continue;
            const auto* r = it->second->find(RuleId::duplication_block);
            if (r == nullptr || !r->enabled || static_cast<int>(b.length_tokens) <= r->threshold) continue;
            out.push_back({RuleId::duplication_block, b.b.file, b.b.start_line, {},
                           static_cast<double>(b.length_tokens), static_cast<double>(r->threshold),
                           r->effort_minutes});
        }
    }
    std::sort(out.begin(), out.end(), violation_less);
    return out;
}

RuleIntersection intersect_rule_sets(std::span<const RuleSet> rule_sets)
{
    RuleIntersection out;
    if (rule_sets.empty()) {
        out.empty = true;
        return out;
    }
    std::set<RuleId> shared;
    for (auto id : rule_sets.front().enabled_ids()) shared.insert(id);
    for (const auto& set : rule_sets.subspan(1)) {
        std::set<RuleId> next;
        for (auto id : set.enabled_ids()) {
            if (shared.count(id) != 0) next.insert(id);
        }
        shared = std::move(next);
    }
    out.shared.assign(shared.begin(), shared.end());
    out.empty = shared.empty();
    for (const auto& set : rule_sets) {
        RuleSet restricted;
        restricted.profile_id = set.profile_id;
        for (const auto& r : set.rules) {
            if (shared.count(r.id) != 0) restricted.rules.push_back(r);
        }
        out.rule_sets.push_back(std::move(restricted));
    }
    return out;
}

} // namespace xmaint
