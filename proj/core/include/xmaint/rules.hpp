#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xmaint/duplication.hpp"
#include "xmaint/metrics.hpp"
#include "xmaint/profile.hpp"

namespace xmaint {

enum class RuleId {
    complexity_threshold,
    unit_size_threshold,
    too_many_params,
    nesting_depth,
    naming_convention,
    duplication_block,  ///< off by default: duplication is a composite indicator
    comment_density,    ///< off by default: comment ratio is a composite indicator
};

inline constexpr RuleId kAllRuleIds[] = {
    RuleId::complexity_threshold, RuleId::unit_size_threshold, RuleId::too_many_params, RuleId::nesting_depth,
    RuleId::naming_convention,    RuleId::duplication_block,   RuleId::comment_density,
};

std::string_view to_string(RuleId id) noexcept;
std::optional<RuleId> parse_rule_id(std::string_view text) noexcept;

struct Rule {
    RuleId id{RuleId::complexity_threshold};
    std::string profile_id;
    int threshold{0};       ///< effective threshold (unit size: scaled by verbosity)
    int base_threshold{0};  ///< as configured
    std::string pattern;    ///< naming-convention only
    double effort_minutes{1};
    bool enabled{true};
};

struct RuleSet {
    std::string profile_id;
    std::vector<Rule> rules;  ///< at most one per id, ordered by id

    [[nodiscard]] const Rule* find(RuleId id) const noexcept;
    [[nodiscard]] bool is_enabled(RuleId id) const noexcept;
    [[nodiscard]] std::vector<RuleId> enabled_ids() const;
};

struct Violation {
    RuleId rule{RuleId::complexity_threshold};
    std::string file;
    int line{0};
    std::string unit_name;  ///< empty for file- and block-level rules
    double observed{0};
    double threshold{0};
    double effort_minutes{0};
};

bool violation_less(const Violation& a, const Violation& b);

/// Built-in rule parameters before any configuration.
RuleSet default_rule_set(const LanguageProfile& profile);

/// Applies the `rules` config section on top of the defaults. Global keys are
/// canonical ids; `"profiles": {"<id>": {...}}` overrides per profile. Throws
/// Error(invalid_rule_config) naming the offending key.
RuleSet load_rule_set(const nlohmann::json& rules_config, const LanguageProfile& profile);

nlohmann::json rule_set_to_json(const RuleSet& rules);

/// Unit-level rules (complexity, size, params, nesting, naming) for one rule set.
std::vector<Violation> check_unit_rules(std::span<const UnitMetrics> units, const RuleSet& rules);

/// All rules over a project: each file is checked with the rule set of its
/// profile; clone blocks are charged to the file of their second occurrence.
std::vector<Violation> check_rules(std::span<const FileMetrics> files, const DuplicationReport* duplication,
                                   const std::map<std::string, RuleSet>& rule_sets);

struct RuleIntersection {
    std::vector<RuleSet> rule_sets;  ///< inputs restricted to the shared ids
    std::vector<RuleId> shared;
    bool empty{false};               ///< EmptyIntersection warning
};

/// Keeps only the canonical ids enabled in every input; thresholds and
/// patterns stay per language.
RuleIntersection intersect_rule_sets(std::span<const RuleSet> rule_sets);

} // namespace xmaint
