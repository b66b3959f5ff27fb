#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xmaint/composite.hpp"
#include "xmaint/debt_models.hpp"
#include "xmaint/duplication.hpp"
#include "xmaint/metrics.hpp"
#include "xmaint/profile.hpp"
#include "xmaint/rules.hpp"

namespace xmaint {

enum class ReportFormat { json, markdown, csv };

std::string_view to_string(ReportFormat f) noexcept;
ReportFormat parse_report_format(std::string_view text);

/// Directory names skipped during discovery unless excludes are overridden.
const std::vector<std::string>& default_excludes();

/// Resolved configuration: built-in defaults, then the config file, then CLI flags.
struct Config {
    ProfileRegistry registry = builtin_registry();
    nlohmann::json rules = nlohmann::json::object();  ///< raw `rules` section, validated per profile

    // discovery
    std::optional<std::string> forced_profile;
    std::vector<std::string> includes;
    std::vector<std::string> excludes = default_excludes();

    // models
    MeanKind mean{MeanKind::unweighted};
    MiModule mi_module{MiModule::unit};
    double cost_per_line{30};
    std::size_t min_tokens{50};
    NormalizationMode duplication_mode{NormalizationMode::exact};
    SigConfig sig;
    std::optional<double> coverage;  ///< externally measured unit-test coverage in [0,1]

    CompositeConfig composite = default_composite_config();

    // run
    ReportFormat format{ReportFormat::json};
    bool sensitivity{false};
    unsigned workers{1};

    /// Rule set for one profile, from `rules`.
    [[nodiscard]] RuleSet rule_set(const LanguageProfile& profile) const;
};

/// Applies a config document (sections profiles, rules, models, composite,
/// report, discovery) on top of `base`. Throws Error(invalid_config) or
/// Error(invalid_rule_config)/Error(invalid_profile) for bad content.
Config apply_config(Config base, const nlohmann::json& doc);

Config load_config_file(const std::filesystem::path& path, Config base = {});

/// Every resolved setting, keys sorted; echoed into reports.
nlohmann::json effective_config_json(const Config& config);

/// Digest over the settings that affect comparability of results (profiles,
/// rules, model parameters, composite mappings, discovery). Output format,
/// worker count and supplied coverage are excluded.
std::string config_hash(const Config& config);

} // namespace xmaint
