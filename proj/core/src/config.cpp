#include "xmaint/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "xmaint/digest.hpp"
#include "xmaint/error.hpp"

namespace xmaint {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& why)
{
    throw Error(ErrorCode::invalid_config, key + ": " + why);
}

void only_keys(const json& section, const std::string& name, std::initializer_list<std::string_view> allowed)
{
    if (!section.is_object()) bad(name, "expected an object");
    for (const auto& [key, value] : section.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            bad(name + "." + key, "unknown key");
        }
    }
}

double number(const json& v, const std::string& key)
{
    if (!v.is_number()) bad(key, "expected a number");
    return v.get<double>();
}

std::string text(const json& v, const std::string& key)
{
    if (!v.is_string()) bad(key, "expected a string");
    return v.get<std::string>();
}

std::vector<std::string> strings(const json& v, const std::string& key)
{
    if (!v.is_array()) bad(key, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(text(e, key));
    return out;
}

RiskBands parse_bands(const json& v, const std::string& key)
{
    if (!v.is_array() || v.size() != 3) bad(key, "expected three increasing band bounds");
    RiskBands b{number(v[0], key), number(v[1], key), number(v[2], key)};
    if (!(b.low_max < b.moderate_max && b.moderate_max < b.high_max)) bad(key, "bands must be strictly increasing");
    return b;
}

Ladder parse_ladder(const json& v, const std::string& key, bool higher_is_better)
{
    if (!v.is_array() || v.empty()) bad(key, "expected [[bound, rating], ...]");
    Ladder l;
    l.higher_is_better = higher_is_better;
    for (const auto& step : v) {
        if (!step.is_array() || step.size() != 2 || !step[1].is_number_integer()) bad(key, "expected [bound, rating]");
        l.steps.emplace_back(number(step[0], key), step[1].get<int>());
    }
    for (std::size_t i = 1; i < l.steps.size(); ++i) {
        const bool monotone = higher_is_better ? l.steps[i].first < l.steps[i - 1].first
                                               : l.steps[i].first > l.steps[i - 1].first;
        if (!monotone) bad(key, "ladder bounds must be monotone");
    }
    return l;
}

json ladder_json(const Ladder& l)
{
    json a = json::array();
    for (const auto& [bound, rating] : l.steps) a.push_back({bound, rating});
    return a;
}

std::optional<SigProperty> parse_property(std::string_view t)
{
    for (auto p : {SigProperty::volume, SigProperty::complexity, SigProperty::duplication, SigProperty::unit_size,
                   SigProperty::unit_testing}) {
        if (to_string(p) == t) return p;
    }
    return std::nullopt;
}

std::optional<SigCharacteristic> parse_characteristic(std::string_view t)
{
    for (auto c : {SigCharacteristic::analysability, SigCharacteristic::changeability, SigCharacteristic::stability,
                   SigCharacteristic::testability}) {
        if (to_string(c) == t) return c;
    }
    return std::nullopt;
}

void apply_sig(SigConfig& sig, std::optional<double>& coverage, const json& s)
{
    only_keys(s, "models.sig",
              {"cc_bands", "unit_size_bands", "risk_ratings", "volume_ladder", "duplication_ladder",
               "unit_testing_ladder", "matrix", "coverage"});
    if (s.contains("cc_bands")) sig.cc_bands = parse_bands(s["cc_bands"], "models.sig.cc_bands");
    if (s.contains("unit_size_bands")) sig.unit_size_bands = parse_bands(s["unit_size_bands"], "models.sig.unit_size_bands");
    if (s.contains("risk_ratings")) {
        const auto& rr = s["risk_ratings"];
        if (!rr.is_array()) bad("models.sig.risk_ratings", "expected an array");
        sig.risk_ratings.clear();
        for (const auto& row : rr) {
            only_keys(row, "models.sig.risk_ratings[]", {"rating", "moderate", "high", "very_high"});
            sig.risk_ratings.push_back({row.at("rating").get<int>(),
                                        {number(row.at("moderate"), "moderate"), number(row.at("high"), "high"),
                                         number(row.at("very_high"), "very_high")}});
        }
    }
    if (s.contains("volume_ladder")) sig.volume = parse_ladder(s["volume_ladder"], "models.sig.volume_ladder", false);
    if (s.contains("duplication_ladder"))
        sig.duplication = parse_ladder(s["duplication_ladder"], "models.sig.duplication_ladder", false);
    if (s.contains("unit_testing_ladder"))
        sig.unit_testing = parse_ladder(s["unit_testing_ladder"], "models.sig.unit_testing_ladder", true);
    if (s.contains("matrix")) {
        const auto& m = s["matrix"];
        if (!m.is_object()) bad("models.sig.matrix", "expected an object");
        SigMatrix matrix;
        for (const auto& [name, props] : m.items()) {
            const auto c = parse_characteristic(name);
            if (!c) bad("models.sig.matrix." + name, "unknown characteristic");
            for (const auto& p : strings(props, "models.sig.matrix." + name)) {
                const auto prop = parse_property(p);
                if (!prop) bad("models.sig.matrix." + name, "unknown property '" + p + "'");
                matrix[*c].push_back(*prop);
            }
        }
        for (auto c : {SigCharacteristic::analysability, SigCharacteristic::changeability, SigCharacteristic::stability,
                       SigCharacteristic::testability}) {
            if (matrix.count(c) == 0) bad("models.sig.matrix", "missing row " + std::string(to_string(c)));
        }
        sig.matrix = std::move(matrix);
    }
    if (s.contains("coverage")) {
        const double c = number(s["coverage"], "models.sig.coverage");
        if (c < 0 || c > 1) bad("models.sig.coverage", "must lie in [0, 1]");
        coverage = c;
    }
}

void apply_models(Config& c, const json& m)
{
    only_keys(m, "models", {"mi", "sqale", "sig", "duplication"});
    if (m.contains("mi")) {
        const auto& mi = m["mi"];
        only_keys(mi, "models.mi", {"module", "averaging"});
        if (mi.contains("module")) {
            const auto v = text(mi["module"], "models.mi.module");
            if (v == "unit") c.mi_module = MiModule::unit;
            else if (v == "file") c.mi_module = MiModule::file;
            else bad("models.mi.module", "expected unit or file");
        }
        if (mi.contains("averaging")) {
            const auto v = text(mi["averaging"], "models.mi.averaging");
            if (v == "unweighted") c.mean = MeanKind::unweighted;
            else if (v == "loc-weighted") c.mean = MeanKind::loc_weighted;
            else bad("models.mi.averaging", "expected unweighted or loc-weighted");
        }
    }
    if (m.contains("sqale")) {
        const auto& s = m["sqale"];
        only_keys(s, "models.sqale", {"cost_per_line_minutes"});
        if (s.contains("cost_per_line_minutes")) {
            c.cost_per_line = number(s["cost_per_line_minutes"], "models.sqale.cost_per_line_minutes");
            if (!(c.cost_per_line > 0)) bad("models.sqale.cost_per_line_minutes", "must be > 0");
        }
    }
    if (m.contains("sig")) apply_sig(c.sig, c.coverage, m["sig"]);
    if (m.contains("duplication")) {
        const auto& d = m["duplication"];
        only_keys(d, "models.duplication", {"min_tokens", "mode"});
        if (d.contains("min_tokens")) {
            if (!d["min_tokens"].is_number_integer() || d["min_tokens"].get<long long>() < 3)
                bad("models.duplication.min_tokens", "expected an integer >= 3");
            c.min_tokens = d["min_tokens"].get<std::size_t>();
        }
        if (d.contains("mode")) c.duplication_mode = parse_normalization_mode(text(d["mode"], "models.duplication.mode"));
    }
}

void apply_composite(CompositeConfig& cc, const json& s)
{
    if (!s.is_object()) bad("composite", "expected an object");
    for (const auto& [key, value] : s.items()) {
        if (key == "duplication_basis") {
            const auto v = text(value, "composite.duplication_basis");
            if (v == "tokens") cc.duplication_basis = DuplicationBasis::tokens;
            else if (v == "lines") cc.duplication_basis = DuplicationBasis::lines;
            else bad("composite.duplication_basis", "expected tokens or lines");
            continue;
        }
        if (key == "sensitivity") {
            only_keys(value, "composite.sensitivity", {"delta_pp"});
            if (value.contains("delta_pp")) cc.sensitivity_delta_pp = number(value["delta_pp"], "composite.sensitivity.delta_pp");
            continue;
        }
        const auto indicator = parse_indicator(key);
        if (!indicator) bad("composite." + key, "unknown indicator");
        only_keys(value, "composite." + key, {"shape", "low", "high", "weight"});
        auto it = std::find_if(cc.mappings.begin(), cc.mappings.end(),
                               [&](const IndicatorMapping& m) { return m.indicator == *indicator; });
        if (it == cc.mappings.end()) {
            cc.mappings.push_back({*indicator, MappingShape::rising_linear, 0, 1, 0});
            it = std::prev(cc.mappings.end());
        }
        if (value.contains("shape")) {
            const auto shape = parse_mapping_shape(text(value["shape"], "composite." + key + ".shape"));
            if (!shape) bad("composite." + key + ".shape", "unknown shape");
            it->shape = *shape;
        }
        if (value.contains("low")) it->low = number(value["low"], "composite." + key + ".low");
        if (value.contains("high")) it->high = number(value["high"], "composite." + key + ".high");
        if (value.contains("weight")) it->weight = number(value["weight"], "composite." + key + ".weight");
    }
    cc.validate();
}

} // namespace

std::string_view to_string(ReportFormat f) noexcept
{
    switch (f) {
    case ReportFormat::json: return "json";
    case ReportFormat::markdown: return "md";
    case ReportFormat::csv: return "csv";
    }
    return "json";
}

ReportFormat parse_report_format(std::string_view t)
{
    if (t == "json") return ReportFormat::json;
    if (t == "md" || t == "markdown") return ReportFormat::markdown;
    if (t == "csv") return ReportFormat::csv;
    throw Error(ErrorCode::invalid_config, "unknown report format '" + std::string(t) + "'");
}

const std::vector<std::string>& default_excludes()
{
    static const std::vector<std::string> excludes{".git", ".hg", ".svn", "build", "node_modules",
                                                   "__pycache__", ".venv", "venv", "target", "dist"};
    return excludes;
}

RuleSet Config::rule_set(const LanguageProfile& profile) const
{
    return load_rule_set(rules, profile);
}

Config apply_config(Config c, const json& doc)
{
    if (!doc.is_object()) bad("config", "expected a JSON object");
    only_keys(doc, "config", {"profiles", "rules", "models", "composite", "report", "discovery"});
    if (doc.contains("profiles")) {
        c.registry.merge_json(doc["profiles"]);
    }
    if (doc.contains("rules")) {
        if (!doc["rules"].is_object()) bad("rules", "expected an object");
        c.rules = doc["rules"];
    }
    for (const auto& p : c.registry.profiles()) {
        (void)c.rule_set(p);  // validates the rules section eagerly
    }
    if (doc.contains("models")) apply_models(c, doc["models"]);
    if (doc.contains("composite")) apply_composite(c.composite, doc["composite"]);
    if (doc.contains("report")) {
        only_keys(doc["report"], "report", {"format"});
        if (doc["report"].contains("format")) c.format = parse_report_format(text(doc["report"]["format"], "report.format"));
    }
    if (doc.contains("discovery")) {
        const auto& d = doc["discovery"];
        only_keys(d, "discovery", {"includes", "excludes", "profile"});
        if (d.contains("includes")) c.includes = strings(d["includes"], "discovery.includes");
        if (d.contains("excludes")) c.excludes = strings(d["excludes"], "discovery.excludes");
        if (d.contains("profile")) c.forced_profile = text(d["profile"], "discovery.profile");
    }
    if (c.forced_profile) (void)c.registry.get(*c.forced_profile);
    return c;
}

Config load_config_file(const std::filesystem::path& path, Config base)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::invalid_config, "cannot read config file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::invalid_config, path.string() + ": " + e.what());
    }
    return apply_config(std::move(base), doc);
}

json effective_config_json(const Config& c)
{
    json j;
    json profiles = json::array();
    json rules = json::object();
    for (const auto& p : c.registry.profiles()) {
        profiles.push_back(profile_to_json(p));
        rules[p.id] = rule_set_to_json(c.rule_set(p));
    }
    j["profiles"] = profiles;
    j["rules"] = rules;

    json sig;
    sig["cc_bands"] = {c.sig.cc_bands.low_max, c.sig.cc_bands.moderate_max, c.sig.cc_bands.high_max};
    sig["unit_size_bands"] = {c.sig.unit_size_bands.low_max, c.sig.unit_size_bands.moderate_max,
                              c.sig.unit_size_bands.high_max};
    json ratings = json::array();
    for (const auto& [rating, caps] : c.sig.risk_ratings) {
        ratings.push_back({{"rating", rating}, {"moderate", caps.moderate}, {"high", caps.high}, {"very_high", caps.very_high}});
    }
    sig["risk_ratings"] = ratings;
    sig["volume_ladder"] = ladder_json(c.sig.volume);
    sig["duplication_ladder"] = ladder_json(c.sig.duplication);
    sig["unit_testing_ladder"] = ladder_json(c.sig.unit_testing);
    json matrix = json::object();
    for (const auto& [ch, props] : c.sig.matrix) {
        json row = json::array();
        for (auto p : props) row.push_back(to_string(p));
        matrix[std::string(to_string(ch))] = row;
    }
    sig["matrix"] = matrix;

    j["models"] = {
        {"mi", {{"module", c.mi_module == MiModule::unit ? "unit" : "file"},
                {"averaging", c.mean == MeanKind::unweighted ? "unweighted" : "loc-weighted"}}},
        {"sqale", {{"cost_per_line_minutes", c.cost_per_line}}},
        {"sig", sig},
        {"duplication", {{"min_tokens", c.min_tokens}, {"mode", to_string(c.duplication_mode)}}},
    };

    json composite = json::object();
    for (const auto& m : c.composite.mappings) {
        composite[std::string(to_string(m.indicator))] = {
            {"shape", to_string(m.shape)}, {"low", m.low}, {"high", m.high}, {"weight", m.weight}};
    }
    composite["duplication_basis"] = c.composite.duplication_basis == DuplicationBasis::tokens ? "tokens" : "lines";
    composite["sensitivity"] = {{"delta_pp", c.composite.sensitivity_delta_pp}};
    j["composite"] = composite;

    j["discovery"] = {{"includes", c.includes},
                      {"excludes", c.excludes},
                      {"profile", c.forced_profile ? json(*c.forced_profile) : json(nullptr)}};
    j["run"] = {{"format", to_string(c.format)},
                {"sensitivity", c.sensitivity},
                {"workers", c.workers},
                {"coverage", c.coverage ? json(*c.coverage) : json(nullptr)}};
    return j;
}

std::string config_hash(const Config& c)
{
    auto j = effective_config_json(c);
    j.erase("run");
    return sha256_hex(j.dump());
}

} // namespace xmaint
