#include <gtest/gtest.h>

#include "xmaint/error.hpp"
#include "xmaint/rules.hpp"

using namespace xmaint;
using nlohmann::json;

namespace {

const LanguageProfile& profile(std::string_view id) { return builtin_registry().get(id); }

UnitMetrics unit(std::string name, int cc, int loc = 5, int params = 0, int nesting = 0)
{
    UnitMetrics u;
    u.unit.name = std::move(name);
    u.unit.file = "f.c";
    u.unit.start_line = 1;
    u.cc = cc;
    u.loc = loc;
    u.param_count = params;
    u.nesting_depth_max = nesting;
    return u;
}

RuleSet only(std::string_view profile_id, std::initializer_list<RuleId> enabled)
{
    json cfg = json::object();
    for (auto id : kAllRuleIds) {
        bool on = std::find(enabled.begin(), enabled.end(), id) != enabled.end();
        cfg[std::string(to_string(id))] = {{"enabled", on}};
    }
    return load_rule_set(cfg, profile(profile_id));
}

} // namespace

TEST(Rules, CanonicalIdsRoundTrip)
{
    for (auto id : kAllRuleIds) EXPECT_EQ(parse_rule_id(to_string(id)), id);
    EXPECT_FALSE(parse_rule_id("cyclomatic"));
}

TEST(Rules, EmptyConfigGivesDefaults)
{
    const auto set = load_rule_set(json::object(), profile("c-family"));
    const auto def = default_rule_set(profile("c-family"));
    EXPECT_EQ(rule_set_to_json(set), rule_set_to_json(def));
    const std::vector<RuleId> five{RuleId::complexity_threshold, RuleId::unit_size_threshold, RuleId::too_many_params,
                                   RuleId::nesting_depth, RuleId::naming_convention};
    EXPECT_EQ(set.enabled_ids(), five);
}

TEST(Rules, ThresholdOverride)
{
    const auto set = load_rule_set(json::parse(R"({"complexity-threshold": {"threshold": 15}})"), profile("python"));
    EXPECT_EQ(set.find(RuleId::complexity_threshold)->threshold, 15);
    const auto set2 = load_rule_set(json::parse(R"({"complexity-threshold": {"threshold": 25}})"), profile("python"));
    EXPECT_EQ(set2.find(RuleId::complexity_threshold)->threshold, 25);
}

TEST(Rules, UnitSizeScaledByVerbosity)
{
    const auto set = load_rule_set(json::parse(R"({"unit-size-threshold": {"threshold": 60}})"), profile("cobol-like"));
    const auto* r = set.find(RuleId::unit_size_threshold);
    EXPECT_EQ(r->base_threshold, 60);
    EXPECT_EQ(r->threshold, 120);
    EXPECT_EQ(set.find(RuleId::complexity_threshold)->threshold, set.find(RuleId::complexity_threshold)->base_threshold);
}

TEST(Rules, PerProfileOverride)
{
    const auto cfg = json::parse(R"({"too-many-params": {"threshold": 4},
        "profiles": {"python": {"too-many-params": {"threshold": 7}}}})");
    EXPECT_EQ(load_rule_set(cfg, profile("python")).find(RuleId::too_many_params)->threshold, 7);
    EXPECT_EQ(load_rule_set(cfg, profile("c-family")).find(RuleId::too_many_params)->threshold, 4);
}

TEST(Rules, InvalidConfigNamesKey)
{
    auto expect_bad = [](const char* text, const char* key) {
        try {
            (void)load_rule_set(json::parse(text), profile("c-family"));
            FAIL() << "accepted " << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::invalid_rule_config);
            EXPECT_NE(std::string(e.what()).find(key), std::string::npos) << e.what();
        }
    };
    expect_bad(R"({"complexity": {"threshold": 1}})", "complexity");
    expect_bad(R"({"complexity-threshold": {"threshold": -3}})", "complexity-threshold.threshold");
    expect_bad(R"({"naming-convention": {"pattern": "("}})", "naming-convention.pattern");
    expect_bad(R"({"nesting-depth": {"colour": 1}})", "nesting-depth.colour");
}

TEST(Rules, CompliantUnitsHaveNoViolations)
{
    const auto set = default_rule_set(profile("c-family"));
    const std::vector<UnitMetrics> units{unit("fine", 3), unit("alsoFine", 1, 20, 2, 1)};
    EXPECT_TRUE(check_unit_rules(units, set).empty());
}

TEST(Rules, ComplexityViolation)
{
    const auto set = load_rule_set(json::parse(R"({"complexity-threshold": {"threshold": 20}})"), profile("c-family"));
    const std::vector<UnitMetrics> units{unit("busy", 25), unit("edge", 20)};
    const auto v = check_unit_rules(units, set);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].rule, RuleId::complexity_threshold);
    EXPECT_EQ(v[0].unit_name, "busy");
    EXPECT_DOUBLE_EQ(v[0].observed, 25);
    EXPECT_DOUBLE_EQ(v[0].threshold, 20);
    EXPECT_GT(v[0].effort_minutes, 0);
}

TEST(Rules, NamingViolation)
{
    const auto set = default_rule_set(profile("c-family"));
    const std::vector<UnitMetrics> units{unit("Do_Thing", 1), unit("doThing", 1)};
    const auto v = check_unit_rules(units, set);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].rule, RuleId::naming_convention);
    EXPECT_EQ(v[0].unit_name, "Do_Thing");
}

TEST(Rules, CommentDensityIsOffByDefault)
{
    const auto set = default_rule_set(profile("python"));
    EXPECT_FALSE(set.is_enabled(RuleId::comment_density));
    EXPECT_FALSE(set.is_enabled(RuleId::duplication_block));
}

TEST(Rules, DuplicationBlockChargedToSecondOccurrence)
{
    auto set = load_rule_set(json::parse(R"({"duplication-block": {"enabled": true, "threshold": 10}})"),
                             profile("c-family"));
    FileMetrics a;
    a.path = "a.c";
    a.profile_id = "c-family";
    FileMetrics b = a;
    b.path = "b.c";
    DuplicationReport dup;
    CloneBlock block;
    block.a = {"a.c", 0, 3};
    block.b = {"b.c", 4, 9};
    block.length_tokens = 12;
    dup.blocks.push_back(block);
    const std::vector<FileMetrics> files{a, b};
    const auto v = check_rules(files, &dup, {{"c-family", set}});
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].file, "b.c");
    EXPECT_EQ(v[0].line, 9);
}

TEST(Rules, IntersectionWithItselfIsUnchanged)
{
    const auto a = default_rule_set(profile("c-family"));
    const std::vector<RuleSet> sets{a, a};
    const auto r = intersect_rule_sets(sets);
    EXPECT_EQ(r.shared, a.enabled_ids());
    EXPECT_FALSE(r.empty);
}

TEST(Rules, IntersectionKeepsSharedIds)
{
    const auto a = only("c-family", {RuleId::complexity_threshold, RuleId::unit_size_threshold, RuleId::naming_convention});
    const auto b = only("python", {RuleId::complexity_threshold, RuleId::unit_size_threshold, RuleId::nesting_depth});
    const std::vector<RuleSet> sets{a, b};
    const auto r = intersect_rule_sets(sets);
    const std::vector<RuleId> want{RuleId::complexity_threshold, RuleId::unit_size_threshold};
    EXPECT_EQ(r.shared, want);
    ASSERT_EQ(r.rule_sets.size(), 2u);
    for (const auto& s : r.rule_sets) EXPECT_EQ(s.enabled_ids(), want);
    // thresholds stay per language
    EXPECT_EQ(r.rule_sets[0].profile_id, "c-family");
    EXPECT_EQ(r.rule_sets[1].profile_id, "python");
}

TEST(Rules, DisabledInOneMeansExcludedFromAll)
{
    const auto a = only("c-family", {RuleId::complexity_threshold});
    const auto b = only("python", {RuleId::complexity_threshold, RuleId::naming_convention});
    const std::vector<RuleSet> sets{a, b};
    const auto r = intersect_rule_sets(sets);
    EXPECT_EQ(r.shared, std::vector<RuleId>{RuleId::complexity_threshold});
    EXPECT_FALSE(r.rule_sets[1].is_enabled(RuleId::naming_convention));
}

TEST(Rules, EmptyIntersectionFlagged)
{
    const auto a = only("c-family", {RuleId::complexity_threshold});
    const auto b = only("python", {RuleId::nesting_depth});
    const std::vector<RuleSet> sets{a, b};
    EXPECT_TRUE(intersect_rule_sets(sets).empty);
}
