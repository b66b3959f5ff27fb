#include <gtest/gtest.h>

#include "xmaint/lexer.hpp"
#include "xmaint/profile.hpp"
#include "xmaint/units.hpp"

using namespace xmaint;

namespace {

struct Extracted {
    std::vector<Token> tokens;
    UnitExtraction result;
};

Extracted extract(std::string_view src, std::string_view profile_id)
{
    const auto& p = builtin_registry().get(profile_id);
    Extracted e;
    e.tokens = tokenize(src, p).tokens;
    e.result = extract_units(e.tokens, p, "fixture");
    return e;
}

} // namespace

TEST(Units, OneLineCFunction)
{
    const auto e = extract("int f(int a, int b) { return a+b; }", "c-family");
    ASSERT_EQ(e.result.units.size(), 1u);
    const auto& u = e.result.units[0];
    EXPECT_EQ(u.name, "f");
    EXPECT_EQ(u.param_count, 2);
    EXPECT_EQ(u.start_line, 1);
    EXPECT_EQ(u.end_line, 1);
    EXPECT_EQ(u.file, "fixture");
}

TEST(Units, PythonDefOverThreeLines)
{
    const auto e = extract("def g():\n    x = 1\n    return x\n", "python");
    ASSERT_EQ(e.result.units.size(), 1u);
    const auto& u = e.result.units[0];
    EXPECT_EQ(u.name, "g");
    EXPECT_EQ(u.param_count, 0);
    EXPECT_EQ(u.start_line, 1);
    EXPECT_EQ(u.end_line, 3);
}

TEST(Units, KeywordProfileWithoutKeywordYieldsNothing)
{
    auto j = profile_to_json(builtin_registry().get("c-family"));
    j["id"] = "script";
    j["file_extensions"] = {".script"};
    j["unit_detection"] = "brace-block";
    j["unit_keywords"] = {"function"};
    const auto p = profile_from_json(j);
    const auto tokens = tokenize("var x = 1; if (x) { x = 2; }", p).tokens;
    EXPECT_TRUE(extract_units(tokens, p).units.empty());
    const auto with = tokenize("function h(a) { return a; }", p).tokens;
    ASSERT_EQ(extract_units(with, p).units.size(), 1u);
    EXPECT_EQ(extract_units(with, p).units[0].name, "h");
}

TEST(Units, ControlBlocksAreNotUnits)
{
    const auto e = extract("void run(void) {\n  if (x) { y(); }\n  while (z) { w(); }\n}\n", "c-family");
    ASSERT_EQ(e.result.units.size(), 1u);
    EXPECT_EQ(e.result.units[0].name, "run");
    EXPECT_EQ(e.result.units[0].param_count, 0);
}

TEST(Units, ClassMethodsAreUnits)
{
    const auto e = extract("class A {\n public:\n  int get() const { return v; }\n  void set(int x) { v = x; }\n};\n",
                           "c-family");
    ASSERT_EQ(e.result.units.size(), 2u);
    EXPECT_EQ(e.result.units[0].name, "get");
    EXPECT_EQ(e.result.units[1].name, "set");
    EXPECT_EQ(e.result.units[1].param_count, 1);
}

TEST(Units, PythonNestedFunctionsAreSeparate)
{
    const auto e = extract("def outer(a, b=2, *args):\n    def inner():\n        return 1\n    return inner()\n",
                           "python");
    ASSERT_EQ(e.result.units.size(), 2u);
    EXPECT_EQ(e.result.units[0].name, "outer");
    EXPECT_EQ(e.result.units[0].param_count, 3);
    EXPECT_EQ(e.result.units[0].nested.size(), 1u);
    EXPECT_EQ(e.result.units[1].name, "inner");
    for (auto i : own_code_tokens(e.result.units[0], e.tokens)) {
        EXPECT_FALSE(e.result.units[0].nested[0].contains(i));
    }
}

TEST(Units, PythonSelfIsCounted)
{
    const auto e = extract("class K:\n    def m(self, x):\n        return x\n", "python");
    ASSERT_EQ(e.result.units.size(), 1u);
    EXPECT_EQ(e.result.units[0].param_count, 2);
}

TEST(Units, NestingDepthOfTwoNestedIfs)
{
    const std::string src =
        "def scan(items):\n"
        "    total = 0\n"
        "    for_each = items\n"
        "    if for_each:\n"
        "        total = 1\n"
        "        if total > 0:\n"
        "            total = 2\n"
        "        total = total + 1\n"
        "    else:\n"
        "        total = -1\n"
        "    total = total * 2\n"
        "    return total\n";
    const auto e = extract(src, "python");
    ASSERT_EQ(e.result.units.size(), 1u);
    EXPECT_EQ(e.result.units[0].end_line, 12);
    EXPECT_EQ(e.result.units[0].nesting_depth_max, 2);
}

TEST(Units, CobolProcedures)
{
    const auto e = extract("PROCEDURE ALPHA.\n  DISPLAY 'A'.\nEND-PROCEDURE.\nparagraph beta.\n  IF X > 1\n"
                           "    DISPLAY 'B'\n  END-IF.\nend-paragraph.\n",
                           "cobol-like");
    ASSERT_EQ(e.result.units.size(), 2u);
    EXPECT_EQ(e.result.units[0].name, "ALPHA");
    EXPECT_EQ(e.result.units[0].end_line, 3);
    EXPECT_EQ(e.result.units[1].name, "beta");
    EXPECT_EQ(e.result.units[1].nesting_depth_max, 1);
}

TEST(Units, UnbalancedBracesProduceDiagnostic)
{
    const auto e = extract("int f() { if (x) { return 1; }\n", "c-family");
    ASSERT_FALSE(e.result.diagnostics.empty());
    EXPECT_EQ(e.result.diagnostics[0].code, ErrorCode::unbalanced_delimiters);
}

TEST(Units, UnitsAreOrderedByFirstToken)
{
    const auto e = extract("int a() { return 1; }\nint b() { return 2; }\nint c() { return 3; }\n", "c-family");
    ASSERT_EQ(e.result.units.size(), 3u);
    for (std::size_t i = 1; i < e.result.units.size(); ++i) {
        EXPECT_LT(e.result.units[i - 1].tokens.begin, e.result.units[i].tokens.begin);
    }
}
