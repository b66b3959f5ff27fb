#include <gtest/gtest.h>

#include <filesystem>
#include <unistd.h>
#include <fstream>

#include "xmaint/analysis.hpp"
#include "xmaint/discovery.hpp"
#include "xmaint/error.hpp"
#include "xmaint/report.hpp"

using namespace xmaint;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = XMAINT_FIXTURES;

std::map<std::string, int> unit_cc(const ProjectAnalysis& a)
{
    std::map<std::string, int> out;
    for (const auto& f : a.files) {
        for (const auto& u : f.units) {
            std::string key;
            for (char ch : u.unit.name) {
                if (ch != '_' && ch != '-') key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            }
            out[key] = u.cc;
        }
    }
    return out;
}

class TempDir {
public:
    TempDir()
    {
        path_ = fs::temp_directory_path() / ("xmaint_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

void write(const fs::path& p, const std::string& text)
{
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

} // namespace

TEST(Analysis, SingleFileHandValues)
{
    const auto a = analyze_path(kFixtures / "single", Config{});
    EXPECT_EQ(a.project_id, "single");
    ASSERT_EQ(a.files.size(), 1u);
    EXPECT_EQ(a.files[0].path, "sign.c");
    EXPECT_EQ(a.metrics.physical_lines, 11);
    EXPECT_EQ(a.metrics.total_loc, 9);
    EXPECT_EQ(a.metrics.lines.comment, 1);
    EXPECT_EQ(a.metrics.lines.blank, 1);
    EXPECT_DOUBLE_EQ(a.metrics.comment_ratio, 0.1);
    ASSERT_EQ(a.metrics.unit_count, 2);
    EXPECT_DOUBLE_EQ(a.metrics.unit_averages->cc, 2.0);
    EXPECT_DOUBLE_EQ(a.metrics.unit_averages->loc, 4.5);
    ASSERT_TRUE(a.tdr);
    EXPECT_DOUBLE_EQ(a.tdr->production_minutes, 270);
    EXPECT_DOUBLE_EQ(a.tdr->tdr, 0);
    EXPECT_EQ(a.tdr->grade, Grade::A);
    EXPECT_TRUE(a.violations.empty());
    EXPECT_TRUE(a.diagnostics.empty());
    ASSERT_TRUE(a.mi);
    EXPECT_GT(a.mi->mi, 0);
}

TEST(Analysis, ParityFixturesShareComplexity)
{
    const auto c = analyze_path(kFixtures / "parity" / "c", Config{});
    const auto py = analyze_path(kFixtures / "parity" / "python", Config{});
    const auto cobol = analyze_path(kFixtures / "verbosity" / "cobol", Config{});
    EXPECT_EQ(unit_cc(c).size(), 5u);
    EXPECT_EQ(unit_cc(c), unit_cc(py));
    EXPECT_EQ(unit_cc(c), unit_cc(cobol));
    EXPECT_NEAR(c.duplication.ratios.token_ratio, py.duplication.ratios.token_ratio, 0.01);
    EXPECT_GE(std::abs(py.duplication.ratios.line_ratio - cobol.duplication.ratios.line_ratio), 0.05);
}

TEST(Analysis, InvalidUtf8BecomesDiagnostic)
{
    std::vector<SourceText> sources{{"ok.py", "python", "def f():\n    return 1\n"},
                                    {"bad.py", "python", "x = '\xff'\n"}};
    const auto a = analyze_sources("p", sources, Config{});
    EXPECT_EQ(a.files.size(), 1u);
    ASSERT_EQ(a.diagnostics.size(), 1u);
    EXPECT_EQ(a.diagnostics[0].code, ErrorCode::encoding_error);
    EXPECT_EQ(a.diagnostics[0].file, "bad.py");
}

TEST(Analysis, LexicalDiagnosticsNameTheFile)
{
    std::vector<SourceText> sources{{"a.c", "c-family", "int f() { return 1; }\nchar *s = \"open\n"}};
    const auto a = analyze_sources("p", sources, Config{});
    ASSERT_FALSE(a.diagnostics.empty());
    EXPECT_EQ(a.diagnostics[0].file, "a.c");
    EXPECT_EQ(a.diagnostics[0].code, ErrorCode::unterminated_string);
}

TEST(Analysis, EmptyProjectIsFatal)
{
    TempDir dir;
    try {
        (void)analyze_path(dir.path(), Config{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::empty_project);
    }
}

TEST(Analysis, MissingRootIsFatal)
{
    try {
        (void)analyze_path(kFixtures / "does-not-exist", Config{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unreadable_file);
    }
}

TEST(Analysis, NoUnitsLeavesMiAbsent)
{
    std::vector<SourceText> sources{{"s.py", "python", "x = 1\nprint(x)\n"}};
    const auto a = analyze_sources("p", sources, Config{});
    EXPECT_FALSE(a.mi);
    EXPECT_TRUE(a.tdr);
}

TEST(Analysis, DiscoveryExcludesAndIncludes)
{
    TempDir dir;
    write(dir.path() / "src" / "a.c", "int a(void) { return 1; }\n");
    write(dir.path() / "src" / "b.py", "def b():\n    return 2\n");
    write(dir.path() / "build" / "gen.c", "int g(void) { return 3; }\n");
    write(dir.path() / "README.txt", "not code\n");
    Config c;
    auto d = discover_files(dir.path(), c);
    ASSERT_EQ(d.files.size(), 2u);
    EXPECT_EQ(d.files[0].relative, "src/a.c");
    EXPECT_EQ(d.files[1].relative, "src/b.py");
    c.includes = {"*.py"};
    d = discover_files(dir.path(), c);
    ASSERT_EQ(d.files.size(), 1u);
    EXPECT_EQ(d.files[0].profile_id, "python");
    c.includes.clear();
    c.excludes = {"src/b.py"};
    d = discover_files(dir.path(), c);
    EXPECT_EQ(d.files.size(), 2u);  // build/ is no longer excluded
}

TEST(Analysis, SymlinksAreNotFollowed)
{
    TempDir dir;
    write(dir.path() / "real" / "a.c", "int a(void) { return 1; }\n");
    fs::create_directory_symlink(dir.path() / "real", dir.path() / "link");
    const auto d = discover_files(dir.path(), Config{});
    ASSERT_EQ(d.files.size(), 1u);
    EXPECT_EQ(d.files[0].relative, "real/a.c");
}

TEST(Analysis, GlobMatch)
{
    EXPECT_TRUE(glob_match("*.c", "a.c"));
    EXPECT_TRUE(glob_match("src/*", "src/x/y.c"));
    EXPECT_TRUE(glob_match("?.py", "a.py"));
    EXPECT_FALSE(glob_match("*.c", "a.cpp"));
}

TEST(Analysis, ResultsIndependentOfWorkers)
{
    Config one;
    one.workers = 1;
    Config many;
    many.workers = 6;
    const auto a = analyze_path(kFixtures, one);
    const auto b = analyze_path(kFixtures, many);
    EXPECT_EQ(render_json(project_json(a)), render_json(project_json(b)));
}

TEST(Analysis, ResultsIndependentOfSourceOrder)
{
    std::vector<SourceText> sources{{"b.c", "c-family", "int b(int x) { if (x) return 1; return 0; }\n"},
                                    {"a.py", "python", "def a(x):\n    return x or 1\n"}};
    const auto forward = analyze_sources("p", sources, Config{});
    std::reverse(sources.begin(), sources.end());
    const auto backward = analyze_sources("p", sources, Config{});
    EXPECT_EQ(project_json(forward), project_json(backward));
}

TEST(Analysis, CompareIntersectsRulesAcrossProfiles)
{
    Config c;
    c.rules = nlohmann::json::parse(R"({"profiles": {"python": {"nesting-depth": {"enabled": false}}}})");
    const auto cmp = compare_paths({kFixtures / "parity" / "c", kFixtures / "parity" / "python"}, c);
    ASSERT_EQ(cmp.projects.size(), 2u);
    EXPECT_EQ(std::count(cmp.intersection.shared.begin(), cmp.intersection.shared.end(), RuleId::nesting_depth), 0);
    for (const auto& p : cmp.projects) EXPECT_EQ(p.rule_ids(), cmp.intersection.shared);
    ASSERT_EQ(cmp.scores.size(), 2u);
    EXPECT_EQ(cmp.scores[0].rank, 1);
    EXPECT_TRUE(cmp.scores[0].per_indicator.count(Indicator::volumetry));
}

TEST(Analysis, CompareNeedsTwoProjects)
{
    try {
        (void)compare_paths({kFixtures / "single"}, Config{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::single_project);
    }
}

TEST(Analysis, CompareRejectsDoubleCounting)
{
    Config c;
    c.rules = nlohmann::json::parse(R"({"duplication-block": {"enabled": true}})");
    try {
        (void)compare_paths({kFixtures / "parity" / "c", kFixtures / "parity" / "python"}, c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::single_counting_violation);
    }
}

TEST(Analysis, IdenticalCopiesTie)
{
    const std::vector<SourceText> files{{"x.py", "python", "def f(a):\n    if a:\n        return 1\n    return 2\n"}};
    const auto cmp = compare_sources({{"zz", files}, {"aa", files}}, Config{});
    ASSERT_EQ(cmp.scores.size(), 2u);
    EXPECT_DOUBLE_EQ(cmp.scores[0].total, cmp.scores[1].total);
    EXPECT_EQ(cmp.scores[0].project_id, "aa");
}

TEST(Analysis, SensitivityRunsWhenRequested)
{
    Config c;
    c.sensitivity = true;
    const auto cmp = compare_paths({kFixtures / "parity" / "c", kFixtures / "parity" / "python"}, c);
    ASSERT_TRUE(cmp.sensitivity);
    EXPECT_EQ(cmp.sensitivity->perturbations.size(), 8u);
}
