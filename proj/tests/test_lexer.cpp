#include <gtest/gtest.h>

#include <random>

#include "xmaint/lexer.hpp"
#include "xmaint/profile.hpp"

using namespace xmaint;

namespace {

const LanguageProfile& c_family() { return builtin_registry().get("c-family"); }
const LanguageProfile& python() { return builtin_registry().get("python"); }
const LanguageProfile& cobol() { return builtin_registry().get("cobol-like"); }

std::vector<std::pair<TokenKind, std::string>> kinds(const std::vector<Token>& ts)
{
    std::vector<std::pair<TokenKind, std::string>> out;
    for (const auto& t : ts) out.emplace_back(t.kind, t.text);
    return out;
}

/// Every non-whitespace byte lies inside exactly one token span.
void expect_full_coverage(std::string_view src, const std::vector<Token>& tokens)
{
    std::vector<int> cover(src.size(), 0);
    for (const auto& t : tokens) {
        ASSERT_EQ(src.substr(t.offset, t.text.size()), t.text);
        for (std::size_t i = 0; i < t.text.size(); ++i) ++cover[t.offset + i];
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
        const bool ws = src[i] == ' ' || src[i] == '\t' || src[i] == '\n' || src[i] == '\r';
        EXPECT_LE(cover[i], 1); if (!ws) EXPECT_EQ(cover[i], 1) << "byte " << i << " '" << src[i] << "'";
    }
}

} // namespace

TEST(Lexer, EmptyInput)
{
    const auto r = tokenize("", c_family());
    EXPECT_TRUE(r.tokens.empty());
    EXPECT_TRUE(r.diagnostics.empty());
}

TEST(Lexer, CFamilyAssignmentWithTrailingComment)
{
    const auto r = tokenize("a = b + c // sum", c_family());
    using K = TokenKind;
    const std::vector<std::pair<TokenKind, std::string>> want{
        {K::identifier, "a"}, {K::op, "="}, {K::identifier, "b"}, {K::op, "+"}, {K::identifier, "c"}, {K::comment, "// sum"}};
    EXPECT_EQ(kinds(r.tokens), want);
}

TEST(Lexer, HashInsidePythonStringIsNotAComment)
{
    const auto r = tokenize("s = \"# not a comment\"", python());
    ASSERT_EQ(r.tokens.size(), 3u);
    EXPECT_EQ(r.tokens[2].kind, TokenKind::string_literal);
    EXPECT_EQ(r.tokens[2].text, "\"# not a comment\"");
    for (const auto& t : r.tokens) EXPECT_NE(t.kind, TokenKind::comment);
}

TEST(Lexer, BlockCommentIsOneTokenAtStartLine)
{
    const auto r = tokenize("x;\n/* one\ntwo\nthree */ y;", c_family());
    ASSERT_EQ(r.tokens.size(), 5u);
    EXPECT_EQ(r.tokens[2].kind, TokenKind::comment);
    EXPECT_EQ(r.tokens[2].line, 2);
    EXPECT_EQ(r.tokens[2].end_line, 4);
    EXPECT_EQ(r.tokens[3].text, "y");
    EXPECT_EQ(r.tokens[3].line, 4);
}

TEST(Lexer, LineAndColumnAreOneBased)
{
    const auto r = tokenize("int a;\n  b = 1;", c_family());
    ASSERT_GE(r.tokens.size(), 4u);
    EXPECT_EQ(r.tokens[0].line, 1);
    EXPECT_EQ(r.tokens[0].column, 1);
    EXPECT_EQ(r.tokens[3].text, "b");
    EXPECT_EQ(r.tokens[3].line, 2);
    EXPECT_EQ(r.tokens[3].column, 3);
}

TEST(Lexer, LongestOperatorWins)
{
    const auto r = tokenize("a >>= b && c->d", c_family());
    ASSERT_EQ(r.tokens.size(), 7u);
    EXPECT_EQ(r.tokens[1].text, ">>=");
    EXPECT_EQ(r.tokens[3].text, "&&");
    EXPECT_EQ(r.tokens[5].text, "->");
}

TEST(Lexer, EscapedQuoteStaysInsideString)
{
    const auto r = tokenize(R"(x = "a\"b"; y)", c_family());
    ASSERT_EQ(r.tokens.size(), 5u);
    EXPECT_EQ(r.tokens[2].text, R"("a\"b")");
}

TEST(Lexer, UnterminatedStringRecoversAtEndOfLine)
{
    const auto r = tokenize("x = \"open\ny = 2;", c_family());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].code, ErrorCode::unterminated_string);
    EXPECT_EQ(r.diagnostics[0].line, 1);
    ASSERT_GE(r.tokens.size(), 3u);
    EXPECT_EQ(r.tokens[2].text, "\"open");
    EXPECT_EQ(r.tokens[3].text, "y");
    EXPECT_EQ(r.tokens[3].line, 2);
}

TEST(Lexer, UnterminatedBlockCommentConsumesRestOfFile)
{
    const auto r = tokenize("a; /* never\nclosed b;", c_family());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].code, ErrorCode::unterminated_comment);
    ASSERT_EQ(r.tokens.size(), 3u);
    EXPECT_EQ(r.tokens[2].kind, TokenKind::comment);
    EXPECT_EQ(r.tokens[2].end_line, 2);
}

TEST(Lexer, UnterminatedTripleQuoteConsumesRestOfFile)
{
    const auto r = tokenize("x = '''doc\nmore\n", python());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].code, ErrorCode::unterminated_string);
    EXPECT_EQ(r.tokens.back().kind, TokenKind::string_literal);
}

TEST(Lexer, PythonTripleQuotedStringSpansLines)
{
    const auto r = tokenize("def f():\n    \"\"\"Doc\n    # still doc\n    \"\"\"\n    return 1\n", python());
    int strings = 0;
    for (const auto& t : r.tokens) {
        EXPECT_NE(t.kind, TokenKind::comment);
        if (t.kind == TokenKind::string_literal) {
            ++strings;
            EXPECT_EQ(t.line, 2);
            EXPECT_EQ(t.end_line, 4);
        }
    }
    EXPECT_EQ(strings, 1);
}

TEST(Lexer, RawStringAndDigitSeparator)
{
    const auto r = tokenize("auto s = R\"(a \" b\n c)\"; int n = 1'000'000;", c_family());
    EXPECT_TRUE(r.diagnostics.empty());
    int numbers = 0;
    for (const auto& t : r.tokens) {
        if (t.kind == TokenKind::number_literal) {
            ++numbers;
            EXPECT_EQ(t.text, "1'000'000");
        }
    }
    EXPECT_EQ(numbers, 1);
}

TEST(Lexer, CobolKeywordsAreCaseInsensitive)
{
    const auto r = tokenize("move 1 to WS-TOTAL *> trailing\nIF X > 1", cobol());
    ASSERT_GE(r.tokens.size(), 5u);
    EXPECT_EQ(r.tokens[0].kind, TokenKind::keyword);
    EXPECT_EQ(r.tokens[3].kind, TokenKind::identifier);
    EXPECT_EQ(r.tokens[3].text, "WS-TOTAL");
    EXPECT_EQ(r.tokens[4].kind, TokenKind::comment);
    EXPECT_EQ(r.tokens[5].kind, TokenKind::keyword);
}

TEST(Lexer, TokensAreStrictlyOrdered)
{
    const auto r = tokenize("int f(int a) { /* c */ return a + 1; } // x\n", c_family());
    for (std::size_t i = 1; i < r.tokens.size(); ++i) {
        const auto& a = r.tokens[i - 1];
        const auto& b = r.tokens[i];
        EXPECT_TRUE(a.line < b.line || (a.line == b.line && a.column < b.column));
        EXPECT_LE(a.offset + a.text.size(), b.offset);
    }
}

TEST(Lexer, FullCoverageOnFixtureSnippets)
{
    const std::string c = "int main(void) {\n  char *s = \"x // y\"; /* z */\n  return s[0] == 'a' ? 1 : 0; }\n";
    expect_full_coverage(c, tokenize(c, c_family()).tokens);
    const std::string py = "class A:\n    def m(self, x=1.5e3):\n        return {'k': x ** 2}  # c\n";
    expect_full_coverage(py, tokenize(py, python()).tokens);
    const std::string cb = "PROCEDURE P.\n    DISPLAY 'HI' *> greet\nEND-PROCEDURE.\n";
    expect_full_coverage(cb, tokenize(cb, cobol()).tokens);
}

TEST(Lexer, FullCoverageOnRandomText)
{
    std::mt19937 rng(7);
    const std::string alphabet = "ab1_ =+-*/(){}[];:,.<>!&|\"'#\n\t\\";
    for (int round = 0; round < 300; ++round) {
        std::string s;
        const int n = static_cast<int>(rng() % 120);
        for (int i = 0; i < n; ++i) s += alphabet[rng() % alphabet.size()];
        for (const auto* p : {&c_family(), &python(), &cobol()}) {
            const auto r = tokenize(s, *p);
            expect_full_coverage(s, r.tokens);
            if (HasFailure()) {
                ADD_FAILURE() << "profile " << p->id << " input: " << s;
                return;
            }
        }
    }
}

TEST(Lexer, TokenizeIsDeterministic)
{
    const std::string src = "x = [i for i in range(10) if i % 2]  # evens\n";
    const auto a = tokenize(src, python());
    const auto b = tokenize(src, python());
    EXPECT_EQ(kinds(a.tokens), kinds(b.tokens));
}

TEST(Lexer, Utf8Validation)
{
    EXPECT_FALSE(find_invalid_utf8("plain ascii"));
    EXPECT_FALSE(find_invalid_utf8("caf\xC3\xA9 \xE2\x82\xAC"));
    EXPECT_EQ(find_invalid_utf8("ab\xE9z"), std::optional<std::size_t>(2));
    EXPECT_TRUE(find_invalid_utf8("\xC0\xAF"));  // overlong
    EXPECT_EQ(strip_bom("\xEF\xBB\xBFx"), "x");
}

TEST(Lexer, PhysicalLines)
{
    EXPECT_EQ(count_physical_lines(""), 0);
    EXPECT_EQ(count_physical_lines("a"), 1);
    EXPECT_EQ(count_physical_lines("a\n"), 1);
    EXPECT_EQ(count_physical_lines("a\n\nb"), 3);
}
