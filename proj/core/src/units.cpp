#include "xmaint/units.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace xmaint {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool is_punct(const Token& t, std::string_view text)
{
    return (t.kind == TokenKind::punctuation || t.kind == TokenKind::op) && t.text == text;
}

/// Code-only view over the file tokens; all indices handed out are file indices.
struct CodeTokens {
    std::span<const Token> all;
    std::vector<std::size_t> idx;  // file indices of non-comment tokens

    explicit CodeTokens(std::span<const Token> tokens) : all(tokens)
    {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (!tokens[i].is_comment()) idx.push_back(i);
        }
    }
    [[nodiscard]] std::size_t size() const noexcept { return idx.size(); }
    [[nodiscard]] const Token& operator[](std::size_t k) const { return all[idx[k]]; }
};

/// Matches open/close pairs over code positions; unmatched entries stay kNone.
std::vector<std::size_t> match_pairs(const CodeTokens& code, std::string_view open, std::string_view close)
{
    std::vector<std::size_t> match(code.size(), kNone);
    std::vector<std::size_t> stack;
    for (std::size_t k = 0; k < code.size(); ++k) {
        if (is_punct(code[k], open)) {
            stack.push_back(k);
        } else if (is_punct(code[k], close) && !stack.empty()) {
            match[stack.back()] = k;
            match[k] = stack.back();
            stack.pop_back();
        }
    }
    return match;
}

/// Parameter count for the code positions strictly between `open` and `close`.
int count_params(const CodeTokens& code, std::size_t open, std::size_t close, bool angle_nesting)
{
    if (close <= open + 1) return 0;
    if (close == open + 2 && code[open + 1].text == "void") return 0;  // C's f(void)
    int depth = 0;
    int commas = 0;
    std::size_t last_comma = kNone;
    for (std::size_t k = open + 1; k < close; ++k) {
        const auto& t = code[k];
        if (t.kind != TokenKind::punctuation && t.kind != TokenKind::op) continue;
        const auto& s = t.text;
        if (s == "(" || s == "[" || s == "{" || (angle_nesting && s == "<")) {
            ++depth;
        } else if (s == ")" || s == "]" || s == "}" || (angle_nesting && s == ">")) {
            depth = std::max(0, depth - 1);
        } else if (angle_nesting && s == ">>") {
            depth = std::max(0, depth - 2);
        } else if (s == "," && depth == 0) {
            ++commas;
            last_comma = k;
        }
    }
    if (last_comma == close - 1) --commas;  // trailing comma
    return commas + 1;
}

Unit make_unit(const CodeTokens& code, std::size_t name_k, std::size_t first_k, std::size_t last_k, int params,
               std::string_view file)
{
    Unit u;
    u.name = code[name_k].text;
    u.file = std::string(file);
    u.start_line = code[first_k].line;
    u.end_line = code[last_k].end_line;
    u.param_count = params;
    u.tokens = {code.idx[first_k], code.idx[last_k] + 1};
    return u;
}

void diagnose_unbalanced(Diagnostics& diags, std::string_view file, const Token& at, const std::string& what)
{
    diags.push_back({ErrorCode::unbalanced_delimiters, std::string(file), at.line, what});
}

// ---------------------------------------------------------------- brace-block

bool allowed_before_name(const Token& prev)
{
    if (prev.kind == TokenKind::identifier) return true;
    if (prev.kind == TokenKind::keyword) {
        static const std::vector<std::string_view> reject{"new", "return", "throw", "else", "case",
                                                         "goto", "sizeof", "delete", "do"};
        return std::find(reject.begin(), reject.end(), prev.text) == reject.end();
    }
    static const std::vector<std::string_view> ok{";", "{", "}", "]", "::", "*", "&", "&&", "~", ">", ":", "@", "#"};
    return std::find(ok.begin(), ok.end(), prev.text) != ok.end();
}

/// From the closing paren of a signature, the code position of the body's
/// opening brace, or kNone when the candidate is a call or declaration.
std::size_t find_body_open(const CodeTokens& code, std::size_t paren_close, const std::vector<std::size_t>& parens,
                           const std::vector<std::size_t>& braces)
{
    constexpr std::size_t kMaxTrailer = 96;
    bool init_list = false;
    for (std::size_t k = paren_close + 1; k < code.size() && k < paren_close + kMaxTrailer; ++k) {
        const auto& t = code[k];
        if (t.kind == TokenKind::identifier || t.kind == TokenKind::keyword) continue;
        if (t.kind != TokenKind::punctuation && t.kind != TokenKind::op) return kNone;
        const auto& s = t.text;
        if (s == "{") {
            const auto& prev = code[k - 1];
            if (init_list && (prev.kind == TokenKind::identifier || prev.text == ">")) {
                if (braces[k] == kNone) return kNone;
                k = braces[k];
                continue;
            }
            return k;
        }
        if (s == "(") {
            if (parens[k] == kNone) return kNone;
            k = parens[k];
            continue;
        }
        if (s == ":") {
            init_list = true;
            continue;
        }
        static const std::vector<std::string_view> ok{"::", ".", "->", "<", ">", ">>", "&", "&&", "*", ",", "[", "]"};
        if (std::find(ok.begin(), ok.end(), s) == ok.end()) return kNone;
    }
    return kNone;
}

void extract_brace_block(const CodeTokens& code, const LanguageProfile& profile, std::string_view file,
                         UnitExtraction& out)
{
    const auto parens = match_pairs(code, "(", ")");
    const auto braces = match_pairs(code, "{", "}");
    for (std::size_t k = 0; k + 1 < code.size(); ++k) {
        const auto& name = code[k];
        if (name.kind != TokenKind::identifier || !is_punct(code[k + 1], "(")) continue;
        std::size_t first = k;
        if (!profile.unit_keywords.empty()) {
            if (k == 0 || !profile.is_unit_keyword(code[k - 1].text)) continue;
            first = k - 1;
        } else if (k > 0 && !allowed_before_name(code[k - 1])) {
            continue;
        }
        const auto paren_close = parens[k + 1];
        if (paren_close == kNone) continue;
        const auto body_open = find_body_open(code, paren_close, parens, braces);
        if (body_open == kNone) continue;
        const auto body_close = braces[body_open];
        if (body_close == kNone) {
            diagnose_unbalanced(out.diagnostics, file, name, "body of '" + name.text + "' is never closed");
            continue;
        }
        auto unit = make_unit(code, k, first, body_close, count_params(code, k + 1, paren_close, true), file);
        out.units.push_back(std::move(unit));
    }
}

// --------------------------------------------------------------- indent-block

void extract_indent_block(const CodeTokens& code, const LanguageProfile& profile, std::string_view file,
                          UnitExtraction& out)
{
    const auto parens = match_pairs(code, "(", ")");
    // Logical line starts: first code token of a physical line at bracket depth 0.
    std::vector<bool> line_start(code.size(), false);
    std::map<int, int> indent_of_line;  // physical line -> column of its logical start
    int depth = 0;
    int last_line = 0;
    for (std::size_t k = 0; k < code.size(); ++k) {
        const auto& t = code[k];
        if (t.line != last_line && depth == 0) {
            line_start[k] = true;
            indent_of_line[t.line] = t.column;
        }
        last_line = t.end_line;
        if (t.kind == TokenKind::punctuation) {
            if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
            if (t.text == ")" || t.text == "]" || t.text == "}") depth = std::max(0, depth - 1);
        }
    }

    for (std::size_t k = 0; k + 1 < code.size(); ++k) {
        if (code[k].kind != TokenKind::keyword || !profile.is_unit_keyword(code[k].text)) continue;
        if (code[k + 1].kind != TokenKind::identifier) continue;
        const auto& kw = code[k];
        std::size_t cursor = k + 2;
        int params = 0;
        if (cursor < code.size() && is_punct(code[cursor], "(")) {
            const auto close = parens[cursor];
            if (close == kNone) {
                diagnose_unbalanced(out.diagnostics, file, kw, "parameter list of '" + code[k + 1].text + "' is never closed");
                continue;
            }
            params = count_params(code, cursor, close, false);
            cursor = close + 1;
        }
        while (cursor < code.size() && !is_punct(code[cursor], ":") && !line_start[cursor]) ++cursor;
        if (cursor >= code.size() || !is_punct(code[cursor], ":")) {
            diagnose_unbalanced(out.diagnostics, file, kw, "header of '" + code[k + 1].text + "' has no ':'");
            continue;
        }
        // Header indentation is that of the logical line holding the keyword.
        std::size_t header_start = k;
        while (header_start > 0 && !line_start[header_start]) --header_start;
        const int header_indent = code[header_start].column;

        std::size_t last = cursor;
        if (cursor + 1 < code.size() && !line_start[cursor + 1]) {
            // one-liner: body is the rest of the logical line
            last = cursor + 1;
            while (last + 1 < code.size() && !line_start[last + 1]) ++last;
        } else {
            std::size_t j = cursor + 1;
            if (j >= code.size() || code[j].column <= header_indent) {
                diagnose_unbalanced(out.diagnostics, file, kw, "'" + code[k + 1].text + "' has an empty body");
                continue;
            }
            while (j < code.size() && !(line_start[j] && code[j].column <= header_indent)) {
                last = j;
                ++j;
            }
        }
        out.units.push_back(make_unit(code, k + 1, k, last, params, file));
    }
}

// --------------------------------------------------------------- keyword-pair

void extract_keyword_pair(const CodeTokens& code, const LanguageProfile& profile, std::string_view file,
                          UnitExtraction& out)
{
    const auto parens = match_pairs(code, "(", ")");
    struct Open {
        std::size_t keyword;
        int params;
    };
    std::vector<Open> stack;
    for (std::size_t k = 0; k < code.size(); ++k) {
        const auto& t = code[k];
        if (t.kind != TokenKind::keyword && t.kind != TokenKind::identifier) continue;
        if (profile.is_unit_keyword(t.text) && k + 1 < code.size() && code[k + 1].kind == TokenKind::identifier) {
            int params = 0;
            if (k + 2 < code.size() && is_punct(code[k + 2], "(") && parens[k + 2] != kNone) {
                params = count_params(code, k + 2, parens[k + 2], false);
            }
            stack.push_back({k, params});
            ++k;
        } else if (profile.is_unit_end_keyword(t.text)) {
            if (stack.empty()) {
                diagnose_unbalanced(out.diagnostics, file, t, "'" + t.text + "' without an open unit");
                continue;
            }
            const auto open = stack.back();
            stack.pop_back();
            out.units.push_back(make_unit(code, open.keyword + 1, open.keyword, k, open.params, file));
        }
    }
    for (const auto& open : stack) {
        diagnose_unbalanced(out.diagnostics, file, code[open.keyword],
                            "'" + code[open.keyword + 1].text + "' is never closed");
    }
}

// -------------------------------------------------------------------- nesting

int brace_depth(std::span<const Token> tokens, const std::vector<std::size_t>& own)
{
    // The body brace itself is level 1.
    int depth = 0;
    int max_depth = 0;
    for (auto i : own) {
        const auto& t = tokens[i];
        if (t.kind != TokenKind::punctuation) continue;
        if (t.text == "{") {
            max_depth = std::max(max_depth, ++depth);
        } else if (t.text == "}") {
            depth = std::max(0, depth - 1);
        }
    }
    return std::max(0, max_depth - 1);
}

int indent_depth(const Unit& u, std::span<const Token> tokens, const std::vector<std::size_t>& own)
{
    // Skip the header line(s) up to the first ':' at bracket depth 0.
    int bracket = 0;
    std::size_t pos = 0;
    for (; pos < own.size(); ++pos) {
        const auto& t = tokens[own[pos]];
        if (t.kind != TokenKind::punctuation) continue;
        if (t.text == "(" || t.text == "[" || t.text == "{") ++bracket;
        else if (t.text == ")" || t.text == "]" || t.text == "}") bracket = std::max(0, bracket - 1);
        else if (t.text == ":" && bracket == 0) break;
    }
    const int header_line = pos < own.size() ? tokens[own[pos]].end_line : u.start_line;
    std::vector<int> stack;
    int max_depth = 0;
    int last_line = header_line;
    bracket = 0;
    for (std::size_t p = pos + 1; p < own.size(); ++p) {
        const auto& t = tokens[own[p]];
        if (t.line != last_line && bracket == 0) {
            const int col = t.column;
            if (stack.empty() || col > stack.back()) {
                stack.push_back(col);
            } else {
                while (stack.size() > 1 && col < stack.back()) stack.pop_back();
            }
            max_depth = std::max(max_depth, static_cast<int>(stack.size()) - 1);
        }
        last_line = t.end_line;
        if (t.kind == TokenKind::punctuation) {
            if (t.text == "(" || t.text == "[" || t.text == "{") ++bracket;
            if (t.text == ")" || t.text == "]" || t.text == "}") bracket = std::max(0, bracket - 1);
        }
    }
    return max_depth;
}

int keyword_depth(const LanguageProfile& profile, std::span<const Token> tokens, const std::vector<std::size_t>& own)
{
    int depth = 0;
    int max_depth = 0;
    for (auto i : own) {
        const auto folded = profile.fold(tokens[i].text);
        for (const auto& pair : profile.nesting_pairs) {
            if (folded == pair.open) {
                max_depth = std::max(max_depth, ++depth);
            } else if (folded == pair.close) {
                depth = std::max(0, depth - 1);
            }
        }
    }
    return max_depth;
}

} // namespace

std::vector<std::size_t> own_code_tokens(const Unit& unit, std::span<const Token> tokens)
{
    std::vector<std::size_t> own;
    const auto end = std::min(unit.tokens.end, tokens.size());
    for (std::size_t i = unit.tokens.begin; i < end; ++i) {
        if (tokens[i].is_comment()) continue;
        const bool nested = std::any_of(unit.nested.begin(), unit.nested.end(),
                                        [i](const TokenRange& r) { return r.contains(i); });
        if (!nested) own.push_back(i);
    }
    return own;
}

UnitExtraction extract_units(std::span<const Token> tokens, const LanguageProfile& profile, std::string_view file)
{
    UnitExtraction out;
    const CodeTokens code(tokens);
    switch (profile.unit_detection) {
    case UnitDetection::brace_block: extract_brace_block(code, profile, file, out); break;
    case UnitDetection::indent_block: extract_indent_block(code, profile, file, out); break;
    case UnitDetection::keyword_pair: extract_keyword_pair(code, profile, file, out); break;
    }

    std::sort(out.units.begin(), out.units.end(), [](const Unit& a, const Unit& b) {
        if (a.tokens.begin != b.tokens.begin) return a.tokens.begin < b.tokens.begin;
        return a.tokens.end > b.tokens.end;
    });
    // Drop any candidate that partially overlaps an earlier one.
    std::vector<Unit> kept;
    for (auto& u : out.units) {
        const bool partial = std::any_of(kept.begin(), kept.end(), [&](const Unit& k) {
            const bool disjoint = u.tokens.begin >= k.tokens.end || u.tokens.end <= k.tokens.begin;
            return !disjoint && !k.tokens.contains(u.tokens);
        });
        if (!partial) kept.push_back(std::move(u));
    }
    out.units = std::move(kept);

    // Direct children: contained ranges not contained in another contained range.
    for (std::size_t a = 0; a < out.units.size(); ++a) {
        auto& outer = out.units[a];
        for (std::size_t b = a + 1; b < out.units.size() && out.units[b].tokens.begin < outer.tokens.end; ++b) {
            const auto& inner = out.units[b].tokens;
            if (!outer.tokens.contains(inner) || inner == outer.tokens) continue;
            const bool grandchild = std::any_of(outer.nested.begin(), outer.nested.end(),
                                                [&](const TokenRange& r) { return r.contains(inner); });
            if (!grandchild) outer.nested.push_back(inner);
        }
    }

    for (auto& u : out.units) {
        const auto own = own_code_tokens(u, tokens);
        switch (profile.unit_detection) {
        case UnitDetection::brace_block: u.nesting_depth_max = brace_depth(tokens, own); break;
        case UnitDetection::indent_block: u.nesting_depth_max = indent_depth(u, tokens, own); break;
        case UnitDetection::keyword_pair: u.nesting_depth_max = keyword_depth(profile, tokens, own); break;
        }
    }
    return out;
}

} // namespace xmaint
