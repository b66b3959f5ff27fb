#include "xmaint/lexer.hpp"

#include <algorithm>
#include <cctype>

namespace xmaint {

namespace {

struct Symbol {
    std::string_view text;
    TokenKind kind;
};

bool starts_with_at(std::string_view s, std::size_t pos, std::string_view prefix) noexcept
{
    return s.size() - pos >= prefix.size() && s.compare(pos, prefix.size(), prefix) == 0;
}

bool is_space(char c) noexcept
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

bool is_digit(char c) noexcept
{
    return c >= '0' && c <= '9';
}

class Lexer {
public:
    Lexer(std::string_view src, const LanguageProfile& profile) : src_(src), profile_(profile)
    {
        for (const auto& op : profile.operators) symbols_.push_back({op, TokenKind::op});
        for (const auto& p : profile.punctuation) symbols_.push_back({p, TokenKind::punctuation});
        std::stable_sort(symbols_.begin(), symbols_.end(),
                         [](const Symbol& a, const Symbol& b) { return a.text.size() > b.text.size(); });
        for (const auto& d : profile.string_delimiters) strings_.push_back(&d);
        std::stable_sort(strings_.begin(), strings_.end(), [](const StringDelimiter* a, const StringDelimiter* b) {
            return a->open.size() > b->open.size();
        });
    }

    TokenizeResult run()
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (is_space(c)) {
                advance(1);
                continue;
            }
            if (lex_block_comment() || lex_line_comment() || lex_string() || lex_identifier() || lex_number()) {
                continue;
            }
            lex_symbol();
        }
        return std::move(result_);
    }

private:
    void advance(std::size_t n)
    {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
        }
    }

    void emit(TokenKind kind, std::size_t end)
    {
        Token t;
        t.kind = kind;
        t.text = std::string(src_.substr(pos_, end - pos_));
        t.line = line_;
        t.column = column_;
        t.offset = pos_;
        t.end_line = line_ + static_cast<int>(std::count(t.text.begin(), t.text.end(), '\n'));
        result_.tokens.push_back(std::move(t));
        advance(end - pos_);
    }

    void diagnose(ErrorCode code, std::string message)
    {
        result_.diagnostics.push_back({code, {}, line_, std::move(message)});
    }

    std::size_t trim_cr(std::size_t end) const
    {
        while (end > pos_ && src_[end - 1] == '\r') --end;
        return end;
    }

    bool lex_block_comment()
    {
        for (const auto& b : profile_.block_comment_delimiters) {
            if (!starts_with_at(src_, pos_, b.open)) continue;
            auto close = src_.find(b.close, pos_ + b.open.size());
            std::size_t end = src_.size();
            if (close == std::string_view::npos) {
                diagnose(ErrorCode::unterminated_comment, "block comment opened with " + b.open + " is never closed");
            } else {
                end = close + b.close.size();
            }
            emit(TokenKind::comment, end);
            return true;
        }
        return false;
    }

    bool lex_line_comment()
    {
        for (const auto& marker : profile_.line_comment_markers) {
            if (!starts_with_at(src_, pos_, marker)) continue;
            auto nl = src_.find('\n', pos_);
            emit(TokenKind::comment, trim_cr(nl == std::string_view::npos ? src_.size() : nl));
            return true;
        }
        return false;
    }

    bool lex_string()
    {
        for (const auto* d : strings_) {
            if (!starts_with_at(src_, pos_, d->open)) continue;
            std::size_t i = pos_ + d->open.size();
            std::size_t end = std::string_view::npos;
            while (i < src_.size()) {
                if (!d->escape.empty() && starts_with_at(src_, i, d->escape)) {
                    i = std::min(src_.size(), i + d->escape.size() + 1);
                    continue;
                }
                if (starts_with_at(src_, i, d->close)) {
                    end = i + d->close.size();
                    break;
                }
                if (src_[i] == '\n' && !d->multiline) {
                    break;
                }
                ++i;
            }
            if (end == std::string_view::npos) {
                diagnose(ErrorCode::unterminated_string, "string opened with " + d->open + " is never closed");
                end = trim_cr(i);
            }
            emit(TokenKind::string_literal, end);
            return true;
        }
        return false;
    }

    bool lex_identifier()
    {
        const auto& ident = profile_.identifier_pattern;
        if (!ident.start.contains(static_cast<unsigned char>(src_[pos_]))) return false;
        std::size_t end = pos_ + 1;
        while (end < src_.size() && ident.rest.contains(static_cast<unsigned char>(src_[end]))) ++end;
        const auto text = src_.substr(pos_, end - pos_);
        emit(profile_.is_keyword(text) ? TokenKind::keyword : TokenKind::identifier, end);
        return true;
    }

    bool lex_number()
    {
        const char c = src_[pos_];
        const bool leading_dot = c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]);
        if (!is_digit(c) && !leading_dot) return false;
        const bool hex = starts_with_at(src_, pos_, "0x") || starts_with_at(src_, pos_, "0X");
        std::size_t end = pos_ + 1;
        while (end < src_.size()) {
            const char d = src_[end];
            if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.') {
                ++end;
            } else if (!profile_.digit_separator.empty() && d == profile_.digit_separator[0] && end + 1 < src_.size() &&
                       std::isalnum(static_cast<unsigned char>(src_[end + 1]))) {
                ++end;
            } else if ((d == '+' || d == '-') && !hex && (src_[end - 1] == 'e' || src_[end - 1] == 'E')) {
                ++end;
            } else {
                break;
            }
        }
        emit(TokenKind::number_literal, end);
        return true;
    }

    void lex_symbol()
    {
        for (const auto& s : symbols_) {
            if (starts_with_at(src_, pos_, s.text)) {
                emit(s.kind, pos_ + s.text.size());
                return;
            }
        }
        emit(TokenKind::punctuation, pos_ + 1);
    }

    std::string_view src_;
    const LanguageProfile& profile_;
    std::vector<Symbol> symbols_;
    std::vector<const StringDelimiter*> strings_;
    std::size_t pos_{0};
    int line_{1};
    int column_{1};
    TokenizeResult result_;
};

} // namespace

std::string_view to_string(TokenKind kind) noexcept
{
    switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::keyword: return "keyword";
    case TokenKind::op: return "operator";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::number_literal: return "numberLiteral";
    case TokenKind::string_literal: return "stringLiteral";
    case TokenKind::comment: return "comment";
    }
    return "identifier";
}

TokenizeResult tokenize(std::string_view content, const LanguageProfile& profile)
{
    return Lexer(content, profile).run();
}

int count_physical_lines(std::string_view content) noexcept
{
    if (content.empty()) return 0;
    auto lines = static_cast<int>(std::count(content.begin(), content.end(), '\n'));
    return content.back() == '\n' ? lines : lines + 1;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view s) noexcept
{
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        unsigned min_cp = 0;
        unsigned cp = 0;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
            min_cp = 0x80;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
            min_cp = 0x800;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
            min_cp = 0x10000;
        } else {
            return i;
        }
        if (i + len > s.size()) return i;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return i;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
        i += len;
    }
    return std::nullopt;
}

std::string_view strip_bom(std::string_view content) noexcept
{
    if (content.size() >= 3 && content.substr(0, 3) == "\xEF\xBB\xBF") {
        return content.substr(3);
    }
    return content;
}

} // namespace xmaint
