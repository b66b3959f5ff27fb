#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xmaint/error.hpp"
#include "xmaint/profile.hpp"

namespace xmaint {

enum class TokenKind { identifier, keyword, op, punctuation, number_literal, string_literal, comment };

std::string_view to_string(TokenKind kind) noexcept;

struct Token {
    TokenKind kind{TokenKind::identifier};
    std::string text;       ///< exact lexeme; comments keep their delimiters
    int line{1};            ///< 1-based start line
    int column{1};          ///< 1-based byte column
    int end_line{1};        ///< line of the last byte (differs for multi-line comments/strings)
    std::size_t offset{0};  ///< byte offset into the file content

    [[nodiscard]] bool is_comment() const noexcept { return kind == TokenKind::comment; }
    [[nodiscard]] bool is_operand() const noexcept
    {
        return kind == TokenKind::identifier || kind == TokenKind::number_literal ||
               kind == TokenKind::string_literal;
    }
};

struct TokenizeResult {
    std::vector<Token> tokens;
    Diagnostics diagnostics;  ///< unterminated literals/comments; `file` left empty
};

/// Splits `content` into tokens. Never throws on malformed input: an
/// unterminated string swallows the rest of its line (or the file, for
/// multi-line delimiters) and an unterminated block comment the rest of the file.
TokenizeResult tokenize(std::string_view content, const LanguageProfile& profile);

/// Number of lines as an editor shows them; a trailing newline does not open a new line.
int count_physical_lines(std::string_view content) noexcept;

/// Byte offset of the first malformed UTF-8 sequence, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view content) noexcept;

/// Drops a leading UTF-8 byte-order mark.
std::string_view strip_bom(std::string_view content) noexcept;

} // namespace xmaint
