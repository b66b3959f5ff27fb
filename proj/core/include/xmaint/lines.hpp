#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "xmaint/lexer.hpp"

namespace xmaint {

enum class LineClass { blank, code, comment, mixed };

std::string_view to_string(LineClass c) noexcept;

struct LineClassification {
    std::vector<LineClass> lines;  ///< lines[0] is line 1
    int code{0};
    int comment{0};
    int blank{0};
    int mixed{0};
    int physical_lines{0};

    /// Lines carrying code, i.e. code + mixed.
    [[nodiscard]] int loc() const noexcept { return code + mixed; }
    [[nodiscard]] LineClass at(int line) const { return lines.at(static_cast<std::size_t>(line - 1)); }

    LineClassification& operator+=(const LineClassification& other) noexcept;
};

/// Tags every physical line from the tokens that touch it. Multi-line tokens
/// mark each line they span.
LineClassification classify_lines(std::span<const Token> tokens, int physical_lines);

} // namespace xmaint
