#include "xmaint/lines.hpp"

#include <algorithm>

namespace xmaint {

std::string_view to_string(LineClass c) noexcept
{
    switch (c) {
    case LineClass::blank: return "blank";
    case LineClass::code: return "code";
    case LineClass::comment: return "comment";
    case LineClass::mixed: return "mixed";
    }
    return "blank";
}

LineClassification& LineClassification::operator+=(const LineClassification& other) noexcept
{
    code += other.code;
    comment += other.comment;
    blank += other.blank;
    mixed += other.mixed;
    physical_lines += other.physical_lines;
    return *this;
}

LineClassification classify_lines(std::span<const Token> tokens, int physical_lines)
{
    LineClassification out;
    out.physical_lines = std::max(0, physical_lines);
    const auto n = static_cast<std::size_t>(out.physical_lines);
    std::vector<bool> has_code(n, false);
    std::vector<bool> has_comment(n, false);
    for (const auto& t : tokens) {
        auto& marks = t.is_comment() ? has_comment : has_code;
        const int last = std::min(t.end_line, out.physical_lines);
        for (int line = std::max(1, t.line); line <= last; ++line) {
            marks[static_cast<std::size_t>(line - 1)] = true;
        }
    }
    out.lines.resize(n, LineClass::blank);
    for (std::size_t i = 0; i < n; ++i) {
        if (has_code[i] && has_comment[i]) {
            out.lines[i] = LineClass::mixed;
            ++out.mixed;
        } else if (has_code[i]) {
            out.lines[i] = LineClass::code;
            ++out.code;
        } else if (has_comment[i]) {
            out.lines[i] = LineClass::comment;
            ++out.comment;
        } else {
            ++out.blank;
        }
    }
    return out;
}

} // namespace xmaint
