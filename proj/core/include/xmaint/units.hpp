#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xmaint/error.hpp"
#include "xmaint/lexer.hpp"
#include "xmaint/profile.hpp"

namespace xmaint {

/// Half-open interval of token indices.
struct TokenRange {
    std::size_t begin{0};
    std::size_t end{0};

    [[nodiscard]] bool empty() const noexcept { return begin >= end; }
    [[nodiscard]] bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
    [[nodiscard]] bool contains(const TokenRange& r) const noexcept { return r.begin >= begin && r.end <= end; }

    friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

/// A function, method or paragraph.
struct Unit {
    std::string name;
    std::string file;
    int start_line{0};
    int end_line{0};
    int param_count{0};
    TokenRange tokens;
    int nesting_depth_max{0};
    /// Ranges of directly nested units; their tokens do not belong to this unit.
    std::vector<TokenRange> nested;
};

struct UnitExtraction {
    std::vector<Unit> units;  ///< ordered by first token
    Diagnostics diagnostics;
};

UnitExtraction extract_units(std::span<const Token> tokens, const LanguageProfile& profile,
                             std::string_view file = {});

/// Token indices of `unit` minus its nested units and comments.
std::vector<std::size_t> own_code_tokens(const Unit& unit, std::span<const Token> tokens);

} // namespace xmaint
