#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xmaint/lexer.hpp"

namespace xmaint {

enum class NormalizationMode { exact, identifier_blind };

std::string_view to_string(NormalizationMode mode) noexcept;
NormalizationMode parse_normalization_mode(std::string_view text);

struct NormalizedToken {
    TokenKind kind{TokenKind::identifier};
    std::string text;
    std::size_t source_index{0};  ///< index into the original token sequence
    int line{0};
    int end_line{0};

    /// Equality ignores positions.
    [[nodiscard]] bool same_symbol(const NormalizedToken& o) const noexcept { return kind == o.kind && text == o.text; }
};

/// Drops comments; identifier-blind mode replaces every identifier text by one placeholder.
std::vector<NormalizedToken> normalize_tokens(std::span<const Token> tokens, NormalizationMode mode);

struct NormalizedFile {
    std::string path;
    std::vector<NormalizedToken> tokens;
};

struct CloneOccurrence {
    std::string file;
    std::size_t start_token{0};  ///< index into the file's normalized sequence
    int start_line{0};

    friend bool operator==(const CloneOccurrence&, const CloneOccurrence&) = default;
};

struct CloneBlock {
    CloneOccurrence a;  ///< a precedes b in (file, start_token) order
    CloneOccurrence b;
    std::size_t length_tokens{0};
    int length_lines_a{0};
    int length_lines_b{0};

    friend bool operator==(const CloneBlock&, const CloneBlock&) = default;
};

bool clone_block_less(const CloneBlock& x, const CloneBlock& y);

/// Every maximal pair of equal normalized token runs of length >= min_tokens,
/// within and across files. A run that overlaps itself inside one file (offset
/// d shorter than the run) is cut greedily into consecutive chunks of d tokens
/// so that the two occurrences of each emitted block are disjoint; chunks
/// shorter than min_tokens are dropped. Candidates come from a rolling-hash
/// window index and are verified token by token. Output sorted by
/// (fileA, startA, fileB, startB); independent of input file order.
/// Throws Error(invalid_config) when min_tokens < 3.
std::vector<CloneBlock> find_clone_blocks(std::span<const NormalizedFile> files, std::size_t min_tokens);

struct DuplicationRatios {
    double token_ratio{0};
    double line_ratio{0};
    std::size_t duplicated_tokens{0};
    std::size_t total_tokens{0};
    std::size_t duplicated_lines{0};
    std::size_t total_lines{0};
};

/// Each covered token (line) position counts once. `total_code_lines` is the
/// project's code + mixed line count.
DuplicationRatios duplication_ratios(std::span<const CloneBlock> blocks, std::span<const NormalizedFile> files,
                                     std::size_t total_code_lines);

struct DuplicationReport {
    std::vector<CloneBlock> blocks;
    DuplicationRatios ratios;
    std::size_t min_tokens{50};
    NormalizationMode mode{NormalizationMode::exact};
};

DuplicationReport analyze_duplication(std::span<const NormalizedFile> files, std::size_t total_code_lines,
                                      std::size_t min_tokens, NormalizationMode mode);

} // namespace xmaint
