#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xmaint/lexer.hpp"
#include "xmaint/lines.hpp"
#include "xmaint/profile.hpp"
#include "xmaint/units.hpp"

namespace xmaint {

struct HalsteadCounts {
    int distinct_operators{0};  // n1
    int distinct_operands{0};   // n2
    int total_operators{0};     // N1
    int total_operands{0};      // N2

    [[nodiscard]] int vocabulary() const noexcept { return distinct_operators + distinct_operands; }
    [[nodiscard]] int length() const noexcept { return total_operators + total_operands; }
    /// length * log2(vocabulary); 0 when the vocabulary has at most one entry.
    [[nodiscard]] double volume() const noexcept;
};

/// 1 + number of decision tokens. Comments are ignored.
int cyclomatic_complexity(std::span<const Token> tokens, const LanguageProfile& profile);
int cyclomatic_complexity(std::span<const Token> tokens, std::span<const std::size_t> indices,
                          const LanguageProfile& profile);

/// Operators are tokens listed in the profile's operator_tokens; operands are
/// identifiers and literals. Distinctness is by (kind, text), case-folded for
/// case-insensitive profiles.
HalsteadCounts halstead(std::span<const Token> tokens, const LanguageProfile& profile);
HalsteadCounts halstead(std::span<const Token> tokens, std::span<const std::size_t> indices,
                        const LanguageProfile& profile);

/// (comment + mixed) / (code + comment + mixed), 0 for an empty denominator.
double comment_ratio(const LineClassification& lines) noexcept;

struct UnitMetrics {
    Unit unit;
    std::string profile_id;
    int loc{0};
    int cc{1};
    int param_count{0};
    HalsteadCounts halstead;
    int nesting_depth_max{0};
};

UnitMetrics unit_metrics(const Unit& unit, std::span<const Token> file_tokens, const LanguageProfile& profile);

struct FileMetrics {
    std::string path;  ///< project-relative, '/'-separated
    std::string profile_id;
    LineClassification lines;
    int code_tokens{0};
    int cc{1};  ///< file taken as one unit
    HalsteadCounts halstead;
    std::vector<UnitMetrics> units;
};

FileMetrics file_metrics(std::string path, std::span<const Token> tokens, const LineClassification& lines,
                         const std::vector<Unit>& units, const LanguageProfile& profile);

enum class MeanKind { unweighted, loc_weighted };

/// Means over a set of modules (units or files).
struct ModuleAverages {
    double halstead_volume{0};
    double cc{0};
    double loc{0};
};

struct UnitSize {
    std::string file;
    std::string name;
    int start_line{0};
    int loc{0};
};

struct ProjectMetrics {
    int file_count{0};
    int total_loc{0};
    int physical_lines{0};
    LineClassification lines;  ///< summed class totals; `lines.lines` stays empty
    double comment_ratio{0};
    int unit_count{0};
    std::optional<ModuleAverages> unit_averages;  ///< aHV / aCC / aLOC; absent without units
    std::optional<ModuleAverages> file_averages;  ///< same means with module = file
    int max_cc{0};
    std::vector<UnitSize> unit_size_distribution;
    MeanKind mean_kind{MeanKind::unweighted};
};

/// Throws Error(empty_project) for an empty file list. Results do not depend on file order.
ProjectMetrics aggregate_project(std::span<const FileMetrics> files, MeanKind mean = MeanKind::unweighted);

} // namespace xmaint
