#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace xmaint {

enum class UnitDetection { brace_block, indent_block, keyword_pair };

std::string_view to_string(UnitDetection detection) noexcept;

struct BlockCommentDelimiter {
    std::string open;
    std::string close;
};

struct StringDelimiter {
    std::string open;
    std::string close;
    std::string escape;       ///< empty when the literal has no escape sequence
    bool multiline{false};    ///< may the literal span newlines
};

struct KeywordPair {
    std::string open;
    std::string close;
};

/// Byte class parsed from a bracket expression such as `[A-Za-z_]`.
/// Bytes >= 0x80 always belong to the class so UTF-8 identifiers stay whole.
class CharClass {
public:
    CharClass() = default;
    static CharClass parse(std::string_view bracket_expression);

    [[nodiscard]] bool contains(unsigned char c) const noexcept { return c >= 0x80 || bits_[c]; }

private:
    std::array<bool, 128> bits_{};
};

/// `[start-class][continue-class]*`, the only identifier shape profiles may declare.
struct IdentifierPattern {
    std::string source;
    CharClass start;
    CharClass rest;

    static IdentifierPattern parse(std::string_view pattern);
};

/// Lexical description of one language. Profiles are plain data: the built-in
/// registry is itself loaded from JSON, and user profile files use the same schema.
struct LanguageProfile {
    std::string id;
    std::vector<std::string> file_extensions;
    std::vector<std::string> line_comment_markers;
    std::vector<BlockCommentDelimiter> block_comment_delimiters;
    std::vector<StringDelimiter> string_delimiters;
    std::vector<std::string> operators;     ///< spellings lexed as operator tokens
    std::vector<std::string> punctuation;   ///< spellings lexed as punctuation tokens
    std::set<std::string> keywords;
    std::set<std::string> decision_tokens;  ///< each occurrence adds one to cyclomatic complexity
    std::set<std::string> operator_tokens;  ///< Halstead operators (any token kind)
    UnitDetection unit_detection{UnitDetection::brace_block};
    std::vector<std::string> unit_keywords;
    std::vector<std::string> unit_end_keywords;
    std::vector<KeywordPair> nesting_pairs;
    IdentifierPattern identifier_pattern;
    bool case_sensitive{true};
    double verbosity_factor{1.0};
    std::string naming_pattern;
    std::string digit_separator;  ///< e.g. "'" in 1'000; empty when the language has none

    /// Lower-cases `text` for case-insensitive profiles, identity otherwise.
    [[nodiscard]] std::string fold(std::string_view text) const;

    [[nodiscard]] bool is_keyword(std::string_view text) const;
    [[nodiscard]] bool is_decision_token(std::string_view text) const;
    [[nodiscard]] bool is_operator_token(std::string_view text) const;
    [[nodiscard]] bool is_unit_keyword(std::string_view text) const;
    [[nodiscard]] bool is_unit_end_keyword(std::string_view text) const;
};

/// Checks the profile invariants and folds keyword sets of case-insensitive
/// profiles. Throws Error(invalid_profile).
void normalize_profile(LanguageProfile& profile);

LanguageProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const LanguageProfile& profile);

class ProfileRegistry {
public:
    /// Adds or replaces (by id) a profile. Extensions must stay unique across profiles.
    void add(LanguageProfile profile);

    [[nodiscard]] const LanguageProfile* find(std::string_view id) const;
    [[nodiscard]] const LanguageProfile& get(std::string_view id) const;

    /// Profile owning the path's extension; throws Error(unknown_language).
    [[nodiscard]] const LanguageProfile& detect(const std::filesystem::path& path) const;
    [[nodiscard]] const LanguageProfile* detect_or_null(const std::filesystem::path& path) const;

    [[nodiscard]] const std::vector<LanguageProfile>& profiles() const noexcept { return profiles_; }
    [[nodiscard]] bool empty() const noexcept { return profiles_.empty(); }

    /// Loads `{"profiles": [...]}` or a bare array of profile objects on top of this registry.
    void merge_json(const nlohmann::json& j);

private:
    std::vector<LanguageProfile> profiles_;  // sorted by id
};

/// Registry with the shipped `c-family`, `python` and `cobol-like` profiles.
const ProfileRegistry& builtin_registry();

/// JSON text of the shipped profiles (same schema as user profile files).
std::string_view builtin_profiles_json();

} // namespace xmaint
