#include "xmaint/profile.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "xmaint/error.hpp"

namespace xmaint {

namespace {

std::string lower(std::string_view text)
{
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool contains_folded(const std::set<std::string>& set, const LanguageProfile& profile, std::string_view text)
{
    if (profile.case_sensitive) {
        return set.find(std::string(text)) != set.end();
    }
    return set.find(lower(text)) != set.end();
}

std::set<std::string> fold_set(const std::set<std::string>& in)
{
    std::set<std::string> out;
    for (const auto& s : in) {
        out.insert(lower(s));
    }
    return out;
}

[[noreturn]] void invalid(const std::string& profile_id, const std::string& what)
{
    throw Error(ErrorCode::invalid_profile, "profile '" + profile_id + "': " + what);
}

UnitDetection parse_detection(const std::string& text, const std::string& id)
{
    if (text == "brace-block") return UnitDetection::brace_block;
    if (text == "indent-block") return UnitDetection::indent_block;
    if (text == "keyword-pair") return UnitDetection::keyword_pair;
    invalid(id, "unknown unit_detection '" + text + "'");
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback)
{
    if (auto it = j.find(key); it != j.end() && !it->is_null()) {
        return it->get<T>();
    }
    return fallback;
}

} // namespace

std::string_view to_string(UnitDetection detection) noexcept
{
    switch (detection) {
    case UnitDetection::brace_block: return "brace-block";
    case UnitDetection::indent_block: return "indent-block";
    case UnitDetection::keyword_pair: return "keyword-pair";
    }
    return "brace-block";
}

CharClass CharClass::parse(std::string_view expr)
{
    if (expr.size() < 3 || expr.front() != '[' || expr.back() != ']') {
        throw Error(ErrorCode::invalid_profile, "character class must be a bracket expression: " + std::string(expr));
    }
    CharClass cls;
    std::string_view body = expr.substr(1, expr.size() - 2);
    for (std::size_t i = 0; i < body.size(); ++i) {
        auto lo = static_cast<unsigned char>(body[i]);
        if (lo == '\\' && i + 1 < body.size()) {
            lo = static_cast<unsigned char>(body[++i]);
        }
        unsigned char hi = lo;
        if (i + 2 < body.size() && body[i + 1] == '-') {
            hi = static_cast<unsigned char>(body[i + 2]);
            i += 2;
        }
        if (hi < lo || hi >= 0x80) {
            throw Error(ErrorCode::invalid_profile, "bad range in character class: " + std::string(expr));
        }
        for (unsigned c = lo; c <= hi; ++c) {
            cls.bits_[c] = true;
        }
    }
    return cls;
}

IdentifierPattern IdentifierPattern::parse(std::string_view pattern)
{
    // [start][rest]*
    auto close = pattern.find(']');
    if (close == std::string_view::npos || pattern.size() < close + 4 || pattern.back() != '*') {
        throw Error(ErrorCode::invalid_profile, "identifier pattern must look like [..][..]*: " + std::string(pattern));
    }
    IdentifierPattern out;
    out.source = std::string(pattern);
    out.start = CharClass::parse(pattern.substr(0, close + 1));
    out.rest = CharClass::parse(pattern.substr(close + 1, pattern.size() - close - 2));
    return out;
}

std::string LanguageProfile::fold(std::string_view text) const
{
    return case_sensitive ? std::string(text) : lower(text);
}

bool LanguageProfile::is_keyword(std::string_view text) const
{
    return contains_folded(keywords, *this, text);
}

bool LanguageProfile::is_decision_token(std::string_view text) const
{
    return contains_folded(decision_tokens, *this, text);
}

bool LanguageProfile::is_operator_token(std::string_view text) const
{
    return contains_folded(operator_tokens, *this, text);
}

bool LanguageProfile::is_unit_keyword(std::string_view text) const
{
    const auto folded = fold(text);
    return std::any_of(unit_keywords.begin(), unit_keywords.end(),
                       [&](const std::string& k) { return k == folded; });
}

bool LanguageProfile::is_unit_end_keyword(std::string_view text) const
{
    const auto folded = fold(text);
    return std::any_of(unit_end_keywords.begin(), unit_end_keywords.end(),
                       [&](const std::string& k) { return k == folded; });
}

void normalize_profile(LanguageProfile& p)
{
    if (p.id.empty()) {
        invalid("<unnamed>", "id is required");
    }
    if (p.file_extensions.empty()) {
        invalid(p.id, "at least one file extension is required");
    }
    for (auto& ext : p.file_extensions) {
        if (ext.empty()) {
            invalid(p.id, "empty file extension");
        }
        if (ext.front() != '.') {
            ext.insert(ext.begin(), '.');
        }
        ext = lower(ext);
    }
    if (!(p.verbosity_factor > 0.0)) {
        invalid(p.id, "verbosity_factor must be > 0");
    }
    if (p.identifier_pattern.source.empty()) {
        p.identifier_pattern = IdentifierPattern::parse("[A-Za-z_][A-Za-z0-9_]*");
    }
    for (const auto& b : p.block_comment_delimiters) {
        if (b.open.empty() || b.close.empty()) invalid(p.id, "empty block comment delimiter");
    }
    for (const auto& s : p.string_delimiters) {
        if (s.open.empty() || s.close.empty()) invalid(p.id, "empty string delimiter");
    }
    for (const auto& m : p.line_comment_markers) {
        if (m.empty()) invalid(p.id, "empty line comment marker");
    }
    if (p.unit_detection == UnitDetection::keyword_pair && (p.unit_keywords.empty() || p.unit_end_keywords.empty())) {
        invalid(p.id, "keyword-pair detection needs unit_keywords and unit_end_keywords");
    }
    if (p.unit_detection == UnitDetection::indent_block && p.unit_keywords.empty()) {
        invalid(p.id, "indent-block detection needs unit_keywords");
    }
    if (p.digit_separator.size() > 1) {
        invalid(p.id, "digit_separator must be a single character");
    }
    if (!p.naming_pattern.empty()) {
        try {
            std::regex check(p.naming_pattern);
        } catch (const std::regex_error&) {
            invalid(p.id, "naming_pattern is not a valid regular expression");
        }
    }
    if (!p.case_sensitive) {
        p.keywords = fold_set(p.keywords);
        p.decision_tokens = fold_set(p.decision_tokens);
        p.operator_tokens = fold_set(p.operator_tokens);
        for (auto& k : p.unit_keywords) k = lower(k);
        for (auto& k : p.unit_end_keywords) k = lower(k);
        for (auto& pair : p.nesting_pairs) {
            pair.open = lower(pair.open);
            pair.close = lower(pair.close);
        }
    }
}

LanguageProfile profile_from_json(const nlohmann::json& j)
{
    LanguageProfile p;
    try {
        p.id = j.at("id").get<std::string>();
        p.file_extensions = j.at("file_extensions").get<std::vector<std::string>>();
        p.line_comment_markers = get_or<std::vector<std::string>>(j, "line_comment_markers", {});
        for (const auto& pair : get_or<nlohmann::json>(j, "block_comment_delimiters", nlohmann::json::array())) {
            p.block_comment_delimiters.push_back({pair.at(0).get<std::string>(), pair.at(1).get<std::string>()});
        }
        for (const auto& d : get_or<nlohmann::json>(j, "string_delimiters", nlohmann::json::array())) {
            StringDelimiter s;
            if (d.is_array()) {
                s.open = d.at(0).get<std::string>();
                s.close = d.at(1).get<std::string>();
                s.escape = d.size() > 2 ? d.at(2).get<std::string>() : std::string{};
                s.multiline = d.size() > 3 && d.at(3).get<bool>();
            } else {
                s.open = d.at("open").get<std::string>();
                s.close = d.at("close").get<std::string>();
                s.escape = get_or<std::string>(d, "escape", "");
                s.multiline = get_or<bool>(d, "multiline", false);
            }
            p.string_delimiters.push_back(std::move(s));
        }
        p.operators = get_or<std::vector<std::string>>(j, "operators", {});
        p.punctuation = get_or<std::vector<std::string>>(j, "punctuation", {});
        p.keywords = get_or<std::set<std::string>>(j, "keywords", {});
        p.decision_tokens = get_or<std::set<std::string>>(j, "decision_tokens", {});
        if (j.contains("operator_tokens")) {
            p.operator_tokens = j.at("operator_tokens").get<std::set<std::string>>();
        } else {
            p.operator_tokens.insert(p.operators.begin(), p.operators.end());
            p.operator_tokens.insert(p.keywords.begin(), p.keywords.end());
        }
        p.unit_detection = parse_detection(get_or<std::string>(j, "unit_detection", "brace-block"), p.id);
        p.unit_keywords = get_or<std::vector<std::string>>(j, "unit_keywords", {});
        p.unit_end_keywords = get_or<std::vector<std::string>>(j, "unit_end_keywords", {});
        for (const auto& pair : get_or<nlohmann::json>(j, "nesting_pairs", nlohmann::json::array())) {
            p.nesting_pairs.push_back({pair.at(0).get<std::string>(), pair.at(1).get<std::string>()});
        }
        p.identifier_pattern =
            IdentifierPattern::parse(get_or<std::string>(j, "identifier_pattern", "[A-Za-z_][A-Za-z0-9_]*"));
        p.case_sensitive = get_or<bool>(j, "case_sensitive", true);
        p.verbosity_factor = get_or<double>(j, "verbosity_factor", 1.0);
        p.naming_pattern = get_or<std::string>(j, "naming_pattern", "");
        p.digit_separator = get_or<std::string>(j, "digit_separator", "");
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_profile, std::string("malformed profile definition: ") + e.what());
    }
    normalize_profile(p);
    return p;
}

nlohmann::json profile_to_json(const LanguageProfile& p)
{
    nlohmann::json j;
    j["id"] = p.id;
    j["file_extensions"] = p.file_extensions;
    j["line_comment_markers"] = p.line_comment_markers;
    auto blocks = nlohmann::json::array();
    for (const auto& b : p.block_comment_delimiters) blocks.push_back({b.open, b.close});
    j["block_comment_delimiters"] = blocks;
    auto strings = nlohmann::json::array();
    for (const auto& s : p.string_delimiters) strings.push_back({s.open, s.close, s.escape, s.multiline});
    j["string_delimiters"] = strings;
    j["operators"] = p.operators;
    j["punctuation"] = p.punctuation;
    j["keywords"] = p.keywords;
    j["decision_tokens"] = p.decision_tokens;
    j["operator_tokens"] = p.operator_tokens;
    j["unit_detection"] = to_string(p.unit_detection);
    j["unit_keywords"] = p.unit_keywords;
    j["unit_end_keywords"] = p.unit_end_keywords;
    auto pairs = nlohmann::json::array();
    for (const auto& k : p.nesting_pairs) pairs.push_back({k.open, k.close});
    j["nesting_pairs"] = pairs;
    j["identifier_pattern"] = p.identifier_pattern.source;
    j["case_sensitive"] = p.case_sensitive;
    j["verbosity_factor"] = p.verbosity_factor;
    j["naming_pattern"] = p.naming_pattern;
    j["digit_separator"] = p.digit_separator;
    return j;
}

void ProfileRegistry::add(LanguageProfile profile)
{
    normalize_profile(profile);
    for (const auto& other : profiles_) {
        if (other.id == profile.id) {
            continue;
        }
        for (const auto& ext : profile.file_extensions) {
            if (std::find(other.file_extensions.begin(), other.file_extensions.end(), ext) !=
                other.file_extensions.end()) {
                invalid(profile.id, "extension " + ext + " already registered by '" + other.id + "'");
            }
        }
    }
    std::set<std::string> own(profile.file_extensions.begin(), profile.file_extensions.end());
    if (own.size() != profile.file_extensions.size()) {
        invalid(profile.id, "duplicate file extension");
    }
    auto it = std::lower_bound(profiles_.begin(), profiles_.end(), profile.id,
                               [](const LanguageProfile& p, const std::string& id) { return p.id < id; });
    if (it != profiles_.end() && it->id == profile.id) {
        *it = std::move(profile);
    } else {
        profiles_.insert(it, std::move(profile));
    }
}

const LanguageProfile* ProfileRegistry::find(std::string_view id) const
{
    for (const auto& p : profiles_) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

const LanguageProfile& ProfileRegistry::get(std::string_view id) const
{
    if (const auto* p = find(id)) return *p;
    throw Error(ErrorCode::unknown_language, "no profile named '" + std::string(id) + "'");
}

const LanguageProfile* ProfileRegistry::detect_or_null(const std::filesystem::path& path) const
{
    const auto ext = lower(path.extension().string());
    if (ext.empty()) return nullptr;
    for (const auto& p : profiles_) {
        if (std::find(p.file_extensions.begin(), p.file_extensions.end(), ext) != p.file_extensions.end()) {
            return &p;
        }
    }
    return nullptr;
}

const LanguageProfile& ProfileRegistry::detect(const std::filesystem::path& path) const
{
    if (const auto* p = detect_or_null(path)) return *p;
    throw Error(ErrorCode::unknown_language, "no profile for '" + path.generic_string() + "'");
}

void ProfileRegistry::merge_json(const nlohmann::json& j)
{
    const nlohmann::json* list = &j;
    if (j.is_object()) {
        if (!j.contains("profiles")) {
            throw Error(ErrorCode::invalid_profile, "profile file needs a \"profiles\" array");
        }
        list = &j.at("profiles");
    }
    if (!list->is_array()) {
        throw Error(ErrorCode::invalid_profile, "profiles must be an array");
    }
    for (const auto& entry : *list) {
        add(profile_from_json(entry));
    }
}

const ProfileRegistry& builtin_registry()
{
    static const ProfileRegistry registry = [] {
        ProfileRegistry r;
        r.merge_json(nlohmann::json::parse(builtin_profiles_json()));
        return r;
    }();
    return registry;
}

} // namespace xmaint
