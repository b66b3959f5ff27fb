#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xmaint {

enum class ErrorCode {
    unknown_language,
    invalid_profile,
    encoding_error,
    unterminated_string,
    unterminated_comment,
    unbalanced_delimiters,
    unreadable_file,
    empty_project,
    missing_units,
    no_units,
    zero_production_effort,
    negative_tdr,
    invalid_rule_config,
    invalid_config,
    empty_intersection,
    estimator_mismatch,
    rule_set_mismatch,
    single_counting_violation,
    single_project,
    store_unwritable,
    no_snapshots,
    unknown_metric_key,
    io_error,
};

/// Stable identifier used in reports and CLI messages, e.g. "UnknownLanguage".
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Non-fatal finding attached to a file (or to the run when `file` is empty).
struct Diagnostic {
    ErrorCode code;
    std::string file;
    int line{0};
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b);

using Diagnostics = std::vector<Diagnostic>;

} // namespace xmaint
