#include "xmaint/error.hpp"

#include <tuple>

namespace xmaint {

std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::unknown_language: return "UnknownLanguage";
    case ErrorCode::invalid_profile: return "InvalidProfile";
    case ErrorCode::encoding_error: return "EncodingError";
    case ErrorCode::unterminated_string: return "UnterminatedString";
    case ErrorCode::unterminated_comment: return "UnterminatedComment";
    case ErrorCode::unbalanced_delimiters: return "UnbalancedDelimiters";
    case ErrorCode::unreadable_file: return "UnreadableFile";
    case ErrorCode::empty_project: return "EmptyProject";
    case ErrorCode::missing_units: return "MissingUnits";
    case ErrorCode::no_units: return "NoUnits";
    case ErrorCode::zero_production_effort: return "ZeroProductionEffort";
    case ErrorCode::negative_tdr: return "NegativeTdr";
    case ErrorCode::invalid_rule_config: return "InvalidRuleConfig";
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::empty_intersection: return "EmptyIntersection";
    case ErrorCode::estimator_mismatch: return "EstimatorMismatch";
    case ErrorCode::rule_set_mismatch: return "RuleSetMismatch";
    case ErrorCode::single_counting_violation: return "SingleCountingViolation";
    case ErrorCode::single_project: return "SingleProject";
    case ErrorCode::store_unwritable: return "StoreUnwritable";
    case ErrorCode::no_snapshots: return "NoSnapshots";
    case ErrorCode::unknown_metric_key: return "UnknownMetricKey";
    case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b)
{
    return std::tie(a.file, a.line, a.code, a.message) < std::tie(b.file, b.line, b.code, b.message);
}

} // namespace xmaint
