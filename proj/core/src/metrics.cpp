#include "xmaint/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

#include "xmaint/error.hpp"

namespace xmaint {

namespace {

std::vector<std::size_t> all_indices(std::size_t n)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

/// Order-independent sum: adds the values in sorted order.
double stable_sum(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

ModuleAverages means(const std::vector<double>& volumes, const std::vector<double>& ccs,
                     const std::vector<double>& locs, MeanKind kind)
{
    ModuleAverages out;
    if (kind == MeanKind::unweighted) {
        const auto n = static_cast<double>(volumes.size());
        out.halstead_volume = stable_sum(volumes) / n;
        out.cc = stable_sum(ccs) / n;
        out.loc = stable_sum(locs) / n;
        return out;
    }
    const double total = stable_sum(locs);
    if (total <= 0.0) return means(volumes, ccs, locs, MeanKind::unweighted);
    auto weighted = [&](const std::vector<double>& v) {
        std::vector<double> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * locs[i];
        return stable_sum(std::move(w)) / total;
    };
    out.halstead_volume = weighted(volumes);
    out.cc = weighted(ccs);
    out.loc = weighted(locs);
    return out;
}

} // namespace

double HalsteadCounts::volume() const noexcept
{
    const int n = vocabulary();
    if (n <= 1) return 0.0;
    return static_cast<double>(length()) * std::log2(static_cast<double>(n));
}

int cyclomatic_complexity(std::span<const Token> tokens, std::span<const std::size_t> indices,
                          const LanguageProfile& profile)
{
    int cc = 1;
    for (auto i : indices) {
        const auto& t = tokens[i];
        if (t.is_comment() || t.kind == TokenKind::string_literal || t.kind == TokenKind::number_literal) continue;
        if (profile.is_decision_token(t.text)) ++cc;
    }
    return cc;
}

int cyclomatic_complexity(std::span<const Token> tokens, const LanguageProfile& profile)
{
    const auto idx = all_indices(tokens.size());
    return cyclomatic_complexity(tokens, idx, profile);
}

HalsteadCounts halstead(std::span<const Token> tokens, std::span<const std::size_t> indices,
                        const LanguageProfile& profile)
{
    HalsteadCounts h;
    std::set<std::pair<TokenKind, std::string>> operators;
    std::set<std::pair<TokenKind, std::string>> operands;
    for (auto i : indices) {
        const auto& t = tokens[i];
        if (t.is_comment()) continue;
        if (t.is_operand()) {
            ++h.total_operands;
            operands.emplace(t.kind, profile.fold(t.text));
        } else if (profile.is_operator_token(t.text)) {
            ++h.total_operators;
            operators.emplace(t.kind, profile.fold(t.text));
        }
    }
    h.distinct_operators = static_cast<int>(operators.size());
    h.distinct_operands = static_cast<int>(operands.size());
    return h;
}

HalsteadCounts halstead(std::span<const Token> tokens, const LanguageProfile& profile)
{
    const auto idx = all_indices(tokens.size());
    return halstead(tokens, idx, profile);
}

double comment_ratio(const LineClassification& lines) noexcept
{
    const int denominator = lines.code + lines.comment + lines.mixed;
    if (denominator == 0) return 0.0;
    return static_cast<double>(lines.comment + lines.mixed) / static_cast<double>(denominator);
}

UnitMetrics unit_metrics(const Unit& unit, std::span<const Token> file_tokens, const LanguageProfile& profile)
{
    UnitMetrics m;
    m.unit = unit;
    m.profile_id = profile.id;
    const auto own = own_code_tokens(unit, file_tokens);
    std::set<int> lines;
    for (auto i : own) {
        for (int l = file_tokens[i].line; l <= file_tokens[i].end_line; ++l) lines.insert(l);
    }
    m.loc = static_cast<int>(lines.size());
    m.cc = cyclomatic_complexity(file_tokens, own, profile);
    m.param_count = unit.param_count;
    m.halstead = halstead(file_tokens, own, profile);
    m.nesting_depth_max = unit.nesting_depth_max;
    return m;
}

FileMetrics file_metrics(std::string path, std::span<const Token> tokens, const LineClassification& lines,
                         const std::vector<Unit>& units, const LanguageProfile& profile)
{
    FileMetrics f;
    f.path = std::move(path);
    f.profile_id = profile.id;
    f.lines = lines;
    f.code_tokens = static_cast<int>(std::count_if(tokens.begin(), tokens.end(),
                                                   [](const Token& t) { return !t.is_comment(); }));
    f.cc = cyclomatic_complexity(tokens, profile);
    f.halstead = halstead(tokens, profile);
    f.units.reserve(units.size());
    for (const auto& u : units) {
        f.units.push_back(unit_metrics(u, tokens, profile));
        f.units.back().unit.file = f.path;
    }
    return f;
}

ProjectMetrics aggregate_project(std::span<const FileMetrics> files, MeanKind mean)
{
    if (files.empty()) {
        throw Error(ErrorCode::empty_project, "no source files matched");
    }
    ProjectMetrics p;
    p.mean_kind = mean;
    p.file_count = static_cast<int>(files.size());
    std::vector<double> unit_volumes, unit_ccs, unit_locs;
    std::vector<double> file_volumes, file_ccs, file_locs;
    for (const auto& f : files) {
        p.lines += f.lines;
        if (f.lines.loc() > 0) {
            file_volumes.push_back(f.halstead.volume());
            file_ccs.push_back(f.cc);
            file_locs.push_back(f.lines.loc());
        }
        for (const auto& u : f.units) {
            unit_volumes.push_back(u.halstead.volume());
            unit_ccs.push_back(u.cc);
            unit_locs.push_back(u.loc);
            p.max_cc = std::max(p.max_cc, u.cc);
            p.unit_size_distribution.push_back({f.path, u.unit.name, u.unit.start_line, u.loc});
        }
    }
    p.total_loc = p.lines.loc();
    p.physical_lines = p.lines.physical_lines;
    p.comment_ratio = comment_ratio(p.lines);
    p.unit_count = static_cast<int>(unit_volumes.size());
    if (!unit_volumes.empty()) {
        p.unit_averages = means(unit_volumes, unit_ccs, unit_locs, mean);
    }
    if (!file_volumes.empty()) {
        p.file_averages = means(file_volumes, file_ccs, file_locs, mean);
    }
    std::sort(p.unit_size_distribution.begin(), p.unit_size_distribution.end(),
              [](const UnitSize& a, const UnitSize& b) {
                  return std::tie(a.file, a.start_line, a.name) < std::tie(b.file, b.start_line, b.name);
              });
    return p;
}

} // namespace xmaint
