#include "xmaint/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "xmaint/discovery.hpp"
#include "xmaint/lexer.hpp"
#include "xmaint/lines.hpp"
#include "xmaint/units.hpp"

namespace xmaint {

namespace {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index writes
/// only its own slot, so the outcome is independent of scheduling.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < n; i = next++) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

int line_of_offset(std::string_view content, std::size_t offset)
{
    return 1 + static_cast<int>(std::count(content.begin(), content.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

struct FileResult {
    std::optional<FileMetrics> metrics;
    NormalizedFile normalized;
    Diagnostics diagnostics;
};

FileResult process_file(const SourceText& source, const Config& config)
{
    FileResult out;
    const auto& profile = config.registry.get(source.profile_id);
    if (const auto bad = find_invalid_utf8(source.content)) {
        out.diagnostics.push_back({ErrorCode::encoding_error, source.path, line_of_offset(source.content, *bad),
                                   "invalid UTF-8 at byte " + std::to_string(*bad) + "; file skipped"});
        return out;
    }
    const auto content = strip_bom(source.content);
    auto lexed = tokenize(content, profile);
    for (auto& d : lexed.diagnostics) {
        d.file = source.path;
        out.diagnostics.push_back(std::move(d));
    }
    const auto lines = classify_lines(lexed.tokens, count_physical_lines(content));
    auto units = extract_units(lexed.tokens, profile, source.path);
    for (auto& d : units.diagnostics) out.diagnostics.push_back(std::move(d));
    out.metrics = file_metrics(source.path, lexed.tokens, lines, units.units, profile);
    out.normalized = {source.path, normalize_tokens(lexed.tokens, config.duplication_mode)};
    return out;
}

std::map<std::string, double> verbosity_map(const std::map<std::string, RuleSet>& rule_sets, const Config& config)
{
    std::map<std::string, double> out;
    for (const auto& [id, rs] : rule_sets) out[id] = config.registry.get(id).verbosity_factor;
    return out;
}

std::vector<std::string> unique_ids(const std::vector<std::filesystem::path>& roots)
{
    std::vector<std::string> ids;
    std::map<std::string, int> seen;
    for (const auto& root : roots) {
        auto id = project_id_for(root);
        const int n = ++seen[id];
        if (n > 1) id += "-" + std::to_string(n);
        ids.push_back(std::move(id));
    }
    return ids;
}

} // namespace

std::vector<RuleId> ProjectAnalysis::rule_ids() const
{
    std::vector<RuleId> out;
    for (const auto id : kAllRuleIds) {
        const bool everywhere = std::all_of(rule_sets.begin(), rule_sets.end(),
                                            [&](const auto& kv) { return kv.second.is_enabled(id); });
        if (everywhere && !rule_sets.empty()) out.push_back(id);
    }
    return out;
}

ProjectAnalysis analyze_sources(std::string project_id, std::vector<SourceText> sources, const Config& config,
                                const RuleSetOverride* overrides)
{
    std::sort(sources.begin(), sources.end(), [](const SourceText& a, const SourceText& b) { return a.path < b.path; });
    for (const auto& s : sources) (void)config.registry.get(s.profile_id);

    std::vector<FileResult> results(sources.size());
    parallel_for(sources.size(), config.workers, [&](std::size_t i) { results[i] = process_file(sources[i], config); });

    ProjectAnalysis a;
    a.project_id = std::move(project_id);
    a.cost_per_line = config.cost_per_line;
    std::vector<NormalizedFile> normalized;
    for (auto& r : results) {
        for (auto& d : r.diagnostics) a.diagnostics.push_back(std::move(d));
        if (!r.metrics) continue;
        a.files.push_back(std::move(*r.metrics));
        normalized.push_back(std::move(r.normalized));
    }
    if (a.files.empty()) {
        throw Error(ErrorCode::empty_project, "no analyzable source file in project '" + a.project_id + "'");
    }

    a.metrics = aggregate_project(a.files, config.mean);
    a.duplication = analyze_duplication(normalized, static_cast<std::size_t>(a.metrics.lines.loc()),
                                        config.min_tokens, config.duplication_mode);

    for (const auto& f : a.files) {
        if (a.rule_sets.count(f.profile_id)) continue;
        if (overrides) {
            const auto it = overrides->find(f.profile_id);
            if (it != overrides->end()) {
                a.rule_sets.emplace(f.profile_id, it->second);
                continue;
            }
        }
        a.rule_sets.emplace(f.profile_id, config.rule_set(config.registry.get(f.profile_id)));
    }
    a.violations = check_rules(a.files, &a.duplication, a.rule_sets);
    std::sort(a.violations.begin(), a.violations.end(), violation_less);

    try {
        a.mi = maintainability_index(a.metrics, config.mi_module);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::missing_units) throw;
    }

    const double production = production_effort(a.metrics.total_loc, config.cost_per_line);
    if (production > 0) {
        a.tdr = technical_debt_ratio(a.violations, production);
    } else {
        a.diagnostics.push_back({ErrorCode::zero_production_effort, "", 0, "project has no code lines; TDR undefined"});
    }

    std::vector<UnitMetrics> units;
    for (const auto& f : a.files) units.insert(units.end(), f.units.begin(), f.units.end());
    const double dup = config.composite.duplication_basis == DuplicationBasis::tokens
                           ? a.duplication.ratios.token_ratio
                           : a.duplication.ratios.line_ratio;
    a.sig = sig_assess(units, a.metrics.total_loc, dup, config.coverage, verbosity_map(a.rule_sets, config), config.sig);

    std::sort(a.diagnostics.begin(), a.diagnostics.end(), diagnostic_less);
    return a;
}

std::string project_id_for(const std::filesystem::path& root)
{
    auto p = std::filesystem::weakly_canonical(std::filesystem::absolute(root));
    auto name = p.filename().string();
    if (name.empty()) name = p.parent_path().filename().string();
    return name.empty() ? std::string("project") : name;
}

namespace {

std::vector<SourceText> read_sources(const Discovery& found, const Config& config, Diagnostics& diagnostics)
{
    std::vector<std::optional<SourceText>> slots(found.files.size());
    std::vector<std::optional<Diagnostic>> failures(found.files.size());
    parallel_for(found.files.size(), config.workers, [&](std::size_t i) {
        const auto& f = found.files[i];
        std::ifstream in(f.absolute, std::ios::binary);
        std::ostringstream buf;
        if (in) buf << in.rdbuf();
        if (!in || in.bad()) {
            failures[i] = Diagnostic{ErrorCode::unreadable_file, f.relative, 0, "cannot read file; skipped"};
            return;
        }
        slots[i] = SourceText{f.relative, f.profile_id, std::move(buf).str()};
    });
    std::vector<SourceText> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i]) out.push_back(std::move(*slots[i]));
        if (failures[i]) diagnostics.push_back(std::move(*failures[i]));
    }
    return out;
}

} // namespace

ProjectAnalysis analyze_path(const std::filesystem::path& root, const Config& config, const RuleSetOverride* rule_sets,
                             std::string project_id)
{
    if (project_id.empty()) project_id = project_id_for(root);
    const auto found = discover_files(root, config);
    Diagnostics diagnostics = found.diagnostics;
    auto sources = read_sources(found, config, diagnostics);
    if (sources.empty()) {
        throw Error(ErrorCode::empty_project, "no source file found below " + root.string());
    }
    auto a = analyze_sources(std::move(project_id), std::move(sources), config, rule_sets);
    a.diagnostics.insert(a.diagnostics.end(), diagnostics.begin(), diagnostics.end());
    std::sort(a.diagnostics.begin(), a.diagnostics.end(), diagnostic_less);
    return a;
}

ProjectIndicators project_indicators(const ProjectAnalysis& a, const CompositeConfig& config)
{
    ProjectIndicators p;
    p.project_id = a.project_id;
    p.comment_ratio = a.metrics.comment_ratio;
    p.duplication_ratio = config.duplication_basis == DuplicationBasis::tokens ? a.duplication.ratios.token_ratio
                                                                               : a.duplication.ratios.line_ratio;
    if (a.tdr) p.tdr = a.tdr->tdr;
    p.total_loc = a.metrics.total_loc;
    p.cost_per_line = a.cost_per_line;
    p.rule_ids = a.rule_ids();
    return p;
}

namespace {

/// Shared part of both compare entry points once the profiles are known.
struct ComparePlan {
    RuleIntersection intersection;
    RuleSetOverride overrides;
};

ComparePlan plan_comparison(const std::set<std::string>& profiles, const Config& config)
{
    std::vector<RuleSet> sets;
    for (const auto& id : profiles) sets.push_back(config.rule_set(config.registry.get(id)));
    ComparePlan plan;
    plan.intersection = intersect_rule_sets(sets);
    require_single_counting(config.composite, plan.intersection.rule_sets);
    for (const auto& rs : plan.intersection.rule_sets) plan.overrides.emplace(rs.profile_id, rs);
    return plan;
}

Comparison finish_comparison(ComparePlan plan, std::vector<ProjectAnalysis> projects, const Config& config)
{
    Comparison c;
    c.projects = std::move(projects);
    c.intersection = std::move(plan.intersection);
    std::vector<ProjectIndicators> indicators;
    for (const auto& p : c.projects) indicators.push_back(project_indicators(p, config.composite));
    c.scores = composite_score(indicators, config.composite);
    if (config.sensitivity) {
        const auto mapped = map_projects(indicators, config.composite);
        c.sensitivity = sensitivity_analysis(mapped, config.composite.weights(), config.composite.sensitivity_delta_pp);
    }
    return c;
}

} // namespace

Comparison compare_paths(const std::vector<std::filesystem::path>& roots, const Config& config)
{
    if (roots.size() < 2) throw Error(ErrorCode::single_project, "compare needs at least two projects");
    const auto ids = unique_ids(roots);
    std::vector<Discovery> found;
    std::set<std::string> profiles;
    for (const auto& root : roots) {
        found.push_back(discover_files(root, config));
        for (const auto& f : found.back().files) profiles.insert(f.profile_id);
    }
    auto plan = plan_comparison(profiles, config);
    std::vector<ProjectAnalysis> projects;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        Diagnostics diagnostics = found[i].diagnostics;
        auto sources = read_sources(found[i], config, diagnostics);
        if (sources.empty()) {
            throw Error(ErrorCode::empty_project, "no source file found below " + roots[i].string());
        }
        auto a = analyze_sources(ids[i], std::move(sources), config, &plan.overrides);
        a.diagnostics.insert(a.diagnostics.end(), diagnostics.begin(), diagnostics.end());
        std::sort(a.diagnostics.begin(), a.diagnostics.end(), diagnostic_less);
        projects.push_back(std::move(a));
    }
    return finish_comparison(std::move(plan), std::move(projects), config);
}

Comparison compare_sources(std::vector<std::pair<std::string, std::vector<SourceText>>> projects, const Config& config)
{
    if (projects.size() < 2) throw Error(ErrorCode::single_project, "compare needs at least two projects");
    std::set<std::string> profiles;
    for (const auto& [id, sources] : projects) {
        for (const auto& s : sources) profiles.insert(s.profile_id);
    }
    auto plan = plan_comparison(profiles, config);
    std::vector<ProjectAnalysis> analyses;
    for (auto& [id, sources] : projects) {
        analyses.push_back(analyze_sources(id, std::move(sources), config, &plan.overrides));
    }
    return finish_comparison(std::move(plan), std::move(analyses), config);
}

} // namespace xmaint
