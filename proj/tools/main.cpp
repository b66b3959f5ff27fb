// xmaint command-line front end.
//
// Exit codes: 0 success, 2 results produced but diagnostics were raised,
// 1 fatal error (nothing usable produced).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xmaint/analysis.hpp"
#include "xmaint/config.hpp"
#include "xmaint/error.hpp"
#include "xmaint/report.hpp"
#include "xmaint/snapshots.hpp"
#include "xmaint/version.hpp"

namespace {

using namespace xmaint;

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitDiagnostics = 2;

// Flags shared by every command that runs an analysis. Unset options leave
// the configuration untouched.
struct AnalysisFlags {
    std::string config_path;
    std::string profile;
    std::string format;
    std::optional<std::size_t> min_tokens;
    std::optional<double> cost_per_line;
    std::string duplication_mode;
    std::optional<double> coverage;
    std::optional<unsigned> workers;
    std::vector<std::string> includes;
    std::vector<std::string> excludes;
    std::string output;
};

void add_config_flag(CLI::App* cmd, AnalysisFlags& f)
{
    cmd->add_option("--config", f.config_path, "JSON config file (default: $XMAINT_CONFIG)");
}

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f)
{
    add_config_flag(cmd, f);
    cmd->add_option("--profile", f.profile, "Force one language profile for every file");
    cmd->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "md", "markdown", "csv"}));
    cmd->add_option("--min-tokens", f.min_tokens, "Minimum clone length in tokens")->check(CLI::Range(3, 1000000));
    cmd->add_option("--cost-per-line", f.cost_per_line, "Production effort per LOC, in minutes")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dup-mode", f.duplication_mode, "Clone normalization")
        ->check(CLI::IsMember({"exact", "identifier-blind"}));
    cmd->add_option("--coverage", f.coverage, "Externally measured unit-test coverage in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--workers", f.workers, "Worker threads for file processing")->check(CLI::Range(1u, 256u));
    cmd->add_option("--include", f.includes, "Only analyze files matching this glob (repeatable)");
    cmd->add_option("--exclude", f.excludes, "Skip files/directories matching this glob (repeatable)");
    cmd->add_option("-o,--output", f.output, "Write the report to a file instead of stdout");
}

Config resolve_config(const AnalysisFlags& f)
{
    Config c;
    std::string path = f.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("XMAINT_CONFIG"); env && *env) path = env;
    }
    if (!path.empty()) c = load_config_file(path, std::move(c));
    if (!f.profile.empty()) {
        (void)c.registry.get(f.profile);
        c.forced_profile = f.profile;
    }
    if (!f.format.empty()) c.format = parse_report_format(f.format);
    if (f.min_tokens) c.min_tokens = *f.min_tokens;
    if (f.cost_per_line) c.cost_per_line = *f.cost_per_line;
    if (!f.duplication_mode.empty()) c.duplication_mode = parse_normalization_mode(f.duplication_mode);
    if (f.coverage) c.coverage = *f.coverage;
    if (f.workers) c.workers = *f.workers;
    if (!f.includes.empty()) c.includes = f.includes;
    if (!f.excludes.empty()) c.excludes = f.excludes;
    return c;
}

void emit(const std::string& text, const std::string& output)
{
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + output);
}

void print_diagnostics(const Diagnostics& ds)
{
    for (const auto& d : ds) {
        std::cerr << "xmaint: " << error_code_name(d.code) << ": " << (d.file.empty() ? "<project>" : d.file);
        if (d.line > 0) std::cerr << ":" << d.line;
        std::cerr << ": " << d.message << "\n";
    }
}

int exit_for(const Diagnostics& ds)
{
    return ds.empty() ? kExitOk : kExitDiagnostics;
}

int run_analyze(const std::string& path, const AnalysisFlags& f)
{
    const auto config = resolve_config(f);
    const auto analysis = analyze_path(path, config);
    emit(render(analyze_report(analysis, config, utc_timestamp()), config.format), f.output);
    print_diagnostics(analysis.diagnostics);
    return exit_for(analysis.diagnostics);
}

int run_compare(const std::vector<std::string>& paths, const AnalysisFlags& f, bool sensitivity,
                std::optional<double> delta)
{
    auto config = resolve_config(f);
    if (sensitivity) config.sensitivity = true;
    if (delta) config.composite.sensitivity_delta_pp = *delta;
    const std::vector<std::filesystem::path> roots(paths.begin(), paths.end());
    const auto comparison = compare_paths(roots, config);
    emit(render(compare_report(comparison, config, utc_timestamp()), config.format), f.output);
    Diagnostics all;
    for (const auto& p : comparison.projects) {
        print_diagnostics(p.diagnostics);
        all.insert(all.end(), p.diagnostics.begin(), p.diagnostics.end());
    }
    if (comparison.intersection.empty) {
        std::cerr << "xmaint: EmptyIntersection: the compared profiles share no enabled rule\n";
    }
    return exit_for(all);
}

int run_snapshot_save(const std::string& path, const AnalysisFlags& f, const std::string& store,
                      const std::string& label, const std::string& project)
{
    const auto config = resolve_config(f);
    const auto analysis = analyze_path(path, config, nullptr, project);
    SnapshotStore s(store);
    const auto id = s.save(make_snapshot(analysis, config, label));
    emit(id + "\n", f.output);
    print_diagnostics(analysis.diagnostics);
    return exit_for(analysis.diagnostics);
}

int run_snapshot_list(const std::string& path, const std::string& store, const std::string& project,
                      const std::string& format)
{
    const auto id = project.empty() ? project_id_for(path) : project;
    SnapshotStore s(store);
    const auto snapshots = s.list(id);
    if (format == "json") {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& snap : snapshots) list.push_back(snapshot_to_json(snap));
        std::cout << list.dump(2) << "\n";
    } else {
        for (const auto& snap : snapshots) {
            std::cout << snap.snapshot_id << "  " << snap.timestamp_utc << "  " << snap.label << "  "
                      << snap.config_hash.substr(0, 12) << "\n";
        }
    }
    return kExitOk;
}

int run_trend(const std::string& project, const std::string& store, const std::string& metric, bool force,
              const std::string& format, const std::string& output)
{
    const auto series = trend(SnapshotStore(store), project, metric, force);
    emit(render(trend_report(series, utc_timestamp()), parse_report_format(format)), output);
    return kExitOk;
}

int run_rules_list(const AnalysisFlags& f)
{
    const auto config = resolve_config(f);
    for (const auto& p : config.registry.profiles()) {
        if (!f.profile.empty() && p.id != f.profile) continue;
        const auto rs = config.rule_set(p);
        std::cout << p.id << ":\n";
        for (const auto& r : rs.rules) {
            std::cout << "  " << to_string(r.id) << (r.enabled ? "" : " (disabled)");
            if (r.id == RuleId::naming_convention) {
                std::cout << " pattern=" << r.pattern;
            } else if (r.id != RuleId::duplication_block) {
                std::cout << " threshold=" << r.threshold;
            }
            std::cout << " effort=" << r.effort_minutes << "min\n";
        }
    }
    return kExitOk;
}

int run_profiles_list(const AnalysisFlags& f)
{
    const auto config = resolve_config(f);
    for (const auto& p : config.registry.profiles()) {
        std::cout << p.id << "  " << to_string(p.unit_detection) << "  verbosity=" << p.verbosity_factor << "  ";
        for (std::size_t i = 0; i < p.file_extensions.size(); ++i) {
            std::cout << (i ? " " : "") << p.file_extensions[i];
        }
        std::cout << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"xmaint - cross-language maintainability metrics"};
    app.set_version_flag("--version", std::string(xmaint::kToolVersion));
    app.require_subcommand(1);

    AnalysisFlags flags;
    int code = kExitOk;
    std::function<int()> action;

    auto* analyze = app.add_subcommand("analyze", "Analyze one project");
    std::string analyze_path_arg;
    analyze->add_option("path", analyze_path_arg, "Project root or file")->required();
    add_analysis_flags(analyze, flags);
    analyze->callback([&] { action = [&] { return run_analyze(analyze_path_arg, flags); }; });

    auto* compare = app.add_subcommand("compare", "Rank two or more projects with the composite score");
    std::vector<std::string> compare_paths_arg;
    bool sensitivity = false;
    std::optional<double> delta;
    compare->add_option("paths", compare_paths_arg, "Project roots")->required()->expected(2, -1);
    add_analysis_flags(compare, flags);
    compare->add_flag("--sensitivity", sensitivity, "Add the weight-sensitivity analysis");
    compare->add_option("--delta", delta, "Weight shift in percentage points")->check(CLI::PositiveNumber);
    compare->callback([&] { action = [&] { return run_compare(compare_paths_arg, flags, sensitivity, delta); }; });

    auto* snapshot = app.add_subcommand("snapshot", "Record or list analysis snapshots");
    snapshot->require_subcommand(1);
    std::string snap_path, store, label, project;
    auto* save = snapshot->add_subcommand("save", "Analyze and append a snapshot to the store");
    save->add_option("path", snap_path, "Project root")->required();
    save->add_option("--store", store, "Snapshot store directory")->required();
    save->add_option("--label", label, "Snapshot label");
    save->add_option("--project", project, "Project id (default: directory name)");
    add_analysis_flags(save, flags);
    save->callback([&] { action = [&] { return run_snapshot_save(snap_path, flags, store, label, project); }; });
    auto* list = snapshot->add_subcommand("list", "List the snapshots of a project");
    std::string list_format = "text";
    list->add_option("path", snap_path, "Project root")->required();
    list->add_option("--store", store, "Snapshot store directory")->required();
    list->add_option("--project", project, "Project id (default: directory name)");
    list->add_option("--label", label, "Ignored; accepted for symmetry with save");
    list->add_option("--format", list_format, "Output format")->check(CLI::IsMember({"text", "json"}));
    list->callback([&] { action = [&] { return run_snapshot_list(snap_path, store, project, list_format); }; });

    auto* trend_cmd = app.add_subcommand("trend", "Time series of one summary metric");
    std::string trend_project, metric, trend_format = "json", trend_output;
    bool force = false;
    trend_cmd->add_option("projectId", trend_project, "Project id")->required();
    trend_cmd->add_option("--store", store, "Snapshot store directory")->required();
    trend_cmd->add_option("--metric", metric, "Summary key, e.g. tdr")->required();
    trend_cmd->add_option("--format", trend_format, "Output format")->check(CLI::IsMember({"json", "md", "markdown", "csv"}));
    trend_cmd->add_option("-o,--output", trend_output, "Write to a file instead of stdout");
    trend_cmd->add_flag("--force", force, "Do not flag snapshots taken under another configuration");
    trend_cmd->callback([&] {
        action = [&] { return run_trend(trend_project, store, metric, force, trend_format, trend_output); };
    });

    auto* rules = app.add_subcommand("rules", "Inspect rule sets");
    rules->require_subcommand(1);
    auto* rules_list = rules->add_subcommand("list", "Show the effective rules per profile");
    add_config_flag(rules_list, flags);
    rules_list->add_option("--profile", flags.profile, "Only this profile");
    rules_list->callback([&] { action = [&] { return run_rules_list(flags); }; });

    auto* profiles = app.add_subcommand("profiles", "Inspect language profiles");
    profiles->require_subcommand(1);
    auto* profiles_list = profiles->add_subcommand("list", "Show the registered profiles");
    add_config_flag(profiles_list, flags);
    profiles_list->callback([&] { action = [&] { return run_profiles_list(flags); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitFatal;
    }

    try {
        code = action ? action() : kExitFatal;
    } catch (const xmaint::Error& e) {
        std::cerr << "xmaint: " << e.what() << "\n";
        return kExitFatal;
    } catch (const std::exception& e) {
        std::cerr << "xmaint: " << e.what() << "\n";
        return kExitFatal;
    }
    return code;
}
