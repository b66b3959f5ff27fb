#include "xmaint/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "xmaint/version.hpp"

namespace xmaint {

using json = nlohmann::json;

double round_ratio(double v) noexcept
{
    const double r = std::round(v * 1e4) / 1e4;
    return r == 0 ? 0.0 : r;  // no "-0.0"
}

double round_score(double v) noexcept
{
    const double r = std::round(v * 1e2) / 1e2;
    return r == 0 ? 0.0 : r;
}

long long round_minutes(double v) noexcept
{
    return std::llround(v);
}

namespace {

json opt_score(const std::optional<double>& v)
{
    return v ? json(round_score(*v)) : json(nullptr);
}

json lines_json(const LineClassification& l)
{
    return {{"blank", l.blank}, {"code", l.code}, {"comment", l.comment}, {"mixed", l.mixed}};
}

json averages_json(const std::optional<ModuleAverages>& a)
{
    if (!a) return nullptr;
    return {{"cc", round_score(a->cc)}, {"halsteadVolume", round_score(a->halstead_volume)}, {"loc", round_score(a->loc)}};
}

json halstead_json(const HalsteadCounts& h)
{
    return {{"distinctOperands", h.distinct_operands},
            {"distinctOperators", h.distinct_operators},
            {"totalOperands", h.total_operands},
            {"totalOperators", h.total_operators},
            {"volume", round_score(h.volume())}};
}

json unit_json(const UnitMetrics& u)
{
    return {{"cc", u.cc},
            {"endLine", u.unit.end_line},
            {"halsteadVolume", round_score(u.halstead.volume())},
            {"loc", u.loc},
            {"name", u.unit.name},
            {"nestingDepth", u.nesting_depth_max},
            {"params", u.param_count},
            {"startLine", u.unit.start_line}};
}

json file_json(const FileMetrics& f)
{
    json units = json::array();
    for (const auto& u : f.units) units.push_back(unit_json(u));
    return {{"cc", f.cc},
            {"codeTokens", f.code_tokens},
            {"commentRatio", round_ratio(comment_ratio(f.lines))},
            {"halstead", halstead_json(f.halstead)},
            {"lines", lines_json(f.lines)},
            {"loc", f.lines.loc()},
            {"path", f.path},
            {"physicalLines", f.lines.physical_lines},
            {"profile", f.profile_id},
            {"units", units}};
}

json metrics_json(const ProjectMetrics& m)
{
    json sizes = json::array();
    for (const auto& s : m.unit_size_distribution) {
        sizes.push_back({{"file", s.file}, {"loc", s.loc}, {"name", s.name}, {"startLine", s.start_line}});
    }
    return {{"commentRatio", round_ratio(m.comment_ratio)},
            {"fileAverages", averages_json(m.file_averages)},
            {"fileCount", m.file_count},
            {"lines", lines_json(m.lines)},
            {"maxCc", m.max_cc},
            {"meanKind", m.mean_kind == MeanKind::unweighted ? "unweighted" : "loc-weighted"},
            {"physicalLines", m.physical_lines},
            {"totalLoc", m.total_loc},
            {"unitAverages", averages_json(m.unit_averages)},
            {"unitCount", m.unit_count},
            {"unitSizeDistribution", sizes}};
}

json occurrence_json(const CloneOccurrence& o)
{
    return {{"file", o.file}, {"line", o.start_line}, {"token", o.start_token}};
}

json duplication_json(const DuplicationReport& d)
{
    json blocks = json::array();
    for (const auto& b : d.blocks) {
        blocks.push_back({{"a", occurrence_json(b.a)},
                          {"b", occurrence_json(b.b)},
                          {"linesA", b.length_lines_a},
                          {"linesB", b.length_lines_b},
                          {"tokens", b.length_tokens}});
    }
    const auto& r = d.ratios;
    return {{"blocks", blocks},
            {"duplicatedLines", r.duplicated_lines},
            {"duplicatedTokens", r.duplicated_tokens},
            {"lineRatio", round_ratio(r.line_ratio)},
            {"minTokens", d.min_tokens},
            {"mode", to_string(d.mode)},
            {"tokenRatio", round_ratio(r.token_ratio)},
            {"totalLines", r.total_lines},
            {"totalTokens", r.total_tokens}};
}

json violations_json(const std::vector<Violation>& violations)
{
    json by_rule = json::object();
    std::map<std::string, std::pair<long long, double>> agg;
    json items = json::array();
    for (const auto& v : violations) {
        auto& [count, minutes] = agg[std::string(to_string(v.rule))];
        ++count;
        minutes += v.effort_minutes;
        items.push_back({{"effortMinutes", round_minutes(v.effort_minutes)},
                         {"file", v.file},
                         {"line", v.line},
                         {"observed", round_score(v.observed)},
                         {"rule", to_string(v.rule)},
                         {"threshold", round_score(v.threshold)},
                         {"unit", v.unit_name}});
    }
    for (const auto& [rule, cm] : agg) by_rule[rule] = {{"count", cm.first}, {"minutes", round_minutes(cm.second)}};
    return {{"byRule", by_rule}, {"count", violations.size()}, {"items", items}};
}

json mi_json(const std::optional<MiResult>& mi)
{
    if (!mi) return nullptr;
    return {{"aCC", round_score(mi->a_cc)}, {"aHV", round_score(mi->a_hv)}, {"aLOC", round_score(mi->a_loc)}, {"mi", round_score(mi->mi)}};
}

json tdr_json(const std::optional<TdrResult>& t)
{
    if (!t) return nullptr;
    return {{"grade", std::string(1, to_char(t->grade))},
            {"productionMinutes", round_minutes(t->production_minutes)},
            {"remediationMinutes", round_minutes(t->remediation_minutes)},
            {"tdr", round_ratio(t->tdr)}};
}

json sig_json(const SigResult& s)
{
    json props = json::object();
    for (const auto& [p, r] : s.properties) props[std::string(to_string(p))] = r;
    json chars = json::object();
    for (const auto& [c, v] : s.characteristics) chars[std::string(to_string(c))] = round_score(v);
    return {{"characteristics", chars}, {"overall", opt_score(s.overall)}, {"properties", props}};
}

json diagnostics_json(const Diagnostics& ds)
{
    json out = json::array();
    for (const auto& d : ds) {
        out.push_back({{"code", error_code_name(d.code)}, {"file", d.file}, {"line", d.line}, {"message", d.message}});
    }
    return out;
}

json rule_ids_json(const std::vector<RuleId>& ids)
{
    json out = json::array();
    for (auto id : ids) out.push_back(to_string(id));
    return out;
}

json header(const Config& config, const std::string& mode, const std::string& generated_at)
{
    return {{"configHash", config_hash(config)},
            {"effectiveConfig", effective_config_json(config)},
            {"generatedAt", generated_at},
            {"mode", mode},
            {"toolVersion", std::string(kToolVersion)}};
}

json scores_json(const std::vector<CompositeScore>& scores)
{
    json out = json::array();
    for (const auto& s : scores) {
        json ind = json::object();
        for (const auto& [i, v] : s.per_indicator) {
            const auto w = s.weights.find(i);
            ind[std::string(to_string(i))] = {{"raw", round_ratio(v.raw)},
                                              {"score", round_score(v.score)},
                                              {"weight", round_ratio(w == s.weights.end() ? 0.0 : w->second)}};
        }
        out.push_back({{"indicators", ind}, {"projectId", s.project_id}, {"rank", s.rank}, {"total", round_score(s.total)}});
    }
    return out;
}

json weights_json(const std::map<Indicator, double>& w)
{
    json out = json::object();
    for (const auto& [i, v] : w) out[std::string(to_string(i))] = round_ratio(v);
    return out;
}

json sensitivity_json(const SensitivityReport& s)
{
    json perturbations = json::array();
    for (const auto& p : s.perturbations) {
        json ranking = json::array();
        for (const auto& sc : p.scores) ranking.push_back({{"projectId", sc.project_id}, {"total", round_score(sc.total)}});
        perturbations.push_back({{"direction", p.direction > 0 ? "+" : "-"},
                                 {"indicator", to_string(p.indicator)},
                                 {"ranking", ranking},
                                 {"rankingChanged", p.ranking_changed},
                                 {"top1Changed", p.top1_changed},
                                 {"weights", weights_json(p.weights)}});
    }
    json range = json::object();
    for (const auto& [id, mm] : s.total_range) range[id] = {{"max", round_score(mm.second)}, {"min", round_score(mm.first)}};
    return {{"baselineRanking", s.baseline_ranking},
            {"deltaPp", s.delta_pp},
            {"fullRankingStable", s.full_ranking_stable},
            {"perturbations", perturbations},
            {"top1Stable", s.top1_stable},
            {"totalRange", range}};
}

std::string fmt_value(const json& v)
{
    if (v.is_null()) return "n/a";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void md_header(std::ostringstream& os, const json& report, const std::string& title)
{
    os << "# " << title << "\n\n";
    os << "- tool version: " << report.value("toolVersion", "") << "\n";
    if (report.contains("configHash")) os << "- config hash: `" << report["configHash"].get<std::string>() << "`\n";
    os << "- generated at: " << report.value("generatedAt", "") << "\n\n";
}

void md_project(std::ostringstream& os, const json& p)
{
    os << "## Project `" << p["projectId"].get<std::string>() << "`\n\n";
    os << "| Metric | Value |\n|---|---|\n";
    for (const auto& [k, v] : p["summary"].items()) os << "| " << k << " | " << fmt_value(v) << " |\n";
    os << "\n### Rules\n\n";
    for (const auto& [profile, ids] : p["rules"].items()) {
        os << "- " << profile << ": ";
        bool first = true;
        for (const auto& id : ids) {
            os << (first ? "" : ", ") << id.get<std::string>();
            first = false;
        }
        os << (first ? "(none)" : "") << "\n";
    }
    os << "\n| Rule | Violations | Minutes |\n|---|---|---|\n";
    for (const auto& [rule, v] : p["violations"]["byRule"].items()) {
        os << "| " << rule << " | " << v["count"].dump() << " | " << v["minutes"].dump() << " |\n";
    }
    os << "\n### SIG\n\n| Property | Rating |\n|---|---|\n";
    for (const auto& [k, v] : p["sig"]["properties"].items()) os << "| " << k << " | " << v.dump() << " |\n";
    for (const auto& [k, v] : p["sig"]["characteristics"].items()) os << "| " << k << " | " << v.dump() << " |\n";
    os << "| overall | " << fmt_value(p["sig"]["overall"]) << " |\n";
    if (!p["diagnostics"].empty()) {
        os << "\n### Diagnostics\n\n";
        for (const auto& d : p["diagnostics"]) {
            os << "- " << d["code"].get<std::string>() << " " << d["file"].get<std::string>() << ":" << d["line"].dump()
               << " " << d["message"].get<std::string>() << "\n";
        }
    }
    os << "\n";
}

std::string markdown_trend(const json& report)
{
    std::ostringstream os;
    md_header(os, report, "Trend of " + report["metric"].get<std::string>() + " for `" +
                              report["projectId"].get<std::string>() + "`");
    os << "| Timestamp | Snapshot | Label | Value | Incomparable |\n|---|---|---|---|---|\n";
    for (const auto& pt : report["series"]) {
        os << "| " << pt["timestamp"].get<std::string>() << " | " << pt["snapshotId"].get<std::string>() << " | "
           << pt["label"].get<std::string>() << " | " << fmt_value(pt["value"]) << " | "
           << (pt["incomparable"].get<bool>() ? "yes" : "no") << " |\n";
    }
    return os.str();
}

std::string csv_trend(const json& report)
{
    std::ostringstream os;
    os << "timestamp,snapshotId,label,value,incomparable\n";
    for (const auto& pt : report["series"]) {
        os << csv_field(pt["timestamp"].get<std::string>()) << "," << csv_field(pt["snapshotId"].get<std::string>())
           << "," << csv_field(pt["label"].get<std::string>()) << "," << csv_field(fmt_value(pt["value"])) << ","
           << (pt["incomparable"].get<bool>() ? "true" : "false") << "\n";
    }
    return os.str();
}

} // namespace

json metrics_summary(const ProjectAnalysis& a)
{
    const auto& m = a.metrics;
    json s;
    s["fileCount"] = m.file_count;
    s["totalLoc"] = m.total_loc;
    s["physicalLines"] = m.physical_lines;
    s["codeLines"] = m.lines.code;
    s["commentLines"] = m.lines.comment;
    s["blankLines"] = m.lines.blank;
    s["mixedLines"] = m.lines.mixed;
    s["commentRatio"] = round_ratio(m.comment_ratio);
    s["unitCount"] = m.unit_count;
    s["aHV"] = a.mi ? json(round_score(a.mi->a_hv)) : json(nullptr);
    s["aCC"] = a.mi ? json(round_score(a.mi->a_cc)) : json(nullptr);
    s["aLOC"] = a.mi ? json(round_score(a.mi->a_loc)) : json(nullptr);
    s["maxCc"] = m.max_cc;
    s["tokenDuplicationRatio"] = round_ratio(a.duplication.ratios.token_ratio);
    s["lineDuplicationRatio"] = round_ratio(a.duplication.ratios.line_ratio);
    s["cloneBlocks"] = a.duplication.blocks.size();
    s["violations"] = a.violations.size();
    s["remediationMinutes"] = a.tdr ? json(round_minutes(a.tdr->remediation_minutes)) : json(nullptr);
    s["productionMinutes"] = a.tdr ? json(round_minutes(a.tdr->production_minutes)) : json(nullptr);
    s["tdr"] = a.tdr ? json(round_ratio(a.tdr->tdr)) : json(nullptr);
    s["grade"] = a.tdr ? json(std::string(1, to_char(a.tdr->grade))) : json(nullptr);
    s["mi"] = a.mi ? json(round_score(a.mi->mi)) : json(nullptr);
    s["sigOverall"] = opt_score(a.sig.overall);
    return s;
}

json project_json(const ProjectAnalysis& a)
{
    json files = json::array();
    for (const auto& f : a.files) files.push_back(file_json(f));
    json rules = json::object();
    for (const auto& [profile, rs] : a.rule_sets) rules[profile] = rule_ids_json(rs.enabled_ids());
    return {{"diagnostics", diagnostics_json(a.diagnostics)},
            {"duplication", duplication_json(a.duplication)},
            {"files", files},
            {"metrics", metrics_json(a.metrics)},
            {"mi", mi_json(a.mi)},
            {"projectId", a.project_id},
            {"rules", rules},
            {"sig", sig_json(a.sig)},
            {"summary", metrics_summary(a)},
            {"tdr", tdr_json(a.tdr)},
            {"violations", violations_json(a.violations)}};
}

json comparison_json(const Comparison& c)
{
    json rule_sets = json::object();
    for (const auto& rs : c.intersection.rule_sets) rule_sets[rs.profile_id] = rule_set_to_json(rs);
    json models = json::array();
    for (const auto& p : c.projects) {
        models.push_back({{"grade", p.tdr ? json(std::string(1, to_char(p.tdr->grade))) : json(nullptr)},
                          {"lineDuplicationRatio", round_ratio(p.duplication.ratios.line_ratio)},
                          {"mi", p.mi ? json(round_score(p.mi->mi)) : json(nullptr)},
                          {"projectId", p.project_id},
                          {"sigOverall", opt_score(p.sig.overall)},
                          {"tdr", p.tdr ? json(round_ratio(p.tdr->tdr)) : json(nullptr)},
                          {"tokenDuplicationRatio", round_ratio(p.duplication.ratios.token_ratio)}});
    }
    std::sort(models.begin(), models.end(),
              [](const json& x, const json& y) { return x["projectId"] < y["projectId"]; });
    json out = {{"intersection", {{"empty", c.intersection.empty},
                                  {"ruleSets", rule_sets},
                                  {"shared", rule_ids_json(c.intersection.shared)}}},
                {"models", models},
                {"ranking", scores_json(c.scores)}};
    out["sensitivity"] = c.sensitivity ? sensitivity_json(*c.sensitivity) : json(nullptr);
    return out;
}

json analyze_report(const ProjectAnalysis& a, const Config& config, const std::string& generated_at)
{
    auto r = header(config, "analyze", generated_at);
    r["projects"] = json::array({project_json(a)});
    return r;
}

json compare_report(const Comparison& c, const Config& config, const std::string& generated_at)
{
    auto r = header(config, "compare", generated_at);
    json projects = json::array();
    for (const auto& p : c.projects) projects.push_back(project_json(p));
    std::sort(projects.begin(), projects.end(),
              [](const json& x, const json& y) { return x["projectId"] < y["projectId"]; });
    r["projects"] = projects;
    r["comparison"] = comparison_json(c);
    return r;
}

std::string render_json(const json& report)
{
    return report.dump(2) + "\n";
}

std::string render_markdown(const json& report)
{
    const auto mode = report.value("mode", "");
    if (mode == "trend") return markdown_trend(report);
    std::ostringstream os;
    md_header(os, report, mode == "compare" ? "Maintainability comparison" : "Maintainability report");
    if (mode == "compare") {
        const auto& c = report["comparison"];
        os << "## Ranking\n\n| Rank | Project | Total |";
        for (auto i : kAllIndicators) os << " " << to_string(i) << " |";
        os << "\n|---|---|---|---|---|---|---|\n";
        for (const auto& s : c["ranking"]) {
            os << "| " << s["rank"].dump() << " | " << s["projectId"].get<std::string>() << " | " << s["total"].dump() << " |";
            for (auto i : kAllIndicators) {
                const auto key = std::string(to_string(i));
                os << " " << (s["indicators"].contains(key) ? s["indicators"][key]["score"].dump() : "n/a") << " |";
            }
            os << "\n";
        }
        os << "\n## Other models\n\n| Project | MI | SIG | TDR | Grade | Token dup. | Line dup. |\n|---|---|---|---|---|---|---|\n";
        for (const auto& m : c["models"]) {
            os << "| " << m["projectId"].get<std::string>() << " | " << fmt_value(m["mi"]) << " | "
               << fmt_value(m["sigOverall"]) << " | " << fmt_value(m["tdr"]) << " | " << fmt_value(m["grade"]) << " | "
               << fmt_value(m["tokenDuplicationRatio"]) << " | " << fmt_value(m["lineDuplicationRatio"]) << " |\n";
        }
        os << "\n## Shared rules\n\n";
        for (const auto& id : c["intersection"]["shared"]) os << "- " << id.get<std::string>() << "\n";
        if (c["intersection"]["empty"].get<bool>()) os << "- (empty intersection: TDR reflects no rules)\n";
        if (!c["sensitivity"].is_null()) {
            const auto& s = c["sensitivity"];
            os << "\n## Weight sensitivity (±" << s["deltaPp"].dump() << " pp)\n\n";
            os << "- top-1 stable: " << (s["top1Stable"].get<bool>() ? "yes" : "no") << "\n";
            os << "- full ranking stable: " << (s["fullRankingStable"].get<bool>() ? "yes" : "no") << "\n\n";
            os << "| Indicator | Shift | Top-1 changed | Ranking changed |\n|---|---|---|---|\n";
            for (const auto& p : s["perturbations"]) {
                os << "| " << p["indicator"].get<std::string>() << " | " << p["direction"].get<std::string>() << " | "
                   << (p["top1Changed"].get<bool>() ? "yes" : "no") << " | "
                   << (p["rankingChanged"].get<bool>() ? "yes" : "no") << " |\n";
            }
        }
        os << "\n";
    }
    for (const auto& p : report["projects"]) md_project(os, p);
    return os.str();
}

std::string render_csv(const json& report)
{
    if (report.value("mode", "") == "trend") return csv_trend(report);
    std::ostringstream os;
    os << "project,key,value\n";
    for (const auto& p : report["projects"]) {
        const auto id = csv_field(p["projectId"].get<std::string>());
        for (const auto& [k, v] : p["summary"].items()) os << id << "," << k << "," << csv_field(fmt_value(v)) << "\n";
    }
    if (report.contains("comparison")) {
        for (const auto& s : report["comparison"]["ranking"]) {
            const auto id = csv_field(s["projectId"].get<std::string>());
            os << id << ",compositeRank," << s["rank"].dump() << "\n";
            os << id << ",compositeTotal," << s["total"].dump() << "\n";
            for (const auto& [k, v] : s["indicators"].items()) {
                os << id << "," << k << "Score," << v["score"].dump() << "\n";
            }
        }
    }
    return os.str();
}

std::string render(const json& report, ReportFormat format)
{
    switch (format) {
    case ReportFormat::json: return render_json(report);
    case ReportFormat::markdown: return render_markdown(report);
    case ReportFormat::csv: return render_csv(report);
    }
    return render_json(report);
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::floor<std::chrono::seconds>(now);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(now - secs).count();
    const std::time_t t = std::chrono::system_clock::to_time_t(secs);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(6) << std::setfill('0') << micros << 'Z';
    return os.str();
}

} // namespace xmaint
