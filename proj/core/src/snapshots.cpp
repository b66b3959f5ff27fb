#include "xmaint/snapshots.hpp"

#include <algorithm>
#include <fcntl.h>
#include <fstream>
#include <sstream>
#include <sys/file.h>
#include <unistd.h>

#include "xmaint/digest.hpp"
#include "xmaint/error.hpp"
#include "xmaint/report.hpp"
#include "xmaint/version.hpp"

namespace xmaint {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

[[noreturn]] void unwritable(const fs::path& p, const std::string& why)
{
    throw Error(ErrorCode::store_unwritable, p.string() + ": " + why);
}

/// Holds an exclusive flock on `<store>/.lock` for its lifetime.
class StoreLock {
public:
    explicit StoreLock(const fs::path& store)
    {
        const auto path = store / ".lock";
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ < 0) unwritable(path, "cannot open lock file");
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            unwritable(path, "cannot lock store");
        }
    }
    ~StoreLock()
    {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    StoreLock(const StoreLock&) = delete;
    StoreLock& operator=(const StoreLock&) = delete;

private:
    int fd_{-1};
};

/// Creates `path` exclusively and writes `data`; false when the file already exists.
bool write_exclusive(const fs::path& path, const std::string& data)
{
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
    if (fd < 0) {
        if (errno == EEXIST) return false;
        unwritable(path, "cannot create snapshot file");
    }
    std::size_t done = 0;
    while (done < data.size()) {
        const auto n = ::write(fd, data.data() + done, data.size() - done);
        if (n <= 0) {
            ::close(fd);
            unwritable(path, "short write");
        }
        done += static_cast<std::size_t>(n);
    }
    if (::close(fd) != 0) unwritable(path, "cannot close snapshot file");
    return true;
}

/// "2024-11-21T09:30:00.000000Z" -> "20241121T093000000000Z"
std::string compact_timestamp(const std::string& iso)
{
    std::string out;
    for (char c : iso) {
        if (c != '-' && c != ':' && c != '.') out += c;
    }
    return out;
}

bool valid_project_id(const std::string& id)
{
    return !id.empty() && id != "." && id != ".." && id.find('/') == std::string::npos &&
           id.find('\\') == std::string::npos;
}

bool snapshot_less(const Snapshot& a, const Snapshot& b)
{
    return std::tie(a.timestamp_utc, a.snapshot_id) < std::tie(b.timestamp_utc, b.snapshot_id);
}

} // namespace

json snapshot_to_json(const Snapshot& s)
{
    return {{"compositeTotal", s.composite_total ? json(*s.composite_total) : json(nullptr)},
            {"configHash", s.config_hash},
            {"label", s.label},
            {"metricsSummary", s.metrics_summary},
            {"projectId", s.project_id},
            {"snapshotId", s.snapshot_id},
            {"timestampUtc", s.timestamp_utc},
            {"toolVersion", s.tool_version}};
}

Snapshot snapshot_from_json(const json& j)
{
    Snapshot s;
    s.snapshot_id = j.at("snapshotId").get<std::string>();
    s.project_id = j.at("projectId").get<std::string>();
    s.label = j.at("label").get<std::string>();
    s.timestamp_utc = j.at("timestampUtc").get<std::string>();
    s.tool_version = j.at("toolVersion").get<std::string>();
    s.config_hash = j.at("configHash").get<std::string>();
    s.metrics_summary = j.at("metricsSummary");
    if (j.contains("compositeTotal") && !j["compositeTotal"].is_null()) s.composite_total = j["compositeTotal"].get<double>();
    return s;
}

Snapshot make_snapshot(const ProjectAnalysis& analysis, const Config& config, std::string label,
                       std::optional<double> composite_total, std::string timestamp_utc)
{
    Snapshot s;
    s.project_id = analysis.project_id;
    s.label = std::move(label);
    s.timestamp_utc = timestamp_utc.empty() ? utc_timestamp() : std::move(timestamp_utc);
    s.tool_version = std::string(kToolVersion);
    s.config_hash = config_hash(config);
    s.metrics_summary = metrics_summary(analysis);
    s.composite_total = composite_total;
    return s;
}

SnapshotStore::SnapshotStore(fs::path root) : root_(std::move(root)) {}

std::string SnapshotStore::save(Snapshot snapshot)
{
    if (!valid_project_id(snapshot.project_id)) {
        unwritable(root_, "invalid project id '" + snapshot.project_id + "'");
    }
    std::error_code ec;
    fs::create_directories(root_ / snapshot.project_id, ec);
    if (ec) unwritable(root_, ec.message());

    StoreLock lock(root_);
    snapshot.snapshot_id.clear();
    const auto digest = sha256_hex(snapshot_to_json(snapshot).dump()).substr(0, 12);
    const auto base = compact_timestamp(snapshot.timestamp_utc) + "-" + digest;
    for (int attempt = 0;; ++attempt) {
        snapshot.snapshot_id = attempt == 0 ? base : base + "-" + std::to_string(attempt);
        const auto path = root_ / snapshot.project_id / (snapshot.snapshot_id + ".json");
        if (write_exclusive(path, snapshot_to_json(snapshot).dump(2) + "\n")) break;
    }
    rebuild_index();
    return snapshot.snapshot_id;
}

std::vector<Snapshot> SnapshotStore::list(const std::optional<std::string>& project_id) const
{
    std::vector<Snapshot> out;
    std::error_code ec;
    if (!fs::is_directory(root_, ec)) return out;
    std::vector<fs::path> dirs;
    if (project_id) {
        dirs.push_back(root_ / *project_id);
    } else {
        for (const auto& e : fs::directory_iterator(root_, ec)) {
            if (e.is_directory()) dirs.push_back(e.path());
        }
    }
    for (const auto& dir : dirs) {
        if (!fs::is_directory(dir, ec)) continue;
        for (const auto& e : fs::directory_iterator(dir, ec)) {
            if (!e.is_regular_file() || e.path().extension() != ".json") continue;
            std::ifstream in(e.path());
            try {
                out.push_back(snapshot_from_json(json::parse(in)));
            } catch (const std::exception&) {
                // a foreign or truncated file is not a snapshot
            }
        }
    }
    std::sort(out.begin(), out.end(), snapshot_less);
    return out;
}

void SnapshotStore::rebuild_index()
{
    json entries = json::array();
    for (const auto& s : list()) {
        entries.push_back({{"configHash", s.config_hash},
                           {"label", s.label},
                           {"projectId", s.project_id},
                           {"snapshotId", s.snapshot_id},
                           {"timestampUtc", s.timestamp_utc}});
    }
    const auto tmp = root_ / "index.json.tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << json{{"snapshots", entries}}.dump(2) << "\n";
        if (!out) unwritable(tmp, "cannot write index");
    }
    std::error_code ec;
    fs::rename(tmp, root_ / "index.json", ec);
    if (ec) unwritable(root_ / "index.json", ec.message());
}

TrendSeries trend(const SnapshotStore& store, const std::string& project_id, const std::string& metric, bool force)
{
    const auto snapshots = store.list(project_id);
    if (snapshots.empty()) {
        throw Error(ErrorCode::no_snapshots, "no snapshot of '" + project_id + "' in " + store.root().string());
    }
    const auto& latest = snapshots.back();
    if (!latest.metrics_summary.contains(metric)) {
        std::string keys;
        for (const auto& [k, v] : latest.metrics_summary.items()) keys += (keys.empty() ? "" : ", ") + k;
        throw Error(ErrorCode::unknown_metric_key, "'" + metric + "' is not a summary key (" + keys + ")");
    }
    TrendSeries series{project_id, metric, latest.config_hash, {}};
    for (const auto& s : snapshots) {
        TrendPoint p;
        p.timestamp_utc = s.timestamp_utc;
        p.snapshot_id = s.snapshot_id;
        p.label = s.label;
        p.value = s.metrics_summary.contains(metric) ? s.metrics_summary[metric] : json(nullptr);
        p.incomparable = !force && s.config_hash != latest.config_hash;
        series.points.push_back(std::move(p));
    }
    return series;
}

json trend_report(const TrendSeries& series, const std::string& generated_at)
{
    json points = json::array();
    for (const auto& p : series.points) {
        points.push_back({{"incomparable", p.incomparable},
                          {"label", p.label},
                          {"snapshotId", p.snapshot_id},
                          {"timestamp", p.timestamp_utc},
                          {"value", p.value}});
    }
    return {{"configHash", series.reference_config_hash},
            {"generatedAt", generated_at},
            {"metric", series.metric},
            {"mode", "trend"},
            {"projectId", series.project_id},
            {"series", points},
            {"toolVersion", std::string(kToolVersion)}};
}

} // namespace xmaint
