#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xmaint/analysis.hpp"
#include "xmaint/config.hpp"

namespace xmaint {

struct Snapshot {
    std::string snapshot_id;
    std::string project_id;
    std::string label;
    std::string timestamp_utc;  ///< ISO-8601
    std::string tool_version;
    std::string config_hash;
    nlohmann::json metrics_summary;  ///< see metrics_summary()
    std::optional<double> composite_total;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

nlohmann::json snapshot_to_json(const Snapshot& s);
Snapshot snapshot_from_json(const nlohmann::json& j);

/// Builds the snapshot of an analysis; `timestamp_utc` defaults to now.
Snapshot make_snapshot(const ProjectAnalysis& analysis, const Config& config, std::string label,
                       std::optional<double> composite_total = std::nullopt, std::string timestamp_utc = {});

/// Directory of snapshot files: `<store>/<projectId>/<snapshotId>.json`, plus
/// a rebuildable `<store>/index.json`. Writers serialize through an advisory
/// lock on `<store>/.lock`; files are created exclusively and never rewritten.
class SnapshotStore {
public:
    explicit SnapshotStore(std::filesystem::path root);

    /// Writes a new snapshot file and returns its id (timestamp + digest
    /// prefix, with a counter suffix on collision). Throws Error(store_unwritable).
    std::string save(Snapshot snapshot);

    /// Snapshots of one project (or all projects), sorted by (timestamp, id).
    /// Reads the snapshot files, not the index.
    [[nodiscard]] std::vector<Snapshot> list(const std::optional<std::string>& project_id = std::nullopt) const;

    /// Regenerates index.json from the snapshot files.
    void rebuild_index();

    [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }

private:
    std::filesystem::path root_;
};

struct TrendPoint {
    std::string timestamp_utc;
    std::string snapshot_id;
    std::string label;
    nlohmann::json value;
    bool incomparable{false};  ///< configHash differs from the latest snapshot
};

struct TrendSeries {
    std::string project_id;
    std::string metric;
    std::string reference_config_hash;
    std::vector<TrendPoint> points;  ///< ascending timestamp
};

/// Throws Error(no_snapshots) or Error(unknown_metric_key). With `force` the
/// incomparable flags are not raised.
TrendSeries trend(const SnapshotStore& store, const std::string& project_id, const std::string& metric,
                  bool force = false);

nlohmann::json trend_report(const TrendSeries& series, const std::string& generated_at);

} // namespace xmaint
