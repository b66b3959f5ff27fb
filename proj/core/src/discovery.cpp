#include "xmaint/discovery.hpp"

#include <algorithm>
#include <fnmatch.h>
#include <optional>

namespace xmaint {

namespace fs = std::filesystem;

bool glob_match(std::string_view pattern, std::string_view text) noexcept
{
    return ::fnmatch(std::string(pattern).c_str(), std::string(text).c_str(), 0) == 0;
}

namespace {

bool matches_any(const std::vector<std::string>& patterns, std::string_view name, std::string_view relative)
{
    return std::any_of(patterns.begin(), patterns.end(), [&](const std::string& p) {
        return glob_match(p, name) || glob_match(p, relative);
    });
}

std::string relative_string(const fs::path& p, const fs::path& root)
{
    return p.lexically_relative(root).generic_string();
}

} // namespace

Discovery discover_files(const fs::path& root, const Config& config)
{
    Discovery out;
    std::error_code ec;
    const auto status = fs::symlink_status(root, ec);
    if (ec || !fs::exists(status)) {
        throw Error(ErrorCode::unreadable_file, "cannot read project root " + root.string());
    }

    // Profile of a candidate file, or nothing when it is filtered out.
    auto select = [&](const fs::path& path, const std::string& relative) -> std::optional<std::string> {
        const auto name = path.filename().string();
        if (matches_any(config.excludes, name, relative)) return std::nullopt;
        if (!config.includes.empty() && !matches_any(config.includes, name, relative)) return std::nullopt;
        if (config.forced_profile) return *config.forced_profile;
        const auto* profile = config.registry.detect_or_null(path);
        if (!profile) return std::nullopt;
        return profile->id;
    };
    auto consider = [&](const fs::path& path, const std::string& relative, bool regular) {
        const auto profile = select(path, relative);
        if (!profile) return;
        if (regular) {
            out.files.push_back({path, relative, *profile});
        } else {
            out.diagnostics.push_back({ErrorCode::unreadable_file, relative, 0, "not a regular file; skipped"});
        }
    };

    if (!fs::is_directory(status)) {
        consider(root, root.filename().generic_string(), fs::is_regular_file(status));
        return out;
    }

    fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
    if (ec) {
        throw Error(ErrorCode::unreadable_file, "cannot list project root " + root.string() + ": " + ec.message());
    }
    for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
        if (ec) {
            out.diagnostics.push_back({ErrorCode::unreadable_file, relative_string(it->path(), root), 0, ec.message()});
            ec.clear();
            continue;
        }
        const auto& entry = *it;
        const auto relative = relative_string(entry.path(), root);
        const auto st = entry.symlink_status(ec);
        if (ec) {
            out.diagnostics.push_back({ErrorCode::unreadable_file, relative, 0, ec.message()});
            ec.clear();
            continue;
        }
        if (fs::is_symlink(st)) {
            it.disable_recursion_pending();
            continue;
        }
        if (fs::is_directory(st)) {
            if (matches_any(config.excludes, entry.path().filename().string(), relative)) {
                it.disable_recursion_pending();
            }
            continue;
        }
        consider(entry.path(), relative, fs::is_regular_file(st));
    }
    std::sort(out.files.begin(), out.files.end(),
              [](const SourceFile& a, const SourceFile& b) { return a.relative < b.relative; });
    std::sort(out.diagnostics.begin(), out.diagnostics.end(), diagnostic_less);
    return out;
}

} // namespace xmaint
