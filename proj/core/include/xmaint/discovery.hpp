#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "xmaint/config.hpp"
#include "xmaint/error.hpp"

namespace xmaint {

struct SourceFile {
    std::filesystem::path absolute;
    std::string relative;  ///< '/'-separated, relative to the project root
    std::string profile_id;
};

struct Discovery {
    std::vector<SourceFile> files;  ///< sorted by relative path
    Diagnostics diagnostics;
};

/// Recursive walk below `root` (or the single file `root`). Symlinks are not
/// followed. A directory whose name matches an exclude pattern is pruned; a
/// file is kept when it matches no exclude, matches an include (if any), and
/// has a profile (the forced one, or by extension). Throws
/// Error(unreadable_file) when the root does not exist or cannot be listed.
Discovery discover_files(const std::filesystem::path& root, const Config& config);

/// fnmatch-style glob (`*`, `?`, `[...]`); `*` also crosses '/'.
bool glob_match(std::string_view pattern, std::string_view text) noexcept;

} // namespace xmaint
