#include "xmaint/duplication.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "xmaint/error.hpp"

namespace xmaint {

namespace {

constexpr std::string_view kIdentifierPlaceholder = "$ID";

struct Position {
    std::uint32_t file;
    std::uint32_t index;
};

class CloneFinder {
public:
    CloneFinder(std::span<const NormalizedFile> files, std::size_t min_tokens) : min_tokens_(min_tokens)
    {
        order_.resize(files.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::sort(order_.begin(), order_.end(),
                  [&](std::size_t x, std::size_t y) { return files[x].path < files[y].path; });
        std::map<std::pair<TokenKind, std::string_view>, std::uint32_t> ids;
        for (auto f : order_) {
            files_.push_back(&files[f]);
            auto& syms = symbols_.emplace_back();
            syms.reserve(files[f].tokens.size());
            for (const auto& t : files[f].tokens) {
                auto [it, inserted] = ids.emplace(std::make_pair(t.kind, std::string_view(t.text)),
                                                  static_cast<std::uint32_t>(ids.size()));
                syms.push_back(it->second);
            }
        }
    }

    std::vector<CloneBlock> run()
    {
        std::unordered_map<std::uint64_t, std::vector<Position>> buckets;
        constexpr std::uint64_t kBase = 1099511628211ULL;
        std::uint64_t top_power = 1;
        for (std::size_t i = 1; i < min_tokens_; ++i) top_power *= kBase;

        for (std::uint32_t f = 0; f < symbols_.size(); ++f) {
            const auto& s = symbols_[f];
            if (s.size() < min_tokens_) continue;
            std::uint64_t h = 0;
            for (std::size_t i = 0; i < min_tokens_; ++i) h = h * kBase + (s[i] + 1);
            for (std::size_t start = 0;; ++start) {
                buckets[h].push_back({f, static_cast<std::uint32_t>(start)});
                const auto next = start + min_tokens_;
                if (next >= s.size()) break;
                h = (h - (s[start] + 1) * top_power) * kBase + (s[next] + 1);
            }
        }

        for (const auto& [hash, positions] : buckets) {
            if (positions.size() < 2) continue;
            for (std::size_t i = 0; i < positions.size(); ++i) {
                for (std::size_t j = i + 1; j < positions.size(); ++j) {
                    consider(positions[i], positions[j]);
                }
            }
        }
        std::sort(blocks_.begin(), blocks_.end(), clone_block_less);
        return std::move(blocks_);
    }

private:
    [[nodiscard]] std::uint32_t sym(Position p) const { return symbols_[p.file][p.index]; }

    void consider(Position p, Position q)
    {
        // positions inside a bucket are generated in (file, index) order
        const bool left_maximal = p.index == 0 || q.index == 0 ||
                                  sym({p.file, p.index - 1}) != sym({q.file, q.index - 1});
        if (!left_maximal) return;
        const auto& sp = symbols_[p.file];
        const auto& sq = symbols_[q.file];
        std::size_t run = 0;
        while (p.index + run < sp.size() && q.index + run < sq.size() && sp[p.index + run] == sq[q.index + run]) {
            ++run;
        }
        if (run < min_tokens_) return;  // hash collision or short run
        if (p.file == q.file && p.index + run > q.index) {
            const std::size_t offset = q.index - p.index;
            for (std::size_t k = 0; k * offset < run; ++k) {
                const std::size_t len = std::min(offset, run - k * offset);
                if (len >= min_tokens_) {
                    emit(p.file, p.index + k * offset, q.file, q.index + k * offset, len);
                }
            }
        } else {
            emit(p.file, p.index, q.file, q.index, run);
        }
    }

    void emit(std::uint32_t fa, std::size_t a, std::uint32_t fb, std::size_t b, std::size_t len)
    {
        const auto& ta = files_[fa]->tokens;
        const auto& tb = files_[fb]->tokens;
        CloneBlock block;
        block.a = {files_[fa]->path, a, ta[a].line};
        block.b = {files_[fb]->path, b, tb[b].line};
        block.length_tokens = len;
        block.length_lines_a = ta[a + len - 1].end_line - ta[a].line + 1;
        block.length_lines_b = tb[b + len - 1].end_line - tb[b].line + 1;
        blocks_.push_back(std::move(block));
    }

    std::size_t min_tokens_;
    std::vector<std::size_t> order_;
    std::vector<const NormalizedFile*> files_;
    std::vector<std::vector<std::uint32_t>> symbols_;
    std::vector<CloneBlock> blocks_;
};

} // namespace

std::string_view to_string(NormalizationMode mode) noexcept
{
    return mode == NormalizationMode::exact ? "exact" : "identifier-blind";
}

NormalizationMode parse_normalization_mode(std::string_view text)
{
    if (text == "exact") return NormalizationMode::exact;
    if (text == "identifier-blind") return NormalizationMode::identifier_blind;
    throw Error(ErrorCode::invalid_config, "unknown duplication mode '" + std::string(text) + "'");
}

std::vector<NormalizedToken> normalize_tokens(std::span<const Token> tokens, NormalizationMode mode)
{
    std::vector<NormalizedToken> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.is_comment()) continue;
        NormalizedToken n;
        n.kind = t.kind;
        n.text = (mode == NormalizationMode::identifier_blind && t.kind == TokenKind::identifier)
                     ? std::string(kIdentifierPlaceholder)
                     : t.text;
        n.source_index = i;
        n.line = t.line;
        n.end_line = t.end_line;
        out.push_back(std::move(n));
    }
    return out;
}

bool clone_block_less(const CloneBlock& x, const CloneBlock& y)
{
    return std::tie(x.a.file, x.a.start_token, x.b.file, x.b.start_token, x.length_tokens) <
           std::tie(y.a.file, y.a.start_token, y.b.file, y.b.start_token, y.length_tokens);
}

std::vector<CloneBlock> find_clone_blocks(std::span<const NormalizedFile> files, std::size_t min_tokens)
{
    if (min_tokens < 3) {
        throw Error(ErrorCode::invalid_config, "min_tokens must be at least 3");
    }
    return CloneFinder(files, min_tokens).run();
}

DuplicationRatios duplication_ratios(std::span<const CloneBlock> blocks, std::span<const NormalizedFile> files,
                                     std::size_t total_code_lines)
{
    DuplicationRatios r;
    r.total_lines = total_code_lines;
    std::map<std::string_view, const NormalizedFile*> by_path;
    std::map<std::string_view, std::vector<bool>> covered;
    for (const auto& f : files) {
        r.total_tokens += f.tokens.size();
        by_path[f.path] = &f;
        covered[f.path].assign(f.tokens.size(), false);
    }
    auto mark = [&](const CloneOccurrence& occ, std::size_t len) {
        auto it = covered.find(occ.file);
        if (it == covered.end()) return;
        auto& bits = it->second;
        for (std::size_t i = occ.start_token; i < occ.start_token + len && i < bits.size(); ++i) bits[i] = true;
    };
    for (const auto& b : blocks) {
        mark(b.a, b.length_tokens);
        mark(b.b, b.length_tokens);
    }
    for (const auto& [path, bits] : covered) {
        const auto& toks = by_path[path]->tokens;
        std::set<int> lines;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (!bits[i]) continue;
            ++r.duplicated_tokens;
            for (int l = toks[i].line; l <= toks[i].end_line; ++l) lines.insert(l);
        }
        r.duplicated_lines += lines.size();
    }
    r.duplicated_lines = std::min(r.duplicated_lines, r.total_lines);
    r.token_ratio = r.total_tokens == 0 ? 0.0 : static_cast<double>(r.duplicated_tokens) / static_cast<double>(r.total_tokens);
    r.line_ratio = r.total_lines == 0 ? 0.0 : static_cast<double>(r.duplicated_lines) / static_cast<double>(r.total_lines);
    return r;
}

DuplicationReport analyze_duplication(std::span<const NormalizedFile> files, std::size_t total_code_lines,
                                      std::size_t min_tokens, NormalizationMode mode)
{
    DuplicationReport report;
    report.min_tokens = min_tokens;
    report.mode = mode;
    report.blocks = find_clone_blocks(files, min_tokens);
    report.ratios = duplication_ratios(report.blocks, files, total_code_lines);
    return report;
}

} // namespace xmaint
