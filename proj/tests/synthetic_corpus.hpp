#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "xmaint/analysis.hpp"

namespace xmaint::testing {

/// Deterministic mixed-language source tree of at least `target_loc` code lines,
/// split over c-family, python and cobol-like files with some copied functions.
inline std::vector<SourceText> synthetic_corpus(int target_loc, unsigned seed = 42)
{
    std::mt19937 rng(seed);
    std::vector<SourceText> files;
    int loc = 0;
    int file_no = 0;
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    std::vector<std::string> c_bodies;
    while (loc < target_loc) {
        const int kind = file_no % 3;
        std::string text;
        int lines = 0;
        const int functions = 5 + pick(6);
        if (kind == 0) {
            text += "/* generated module " + std::to_string(file_no) + " */\n#include <stdio.h>\n\n";
            lines += 1;
            for (int f = 0; f < functions; ++f) {
                if (!c_bodies.empty() && pick(5) == 0) {
                    text += c_bodies[static_cast<std::size_t>(pick(static_cast<int>(c_bodies.size())))];
                    lines += 9;
                    continue;
                }
                std::string body = "int fn" + std::to_string(file_no) + "x" + std::to_string(f) + "(int a, int b) {\n";
                body += "    int total = 0; // running sum\n";
                body += "    for (int i = 0; i < a; ++i) {\n";
                body += "        if (i % " + std::to_string(2 + pick(5)) + " == 0 && b > i) {\n";
                body += "            total += i * " + std::to_string(pick(100)) + ";\n";
                body += "        }\n";
                body += "    }\n";
                body += "    return total > b ? total : b;\n";
                body += "}\n";
                c_bodies.push_back(body);
                text += body;
                lines += 9;
            }
            files.push_back({"src/c/module" + std::to_string(file_no) + ".c", "c-family", text});
        } else if (kind == 1) {
            text += "\"\"\"Generated module " + std::to_string(file_no) + ".\"\"\"\n\n";
            lines += 1;
            for (int f = 0; f < functions; ++f) {
                text += "def fn_" + std::to_string(file_no) + "_" + std::to_string(f) + "(items, limit):\n";
                text += "    total = 0  # running sum\n";
                text += "    for item in items:\n";
                text += "        if item > limit or item < -" + std::to_string(pick(50)) + ":\n";
                text += "            total += item * " + std::to_string(pick(100)) + "\n";
                text += "        elif item == 0:\n";
                text += "            continue\n";
                text += "    return total\n\n";
                lines += 8;
            }
            files.push_back({"src/py/module" + std::to_string(file_no) + ".py", "python", text});
        } else {
            text += "*> generated module " + std::to_string(file_no) + "\n";
            for (int f = 0; f < functions; ++f) {
                text += "PROCEDURE P" + std::to_string(file_no) + "-" + std::to_string(f) + ".\n";
                text += "    MOVE 0 TO WS-TOTAL\n";
                text += "    PERFORM VARYING WS-I FROM 1 BY 1 UNTIL WS-I > WS-N\n";
                text += "        IF WS-ITEM (WS-I) > " + std::to_string(pick(90)) + "\n";
                text += "            ADD WS-ITEM (WS-I) TO WS-TOTAL\n";
                text += "        END-IF\n";
                text += "    END-PERFORM.\n";
                text += "END-PROCEDURE.\n";
                lines += 8;
            }
            files.push_back({"src/cbl/module" + std::to_string(file_no) + ".cbl", "cobol-like", text});
        }
        loc += lines;
        ++file_no;
    }
    return files;
}

inline void write_corpus(const std::filesystem::path& root, const std::vector<SourceText>& files)
{
    for (const auto& f : files) {
        const auto path = root / f.path;
        std::filesystem::create_directories(path.parent_path());
        std::ofstream(path, std::ios::binary) << f.content;
    }
}

} // namespace xmaint::testing
