#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace entrokey::detail {

inline std::string csv_escape(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// Splits one record line into fields; supports quoted fields with "" escapes.
// Records are line-based: embedded newlines inside quotes are not supported.
// Returns false on unbalanced quotes.
inline bool csv_split(std::string_view line, std::vector<std::string>& fields) {
    fields.clear();
    std::string cur;
    bool in_quotes = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    i += 2;
                    continue;
                }
                in_quotes = false;
                ++i;
                continue;
            }
            cur.push_back(c);
            ++i;
            continue;
        }
        if (c == '"' && cur.empty()) {
            in_quotes = true;
            ++i;
            continue;
        }
        if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            ++i;
            continue;
        }
        cur.push_back(c);
        ++i;
    }
    if (in_quotes) return false;
    fields.push_back(std::move(cur));
    return true;
}

}  // namespace entrokey::detail
