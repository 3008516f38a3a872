#include "discourse/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace discourse::csv {

std::string escape(std::string_view field) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
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

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << escape(fields[i]);
    }
    out.put('\n');
}

bool parse_row(std::string_view line, std::vector<std::string>& fields) {
    fields.clear();
    std::string cur;
    bool in_quotes = false;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && line[i + 1] == '"') {
                    cur.push_back('"');
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                cur.push_back(c);
                ++i;
            }
        } else {
            if (c == '"') {
                if (!cur.empty()) return false;
                in_quotes = true;
                ++i;
            } else if (c == ',') {
                fields.push_back(std::move(cur));
                cur.clear();
                ++i;
            } else {
                cur.push_back(c);
                ++i;
            }
        }
    }
    if (in_quotes) return false;
    fields.push_back(std::move(cur));
    return true;
}

}  // namespace discourse::csv
