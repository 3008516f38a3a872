#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace discourse::csv {

/// RFC 4180 escaping: quote when the field contains a comma, quote, CR or LF;
/// embedded quotes are doubled. UTF-8 passes through untouched.
std::string escape(std::string_view field);

/// Shortest round-trip decimal form (std::to_chars); deterministic and
/// locale independent.
std::string format_double(double v);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Parses one CSV record with RFC 4180 quoting. Returns false on a malformed
/// record (unterminated quote, stray quote inside an unquoted field).
bool parse_row(std::string_view line, std::vector<std::string>& fields);

}  // namespace discourse::csv
