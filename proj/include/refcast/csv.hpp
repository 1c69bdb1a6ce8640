#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refcast::csv {

// Splits one logical CSV record. Fields may be double-quoted; embedded
// quotes are doubled ("") per RFC 4180. The input must span the whole
// record (multi-line quoted fields are handled by the reader below).
std::vector<std::string> split_record(std::string_view line);

// Reads logical records from CSV text, honoring quoted newlines.
// Returns one vector of fields per record; blank lines are skipped.
std::vector<std::vector<std::string>> read_records(std::string_view text);

// Quotes a field if it contains a comma, quote, or newline.
std::string quote_field(std::string_view field);

// Joins fields into one CSV line (no trailing newline).
std::string join_record(const std::vector<std::string>& fields);

// Locale-independent double parse (decimal point only). Rejects trailing
// garbage, NaN and infinities.
std::optional<double> parse_double(std::string_view s);

// Locale-independent integer parse.
std::optional<long long> parse_int(std::string_view s);

// Shortest round-trip decimal form of a double ("100", "0.1", "1.5e-07").
std::string num_to_string(double v);

std::string_view trim(std::string_view s);

} // namespace refcast::csv
