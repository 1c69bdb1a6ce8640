#pragma once

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refcast::cli {

enum class Format { text, csv, jsonl };

std::optional<Format> format_from_string(std::string_view s);

// Exit codes, stable across platforms.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;       // usage or configuration error
inline constexpr int kValidation = 2;  // dataset failed validation
inline constexpr int kBreach = 3;      // analytic breach flag raised

// "+96%" (signed, zero decimals) and "77%" (unsigned).
std::string pct(double v);
std::string pct_plain(double v);

// "p < 0.001" below the smallest star threshold, else "p = 0.042".
std::string p_text(double p);

// Left-aligned monospace table with two-space gutters.
struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string render() const;
};

// Collects one command's output and emits it in the selected format.
// Text mode prints meta/warning comment lines then the human body; csv
// mode prints machine rows and routes meta/warnings to stderr; jsonl
// prints a meta object, warning objects, then one object per row.
class Report {
public:
    Report(std::string command, Format format);

    void meta(const std::string& key, const std::string& value);
    void warn(const std::string& message);
    void row(nlohmann::ordered_json r);
    std::string& text() { return text_; }

    const std::vector<std::string>& warnings() const { return warnings_; }

    void emit(std::ostream& out, std::ostream& err) const;

private:
    std::string command_;
    Format format_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> warnings_;
    std::vector<nlohmann::ordered_json> rows_;
    std::string text_;
};

} // namespace refcast::cli
