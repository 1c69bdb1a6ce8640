#include "render.hpp"

#include "refcast/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace refcast::cli {

std::optional<Format> format_from_string(std::string_view s) {
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "jsonl") return Format::jsonl;
    return std::nullopt;
}

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%+.0f%%", v * 100.0);
    return buf;
}

std::string pct_plain(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f%%", v * 100.0);
    return buf;
}

std::string p_text(double p) {
    if (p < 0.001) return "p < 0.001";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "p = %.3f", p);
    return buf;
}

std::string TextTable::render() const {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());

    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out += cells[c];
            if (c + 1 < cells.size())
                out += std::string(widths[c] - cells[c].size() + 2, ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + "\n";
    };

    std::string out = line(header);
    for (const auto& row : rows) out += line(row);
    return out;
}

Report::Report(std::string command, Format format)
    : command_(std::move(command)), format_(format) {}

void Report::meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

void Report::warn(const std::string& message) { warnings_.push_back(message); }

void Report::row(nlohmann::ordered_json r) {
    nlohmann::ordered_json full;
    full["command"] = command_;
    for (auto& [k, v] : r.items()) full[k] = std::move(v);
    if (!full.contains("variable")) full["variable"] = "";
    rows_.push_back(std::move(full));
}

namespace {

std::string json_scalar_to_csv(const nlohmann::ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return refcast::csv::num_to_string(v.get<double>());
    return v.dump();  // arrays nest as JSON text
}

} // namespace

void Report::emit(std::ostream& out, std::ostream& err) const {
    switch (format_) {
        case Format::text: {
            out << "# refcast " << command_ << "\n";
            for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << "\n";
            for (const auto& w : warnings_) out << "# warning: " << w << "\n";
            if (!text_.empty()) out << "\n" << text_;
            break;
        }
        case Format::csv: {
            for (const auto& [k, v] : meta_) err << "# " << k << ": " << v << "\n";
            for (const auto& w : warnings_) err << "# warning: " << w << "\n";
            std::vector<std::string> columns;
            for (const auto& r : rows_)
                for (const auto& [k, v] : r.items())
                    if (std::find(columns.begin(), columns.end(), k) == columns.end())
                        columns.push_back(k);
            out << refcast::csv::join_record(columns) << "\n";
            for (const auto& r : rows_) {
                std::vector<std::string> cells;
                for (const auto& c : columns)
                    cells.push_back(r.contains(c) ? json_scalar_to_csv(r.at(c)) : "");
                out << refcast::csv::join_record(cells) << "\n";
            }
            break;
        }
        case Format::jsonl: {
            nlohmann::ordered_json meta;
            meta["command"] = command_;
            for (const auto& [k, v] : meta_) meta[k] = v;
            out << meta.dump() << "\n";
            for (const auto& w : warnings_) {
                nlohmann::ordered_json jw;
                jw["command"] = command_;
                jw["warning"] = w;
                out << jw.dump() << "\n";
            }
            for (const auto& r : rows_) out << r.dump() << "\n";
            break;
        }
    }
}

} // namespace refcast::cli
