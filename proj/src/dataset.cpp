#include "refcast/dataset.hpp"

#include "refcast/csv.hpp"
#include "refcast/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace refcast {

namespace {

constexpr std::array<std::pair<Sector, std::string_view>, 12> kSectorNames = {{
    {Sector::hydro, "hydro"},
    {Sector::road, "road"},
    {Sector::bridge, "bridge"},
    {Sector::tunnel, "tunnel"},
    {Sector::rail, "rail"},
    {Sector::wind, "wind"},
    {Sector::solar, "solar"},
    {Sector::thermal, "thermal"},
    {Sector::transmission, "transmission"},
    {Sector::nuclear, "nuclear"},
    {Sector::mining_oil_gas, "mining_oil_gas"},
    {Sector::other, "other"},
}};

int current_year() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    return tm.tm_year + 1900;
}

std::string upper2(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

bool valid_country(std::string_view s) {
    return s.size() == 2 && std::isalpha(static_cast<unsigned char>(s[0])) &&
           std::isalpha(static_cast<unsigned char>(s[1]));
}

std::string opt_to_field(const std::optional<double>& v) {
    return v ? csv::num_to_string(*v) : std::string();
}

} // namespace

std::string_view to_string(Sector s) {
    for (const auto& [sec, name] : kSectorNames)
        if (sec == s) return name;
    return "other";
}

std::string_view to_string(Variable v) {
    return v == Variable::cost ? "cost" : "schedule";
}

std::optional<Sector> sector_from_string(std::string_view s) {
    for (const auto& [sec, name] : kSectorNames)
        if (name == s) return sec;
    return std::nullopt;
}

std::optional<Variable> variable_from_string(std::string_view s) {
    if (s == "cost") return Variable::cost;
    if (s == "schedule") return Variable::schedule;
    return std::nullopt;
}

bool ProjectRecord::has(Variable v) const {
    if (v == Variable::cost) return est_cost.has_value() && act_cost.has_value();
    return est_duration.has_value() && act_duration.has_value();
}

double compute_overrun(double estimate, double actual) {
    if (!(estimate > 0.0))
        throw DomainError("compute_overrun: estimate must be positive, got " +
                          csv::num_to_string(estimate));
    if (!(actual > 0.0))
        throw DomainError("compute_overrun: actual must be positive, got " +
                          csv::num_to_string(actual));
    return actual / estimate - 1.0;
}

std::vector<OverrunObservation> extract_observations(const Dataset& ds, Variable v) {
    std::vector<OverrunObservation> out;
    out.reserve(ds.records.size());
    for (const auto& r : ds.records) {
        if (!r.has(v)) continue;
        double est = (v == Variable::cost) ? *r.est_cost : *r.est_duration;
        double act = (v == Variable::cost) ? *r.act_cost : *r.act_duration;
        out.push_back({compute_overrun(est, act), v, r.id, r.sector, r.country,
                       r.decision_year});
    }
    return out;
}

std::size_t count_missing(const Dataset& ds, Variable v) {
    std::size_t missing = 0;
    for (const auto& r : ds.records)
        if (!r.has(v)) ++missing;
    return missing;
}

const std::vector<std::string> kCsvHeader = {
    "id",       "name",          "sector",
    "country",  "decision_year", "est_cost",
    "act_cost", "est_duration_months", "act_duration_months",
    "price_basis",
};

namespace {

// Parses one optional positive field. Returns false (with reason set) on a
// malformed or non-positive value.
bool parse_positive(const std::string& field, const char* label, bool is_estimate,
                    std::optional<double>& out, std::string& reason) {
    if (csv::trim(field).empty()) {
        out = std::nullopt;
        return true;
    }
    auto v = csv::parse_double(field);
    if (!v) {
        reason = std::string("invalid number in ") + label;
        return false;
    }
    if (*v <= 0.0) {
        reason = is_estimate ? "non-positive estimate" : "non-positive actual";
        return false;
    }
    out = *v;
    return true;
}

} // namespace

Dataset parse_dataset(std::string_view text, std::string source_name) {
    auto records = csv::read_records(text);
    if (records.empty() || records[0].empty())
        throw FormatError(source_name + ": missing header row");
    const auto& header = records[0];
    if (header.size() != kCsvHeader.size())
        throw FormatError(source_name + ": expected " + std::to_string(kCsvHeader.size()) +
                          " header columns, got " + std::to_string(header.size()));
    for (std::size_t i = 0; i < kCsvHeader.size(); ++i) {
        if (std::string(csv::trim(header[i])) != kCsvHeader[i])
            throw FormatError(source_name + ": header column " + std::to_string(i + 1) +
                              " must be '" + kCsvHeader[i] + "', got '" + header[i] + "'");
    }

    Dataset ds;
    ds.source_meta.path = std::move(source_name);
    const int year_max = current_year();
    std::unordered_set<std::string> seen_ids;

    for (std::size_t idx = 1; idx < records.size(); ++idx) {
        const auto& row = records[idx];
        const std::size_t line = idx + 1;
        if (row.empty()) continue;  // blank line
        ds.source_meta.rows_read++;

        auto reject = [&](std::string reason) {
            ds.source_meta.rejects.push_back({line, std::move(reason)});
        };

        if (row.size() != kCsvHeader.size()) {
            reject("wrong field count (" + std::to_string(row.size()) + ")");
            continue;
        }

        ProjectRecord r;
        r.id = std::string(csv::trim(row[0]));
        if (r.id.empty()) {
            reject("missing id");
            continue;
        }
        if (seen_ids.count(r.id))
            throw FormatError(ds.source_meta.path + ": duplicate id '" + r.id + "' at line " +
                              std::to_string(line));
        r.name = row[1];

        auto sec = sector_from_string(csv::trim(row[2]));
        if (!sec) {
            reject("unknown sector '" + row[2] + "'");
            continue;
        }
        r.sector = *sec;

        std::string_view country = csv::trim(row[3]);
        if (!valid_country(country)) {
            reject("invalid country '" + row[3] + "' (ISO alpha-2 required)");
            continue;
        }
        r.country = upper2(country);

        auto year = csv::parse_int(row[4]);
        if (!year || *year < 1900 || *year > year_max) {
            reject("invalid decision_year '" + row[4] + "'");
            continue;
        }
        r.decision_year = static_cast<int>(*year);

        std::string reason;
        if (!parse_positive(row[5], "est_cost", true, r.est_cost, reason) ||
            !parse_positive(row[6], "act_cost", false, r.act_cost, reason) ||
            !parse_positive(row[7], "est_duration_months", true, r.est_duration, reason) ||
            !parse_positive(row[8], "act_duration_months", false, r.act_duration, reason)) {
            reject(std::move(reason));
            continue;
        }
        if (!r.est_cost && !r.est_duration) {
            reject("missing both estimates");
            continue;
        }
        r.price_basis = row[9];

        seen_ids.insert(r.id);
        ds.records.push_back(std::move(r));
    }
    return ds;
}

Dataset parse_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), path);
}

std::string to_csv(const Dataset& ds) {
    std::string out = csv::join_record(kCsvHeader) + "\n";
    for (const auto& r : ds.records) {
        out += csv::join_record({
            r.id,
            r.name,
            std::string(to_string(r.sector)),
            r.country,
            std::to_string(r.decision_year),
            opt_to_field(r.est_cost),
            opt_to_field(r.act_cost),
            opt_to_field(r.est_duration),
            opt_to_field(r.act_duration),
            r.price_basis,
        });
        out += '\n';
    }
    return out;
}

bool Filter::matches(const ProjectRecord& r) const {
    if (sector && r.sector != *sector) return false;
    if (country && upper2(*country) != r.country) return false;
    if (year_from && r.decision_year < *year_from) return false;
    if (year_to && r.decision_year > *year_to) return false;
    return true;
}

bool Filter::empty() const {
    return !sector && !country && !year_from && !year_to;
}

std::string Filter::describe() const {
    if (empty()) return "all records";
    std::string out;
    auto add = [&](std::string part) {
        if (!out.empty()) out += ", ";
        out += std::move(part);
    };
    if (sector) add("sector=" + std::string(to_string(*sector)));
    if (country) add("country=" + upper2(*country));
    if (year_from || year_to) {
        std::string lo = year_from ? std::to_string(*year_from) : "*";
        std::string hi = year_to ? std::to_string(*year_to) : "*";
        add("decision_year " + lo + ".." + hi);
    }
    return out;
}

Dataset filter(const Dataset& ds, const Filter& f) {
    Dataset out;
    out.source_meta = ds.source_meta;
    out.source_meta.annotations.push_back("filter: " + f.describe());
    for (const auto& r : ds.records)
        if (f.matches(r)) out.records.push_back(r);
    return out;
}

std::vector<double> values_of(std::span<const OverrunObservation> obs) {
    std::vector<double> v;
    v.reserve(obs.size());
    for (const auto& o : obs) v.push_back(o.value);
    return v;
}

} // namespace refcast
