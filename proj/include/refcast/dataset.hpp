#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace refcast {

enum class Sector {
    hydro,
    road,
    bridge,
    tunnel,
    rail,
    wind,
    solar,
    thermal,
    transmission,
    nuclear,
    mining_oil_gas,
    other,
};

enum class Variable { cost, schedule };

std::string_view to_string(Sector s);
std::string_view to_string(Variable v);
std::optional<Sector> sector_from_string(std::string_view s);
std::optional<Variable> variable_from_string(std::string_view s);

// One completed project. Estimates are fixed at the decision to build;
// actuals are measured at commencement of operations, same constant-price
// basis as the estimate (deflation is the data supplier's job).
struct ProjectRecord {
    std::string id;
    std::string name;
    Sector sector = Sector::other;
    std::string country;    // ISO 3166-1 alpha-2, stored uppercase
    int decision_year = 0;
    std::optional<double> est_cost;
    std::optional<double> act_cost;
    std::optional<double> est_duration;  // months
    std::optional<double> act_duration;  // months
    std::string price_basis;

    bool operator==(const ProjectRecord&) const = default;

    // True when both estimate and actual are present for the variable.
    bool has(Variable v) const;
};

// A single overrun value: actual/estimated - 1, so +0.32 reads as a 32%
// overrun and the bound value > -1 holds for any positive actual.
struct OverrunObservation {
    double value = 0.0;
    Variable variable = Variable::cost;
    std::string project_id;
    Sector sector = Sector::other;
    std::string country;
    int decision_year = 0;
};

struct RejectedRow {
    std::size_t line;  // 1-based file line (header is line 1)
    std::string reason;
};

struct SourceMeta {
    std::string path;  // "<memory>" for in-memory parses
    std::size_t rows_read = 0;
    std::vector<RejectedRow> rejects;
    std::vector<std::string> annotations;  // filter descriptions etc.
};

struct Dataset {
    std::vector<ProjectRecord> records;
    SourceMeta source_meta;

    std::size_t size() const { return records.size(); }
};

// actual/estimate - 1. Throws DomainError naming the offending argument
// when either input is not strictly positive.
double compute_overrun(double estimate, double actual);

// One observation per record carrying both estimate and actual for the
// variable; file order preserved. Records lacking data are skipped.
std::vector<OverrunObservation> extract_observations(const Dataset& ds, Variable v);

// Number of records that do not contribute an observation for v, so that
// extract_observations(ds, v).size() + count_missing(ds, v) == ds.size().
std::size_t count_missing(const Dataset& ds, Variable v);

// Canonical CSV header, in order.
extern const std::vector<std::string> kCsvHeader;

// Parses the canonical CSV format. Invalid rows go to the reject log with
// their line number and reason. Missing/mismatched header or a duplicate
// id is fatal (FormatError).
Dataset parse_dataset(std::string_view text, std::string source_name = "<memory>");

// File variant; throws FormatError when the file cannot be read.
Dataset parse_dataset_file(const std::string& path);

// Serializes back to the canonical CSV format.
std::string to_csv(const Dataset& ds);

// Conjunctive record predicate over sector, country, and decision-year
// range. Empty filter matches everything.
struct Filter {
    std::optional<Sector> sector;
    std::optional<std::string> country;  // alpha-2, compared case-insensitively
    std::optional<int> year_from;        // inclusive
    std::optional<int> year_to;          // inclusive

    bool matches(const ProjectRecord& r) const;
    bool empty() const;
    std::string describe() const;
};

// Subset preserving order; source_meta is carried over and annotated with
// the filter description.
Dataset filter(const Dataset& ds, const Filter& f);

std::vector<double> values_of(std::span<const OverrunObservation> obs);

} // namespace refcast
