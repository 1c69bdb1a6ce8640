#pragma once

#include "refcast/dataset.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace refcast {

// A validated sample of past, similar projects: the empirical risk
// distribution a forecast is read from.
struct ReferenceClass {
    std::vector<double> values;  // sorted ascending
    Variable variable = Variable::cost;
    std::string provenance;

    std::size_t n() const { return values.size(); }
    // Below the "20-30 projects to get started" guidance; warns, never blocks.
    bool small_sample() const { return values.size() < 20; }
};

// Filters the dataset, extracts the variable's observations, and sorts.
// Throws DomainError "empty reference class" when nothing survives.
ReferenceClass build_reference_class(const Dataset& ds, const Filter& f, Variable v);

// Direct construction from known values (worked examples, tests).
ReferenceClass make_reference_class(std::vector<double> values, Variable v,
                                    std::string provenance);

// Fraction of class values <= x (right-continuous step function).
double ecdf(const ReferenceClass& rc, double x);

struct UpliftResult {
    double certainty = 0.0;
    double uplift = 0.0;
    std::optional<double> adjusted_uplift;  // present iff evidence nonempty
    std::string adjustment_evidence;
    std::string note;  // caution when an adjustment lowers the uplift
};

// Lower empirical quantile: the smallest class value v with
// ecdf(rc, v) >= certainty. No interpolation. certainty in (0, 1].
UpliftResult uplift(const ReferenceClass& rc, double certainty);

// Inverse reading: the certainty achieved by a given uplift.
double certainty_for_uplift(const ReferenceClass& rc, double u);

// Multiplies the uplift by factor. Refuses (DomainError) without evidence
// text; a factor below 1 gets a caution note against reintroducing
// optimism.
UpliftResult adjust_uplift(const UpliftResult& base, double factor,
                           const std::string& evidence);

// base_estimate * (1 + uplift). base_estimate > 0, uplift > -1.
double apply_uplift(double base_estimate, double uplift);

// One value per row, provenance in '#'-prefixed comment lines.
std::string to_csv(const ReferenceClass& rc);

// (overrun, cumulative frequency) step points, one per distinct value.
std::vector<std::pair<double, double>> cumulative_frequency_curve(const ReferenceClass& rc);

// The same curve with axes swapped: (certainty, required uplift).
std::vector<std::pair<double, double>> uplift_curve(const ReferenceClass& rc);

} // namespace refcast
