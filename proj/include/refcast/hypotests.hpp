#pragma once

#include "refcast/dataset.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace refcast {

enum class TestMethod { exact_enumeration, normal_approx };

std::string_view to_string(TestMethod m);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    TestMethod method = TestMethod::exact_enumeration;
    bool two_sided = true;
    std::string stars;
    std::size_t zeros_dropped = 0;  // signed-rank: values equal to mu0
};

// "***" p < 0.001; "**" p < 0.01; "*" p < 0.05; strict inequalities.
std::string significance_stars(double p);

// Two-sample Wilcoxon / Mann-Whitney with midranks for ties. Exact
// two-sided p by enumeration of rank assignments when |a|+|b| <= 14 and
// there are no ties, otherwise normal approximation with tie-corrected
// variance and continuity correction. Statistic is U for sample a.
TestResult rank_sum_test(std::span<const double> a, std::span<const double> b);

// One-sample Wilcoxon signed-rank against mu0. Values equal to mu0 are
// dropped (and counted). Exact p by sign enumeration when n <= 12 and the
// absolute deviations are tie-free, else tie-corrected normal
// approximation. Statistic is W+. All values equal to mu0 degenerates to
// statistic 0, p = 1.
TestResult signed_rank_test(std::span<const double> x, double mu0 = 0.0);

// Exact two-sided binomial test by minimum-likelihood inclusion: sums
// pmf(i; n, p0) over every i whose pmf does not exceed pmf(k) by more
// than 1e-12 relative slack. Log-space pmf keeps it exact for all n.
TestResult binomial_test(std::size_t k, std::size_t n, double p0 = 0.5);

// One row of the "error"-explanation battery for one variable.
struct ErrorExplanationRow {
    Variable variable = Variable::cost;
    std::size_t n = 0;
    double mean = 0.0;
    TestResult signed_rank;   // does the error center on zero?
    double freq_overrun = 0.0;
    TestResult binomial;      // are overruns as frequent as underruns?
};

struct ErrorExplanationReport {
    std::vector<ErrorExplanationRow> rows;
    std::vector<std::string> notes;  // variables omitted for lack of data
};

ErrorExplanationReport error_explanation_test(const Dataset& ds);

enum class Grouping { by_sector, by_country };

// Group statistics for one variable; vs_baseline is absent on the
// baseline row.
struct GroupCell {
    std::size_t n = 0;
    double mean = 0.0;
    double freq_overrun = 0.0;
    std::optional<TestResult> vs_baseline;
};

struct GroupRow {
    std::string group;
    std::size_t records = 0;  // record count (the paper's per-row n)
    std::optional<GroupCell> cost;
    std::optional<GroupCell> schedule;
};

struct GroupComparison {
    std::string baseline;
    Grouping grouping = Grouping::by_sector;
    std::vector<GroupRow> rows;  // baseline first, then first-appearance order
    std::vector<std::string> notes;
};

// by_sector: one group per sector present in the dataset.
// by_country: baseline country versus "Rest of the world".
// Throws DomainError when the baseline group is unknown, empty, or the
// only group.
GroupComparison compare_groups(const Dataset& ds, Grouping grouping,
                               const std::string& baseline);

namespace detail {

// The normal-approximation paths regardless of sample size, so their
// quality can be measured against the exact enumerations.
TestResult rank_sum_normal_approx(std::span<const double> a, std::span<const double> b);
TestResult signed_rank_normal_approx(std::span<const double> x, double mu0 = 0.0);

} // namespace detail

} // namespace refcast
