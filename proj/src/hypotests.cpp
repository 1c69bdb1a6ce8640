#include "refcast/hypotests.hpp"

#include "refcast/errors.hpp"
#include "refcast/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

namespace refcast {

std::string_view to_string(TestMethod m) {
    return m == TestMethod::exact_enumeration ? "exact_enumeration" : "normal_approx";
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

namespace {

// Midranks over a pooled sample. Returns per-element ranks (1-based, ties
// averaged) and the tie-group sizes.
struct Ranking {
    std::vector<double> ranks;
    std::vector<std::size_t> tie_groups;
    bool has_ties = false;
};

Ranking midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    Ranking r;
    r.ranks.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const std::size_t count = j - i + 1;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) r.ranks[order[k]] = rank;
        r.tie_groups.push_back(count);
        if (count > 1) r.has_ties = true;
        i = j + 1;
    }
    return r;
}

double normal_two_sided_p(double z) {
    return std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
}

// z with continuity correction; |diff| within the correction collapses to 0.
double corrected_z(double diff, double sd) {
    if (sd <= 0.0) return 0.0;
    if (std::fabs(diff) <= 0.5) return 0.0;
    return (diff - (diff > 0 ? 0.5 : -0.5)) / sd;
}

double two_sided_from_tails(double lo_count, double hi_count, double total) {
    const double tail = std::min(lo_count, hi_count) / total;
    return std::min(1.0, 2.0 * tail);
}

double log_choose(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

} // namespace

namespace {

struct RankSumSetup {
    std::size_t na = 0, nb = 0, n = 0;
    double rank_sum_a = 0.0;
    double u = 0.0;
    Ranking ranking;
};

RankSumSetup rank_sum_setup(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DomainError("rank_sum_test: empty sample");
    RankSumSetup s;
    s.na = a.size();
    s.nb = b.size();
    s.n = s.na + s.nb;
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    s.ranking = midranks(pooled);
    for (std::size_t i = 0; i < s.na; ++i) s.rank_sum_a += s.ranking.ranks[i];
    s.u = s.rank_sum_a - static_cast<double>(s.na) * (static_cast<double>(s.na) + 1.0) / 2.0;
    return s;
}

TestResult rank_sum_exact(const RankSumSetup& s) {
    // Distribution of the a-sample rank sum over all C(n, na) subsets of
    // the integer ranks 1..n, by subset-sum counting.
    const std::size_t max_sum = s.n * (s.n + 1) / 2;
    std::vector<std::vector<std::uint64_t>> ways(
        s.na + 1, std::vector<std::uint64_t>(max_sum + 1, 0));
    ways[0][0] = 1;
    for (std::size_t rank = 1; rank <= s.n; ++rank)
        for (std::size_t j = std::min(s.na, rank); j >= 1; --j)
            for (std::size_t sum = max_sum; sum >= rank; --sum)
                ways[j][sum] += ways[j - 1][sum - rank];

    const auto w_obs = static_cast<std::size_t>(std::llround(s.rank_sum_a));
    std::uint64_t lo = 0, hi = 0, total = 0;
    for (std::size_t sum = 0; sum <= max_sum; ++sum) {
        total += ways[s.na][sum];
        if (sum <= w_obs) lo += ways[s.na][sum];
        if (sum >= w_obs) hi += ways[s.na][sum];
    }
    TestResult res;
    res.statistic = s.u;
    res.p_value = two_sided_from_tails(static_cast<double>(lo), static_cast<double>(hi),
                                       static_cast<double>(total));
    res.method = TestMethod::exact_enumeration;
    res.stars = significance_stars(res.p_value);
    return res;
}

TestResult rank_sum_approx(const RankSumSetup& s) {
    const double dn = static_cast<double>(s.n);
    const double mean = static_cast<double>(s.na) * static_cast<double>(s.nb) / 2.0;
    double tie_term = 0.0;
    for (std::size_t t : s.ranking.tie_groups) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double var = static_cast<double>(s.na) * static_cast<double>(s.nb) / 12.0 *
                       ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    const double z = corrected_z(s.u - mean, var > 0 ? std::sqrt(var) : 0.0);
    TestResult res;
    res.statistic = s.u;
    res.p_value = var > 0 ? normal_two_sided_p(z) : 1.0;
    res.method = TestMethod::normal_approx;
    res.stars = significance_stars(res.p_value);
    return res;
}

} // namespace

TestResult rank_sum_test(std::span<const double> a, std::span<const double> b) {
    const RankSumSetup s = rank_sum_setup(a, b);
    if (s.n <= 14 && !s.ranking.has_ties) return rank_sum_exact(s);
    return rank_sum_approx(s);
}

namespace {

struct SignedRankSetup {
    std::size_t n = 0;
    std::size_t zeros = 0;
    double w_plus = 0.0;
    Ranking ranking;
    bool degenerate = false;  // every value equalled mu0
};

SignedRankSetup signed_rank_setup(std::span<const double> x, double mu0) {
    if (x.empty()) throw DomainError("signed_rank_test: empty sample");
    SignedRankSetup s;
    std::vector<double> diffs;
    for (double v : x) {
        if (v == mu0)
            ++s.zeros;
        else
            diffs.push_back(v - mu0);
    }
    if (diffs.empty()) {
        s.degenerate = true;
        return s;
    }
    s.n = diffs.size();
    std::vector<double> abs_diffs(s.n);
    for (std::size_t i = 0; i < s.n; ++i) abs_diffs[i] = std::fabs(diffs[i]);
    s.ranking = midranks(abs_diffs);
    for (std::size_t i = 0; i < s.n; ++i)
        if (diffs[i] > 0) s.w_plus += s.ranking.ranks[i];
    return s;
}

TestResult signed_rank_degenerate(const SignedRankSetup& s) {
    TestResult res;
    res.statistic = 0.0;
    res.p_value = 1.0;
    res.method = TestMethod::exact_enumeration;
    res.zeros_dropped = s.zeros;
    return res;
}

TestResult signed_rank_exact(const SignedRankSetup& s) {
    // W+ over all 2^n sign assignments is a subset sum of 1..n.
    const std::size_t max_sum = s.n * (s.n + 1) / 2;
    std::vector<std::uint64_t> ways(max_sum + 1, 0);
    ways[0] = 1;
    for (std::size_t rank = 1; rank <= s.n; ++rank)
        for (std::size_t sum = max_sum; sum >= rank; --sum) ways[sum] += ways[sum - rank];

    const auto w_obs = static_cast<std::size_t>(std::llround(s.w_plus));
    std::uint64_t lo = 0, hi = 0;
    for (std::size_t sum = 0; sum <= max_sum; ++sum) {
        if (sum <= w_obs) lo += ways[sum];
        if (sum >= w_obs) hi += ways[sum];
    }
    const double total = std::pow(2.0, static_cast<double>(s.n));
    TestResult res;
    res.statistic = s.w_plus;
    res.p_value = two_sided_from_tails(static_cast<double>(lo), static_cast<double>(hi), total);
    res.method = TestMethod::exact_enumeration;
    res.zeros_dropped = s.zeros;
    res.stars = significance_stars(res.p_value);
    return res;
}

TestResult signed_rank_approx(const SignedRankSetup& s) {
    const double dn = static_cast<double>(s.n);
    const double mean = dn * (dn + 1.0) / 4.0;
    double tie_term = 0.0;
    for (std::size_t t : s.ranking.tie_groups) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0;
    const double z = corrected_z(s.w_plus - mean, var > 0 ? std::sqrt(var) : 0.0);
    TestResult res;
    res.statistic = s.w_plus;
    res.p_value = var > 0 ? normal_two_sided_p(z) : 1.0;
    res.method = TestMethod::normal_approx;
    res.zeros_dropped = s.zeros;
    res.stars = significance_stars(res.p_value);
    return res;
}

} // namespace

TestResult signed_rank_test(std::span<const double> x, double mu0) {
    const SignedRankSetup s = signed_rank_setup(x, mu0);
    if (s.degenerate) return signed_rank_degenerate(s);
    if (s.n <= 12 && !s.ranking.has_ties) return signed_rank_exact(s);
    return signed_rank_approx(s);
}

namespace detail {

TestResult rank_sum_normal_approx(std::span<const double> a, std::span<const double> b) {
    return rank_sum_approx(rank_sum_setup(a, b));
}

TestResult signed_rank_normal_approx(std::span<const double> x, double mu0) {
    const SignedRankSetup s = signed_rank_setup(x, mu0);
    if (s.degenerate) return signed_rank_degenerate(s);
    return signed_rank_approx(s);
}

} // namespace detail

TestResult binomial_test(std::size_t k, std::size_t n, double p0) {
    if (n < 1) throw DomainError("binomial_test: n must be at least 1");
    if (k > n) throw DomainError("binomial_test: k exceeds n");
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("binomial_test: p0 outside [0, 1]");

    TestResult res;
    res.statistic = static_cast<double>(k);
    res.method = TestMethod::exact_enumeration;

    if (p0 == 0.0 || p0 == 1.0) {
        const std::size_t certain = (p0 == 0.0) ? 0 : n;
        res.p_value = (k == certain) ? 1.0 : 0.0;
        res.stars = significance_stars(res.p_value);
        return res;
    }

    const double log_p = std::log(p0), log_q = std::log1p(-p0);
    auto log_pmf = [&](std::size_t i) {
        return log_choose(n, i) + static_cast<double>(i) * log_p +
               static_cast<double>(n - i) * log_q;
    };

    // Minimum-likelihood inclusion with relative slack for pmf ties.
    const double threshold = log_pmf(k) + std::log1p(1e-12);
    double sum = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double lp = log_pmf(i);
        if (lp <= threshold) sum += std::exp(lp);
    }
    res.p_value = std::min(1.0, sum);
    res.stars = significance_stars(res.p_value);
    return res;
}

ErrorExplanationReport error_explanation_test(const Dataset& ds) {
    ErrorExplanationReport report;
    for (Variable v : {Variable::cost, Variable::schedule}) {
        const auto obs = extract_observations(ds, v);
        if (obs.empty()) {
            report.notes.push_back("no " + std::string(to_string(v)) +
                                   " observations; row omitted");
            continue;
        }
        const auto values = values_of(obs);
        const SummaryStats stats = summarize(std::span<const double>(values));

        ErrorExplanationRow row;
        row.variable = v;
        row.n = stats.n;
        row.mean = stats.mean;
        row.signed_rank = signed_rank_test(values, 0.0);
        row.freq_overrun = stats.freq_overrun;
        std::size_t overruns = 0;
        for (double val : values)
            if (val > 0.0) ++overruns;
        row.binomial = binomial_test(overruns, values.size(), 0.5);
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

std::string country_upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

constexpr const char* kRestOfWorld = "Rest of the world";

std::string group_label(const ProjectRecord& r, Grouping g, const std::string& baseline) {
    if (g == Grouping::by_sector) return std::string(to_string(r.sector));
    return r.country == baseline ? baseline : std::string(kRestOfWorld);
}

std::optional<GroupCell> make_cell(const std::vector<double>& values,
                                   const std::vector<double>* baseline_values) {
    if (values.empty()) return std::nullopt;
    const SummaryStats s = summarize(std::span<const double>(values));
    GroupCell cell;
    cell.n = s.n;
    cell.mean = s.mean;
    cell.freq_overrun = s.freq_overrun;
    if (baseline_values && !baseline_values->empty())
        cell.vs_baseline = rank_sum_test(std::span<const double>(values),
                                         std::span<const double>(*baseline_values));
    return cell;
}

} // namespace

GroupComparison compare_groups(const Dataset& ds, Grouping grouping,
                               const std::string& baseline) {
    std::string base_label = baseline;
    if (grouping == Grouping::by_country) base_label = country_upper(baseline);

    // Group records, baseline first, then first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<const ProjectRecord*>> groups;
    for (const auto& r : ds.records) {
        std::string label = group_label(r, grouping, base_label);
        auto [it, inserted] = groups.try_emplace(label);
        if (inserted) order.push_back(label);
        it->second.push_back(&r);
    }

    if (!groups.count(base_label))
        throw DomainError("compare_groups: unknown baseline group '" + baseline + "'");
    if (groups.size() < 2)
        throw DomainError("compare_groups: baseline '" + baseline +
                          "' is the only group; nothing to compare");

    std::erase(order, base_label);
    order.insert(order.begin(), base_label);

    auto values_for = [](const std::vector<const ProjectRecord*>& recs, Variable v) {
        std::vector<double> vals;
        for (const ProjectRecord* r : recs)
            if (r->has(v))
                vals.push_back(v == Variable::cost
                                   ? compute_overrun(*r->est_cost, *r->act_cost)
                                   : compute_overrun(*r->est_duration, *r->act_duration));
        return vals;
    };

    const auto base_cost = values_for(groups[base_label], Variable::cost);
    const auto base_sched = values_for(groups[base_label], Variable::schedule);

    GroupComparison cmp;
    cmp.baseline = base_label;
    cmp.grouping = grouping;

    for (const auto& label : order) {
        const auto& recs = groups[label];
        const bool is_base = label == base_label;
        GroupRow row;
        row.group = label;
        row.records = recs.size();
        row.cost = make_cell(values_for(recs, Variable::cost), is_base ? nullptr : &base_cost);
        row.schedule =
            make_cell(values_for(recs, Variable::schedule), is_base ? nullptr : &base_sched);
        if (!row.cost)
            cmp.notes.push_back("group '" + label + "' has no cost observations");
        if (!row.schedule)
            cmp.notes.push_back("group '" + label + "' has no schedule observations");
        if (!is_base) {
            if (row.cost && base_cost.empty())
                cmp.notes.push_back("baseline has no cost observations; tests skipped");
            if (row.schedule && base_sched.empty())
                cmp.notes.push_back("baseline has no schedule observations; tests skipped");
        }
        cmp.rows.push_back(std::move(row));
    }
    return cmp;
}

} // namespace refcast
