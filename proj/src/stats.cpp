#include "refcast/stats.hpp"

#include "refcast/errors.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

namespace refcast {

SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw DomainError("summarize: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    SummaryStats s;
    s.n = sorted.size();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
    s.median = (s.n % 2 == 1) ? sorted[s.n / 2]
                              : (sorted[s.n / 2 - 1] + sorted[s.n / 2]) / 2.0;
    s.min = sorted.front();
    s.max = sorted.back();
    std::size_t over = 0;
    for (double v : sorted)
        if (v > 0.0) ++over;
    s.freq_overrun = static_cast<double>(over) / static_cast<double>(s.n);
    return s;
}

SummaryStats summarize(std::span<const OverrunObservation> obs) {
    return summarize(std::span<const double>(values_of(obs)));
}

namespace {

// Tukey hinge of a sorted sample from one end. The doubled hinge depth is
// floor((n+1)/2) + 1; an odd doubled depth means the hinge sits between
// two order statistics.
double lower_hinge(const std::vector<double>& sorted) {
    std::size_t n = sorted.size();
    std::size_t depth2 = (n + 1) / 2 + 1;
    if (depth2 % 2 == 0) return sorted[depth2 / 2 - 1];
    return (sorted[depth2 / 2 - 1] + sorted[depth2 / 2]) / 2.0;
}

double upper_hinge(const std::vector<double>& sorted) {
    std::size_t n = sorted.size();
    std::size_t depth2 = (n + 1) / 2 + 1;
    if (depth2 % 2 == 0) return sorted[n - depth2 / 2];
    return (sorted[n - depth2 / 2] + sorted[n - depth2 / 2 - 1]) / 2.0;
}

} // namespace

OutlierReport tukey_fences(std::span<const OverrunObservation> obs) {
    if (obs.size() < 4) throw DomainError("tukey_fences: too few observations for fences");

    std::vector<double> sorted = values_of(obs);
    std::sort(sorted.begin(), sorted.end());

    OutlierReport rep;
    rep.n = obs.size();
    rep.lower_hinge = lower_hinge(sorted);
    rep.upper_hinge = upper_hinge(sorted);
    const double iqr = rep.upper_hinge - rep.lower_hinge;
    rep.upper_fence = rep.upper_hinge + 1.5 * iqr;
    rep.lower_fence = rep.lower_hinge - 1.5 * iqr;

    for (const auto& o : obs)
        if (o.value >= rep.upper_fence || o.value <= rep.lower_fence)
            rep.outlier_ids.push_back(o.project_id);
    rep.outlier_share = static_cast<double>(rep.outlier_ids.size()) / static_cast<double>(rep.n);
    return rep;
}

BlackSwanReport classify_black_swans(const Dataset& ds) {
    auto cost_obs = extract_observations(ds, Variable::cost);
    auto sched_obs = extract_observations(ds, Variable::schedule);

    BlackSwanReport rep;
    rep.cost = tukey_fences(cost_obs);
    rep.schedule = tukey_fences(sched_obs);

    std::unordered_set<std::string> cost_ids(rep.cost.outlier_ids.begin(),
                                             rep.cost.outlier_ids.end());
    for (const auto& id : rep.schedule.outlier_ids)
        if (cost_ids.count(id)) ++rep.joint_count;
    return rep;
}

TrendSeries moving_average(std::span<const OverrunObservation> obs, int window_width,
                           double confidence) {
    if (window_width < 1 || window_width % 2 == 0)
        throw DomainError("moving_average: window width must be an odd positive integer");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw DomainError("moving_average: confidence must lie in (0, 1)");
    if (obs.empty()) throw DomainError("moving_average: no observations");

    std::map<int, std::vector<double>> by_year;
    for (const auto& o : obs) by_year[o.decision_year].push_back(o.value);

    TrendSeries series;
    series.window_width = window_width;
    series.confidence = confidence;

    const int half = (window_width - 1) / 2;
    const int first = by_year.begin()->first;
    const int last = by_year.rbegin()->first;

    for (int year = first; year <= last; ++year) {
        std::vector<double> window;
        for (auto it = by_year.lower_bound(year - half);
             it != by_year.end() && it->first <= year + half; ++it)
            window.insert(window.end(), it->second.begin(), it->second.end());
        if (window.size() < 2) continue;

        const auto n = static_cast<double>(window.size());
        const double mean = std::accumulate(window.begin(), window.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : window) ss += (v - mean) * (v - mean);
        const double se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);

        boost::math::students_t dist(n - 1.0);
        const double t = boost::math::quantile(dist, 0.5 + confidence / 2.0);
        series.points.push_back({year, mean, mean - t * se, mean + t * se, window.size()});
    }
    return series;
}

} // namespace refcast
