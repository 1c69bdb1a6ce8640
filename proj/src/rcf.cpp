#include "refcast/rcf.hpp"

#include "refcast/csv.hpp"
#include "refcast/errors.hpp"

#include <algorithm>
#include <cmath>

namespace refcast {

ReferenceClass build_reference_class(const Dataset& ds, const Filter& f, Variable v) {
    const Dataset subset = filter(ds, f);
    const auto obs = extract_observations(subset, v);
    if (obs.empty())
        throw DomainError("build_reference_class: empty reference class (" + f.describe() +
                          ", variable " + std::string(to_string(v)) + ")");
    ReferenceClass rc;
    rc.values = values_of(obs);
    std::sort(rc.values.begin(), rc.values.end());
    rc.variable = v;
    rc.provenance = f.describe() + "; source " + ds.source_meta.path;
    return rc;
}

ReferenceClass make_reference_class(std::vector<double> values, Variable v,
                                    std::string provenance) {
    if (values.empty()) throw DomainError("make_reference_class: empty reference class");
    std::sort(values.begin(), values.end());
    return ReferenceClass{std::move(values), v, std::move(provenance)};
}

double ecdf(const ReferenceClass& rc, double x) {
    const auto count =
        std::upper_bound(rc.values.begin(), rc.values.end(), x) - rc.values.begin();
    return static_cast<double>(count) / static_cast<double>(rc.values.size());
}

UpliftResult uplift(const ReferenceClass& rc, double certainty) {
    if (!(certainty > 0.0 && certainty <= 1.0))
        throw DomainError("uplift: certainty must lie in (0, 1]");
    const std::size_t n = rc.values.size();
    // Smallest k in [1, n] with k/n >= certainty, using the same division
    // the ecdf performs so the two stay consistent at data points.
    std::size_t lo = 1, hi = n;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (static_cast<double>(mid) / static_cast<double>(n) >= certainty)
            hi = mid;
        else
            lo = mid + 1;
    }
    UpliftResult res;
    res.certainty = certainty;
    res.uplift = rc.values[lo - 1];
    return res;
}

double certainty_for_uplift(const ReferenceClass& rc, double u) {
    return ecdf(rc, u);
}

UpliftResult adjust_uplift(const UpliftResult& base, double factor,
                           const std::string& evidence) {
    if (evidence.empty())
        throw DomainError("adjust_uplift: adjustment requires hard evidence");
    if (!(factor > 0.0)) throw DomainError("adjust_uplift: factor must be positive");
    UpliftResult res = base;
    res.adjusted_uplift = factor * base.uplift;
    res.adjustment_evidence = evidence;
    if (factor < 1.0)
        res.note = "caution: downward adjustment risks reintroducing optimism";
    return res;
}

double apply_uplift(double base_estimate, double uplift) {
    if (!(base_estimate > 0.0)) throw DomainError("apply_uplift: base estimate must be positive");
    if (!(uplift > -1.0)) throw DomainError("apply_uplift: uplift must exceed -1");
    return base_estimate * (1.0 + uplift);
}

std::string to_csv(const ReferenceClass& rc) {
    std::string out;
    out += "# reference class: " + std::string(to_string(rc.variable)) + " overruns\n";
    out += "# provenance: " + rc.provenance + "\n";
    out += "# n: " + std::to_string(rc.n()) + "\n";
    if (rc.small_sample())
        out += "# warning: fewer than 20 projects in class\n";
    out += "overrun\n";
    for (double v : rc.values) out += csv::num_to_string(v) + "\n";
    return out;
}

std::vector<std::pair<double, double>> cumulative_frequency_curve(const ReferenceClass& rc) {
    std::vector<std::pair<double, double>> pts;
    const std::size_t n = rc.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n && rc.values[i + 1] == rc.values[i]) continue;  // keep the top of each step
        pts.emplace_back(rc.values[i],
                         static_cast<double>(i + 1) / static_cast<double>(n));
    }
    return pts;
}

std::vector<std::pair<double, double>> uplift_curve(const ReferenceClass& rc) {
    auto pts = cumulative_frequency_curve(rc);
    for (auto& [x, y] : pts) std::swap(x, y);
    return pts;
}

} // namespace refcast
