#pragma once

#include "refcast/dataset.hpp"

#include <span>
#include <vector>

namespace refcast {

// Descriptive shape of an overrun sample. freq_overrun counts values
// strictly above zero (a project exactly on budget is not an overrun).
struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    double freq_overrun = 0.0;
};

SummaryStats summarize(std::span<const double> values);
SummaryStats summarize(std::span<const OverrunObservation> obs);

// Tukey fences: hinge +/- 1.5 IQR, hinges by Tukey's median-split (the
// median joins both halves when n is odd). The fence comparison is closed:
// a value exactly on the fence is an outlier.
struct OutlierReport {
    double lower_hinge = 0.0;
    double upper_hinge = 0.0;
    double lower_fence = 0.0;
    double upper_fence = 0.0;
    std::vector<std::string> outlier_ids;  // file order
    std::size_t n = 0;
    double outlier_share = 0.0;
};

OutlierReport tukey_fences(std::span<const OverrunObservation> obs);

// Per-variable outlier reports plus the count of projects flagged on both
// cost and schedule.
struct BlackSwanReport {
    OutlierReport cost;
    OutlierReport schedule;
    std::size_t joint_count = 0;
};

BlackSwanReport classify_black_swans(const Dataset& ds);

struct TrendPoint {
    int year = 0;
    double window_mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t window_n = 0;
};

// Centered moving average over decision years with a two-sided t-interval
// on the windowed observations. Years whose window holds fewer than two
// observations are omitted.
struct TrendSeries {
    std::vector<TrendPoint> points;
    int window_width = 0;
    double confidence = 0.0;
};

TrendSeries moving_average(std::span<const OverrunObservation> obs, int window_width,
                           double confidence);

} // namespace refcast
