// Copyright 2026 The sbpipe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "filter.hpp"

#include <algorithm>

#include "csv.hpp"
#include "error.hpp"

namespace sb {

namespace {

// median of sorted[lo, hi)
double median_of(const std::vector<double>& sorted, size_t lo, size_t hi) {
    const size_t n = hi - lo;
    const size_t mid = lo + n / 2;
    if (n % 2 == 1) return sorted[mid];
    return (sorted[mid - 1] + sorted[mid]) / 2.0;
}

}  // namespace

std::tuple<double, double, double> quartiles(std::vector<double> values) {
    if (values.empty()) {
        throw Error(ErrorKind::Invalid, "quartiles of an empty vector");
    }
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    const double med = median_of(values, 0, n);
    // odd n: halves include the median element
    const size_t lower_hi = n % 2 == 1 ? n / 2 + 1 : n / 2;
    const size_t upper_lo = n / 2;
    const double q1 = median_of(values, 0, lower_hi);
    const double q3 = median_of(values, upper_lo, n);
    return {q1, med, q3};
}

Fences fences(const std::vector<double>& values, double k) {
    if (k <= 0.0) {
        throw Error(ErrorKind::Invalid, "fence multiplier must be positive");
    }
    auto [q1, med, q3] = quartiles(values);
    (void)med;
    Fences f;
    f.q1 = q1;
    f.q3 = q3;
    f.iqr = q3 - q1;
    f.lower = q1 - k * f.iqr;
    f.upper = q3 + k * f.iqr;
    f.k = k;
    return f;
}

std::pair<std::vector<SBSample>, std::vector<DroppedSample>>
drop_out_of_range(const std::vector<SBSample>& samples) {
    std::vector<SBSample> kept;
    std::vector<DroppedSample> dropped;
    for (const auto& s : samples) {
        int bad = -1;
        for (int f = 0; f < kNumFeatures; ++f) {
            const double v = get_feature(s, f);
            if (v < 0.0 || v > 1.0) {
                bad = f;
                break;
            }
        }
        if (bad >= 0) {
            dropped.push_back({s, kFeatureNames[bad]});
        } else {
            kept.push_back(s);
        }
    }
    return {std::move(kept), std::move(dropped)};
}

std::pair<std::vector<SBSample>, std::array<MinMax, kNumFeatures>>
minmax_rescale(const std::vector<SBSample>& samples) {
    if (samples.empty()) {
        throw Error(ErrorKind::Invalid, "nothing to rescale: no samples");
    }
    std::array<MinMax, kNumFeatures> ranges;
    for (int f = 0; f < kNumFeatures; ++f) {
        double mn = get_feature(samples[0], f);
        double mx = mn;
        for (const auto& s : samples) {
            const double v = get_feature(s, f);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        ranges[f] = {mn, mx};
    }
    std::vector<SBSample> out = samples;
    for (auto& s : out) {
        for (int f = 0; f < kNumFeatures; ++f) {
            const auto& r = ranges[f];
            const double v = get_feature(s, f);
            set_feature(s, f,
                        r.max == r.min ? 0.0 : (v - r.min) / (r.max - r.min));
        }
    }
    return {std::move(out), ranges};
}

std::pair<std::vector<SBSample>, FilterReport> run_filter(
    const std::vector<SBSample>& samples, double k) {
    FilterReport report;
    report.samples_in = static_cast<long>(samples.size());

    for (int f = 0; f < kNumFeatures; ++f) {
        std::vector<double> values;
        values.reserve(samples.size());
        for (const auto& s : samples) values.push_back(get_feature(s, f));
        if (values.empty()) continue;
        report.feature_fences[f] = fences(values, k);
        for (double v : values) {
            if (v < report.feature_fences[f].lower ||
                v > report.feature_fences[f].upper) {
                ++report.flagged_counts[f];
            }
        }
    }

    auto [kept, dropped] = drop_out_of_range(samples);
    report.samples_dropped = static_cast<long>(dropped.size());
    report.samples_out = static_cast<long>(kept.size());
    report.dropped = std::move(dropped);
    if (kept.empty()) {
        return {std::move(kept), std::move(report)};
    }

    auto [rescaled, ranges] = minmax_rescale(kept);
    report.rescale_ranges = ranges;
    return {std::move(rescaled), std::move(report)};
}

void write_filter_report(const std::string& path, const FilterReport& report,
                         char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({"feature", "q1", "q3", "lower", "upper", "min", "max",
                      "flagged_count"});
    for (int f = 0; f < kNumFeatures; ++f) {
        const auto& fen = report.feature_fences[f];
        const auto& r = report.rescale_ranges[f];
        writer.write_row({kFeatureNames[f], csv::format_real(fen.q1, 5),
                          csv::format_real(fen.q3, 5),
                          csv::format_real(fen.lower, 5),
                          csv::format_real(fen.upper, 5),
                          csv::format_real(r.min, 5),
                          csv::format_real(r.max, 5),
                          std::to_string(report.flagged_counts[f])});
    }
}

}  // namespace sb
