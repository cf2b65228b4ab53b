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

#ifndef SBPIPE_FILTER_HPP
#define SBPIPE_FILTER_HPP

#include <array>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "records.hpp"

namespace sb {

/// Tukey hinges: the median, and the medians of the lower/upper halves,
/// each half including the overall median element when the count is odd.
std::tuple<double, double, double> quartiles(std::vector<double> values);

struct Fences {
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double lower = 0.0;  // q1 - k*iqr
    double upper = 0.0;  // q3 + k*iqr
    double k = 0.0;
};

Fences fences(const std::vector<double>& values, double k);

struct DroppedSample {
    SBSample sample;
    std::string offending_feature;  // first feature outside [0,1]
};

/// A sample is dropped iff any of its nine features lies outside [0,1].
std::pair<std::vector<SBSample>, std::vector<DroppedSample>>
drop_out_of_range(const std::vector<SBSample>& samples);

struct MinMax {
    double min = 0.0;
    double max = 0.0;
};

/// Per-feature min-max rescaling over the kept samples; a constant feature
/// maps to 0 everywhere.
std::pair<std::vector<SBSample>, std::array<MinMax, kNumFeatures>>
minmax_rescale(const std::vector<SBSample>& samples);

struct FilterReport {
    long samples_in = 0;
    long samples_dropped = 0;
    long samples_out = 0;
    std::array<Fences, kNumFeatures> feature_fences;  // diagnostic, pre-drop
    std::array<long, kNumFeatures> flagged_counts{};  // outside the fences
    std::array<MinMax, kNumFeatures> rescale_ranges;
    std::vector<DroppedSample> dropped;
};

/// Fence diagnostics, then drop of out-of-range samples, then rescaling.
/// In-range IQR outliers are reported but kept.
std::pair<std::vector<SBSample>, FilterReport> run_filter(
    const std::vector<SBSample>& samples, double k);

/// feature,q1,q3,lower,upper,min,max,flagged_count
void write_filter_report(const std::string& path, const FilterReport& report,
                         char delim);

}  // namespace sb

#endif  // SBPIPE_FILTER_HPP
