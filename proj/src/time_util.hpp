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

#ifndef SBPIPE_TIME_UTIL_HPP
#define SBPIPE_TIME_UTIL_HPP

#include <cstdint>
#include <string>

namespace sb {

// All timestamps are naive (single configured zone); dates are
// "YYYY-MM-DD", times of day are "HH:MM:SS".

/// Days since 1970-01-01 for a calendar date string. Throws on malformed
/// or impossible dates.
std::int64_t parse_date_days(const std::string& text);

/// Seconds since midnight for a time-of-day string.
std::int64_t parse_time_seconds(const std::string& text);

/// Combined seconds since the epoch for a date + time-of-day pair.
std::int64_t epoch_seconds(const std::string& date, const std::string& time);

std::string format_date(std::int64_t epoch_s);
std::string format_time(std::int64_t epoch_s);

/// Elapsed time from auction start to bid, in fractional days. May be
/// negative or exceed the auction duration; later stages decide what to do
/// with such values.
double compute_bid_time(const std::string& start_date,
                        const std::string& start_time,
                        const std::string& bid_date,
                        const std::string& bid_time);

}  // namespace sb

#endif  // SBPIPE_TIME_UTIL_HPP
