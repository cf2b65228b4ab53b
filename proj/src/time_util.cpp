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

#include "time_util.hpp"

#include <cstdio>

#include "error.hpp"

namespace sb {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;

bool is_leap(int y) {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

int days_in_month(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return d[m - 1];
}

// Howard Hinnant's days_from_civil.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

std::int64_t parse_date_days(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3) {
        throw Error(ErrorKind::Parse, "malformed date: '" + text + "'");
    }
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) {
        throw Error(ErrorKind::Parse, "impossible date: '" + text + "'");
    }
    return days_from_civil(y, m, d);
}

std::int64_t parse_time_seconds(const std::string& text) {
    int h = 0, m = 0, s = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d:%d:%d%c", &h, &m, &s, &tail) != 3) {
        throw Error(ErrorKind::Parse, "malformed time: '" + text + "'");
    }
    if (h < 0 || h > 23 || m < 0 || m > 59 || s < 0 || s > 59) {
        throw Error(ErrorKind::Parse, "impossible time: '" + text + "'");
    }
    return std::int64_t(h) * 3600 + std::int64_t(m) * 60 + s;
}

std::int64_t epoch_seconds(const std::string& date, const std::string& time) {
    return parse_date_days(date) * kSecondsPerDay + parse_time_seconds(time);
}

std::string format_date(std::int64_t epoch_s) {
    std::int64_t days = epoch_s / kSecondsPerDay;
    if (epoch_s % kSecondsPerDay < 0) --days;
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

std::string format_time(std::int64_t epoch_s) {
    std::int64_t sod = epoch_s % kSecondsPerDay;
    if (sod < 0) sod += kSecondsPerDay;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d",
                  static_cast<int>(sod / 3600),
                  static_cast<int>(sod / 60 % 60),
                  static_cast<int>(sod % 60));
    return buf;
}

double compute_bid_time(const std::string& start_date,
                        const std::string& start_time,
                        const std::string& bid_date,
                        const std::string& bid_time) {
    std::int64_t start, bid;
    try {
        start = epoch_seconds(start_date, start_time);
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse,
                    std::string("auction start: ") + e.what());
    }
    try {
        bid = epoch_seconds(bid_date, bid_time);
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse, std::string("bid: ") + e.what());
    }
    return static_cast<double>(bid - start) / kSecondsPerDay;
}

}  // namespace sb
