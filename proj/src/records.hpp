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

#ifndef SBPIPE_RECORDS_HPP
#define SBPIPE_RECORDS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sb {

/// One scraped bid row, post schema validation but pre cleansing. Dates and
/// times are kept as validated strings so accepted rows round-trip
/// byte-identically. Columns outside the typed schema ride in extra_fields
/// and are dropped at preprocessing.
struct RawBidRecord {
    std::string product_url;
    std::string seller_id;
    std::string bidder_id;
    double bid_amount = 0.0;
    std::string bid_currency;
    std::string bid_date;
    std::string bid_time;
    std::string auction_start_date;
    std::string auction_start_time;
    std::string duration_text;
    double opening_price = 0.0;
    double declared_winning_price = 0.0;
    long declared_n_bids = 0;
    std::map<std::string, std::string> extra_fields;

    bool operator==(const RawBidRecord&) const = default;
};

/// Per-bidder 30-day activity summary, raw form.
struct RawHistoryRecord {
    std::string bidder_id;
    long buyer_rating = 0;
    long items_bid_on_30d = 0;
    long n_bid_retractions_30d = 0;
    std::string activity_with_seller_raw;  // percentage form, e.g. "90%"

    bool operator==(const RawHistoryRecord&) const = default;
};

struct Defect {
    long row_number = 0;
    std::string field;
    std::string reason;
};

struct ParseReport {
    long rows_read = 0;
    long rows_accepted = 0;
    std::vector<Defect> defects;
};

/// Post-preprocessing bid carrying the per-bid subset of the nine canonical
/// attributes.
struct CleanBid {
    long auction_id = 0;
    std::string bidder_id;
    std::string seller_id;
    double bid_time = 0.0;  // fractional days since auction start
    double bid_amount_usd = 0.0;
    int duration_days = 0;
};

/// Grouped clean bids plus repaired auction-level aggregates. start_epoch_s
/// and product_url are carried for the concurrency computation downstream.
struct Auction {
    long auction_id = 0;
    std::string seller_id;
    std::string product_url;
    int duration_days = 0;
    double opening_price_usd = 0.0;
    double winning_price_usd = 0.0;
    long n_bids = 0;
    std::int64_t start_epoch_s = 0;
    std::vector<CleanBid> bids;  // ascending bid_time
};

struct BidderHistory {
    std::string bidder_id;
    long buyer_rating = 0;
    long items_bid_on_30d = 0;
    long n_bid_retractions_30d = 0;
    double activity_with_seller = 0.0;  // in [0,1]
};

/// One training row: the nine fraud-pattern metric values for a
/// (auction, bidder) participation.
struct SBSample {
    long auction_id = 0;
    std::string bidder_id;
    double opening_price_m = 0.0;
    double early_bidding = 0.0;
    double last_bidding = 0.0;
    double bidding_ratio = 0.0;
    double auction_bids = 0.0;
    double buyer_tendency = 0.0;
    double winning_ratio = 0.0;
    double brbi = 0.0;
    double bid_retraction = 0.0;
};

constexpr int kNumFeatures = 9;

/// Canonical feature order, matching the dataset header.
extern const char* const kFeatureNames[kNumFeatures];

double get_feature(const SBSample& s, int index);
void set_feature(SBSample& s, int index, double value);

/// Per-metric importance label. Fixed assignment; attached as metadata
/// only, never aggregated into a score.
enum class MetricWeight { Low, Medium, High };

MetricWeight metric_weight(int feature_index);
const char* weight_name(MetricWeight w);

}  // namespace sb

#endif  // SBPIPE_RECORDS_HPP
