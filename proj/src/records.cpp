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

#include "records.hpp"

#include "error.hpp"

namespace sb {

const char* const kFeatureNames[kNumFeatures] = {
    "opening_price_m", "early_bidding",  "last_bidding",
    "bidding_ratio",   "auction_bids",   "buyer_tendency",
    "winning_ratio",   "brbi",           "bid_retraction",
};

double get_feature(const SBSample& s, int index) {
    switch (index) {
        case 0: return s.opening_price_m;
        case 1: return s.early_bidding;
        case 2: return s.last_bidding;
        case 3: return s.bidding_ratio;
        case 4: return s.auction_bids;
        case 5: return s.buyer_tendency;
        case 6: return s.winning_ratio;
        case 7: return s.brbi;
        case 8: return s.bid_retraction;
    }
    throw Error(ErrorKind::Internal, "feature index out of range");
}

void set_feature(SBSample& s, int index, double value) {
    switch (index) {
        case 0: s.opening_price_m = value; return;
        case 1: s.early_bidding = value; return;
        case 2: s.last_bidding = value; return;
        case 3: s.bidding_ratio = value; return;
        case 4: s.auction_bids = value; return;
        case 5: s.buyer_tendency = value; return;
        case 6: s.winning_ratio = value; return;
        case 7: s.brbi = value; return;
        case 8: s.bid_retraction = value; return;
    }
    throw Error(ErrorKind::Internal, "feature index out of range");
}

MetricWeight metric_weight(int feature_index) {
    switch (feature_index) {
        case 0: return MetricWeight::Low;     // opening price
        case 1: return MetricWeight::Low;     // early bidding
        case 2: return MetricWeight::Medium;  // last bidding
        case 3: return MetricWeight::Medium;  // bidding ratio
        case 4: return MetricWeight::Low;     // auction bids
        case 5: return MetricWeight::Medium;  // buyer tendency
        case 6: return MetricWeight::High;    // winning ratio
        case 7: return MetricWeight::Low;     // brbi
        case 8: return MetricWeight::Medium;  // bid retraction
    }
    throw Error(ErrorKind::Internal, "feature index out of range");
}

const char* weight_name(MetricWeight w) {
    switch (w) {
        case MetricWeight::Low: return "Low";
        case MetricWeight::Medium: return "Medium";
        case MetricWeight::High: return "High";
    }
    return "?";
}

}  // namespace sb
