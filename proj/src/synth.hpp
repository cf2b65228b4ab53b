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

#ifndef SBPIPE_SYNTH_HPP
#define SBPIPE_SYNTH_HPP

#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "records.hpp"

namespace sb {

struct ShillInfo {
    std::string bidder_id;
    std::string target_seller;
    long participations = 0;
    long min_auction_bids = 0;  // smallest bid count among its auctions
};

/// Seed-deterministic synthetic datasets with ground-truth shill injection.
/// Output records use the ingest module's input schema, so the synthetic
/// data exercises the full pipeline path.
struct SynthResult {
    std::vector<RawBidRecord> auction_records;
    std::vector<RawHistoryRecord> history_records;
    std::map<std::string, std::string> truth;  // bidder_id -> honest|shill
    std::vector<ShillInfo> shills;
};

SynthResult generate(const SynthConfig& cfg);

/// Analytically implied per-shill metric bounds, valid on the raw
/// (pre-rescale) samples the pipeline computes from the generated data.
struct ExpectedBounds {
    std::string bidder_id;
    double min_early_bidding = 0.0;  // 1 - early_bid_fraction
    double min_last_bidding = 0.0;   // 1 - stop_fraction
    double min_bidding_ratio = 0.0;  // bid_share_target - 1/n_bids
    bool winning_ratio_is_one = false;  // avoid_winning and P >= p_min
    bool brbi_is_one = false;           // zero rating and items >= 5
};

std::vector<ExpectedBounds> expected_metrics(const SynthResult& result,
                                             const SynthConfig& cfg,
                                             long p_min);

/// bidder_id,label truth file.
void write_truth(const std::string& path,
                 const std::map<std::string, std::string>& truth, char delim);

}  // namespace sb

#endif  // SBPIPE_SYNTH_HPP
