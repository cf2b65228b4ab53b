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

#ifndef SBPIPE_PREPROCESS_HPP
#define SBPIPE_PREPROCESS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "records.hpp"

namespace sb {

/// Removes exact-duplicate rows, keeping the first occurrence; relative
/// order otherwise preserved.
std::vector<RawBidRecord> deduplicate(const std::vector<RawBidRecord>& records);
std::vector<RawHistoryRecord> deduplicate(
    const std::vector<RawHistoryRecord>& records);

/// Removes records whose bidder id is missing or fully masked.
std::pair<std::vector<RawBidRecord>, long> drop_masked(
    const std::vector<RawBidRecord>& records);

/// amount * rate(code); USD passes through. Unknown code is an error.
double convert_currency(double amount, const std::string& code,
                        const RateTable& rates);

/// "7 Days" -> 7. Accepts "N Day"/"N Days", case-insensitive, surrounding
/// whitespace tolerated; the result must be one of {1,3,5,7,10}.
int parse_duration(const std::string& text);

/// "90%" -> 0.90. Bare numerals are accepted too; values outside [0,100]
/// are an error.
double percentage_to_fraction(const std::string& text);

/// Assigns each distinct (seller_id, product_url) pair a unique positive
/// integer in order of first appearance, starting at 1.
std::map<std::pair<std::string, std::string>, long> assign_auction_ids(
    const std::vector<RawBidRecord>& records);

/// Auction-level fields gathered from the first surviving record of each
/// auction, pre repair.
struct AuctionMeta {
    long auction_id = 0;
    std::string seller_id;
    std::string product_url;
    int duration_days = 0;
    double opening_price_usd = 0.0;
    double declared_winning_usd = 0.0;
    long declared_n_bids = 0;
    std::int64_t start_epoch_s = 0;
};

/// Groups bids by auction_id, sorted ascending by bid_time (ties broken by
/// amount then bidder id). Auctions with zero bids are excluded; the caller
/// gets the exclusion count. Output sorted by auction_id.
std::pair<std::vector<Auction>, long> group_auctions(
    const std::vector<CleanBid>& bids,
    const std::map<long, AuctionMeta>& metas);

struct Repair {
    long auction_id = 0;
    std::string field;
    std::string old_value;
    std::string new_value;
};

/// Enforces winning_price = max bid and n_bids = bid count, recording every
/// change.
std::vector<Repair> repair_consistency(Auction& a);

struct PreprocessAccounting {
    long rows_read = 0;
    long parse_defects = 0;
    long duplicates_removed = 0;
    long masked_dropped = 0;
    long stage_defects = 0;  // currency/duration failures found here
    long bids_out = 0;

    bool balanced() const {
        return rows_read == parse_defects + duplicates_removed +
                                masked_dropped + stage_defects + bids_out;
    }
};

struct PreprocessResult {
    std::vector<Auction> auctions;          // sorted by auction_id
    std::vector<BidderHistory> histories;   // sorted by bidder_id
    std::vector<Repair> repairs;
    std::vector<Defect> defects;            // stage defects, both tables
    PreprocessAccounting accounting;
    long history_duplicates_removed = 0;
    long history_masked_dropped = 0;
    long zero_bid_auctions = 0;
};

/// The full cleansing / reformatting / repair stage over already-parsed
/// records. parse-stage defect counts come in via the reports so the
/// accounting can close.
PreprocessResult run_preprocess(const std::vector<RawBidRecord>& records,
                                const ParseReport& bid_report,
                                const std::vector<RawHistoryRecord>& history,
                                const ParseReport& history_report,
                                const PipelineConfig& cfg);

}  // namespace sb

#endif  // SBPIPE_PREPROCESS_HPP
