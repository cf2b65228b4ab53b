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

#ifndef SBPIPE_METRICS_HPP
#define SBPIPE_METRICS_HPP

#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "records.hpp"

namespace sb {

/// Cross-auction quantities the per-sample metrics need: participation and
/// win counts per bidder, per-(bidder,seller) auction counts, the reference
/// price, and per-auction concurrency. Built once, read-only afterwards.
class DatasetContext {
  public:
    DatasetContext(const std::vector<Auction>& auctions,
                   const PipelineConfig& cfg);

    double ref_price() const { return ref_price_; }
    long participations(const std::string& bidder) const;
    long wins(const std::string& bidder) const;
    long auctions_with_seller(const std::string& bidder,
                              const std::string& seller) const;
    /// Mean n_bids over auctions concurrent with `a` (same product URL,
    /// overlapping time window, excluding `a`); 0 participants -> 0 mean.
    double concurrent_mean_bids(const Auction& a) const;
    /// The bidder holding the auction's maximum bid (earliest such bid on
    /// amount ties).
    static std::string winner_of(const Auction& a);

  private:
    const std::vector<Auction>& auctions_;
    double ref_price_ = 0.0;
    std::map<std::string, long> participations_;
    std::map<std::string, long> wins_;
    std::map<std::pair<std::string, std::string>, long> with_seller_;
    std::map<long, double> concurrent_mean_;  // auction_id -> mean
};

// The seven literature patterns, each normalized to [0,1] with higher =
// more suspicious.

double opening_price_metric(const Auction& a, double ref_price);
/// Unclamped so out-of-window bid times surface as out-of-range values for
/// the filter stage.
double early_bidding(const Auction& a, const std::string& bidder);
double last_bidding(const Auction& a, const std::string& bidder);
double bidding_ratio(const Auction& a, const std::string& bidder);
double auction_bids(const Auction& a, double concurrent_mean);
double buyer_tendency(const std::string& bidder, const std::string& seller,
                      const DatasetContext& ctx);
double winning_ratio(const std::string& bidder, const DatasetContext& ctx,
                     long p_min);

/// Buyer rating related to 30-day item count: 1 for a zero-rating bidder on
/// >=5 items, rating/items when 0 < rating < items, otherwise 0.
double brbi(long buyer_rating, long items_30d);

/// Retraction count combined with seller affinity: 1 when a retractor's
/// activity with the seller is 100%, otherwise 0.5 (including the
/// no-retraction default).
double bid_retraction(long n_retractions, double activity_with_seller,
                      double default_value = 0.5);

/// One sample per (auction, participating bidder), sorted by
/// (auction_id, bidder_id). Bidders missing from histories get brbi = 0 and
/// the configured bid_retraction default.
std::vector<SBSample> build_samples(
    const std::vector<Auction>& auctions,
    const std::map<std::string, BidderHistory>& histories,
    const PipelineConfig& cfg);

/// Dataset header, bit-exact.
extern const char* const kSampleHeader[2 + kNumFeatures];

void write_samples(const std::string& path,
                   const std::vector<SBSample>& samples, char delim);

std::vector<SBSample> read_samples(const std::string& path, char delim);

}  // namespace sb

#endif  // SBPIPE_METRICS_HPP
