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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "csv.hpp"
#include "error.hpp"

namespace sb {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

struct BidderSpan {
    double first = 0.0;
    double last = 0.0;
    long count = 0;
};

// first/last bid time and bid count per bidder of one auction
std::map<std::string, BidderSpan> spans_of(const Auction& a) {
    std::map<std::string, BidderSpan> spans;
    for (const auto& b : a.bids) {
        auto [it, inserted] = spans.try_emplace(b.bidder_id);
        if (inserted) {
            it->second.first = b.bid_time;
            it->second.last = b.bid_time;
        } else {
            it->second.first = std::min(it->second.first, b.bid_time);
            it->second.last = std::max(it->second.last, b.bid_time);
        }
        ++it->second.count;
    }
    return spans;
}

}  // namespace

std::string DatasetContext::winner_of(const Auction& a) {
    if (a.bids.empty()) return {};
    const CleanBid* best = &a.bids.front();
    for (const auto& b : a.bids) {
        if (b.bid_amount_usd > best->bid_amount_usd) best = &b;
    }
    return best->bidder_id;  // bids are time-sorted, so the earliest max wins
}

DatasetContext::DatasetContext(const std::vector<Auction>& auctions,
                               const PipelineConfig& cfg)
    : auctions_(auctions) {
    if (cfg.ref_price_mode == RefPriceMode::Fixed) {
        ref_price_ = cfg.ref_price_value;
    } else {
        double sum = 0.0;
        for (const auto& a : auctions) sum += a.winning_price_usd;
        ref_price_ = auctions.empty() ? 0.0 : sum / auctions.size();
    }
    if (ref_price_ <= 0.0 && !auctions.empty()) {
        throw Error(ErrorKind::Invalid,
                    "reference price must be positive; check "
                    "metrics.ref_price_value or the input prices");
    }

    for (const auto& a : auctions) {
        std::set<std::string> bidders;
        for (const auto& b : a.bids) bidders.insert(b.bidder_id);
        for (const auto& id : bidders) {
            ++participations_[id];
            ++with_seller_[{id, a.seller_id}];
        }
        ++wins_[winner_of(a)];
    }

    // concurrency: same product URL, overlapping [start, start+duration].
    // Auctions without product info have no identifiable concurrency.
    for (const auto& a : auctions_) {
        if (a.product_url.empty()) {
            concurrent_mean_[a.auction_id] = 0.0;
            continue;
        }
        const std::int64_t a_end =
            a.start_epoch_s + std::int64_t(a.duration_days) * 86400;
        double sum = 0.0;
        long count = 0;
        for (const auto& o : auctions_) {
            if (o.auction_id == a.auction_id) continue;
            if (o.product_url != a.product_url) continue;
            const std::int64_t o_end =
                o.start_epoch_s + std::int64_t(o.duration_days) * 86400;
            if (a.start_epoch_s <= o_end && o.start_epoch_s <= a_end) {
                sum += static_cast<double>(o.n_bids);
                ++count;
            }
        }
        concurrent_mean_[a.auction_id] = count ? sum / count : 0.0;
    }
}

long DatasetContext::participations(const std::string& bidder) const {
    auto it = participations_.find(bidder);
    return it == participations_.end() ? 0 : it->second;
}

long DatasetContext::wins(const std::string& bidder) const {
    auto it = wins_.find(bidder);
    return it == wins_.end() ? 0 : it->second;
}

long DatasetContext::auctions_with_seller(const std::string& bidder,
                                          const std::string& seller) const {
    auto it = with_seller_.find({bidder, seller});
    return it == with_seller_.end() ? 0 : it->second;
}

double DatasetContext::concurrent_mean_bids(const Auction& a) const {
    auto it = concurrent_mean_.find(a.auction_id);
    return it == concurrent_mean_.end() ? 0.0 : it->second;
}

double opening_price_metric(const Auction& a, double ref_price) {
    return clamp01(1.0 - a.opening_price_usd / ref_price);
}

double early_bidding(const Auction& a, const std::string& bidder) {
    const auto spans = spans_of(a);
    const auto& s = spans.at(bidder);
    return 1.0 - s.first / a.duration_days;
}

double last_bidding(const Auction& a, const std::string& bidder) {
    const auto spans = spans_of(a);
    const auto& s = spans.at(bidder);
    return 1.0 - s.last / a.duration_days;
}

double bidding_ratio(const Auction& a, const std::string& bidder) {
    const auto spans = spans_of(a);
    const auto& s = spans.at(bidder);
    return static_cast<double>(s.count) / static_cast<double>(a.n_bids);
}

double auction_bids(const Auction& a, double concurrent_mean) {
    if (concurrent_mean <= 0.0) return 0.0;
    return clamp01(1.0 - concurrent_mean / static_cast<double>(a.n_bids));
}

double buyer_tendency(const std::string& bidder, const std::string& seller,
                      const DatasetContext& ctx) {
    const long total = ctx.participations(bidder);
    if (total == 0) return 0.0;
    return static_cast<double>(ctx.auctions_with_seller(bidder, seller)) /
           static_cast<double>(total);
}

double winning_ratio(const std::string& bidder, const DatasetContext& ctx,
                     long p_min) {
    const long p = ctx.participations(bidder);
    if (p < p_min) return 0.0;
    const long w = ctx.wins(bidder);
    return 1.0 - static_cast<double>(w) / static_cast<double>(p);
}

double brbi(long buyer_rating, long items_30d) {
    if (buyer_rating < 0 || items_30d < 0) {
        throw Error(ErrorKind::Invalid, "brbi inputs must be non-negative");
    }
    if (buyer_rating == 0) {
        return items_30d >= 5 ? 1.0 : 0.0;
    }
    if (buyer_rating < items_30d) {
        return static_cast<double>(buyer_rating) /
               static_cast<double>(items_30d);
    }
    return 0.0;
}

double bid_retraction(long n_retractions, double activity_with_seller,
                      double default_value) {
    if (activity_with_seller < 0.0 || activity_with_seller > 1.0) {
        throw Error(ErrorKind::Invalid,
                    "activity_with_seller must lie in [0,1]");
    }
    if (n_retractions >= 1 && activity_with_seller == 1.0) return 1.0;
    if (n_retractions >= 1 && activity_with_seller >= 0.7) return 0.5;
    return default_value;
}

std::vector<SBSample> build_samples(
    const std::vector<Auction>& auctions,
    const std::map<std::string, BidderHistory>& histories,
    const PipelineConfig& cfg) {
    DatasetContext ctx(auctions, cfg);

    std::vector<SBSample> samples;
    for (const auto& a : auctions) {
        const auto spans = spans_of(a);
        const double opening = opening_price_metric(a, ctx.ref_price());
        const double conc = ctx.concurrent_mean_bids(a);
        const double a_bids = auction_bids(a, conc);
        for (const auto& [bidder, span] : spans) {
            SBSample s;
            s.auction_id = a.auction_id;
            s.bidder_id = bidder;
            s.opening_price_m = opening;
            s.early_bidding = 1.0 - span.first / a.duration_days;
            s.last_bidding = 1.0 - span.last / a.duration_days;
            s.bidding_ratio = static_cast<double>(span.count) /
                              static_cast<double>(a.n_bids);
            s.auction_bids = a_bids;
            s.buyer_tendency = buyer_tendency(bidder, a.seller_id, ctx);
            s.winning_ratio = winning_ratio(bidder, ctx, cfg.p_min);
            auto it = histories.find(bidder);
            if (it != histories.end()) {
                s.brbi = brbi(it->second.buyer_rating,
                              it->second.items_bid_on_30d);
                s.bid_retraction = bid_retraction(
                    it->second.n_bid_retractions_30d,
                    it->second.activity_with_seller, cfg.br_default);
            } else {
                // no history is not evidence of fraud
                s.brbi = 0.0;
                s.bid_retraction = cfg.br_default;
            }
            samples.push_back(std::move(s));
        }
    }
    std::sort(samples.begin(), samples.end(),
              [](const SBSample& x, const SBSample& y) {
                  if (x.auction_id != y.auction_id)
                      return x.auction_id < y.auction_id;
                  return x.bidder_id < y.bidder_id;
              });
    return samples;
}

const char* const kSampleHeader[2 + kNumFeatures] = {
    "auction_id",     "bidder_id",      "opening_price_m",
    "early_bidding",  "last_bidding",   "bidding_ratio",
    "auction_bids",   "buyer_tendency", "winning_ratio",
    "brbi",           "bid_retraction",
};

void write_samples(const std::string& path,
                   const std::vector<SBSample>& samples, char delim) {
    csv::Writer writer(path, delim);
    std::vector<std::string> header(kSampleHeader,
                                    kSampleHeader + 2 + kNumFeatures);
    writer.write_row(header);
    for (const auto& s : samples) {
        std::vector<std::string> row = {std::to_string(s.auction_id),
                                        s.bidder_id};
        for (int f = 0; f < kNumFeatures; ++f) {
            row.push_back(csv::format_real(get_feature(s, f), 5));
        }
        writer.write_row(row);
    }
}

std::vector<SBSample> read_samples(const std::string& path, char delim) {
    csv::Reader reader(path, delim);
    if (reader.header().size() != 2 + kNumFeatures) {
        throw Error(ErrorKind::Parse, "unexpected sample header in " + path);
    }
    for (int i = 0; i < 2 + kNumFeatures; ++i) {
        if (reader.header()[i] != kSampleHeader[i]) {
            throw Error(ErrorKind::Parse,
                        "unexpected sample column '" + reader.header()[i] +
                            "' in " + path);
        }
    }
    std::vector<SBSample> samples;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (row.size() != 2 + kNumFeatures) {
            throw Error(ErrorKind::Parse,
                        "bad sample row " + std::to_string(reader.row_number()) +
                            " in " + path);
        }
        SBSample s;
        s.auction_id = std::stol(row[0]);
        s.bidder_id = row[1];
        for (int f = 0; f < kNumFeatures; ++f) {
            set_feature(s, f, std::stod(row[2 + f]));
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace sb
