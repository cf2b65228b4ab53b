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

#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "csv.hpp"
#include "error.hpp"
#include "time_util.hpp"

namespace sb {

namespace {

// 2017-04-01 00:00:00, matching the scrape period the generated data mimics
constexpr std::int64_t kBaseEpoch = 17257LL * 86400;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Portable uniform helpers over a raw 64-bit stream; every draw is fully
// determined by the seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {}

    std::uint64_t next() {
        state_ = splitmix64(state_);
        return state_;
    }

    double u01() { return (next() >> 11) * 0x1.0p-53; }

    // inclusive range
    long uniform(long lo, long hi) {
        return lo + static_cast<long>(next() %
                                      static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

double round_cents(double v) { return std::round(v * 100.0) / 100.0; }

std::string seller_name(long i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "s%03ld", i + 1);
    return buf;
}

std::string honest_name(long i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "h%04ld", i + 1);
    return buf;
}

std::string shill_name(long i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "x%03ld", i + 1);
    return buf;
}

std::string product_name(long i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf),
                  "https://auctions.example/item/%06ld", i + 1);
    return buf;
}

std::string duration_text(int days) {
    return std::to_string(days) + (days == 1 ? " Day" : " Days");
}

struct PlannedBid {
    std::string bidder_id;
    double t = 0.0;  // fractional days
};

}  // namespace

SynthResult generate(const SynthConfig& cfg) {
    if (cfg.n_auctions <= 0 || cfg.n_honest_bidders <= 0 ||
        cfg.n_sellers <= 0) {
        throw Error(ErrorKind::Config, "synth counts must be positive");
    }
    if (cfg.n_shills > 0 && cfg.shill.bid_share_target >= 1.0) {
        throw Error(ErrorKind::Config,
                    "infeasible shill profile: bid_share_target must be "
                    "below 1 when honest bidders participate");
    }
    if (cfg.opening_price_max < cfg.opening_price_min ||
        cfg.opening_price_min <= 0) {
        throw Error(ErrorKind::Config, "bad synth opening price range");
    }

    const long products_needed =
        (cfg.n_auctions + cfg.n_sellers - 1) / cfg.n_sellers;
    const long n_products = std::max(cfg.n_products, products_needed);

    // shill -> auction assignment: each seller's shills take consecutive
    // disjoint chunks of that seller's auction list
    std::vector<std::vector<long>> seller_auctions(cfg.n_sellers);
    for (long i = 0; i < cfg.n_auctions; ++i) {
        seller_auctions[i % cfg.n_sellers].push_back(i);
    }
    std::vector<long> auction_shill(cfg.n_auctions, -1);
    std::vector<ShillInfo> shills(cfg.n_shills);
    {
        std::vector<long> used(cfg.n_sellers, 0);
        for (long j = 0; j < cfg.n_shills; ++j) {
            const long seller = j % cfg.n_sellers;
            auto& pool = seller_auctions[seller];
            long& offset = used[seller];
            const long take = std::min(cfg.shill.auctions_per_shill,
                                       static_cast<long>(pool.size()) - offset);
            if (take <= 0) {
                throw Error(ErrorKind::Config,
                            "infeasible shill profile: seller " +
                                seller_name(seller) +
                                " has no auctions left for shill " +
                                shill_name(j));
            }
            for (long t = 0; t < take; ++t) {
                auction_shill[pool[offset + t]] = j;
            }
            offset += take;
            shills[j].bidder_id = shill_name(j);
            shills[j].target_seller = seller_name(seller);
            shills[j].participations = take;
            shills[j].min_auction_bids = 0;
        }
    }

    SynthResult res;
    const auto& sp = cfg.shill;
    for (long i = 0; i < cfg.n_auctions; ++i) {
        // per-auction substream, so auctions could generate in parallel
        // without changing the output
        Rng rng(splitmix64(cfg.seed * 0x9e3779b97f4a7c15ULL +
                           static_cast<std::uint64_t>(i)));
        const std::string seller = seller_name(i % cfg.n_sellers);
        const std::string product = product_name(i / cfg.n_sellers);
        const std::int64_t start =
            kBaseEpoch + rng.uniform(0, 79) * 86400 + rng.uniform(0, 86399);
        const int duration =
            cfg.durations[rng.uniform(0, static_cast<long>(cfg.durations.size()) - 1)];
        const double opening = round_cents(
            cfg.opening_price_min +
            rng.u01() * (cfg.opening_price_max - cfg.opening_price_min));

        // honest participants with per-bidder bid counts
        const long k = rng.uniform(3, 5);
        std::vector<long> honest_idx;
        while (static_cast<long>(honest_idx.size()) < k) {
            long h = rng.uniform(0, cfg.n_honest_bidders - 1);
            if (std::find(honest_idx.begin(), honest_idx.end(), h) ==
                honest_idx.end()) {
                honest_idx.push_back(h);
            }
        }
        const long winner_slot = rng.uniform(0, k - 1);

        const long shill_j = auction_shill[i];
        const bool forced_honest_winner = shill_j >= 0 && sp.avoid_winning;

        std::vector<PlannedBid> bids;
        long honest_bid_count = 0;
        for (long slot = 0; slot < k; ++slot) {
            const std::string id = honest_name(honest_idx[slot]);
            long count = rng.uniform(1, 4);
            for (long c = 0; c < count; ++c) {
                double t;
                if (forced_honest_winner) {
                    // keep the window past the shill's stop fraction free
                    // for the winning bid
                    t = rng.u01() * 0.95 * duration;
                } else {
                    t = rng.u01() * duration;
                }
                bids.push_back({id, t});
            }
            honest_bid_count += count;
        }
        if (forced_honest_winner) {
            const double t_win =
                duration * (0.97 + 0.02 * rng.u01());
            bids.push_back({honest_name(honest_idx[winner_slot]), t_win});
            ++honest_bid_count;
        }

        if (shill_j >= 0) {
            const double share = sp.bid_share_target;
            const long s = std::max<long>(
                1, static_cast<long>(
                       std::ceil(share * honest_bid_count / (1.0 - share))));
            const double t0 = rng.u01() * 0.9 * sp.early_bid_fraction * duration;
            const double t_stop = sp.stop_fraction * 0.95 * duration;
            bids.push_back({shills[shill_j].bidder_id, t0});
            for (long c = 1; c < s; ++c) {
                const double t = t0 + rng.u01() * std::max(0.0, t_stop - t0);
                bids.push_back({shills[shill_j].bidder_id, t});
            }
        }

        std::stable_sort(bids.begin(), bids.end(),
                         [](const PlannedBid& a, const PlannedBid& b) {
                             return a.t < b.t;
                         });

        // quantize to whole seconds, keep strictly increasing, and assign
        // ascending amounts so the English-auction order holds
        std::vector<std::int64_t> epochs(bids.size());
        std::int64_t prev = start - 1;
        for (size_t b = 0; b < bids.size(); ++b) {
            std::int64_t e =
                start + static_cast<std::int64_t>(std::llround(
                            bids[b].t * 86400.0));
            if (e <= prev) e = prev + 1;
            epochs[b] = e;
            prev = e;
        }
        double amount = opening;
        std::vector<double> amounts(bids.size());
        for (size_t b = 0; b < bids.size(); ++b) {
            amount = round_cents(amount + 0.5 + rng.u01() * 15.0);
            amounts[b] = amount;
        }

        double declared_winning = amounts.empty() ? opening : amounts.back();
        long declared_n = static_cast<long>(bids.size());
        if (cfg.plant_inconsistency_fraction > 0.0 &&
            rng.u01() < cfg.plant_inconsistency_fraction) {
            declared_winning = round_cents(declared_winning * 0.9);
            declared_n += rng.uniform(1, 10);
        }

        const std::string start_date = format_date(start);
        const std::string start_time = format_time(start);
        for (size_t b = 0; b < bids.size(); ++b) {
            RawBidRecord r;
            r.product_url = product;
            r.seller_id = seller;
            r.bidder_id = bids[b].bidder_id;
            r.bid_amount = amounts[b];
            r.bid_currency = "USD";
            r.bid_date = format_date(epochs[b]);
            r.bid_time = format_time(epochs[b]);
            r.auction_start_date = start_date;
            r.auction_start_time = start_time;
            r.duration_text = duration_text(duration);
            r.opening_price = opening;
            r.declared_winning_price = declared_winning;
            r.declared_n_bids = declared_n;
            res.auction_records.push_back(std::move(r));
        }

        if (shill_j >= 0) {
            const long total = static_cast<long>(bids.size());
            auto& info = shills[shill_j];
            if (info.min_auction_bids == 0 || total < info.min_auction_bids) {
                info.min_auction_bids = total;
            }
        }
    }

    // bidder histories
    for (long h = 0; h < cfg.n_honest_bidders; ++h) {
        Rng rng(splitmix64(cfg.seed * 0x51ed2701ULL + 7919 + h));
        RawHistoryRecord r;
        r.bidder_id = honest_name(h);
        r.buyer_rating = rng.uniform(1, 400);
        r.items_bid_on_30d = rng.uniform(0, 20);
        r.n_bid_retractions_30d = 0;
        r.activity_with_seller_raw = std::to_string(rng.uniform(0, 60)) + "%";
        res.history_records.push_back(std::move(r));
        res.truth[honest_name(h)] = "honest";
    }
    for (long j = 0; j < cfg.n_shills; ++j) {
        RawHistoryRecord r;
        r.bidder_id = shills[j].bidder_id;
        r.buyer_rating = sp.zero_rating ? 0 : 50;
        r.items_bid_on_30d = sp.items_30d;
        r.n_bid_retractions_30d = sp.retractions;
        r.activity_with_seller_raw = "90%";
        res.history_records.push_back(std::move(r));
        res.truth[shills[j].bidder_id] = "shill";
    }

    res.shills = std::move(shills);
    return res;
}

std::vector<ExpectedBounds> expected_metrics(const SynthResult& result,
                                             const SynthConfig& cfg,
                                             long p_min) {
    std::vector<ExpectedBounds> bounds;
    const auto& sp = cfg.shill;
    for (const auto& s : result.shills) {
        ExpectedBounds b;
        b.bidder_id = s.bidder_id;
        b.min_early_bidding = 1.0 - sp.early_bid_fraction;
        b.min_last_bidding = 1.0 - sp.stop_fraction;
        b.min_bidding_ratio =
            sp.bid_share_target -
            (s.min_auction_bids > 0 ? 1.0 / s.min_auction_bids : 0.0);
        b.winning_ratio_is_one = sp.avoid_winning && s.participations >= p_min;
        b.brbi_is_one = sp.zero_rating && sp.items_30d >= 5;
        bounds.push_back(std::move(b));
    }
    return bounds;
}

void write_truth(const std::string& path,
                 const std::map<std::string, std::string>& truth, char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({"bidder_id", "label"});
    for (const auto& [id, label] : truth) {
        writer.write_row({id, label});
    }
}

}  // namespace sb
