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

#include "preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "csv.hpp"
#include "error.hpp"
#include "ingest.hpp"
#include "time_util.hpp"

namespace sb {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

template <typename T>
std::vector<T> dedup_keep_first(const std::vector<T>& records, long* removed) {
    std::vector<T> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        // quadratic scan; fixture sizes here never make this a bottleneck
        bool seen = false;
        for (const auto& o : out) {
            if (o == r) {
                seen = true;
                break;
            }
        }
        if (seen) {
            if (removed) ++*removed;
        } else {
            out.push_back(r);
        }
    }
    return out;
}

std::string money(double v) { return csv::format_real(v, 2); }

}  // namespace

std::vector<RawBidRecord> deduplicate(const std::vector<RawBidRecord>& records) {
    return dedup_keep_first(records, nullptr);
}

std::vector<RawHistoryRecord> deduplicate(
    const std::vector<RawHistoryRecord>& records) {
    return dedup_keep_first(records, nullptr);
}

std::pair<std::vector<RawBidRecord>, long> drop_masked(
    const std::vector<RawBidRecord>& records) {
    std::vector<RawBidRecord> kept;
    kept.reserve(records.size());
    long dropped = 0;
    for (const auto& r : records) {
        if (is_masked_id(r.bidder_id)) ++dropped;
        else kept.push_back(r);
    }
    return {std::move(kept), dropped};
}

double convert_currency(double amount, const std::string& code,
                        const RateTable& rates) {
    if (code == "USD") return amount;
    auto it = rates.find(code);
    if (it == rates.end()) {
        throw Error(ErrorKind::Invalid,
                    "no exchange rate configured for currency '" + code + "'");
    }
    return amount * it->second;
}

int parse_duration(const std::string& text) {
    const std::string t = lower(trim(text));
    long n = 0;
    const char* b = t.data();
    const char* e = b + t.size();
    auto [p, ec] = std::from_chars(b, e, n);
    if (ec != std::errc() || p == b) {
        throw Error(ErrorKind::Parse, "unrecognized duration: '" + text + "'");
    }
    std::string rest = trim(std::string(p, e));
    if (rest != "day" && rest != "days") {
        throw Error(ErrorKind::Parse, "unrecognized duration: '" + text + "'");
    }
    if (n != 1 && n != 3 && n != 5 && n != 7 && n != 10) {
        throw Error(ErrorKind::Parse,
                    "duration outside {1,3,5,7,10}: '" + text + "'");
    }
    return static_cast<int>(n);
}

double percentage_to_fraction(const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t.back() == '%') t = trim(t.substr(0, t.size() - 1));
    double v = 0.0;
    const char* b = t.data();
    const char* e = b + t.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || t.empty()) {
        throw Error(ErrorKind::Parse, "unrecognized percentage: '" + text + "'");
    }
    if (v < 0.0 || v > 100.0) {
        throw Error(ErrorKind::Parse,
                    "percentage outside [0,100]: '" + text + "'");
    }
    return v / 100.0;
}

std::map<std::pair<std::string, std::string>, long> assign_auction_ids(
    const std::vector<RawBidRecord>& records) {
    std::map<std::pair<std::string, std::string>, long> ids;
    long next = 1;
    for (const auto& r : records) {
        auto key = std::make_pair(r.seller_id, r.product_url);
        if (ids.emplace(key, next).second) ++next;
    }
    return ids;
}

std::pair<std::vector<Auction>, long> group_auctions(
    const std::vector<CleanBid>& bids,
    const std::map<long, AuctionMeta>& metas) {
    std::map<long, std::vector<CleanBid>> by_auction;
    for (const auto& b : bids) by_auction[b.auction_id].push_back(b);

    std::vector<Auction> out;
    long excluded = 0;
    for (const auto& [id, meta] : metas) {
        auto it = by_auction.find(id);
        if (it == by_auction.end() || it->second.empty()) {
            ++excluded;
            continue;
        }
        Auction a;
        a.auction_id = id;
        a.seller_id = meta.seller_id;
        a.product_url = meta.product_url;
        a.duration_days = meta.duration_days;
        a.opening_price_usd = meta.opening_price_usd;
        a.winning_price_usd = meta.declared_winning_usd;
        a.n_bids = meta.declared_n_bids;
        a.start_epoch_s = meta.start_epoch_s;
        a.bids = it->second;
        std::sort(a.bids.begin(), a.bids.end(),
                  [](const CleanBid& x, const CleanBid& y) {
                      if (x.bid_time != y.bid_time) return x.bid_time < y.bid_time;
                      if (x.bid_amount_usd != y.bid_amount_usd)
                          return x.bid_amount_usd < y.bid_amount_usd;
                      return x.bidder_id < y.bidder_id;
                  });
        out.push_back(std::move(a));
    }
    // metas is an ordered map, so out is already sorted by auction_id
    return {std::move(out), excluded};
}

std::vector<Repair> repair_consistency(Auction& a) {
    std::vector<Repair> repairs;
    if (a.bids.empty()) return repairs;

    double max_bid = a.bids.front().bid_amount_usd;
    for (const auto& b : a.bids) max_bid = std::max(max_bid, b.bid_amount_usd);
    if (a.winning_price_usd != max_bid) {
        repairs.push_back({a.auction_id, "winning_price_usd",
                           money(a.winning_price_usd), money(max_bid)});
        a.winning_price_usd = max_bid;
    }
    const long count = static_cast<long>(a.bids.size());
    if (a.n_bids != count) {
        repairs.push_back({a.auction_id, "n_bids", std::to_string(a.n_bids),
                           std::to_string(count)});
        a.n_bids = count;
    }
    return repairs;
}

PreprocessResult run_preprocess(const std::vector<RawBidRecord>& records,
                                const ParseReport& bid_report,
                                const std::vector<RawHistoryRecord>& history,
                                const ParseReport& history_report,
                                const PipelineConfig& cfg) {
    PreprocessResult res;
    res.accounting.rows_read = bid_report.rows_read;
    res.accounting.parse_defects =
        bid_report.rows_read - bid_report.rows_accepted;

    // cleansing: duplicates, then masked ids
    long dup_removed = 0;
    auto unique = dedup_keep_first(records, &dup_removed);
    res.accounting.duplicates_removed = dup_removed;
    auto [kept, masked] = drop_masked(unique);
    res.accounting.masked_dropped = masked;

    // reformatting and merging; failures here flag the record, not the run
    std::vector<RawBidRecord> converted;
    std::vector<CleanBid> clean;
    struct Converted {
        int duration = 0;
        double amount_usd = 0.0;
        double opening_usd = 0.0;
        double winning_usd = 0.0;
        double bid_time = 0.0;
        std::int64_t start_epoch = 0;
    };
    std::vector<Converted> conv;
    for (size_t i = 0; i < kept.size(); ++i) {
        const auto& r = kept[i];
        const long ordinal = static_cast<long>(i) + 1;
        try {
            Converted c;
            c.duration = parse_duration(r.duration_text);
            c.amount_usd = convert_currency(r.bid_amount, r.bid_currency,
                                            cfg.rates);
            c.opening_usd = convert_currency(r.opening_price, r.bid_currency,
                                             cfg.rates);
            c.winning_usd = convert_currency(r.declared_winning_price,
                                             r.bid_currency, cfg.rates);
            c.bid_time = compute_bid_time(r.auction_start_date,
                                          r.auction_start_time, r.bid_date,
                                          r.bid_time);
            c.start_epoch =
                epoch_seconds(r.auction_start_date, r.auction_start_time);
            converted.push_back(r);
            conv.push_back(c);
        } catch (const Error& e) {
            res.defects.push_back({ordinal, "auction_record", e.what()});
            ++res.accounting.stage_defects;
        }
    }

    const auto ids = assign_auction_ids(converted);
    std::map<long, AuctionMeta> metas;
    for (size_t i = 0; i < converted.size(); ++i) {
        const auto& r = converted[i];
        const auto& c = conv[i];
        const long id = ids.at({r.seller_id, r.product_url});

        CleanBid b;
        b.auction_id = id;
        b.bidder_id = r.bidder_id;
        b.seller_id = r.seller_id;
        b.bid_time = c.bid_time;
        b.bid_amount_usd = c.amount_usd;
        b.duration_days = c.duration;
        clean.push_back(std::move(b));

        if (!metas.count(id)) {
            AuctionMeta m;
            m.auction_id = id;
            m.seller_id = r.seller_id;
            m.product_url = r.product_url;
            m.duration_days = c.duration;
            m.opening_price_usd = c.opening_usd;
            m.declared_winning_usd = c.winning_usd;
            m.declared_n_bids = r.declared_n_bids;
            m.start_epoch_s = c.start_epoch;
            metas.emplace(id, std::move(m));
        }
    }
    res.accounting.bids_out = static_cast<long>(clean.size());

    auto [auctions, excluded] = group_auctions(clean, metas);
    res.zero_bid_auctions = excluded;
    for (auto& a : auctions) {
        auto reps = repair_consistency(a);
        res.repairs.insert(res.repairs.end(), reps.begin(), reps.end());
    }
    res.auctions = std::move(auctions);

    // bidder history: same cleansing, then percentage reformatting
    long hist_dups = 0;
    auto hist_unique = dedup_keep_first(history, &hist_dups);
    res.history_duplicates_removed = hist_dups;
    std::map<std::string, BidderHistory> by_bidder;
    for (size_t i = 0; i < hist_unique.size(); ++i) {
        const auto& r = hist_unique[i];
        if (is_masked_id(r.bidder_id)) {
            ++res.history_masked_dropped;
            continue;
        }
        if (by_bidder.count(r.bidder_id)) continue;  // keep first per bidder
        try {
            BidderHistory h;
            h.bidder_id = r.bidder_id;
            h.buyer_rating = r.buyer_rating;
            h.items_bid_on_30d = r.items_bid_on_30d;
            h.n_bid_retractions_30d = r.n_bid_retractions_30d;
            h.activity_with_seller =
                percentage_to_fraction(r.activity_with_seller_raw);
            by_bidder.emplace(h.bidder_id, std::move(h));
        } catch (const Error& e) {
            res.defects.push_back({static_cast<long>(i) + 1,
                                   "activity_with_seller", e.what()});
        }
    }
    res.histories.reserve(by_bidder.size());
    for (auto& [id, h] : by_bidder) res.histories.push_back(std::move(h));

    (void)history_report;
    return res;
}

}  // namespace sb
