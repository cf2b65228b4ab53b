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

#include <cmath>
#include <cstdint>

#include <doctest.h>

#include "error.hpp"
#include "preprocess.hpp"
#include "time_util.hpp"
#include "test_util.hpp"

using namespace sb;
using namespace sbtest;

namespace {

RawBidRecord rec(const std::string& bidder, double amount = 100.0,
                 const std::string& seller = "s1",
                 const std::string& url = "u1") {
    RawBidRecord r;
    r.product_url = url;
    r.seller_id = seller;
    r.bidder_id = bidder;
    r.bid_amount = amount;
    r.bid_currency = "USD";
    r.bid_date = "2017-04-02";
    r.bid_time = "12:00:00";
    r.auction_start_date = "2017-04-01";
    r.auction_start_time = "00:00:00";
    r.duration_text = "7 Days";
    r.opening_price = 50.0;
    r.declared_winning_price = amount;
    r.declared_n_bids = 1;
    return r;
}

// tiny deterministic generator for property checks
struct Lcg {
    std::uint64_t s = 12345;
    std::uint64_t next() { return s = s * 6364136223846793005ULL + 1442695040888963407ULL; }
};

}  // namespace

TEST_CASE("deduplicate keeps the first occurrence") {
    auto r1 = rec("b1"), r2 = rec("b2");
    CHECK(deduplicate({r1, r1, r2}) == std::vector<RawBidRecord>{r1, r2});
    CHECK(deduplicate({r1, r2}) == std::vector<RawBidRecord>{r1, r2});
}

TEST_CASE("deduplicate is idempotent on random fixtures") {
    Lcg rng;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RawBidRecord> records;
        const int n = 1 + rng.next() % 20;
        for (int i = 0; i < n; ++i) {
            records.push_back(rec("b" + std::to_string(rng.next() % 5),
                                  100.0 + rng.next() % 3));
        }
        auto once = deduplicate(records);
        CHECK(deduplicate(once) == once);
    }
}

TEST_CASE("drop_masked") {
    SUBCASE("all masked") {
        auto [kept, dropped] = drop_masked({rec("****"), rec(""), rec("  ")});
        CHECK(kept.empty());
        CHECK(dropped == 3);
    }
    SUBCASE("none masked") {
        std::vector<RawBidRecord> in = {rec("b1"), rec("a***e")};
        auto [kept, dropped] = drop_masked(in);
        CHECK(kept == in);
        CHECK(dropped == 0);
    }
    SUBCASE("mixed fixture of 10 with 3 masked") {
        std::vector<RawBidRecord> in;
        for (int i = 0; i < 7; ++i) in.push_back(rec("b" + std::to_string(i)));
        in.insert(in.begin() + 2, rec("****"));
        in.insert(in.begin() + 5, rec(""));
        in.push_back(rec("***"));
        auto [kept, dropped] = drop_masked(in);
        CHECK(kept.size() == 7);
        CHECK(dropped == 3);
    }
}

TEST_CASE("compute_bid_time") {
    CHECK(compute_bid_time("2017-04-01", "08:30:00", "2017-04-01",
                           "08:30:00") == doctest::Approx(0.0));
    CHECK(compute_bid_time("2017-04-01", "00:00:00", "2017-04-01",
                           "12:00:00") == doctest::Approx(0.5));
    // one day plus 6:52:08
    CHECK(compute_bid_time("2017-04-01", "00:00:00", "2017-04-02",
                           "06:52:08") == doctest::Approx(1.2862).epsilon(1e-4));
    CHECK_THROWS_WITH_AS(compute_bid_time("2017-04-01", "00:00:00",
                                          "2017-13-01", "00:00:00"),
                         doctest::Contains("bid"), Error);
    CHECK_THROWS_WITH_AS(compute_bid_time("bogus", "00:00:00", "2017-04-01",
                                          "00:00:00"),
                         doctest::Contains("auction start"), Error);
}

TEST_CASE("compute_bid_time agrees with a seconds-arithmetic oracle") {
    Lcg rng;
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t start_day = 17200 + rng.next() % 200;
        const std::int64_t bid_day = 17200 + rng.next() % 200;
        const std::int64_t start_sec = rng.next() % 86400;
        const std::int64_t bid_sec = rng.next() % 86400;

        const std::string sd = format_date(start_day * 86400);
        const std::string bd = format_date(bid_day * 86400);
        const std::string st = format_time(start_sec);
        const std::string bt = format_time(bid_sec);

        const double expected =
            static_cast<double>((bid_day - start_day) * 86400 +
                                (bid_sec - start_sec)) /
            86400.0;
        CHECK(compute_bid_time(sd, st, bd, bt) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("convert_currency") {
    RateTable rates = {{"GBP", 1.28}, {"CAD", 0.74}, {"EUR", 1.09}};
    CHECK(convert_currency(100.0, "USD", rates) == doctest::Approx(100.0));
    CHECK(convert_currency(100.0, "GBP", rates) == doctest::Approx(128.0));
    CHECK_THROWS_AS(convert_currency(250.0, "XYZ", rates), Error);
}

TEST_CASE("parse_duration") {
    CHECK(parse_duration("7 Days") == 7);
    CHECK(parse_duration("1 Day") == 1);
    CHECK(parse_duration("  10 days ") == 10);
    CHECK_THROWS_AS(parse_duration("2 Weeks"), Error);
    CHECK_THROWS_AS(parse_duration("2 Days"), Error);  // outside {1,3,5,7,10}
    CHECK_THROWS_AS(parse_duration("Days"), Error);
}

TEST_CASE("percentage_to_fraction") {
    CHECK(percentage_to_fraction("90%") == doctest::Approx(0.90));
    CHECK(percentage_to_fraction("100%") == doctest::Approx(1.0));
    CHECK(percentage_to_fraction("0%") == doctest::Approx(0.0));
    CHECK(percentage_to_fraction("45") == doctest::Approx(0.45));
    CHECK_THROWS_AS(percentage_to_fraction("130%"), Error);
    CHECK_THROWS_AS(percentage_to_fraction("-5%"), Error);
    CHECK_THROWS_AS(percentage_to_fraction("n/a"), Error);
}

TEST_CASE("assign_auction_ids: first-appearance ordinals") {
    std::vector<RawBidRecord> records = {rec("b1", 100, "s1", "u1"),
                                         rec("b2", 100, "s2", "u1"),
                                         rec("b3", 100, "s1", "u1")};
    auto ids = assign_auction_ids(records);
    CHECK(ids.at({"s1", "u1"}) == 1);
    CHECK(ids.at({"s2", "u1"}) == 2);
    CHECK(assign_auction_ids(records) == ids);  // deterministic
}

TEST_CASE("group_auctions groups, sorts, and excludes empty auctions") {
    std::vector<CleanBid> bids;
    auto bid = [](long auction, const std::string& bidder, double t,
                  double amount) {
        CleanBid b;
        b.auction_id = auction;
        b.bidder_id = bidder;
        b.seller_id = "s1";
        b.bid_time = t;
        b.bid_amount_usd = amount;
        b.duration_days = 7;
        return b;
    };
    bids.push_back(bid(2, "b1", 0.4, 120));
    bids.push_back(bid(1, "b2", 0.9, 150));
    bids.push_back(bid(1, "b3", 0.1, 110));
    bids.push_back(bid(2, "b4", 0.2, 100));
    bids.push_back(bid(1, "b5", 0.5, 130));

    std::map<long, AuctionMeta> metas;
    for (long id : {1L, 2L, 3L}) {
        AuctionMeta m;
        m.auction_id = id;
        m.seller_id = "s1";
        m.duration_days = 7;
        metas[id] = m;
    }
    auto [auctions, excluded] = group_auctions(bids, metas);
    REQUIRE(auctions.size() == 2);
    CHECK(excluded == 1);
    CHECK(auctions[0].auction_id == 1);
    CHECK(auctions[0].bids.size() == 3);
    CHECK(auctions[1].bids.size() == 2);
    for (const auto& a : auctions) {
        for (size_t i = 1; i < a.bids.size(); ++i) {
            CHECK(a.bids[i - 1].bid_time <= a.bids[i].bid_time);
        }
    }
}

TEST_CASE("repair_consistency") {
    SUBCASE("winning price repaired to the highest bid") {
        auto a = make_auction(1, "s1", 7, 50.0,
                              {{"b1", 0.1, 300.0}, {"b2", 0.5, 581.0}});
        a.winning_price_usd = 500.0;
        auto repairs = repair_consistency(a);
        REQUIRE(repairs.size() == 1);
        CHECK(repairs[0].field == "winning_price_usd");
        CHECK(a.winning_price_usd == doctest::Approx(581.0));
    }
    SUBCASE("bid count repaired") {
        std::vector<std::tuple<std::string, double, double>> bids;
        for (int i = 0; i < 60; ++i) {
            bids.push_back({"b" + std::to_string(i % 7), i * 0.1,
                            100.0 + i});
        }
        auto a = make_auction(1, "s1", 7, 50.0, bids);
        a.n_bids = 70;
        auto repairs = repair_consistency(a);
        REQUIRE(repairs.size() == 1);
        CHECK(repairs[0].field == "n_bids");
        CHECK(a.n_bids == 60);
    }
    SUBCASE("consistent auction untouched") {
        auto a = make_auction(1, "s1", 7, 50.0,
                              {{"b1", 0.1, 300.0}, {"b2", 0.5, 581.0}});
        CHECK(repair_consistency(a).empty());
    }
}

TEST_CASE("run_preprocess enforces every output invariant") {
    PipelineConfig cfg;
    cfg.rates = {{"GBP", 1.28}, {"CAD", 0.74}, {"EUR", 1.09}};

    std::vector<RawBidRecord> records;
    // auction (s1,u1): three bids, one duplicated, one masked, one GBP
    records.push_back(rec("b1", 100.0, "s1", "u1"));
    records.push_back(rec("b1", 100.0, "s1", "u1"));  // duplicate
    records.push_back(rec("****", 110.0, "s1", "u1"));  // masked
    auto gbp = rec("b2", 100.0, "s1", "u1");
    gbp.bid_currency = "GBP";
    records.push_back(gbp);
    // auction (s2,u2): one bid with no configured rate
    auto chf = rec("b3", 100.0, "s2", "u2");
    chf.bid_currency = "EUR";
    records.push_back(chf);

    ParseReport report;
    report.rows_read = 5;
    report.rows_accepted = 5;

    auto res = run_preprocess(records, report, {}, {}, cfg);
    CHECK(res.accounting.balanced());
    CHECK(res.accounting.duplicates_removed == 1);
    CHECK(res.accounting.masked_dropped == 1);
    CHECK(res.accounting.bids_out == 3);
    REQUIRE(res.auctions.size() == 2);

    for (const auto& a : res.auctions) {
        double max_bid = 0;
        for (const auto& b : a.bids) {
            max_bid = std::max(max_bid, b.bid_amount_usd);
            CHECK(b.bid_amount_usd > 0);
        }
        CHECK(a.winning_price_usd == doctest::Approx(max_bid));
        CHECK(a.n_bids == static_cast<long>(a.bids.size()));
    }
    // GBP bid converted: 100 * 1.28
    CHECK(res.auctions[0].bids[1].bid_amount_usd == doctest::Approx(128.0));
}

TEST_CASE("run_preprocess flags records it cannot convert") {
    PipelineConfig cfg;  // empty rate table
    auto r = rec("b1");
    r.bid_currency = "CAD";
    ParseReport report;
    report.rows_read = 1;
    report.rows_accepted = 1;
    auto res = run_preprocess({r}, report, {}, {}, cfg);
    CHECK(res.accounting.stage_defects == 1);
    CHECK(res.accounting.balanced());
    CHECK(res.auctions.empty());
}
