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

#ifndef SBPIPE_TEST_UTIL_HPP
#define SBPIPE_TEST_UTIL_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "records.hpp"

namespace sbtest {

/// Scratch directory, removed on destruction.
class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("sbpipe_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }
    std::string path() const { return path_.string(); }

  private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// The default auction input header in canonical column order.
inline std::string auction_header() {
    return "Product URL,Seller ID,Bidder ID,Bid Amount,Bid Currency,"
           "Bid Date,Bid Time,Auction Start Date,Auction Start Time,"
           "Duration,Opening Price,Winning Price,Number of Bids";
}

/// One auction input row with sane defaults.
inline std::string auction_row(const std::string& bidder,
                               const std::string& amount = "150.00",
                               const std::string& currency = "USD",
                               const std::string& bid_date = "2017-04-02",
                               const std::string& bid_time = "12:00:00",
                               const std::string& seller = "s1",
                               const std::string& url = "u1",
                               const std::string& duration = "7 Days",
                               const std::string& opening = "100.00",
                               const std::string& winning = "150.00",
                               const std::string& n_bids = "1") {
    return url + "," + seller + "," + bidder + "," + amount + "," + currency +
           "," + bid_date + "," + bid_time + ",2017-04-01,00:00:00," +
           duration + "," + opening + "," + winning + "," + n_bids;
}

inline std::string history_header() {
    return "Bidder ID,Buyer Rating,Items Bid On 30 Days,"
           "Bid Retractions 30 Days,Activity With Seller";
}

/// An auction with bids given as (bidder, time, amount) triples.
inline sb::Auction make_auction(
    long id, const std::string& seller, int duration_days, double opening,
    const std::vector<std::tuple<std::string, double, double>>& bids,
    const std::string& product_url = "", std::int64_t start_epoch_s = 0) {
    sb::Auction a;
    a.auction_id = id;
    a.seller_id = seller;
    a.product_url = product_url;
    a.duration_days = duration_days;
    a.opening_price_usd = opening;
    a.start_epoch_s = start_epoch_s;
    double max_amount = 0.0;
    for (const auto& [bidder, t, amount] : bids) {
        sb::CleanBid b;
        b.auction_id = id;
        b.bidder_id = bidder;
        b.seller_id = seller;
        b.bid_time = t;
        b.bid_amount_usd = amount;
        b.duration_days = duration_days;
        a.bids.push_back(std::move(b));
        max_amount = std::max(max_amount, amount);
    }
    std::sort(a.bids.begin(), a.bids.end(),
              [](const sb::CleanBid& x, const sb::CleanBid& y) {
                  return x.bid_time < y.bid_time;
              });
    a.winning_price_usd = max_amount;
    a.n_bids = static_cast<long>(a.bids.size());
    return a;
}

}  // namespace sbtest

#endif  // SBPIPE_TEST_UTIL_HPP
