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

#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"

namespace sb {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::Config,
                    "config key '" + key + "': not a number: '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::Config,
                    "config key '" + key + "': not an integer: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw Error(ErrorKind::Config,
                "config key '" + key + "': not a boolean: '" + value + "'");
}

const std::set<std::string> kAuctionFields = {
    "product_url", "seller_id", "bidder_id", "bid_amount", "bid_currency",
    "bid_date", "bid_time", "auction_start_date", "auction_start_time",
    "duration", "opening_price", "winning_price", "n_bids"};

const std::set<std::string> kHistoryFields = {
    "bidder_id", "buyer_rating", "items_bid_on_30d",
    "n_bid_retractions_30d", "activity_with_seller"};

}  // namespace

std::map<std::string, std::string> default_auction_schema() {
    return {
        {"product_url", "Product URL"},
        {"seller_id", "Seller ID"},
        {"bidder_id", "Bidder ID"},
        {"bid_amount", "Bid Amount"},
        {"bid_currency", "Bid Currency"},
        {"bid_date", "Bid Date"},
        {"bid_time", "Bid Time"},
        {"auction_start_date", "Auction Start Date"},
        {"auction_start_time", "Auction Start Time"},
        {"duration", "Duration"},
        {"opening_price", "Opening Price"},
        {"winning_price", "Winning Price"},
        {"n_bids", "Number of Bids"},
    };
}

std::map<std::string, std::string> default_history_schema() {
    return {
        {"bidder_id", "Bidder ID"},
        {"buyer_rating", "Buyer Rating"},
        {"items_bid_on_30d", "Items Bid On 30 Days"},
        {"n_bid_retractions_30d", "Bid Retractions 30 Days"},
        {"activity_with_seller", "Activity With Seller"},
    };
}

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    cfg.auction_schema = default_auction_schema();
    cfg.history_schema = default_history_schema();

    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    bool mode_set = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::Config,
                        "config line " + std::to_string(line_no) +
                            ": expected key=value");
        }
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));

        if (key == "input.auctions") cfg.input_auctions = value;
        else if (key == "input.history") cfg.input_history = value;
        else if (key == "input.mode") {
            if (value != "files" && value != "synth") {
                throw Error(ErrorKind::Config,
                            "input.mode must be 'files' or 'synth'");
            }
            cfg.input_mode = value;
            mode_set = true;
        } else if (key == "output.dir") cfg.output_dir = value;
        else if (key == "delimiter") {
            if (value.size() != 1) {
                throw Error(ErrorKind::Config,
                            "delimiter must be a single character");
            }
            cfg.delimiter = value[0];
        } else if (key.rfind("schema.auction.", 0) == 0) {
            std::string field = key.substr(15);
            if (!kAuctionFields.count(field)) {
                throw Error(ErrorKind::Config,
                            "unknown auction schema field: " + field);
            }
            cfg.auction_schema[field] = value;
        } else if (key.rfind("schema.history.", 0) == 0) {
            std::string field = key.substr(15);
            if (!kHistoryFields.count(field)) {
                throw Error(ErrorKind::Config,
                            "unknown history schema field: " + field);
            }
            cfg.history_schema[field] = value;
        } else if (key.rfind("rates.", 0) == 0) {
            std::string code = key.substr(6);
            double rate = parse_double(key, value);
            if (rate <= 0) {
                throw Error(ErrorKind::Config,
                            "exchange rate must be positive: " + key);
            }
            cfg.rates[code] = rate;
        } else if (key == "filter.iqr_k") {
            cfg.iqr_k = parse_double(key, value);
            if (cfg.iqr_k <= 0) {
                throw Error(ErrorKind::Config, "filter.iqr_k must be positive");
            }
        } else if (key == "metrics.p_min") {
            cfg.p_min = parse_long(key, value);
            if (cfg.p_min <= 0) {
                throw Error(ErrorKind::Config, "metrics.p_min must be positive");
            }
        } else if (key == "metrics.br_default") {
            cfg.br_default = parse_double(key, value);
        } else if (key == "metrics.ref_price_mode") {
            if (value == "dataset-mean-winning") {
                cfg.ref_price_mode = RefPriceMode::DatasetMeanWinning;
            } else if (value == "fixed") {
                cfg.ref_price_mode = RefPriceMode::Fixed;
            } else {
                throw Error(ErrorKind::Config,
                            "metrics.ref_price_mode must be "
                            "'dataset-mean-winning' or 'fixed'");
            }
        } else if (key == "metrics.ref_price_value") {
            cfg.ref_price_value = parse_double(key, value);
            if (cfg.ref_price_value <= 0) {
                throw Error(ErrorKind::Config,
                            "metrics.ref_price_value must be positive");
            }
        } else if (key == "synth.seed") {
            cfg.synth.seed = static_cast<std::uint64_t>(parse_long(key, value));
        } else if (key == "synth.n_auctions") {
            cfg.synth.n_auctions = parse_long(key, value);
        } else if (key == "synth.n_honest_bidders") {
            cfg.synth.n_honest_bidders = parse_long(key, value);
        } else if (key == "synth.n_shills") {
            cfg.synth.n_shills = parse_long(key, value);
        } else if (key == "synth.n_sellers") {
            cfg.synth.n_sellers = parse_long(key, value);
        } else if (key == "synth.n_products") {
            cfg.synth.n_products = parse_long(key, value);
        } else if (key == "synth.durations") {
            cfg.synth.durations.clear();
            std::istringstream ds(value);
            std::string tok;
            while (std::getline(ds, tok, ',')) {
                long d = parse_long(key, trim(tok));
                if (d != 1 && d != 3 && d != 5 && d != 7 && d != 10) {
                    throw Error(ErrorKind::Config,
                                "synth.durations values must be in "
                                "{1,3,5,7,10}");
                }
                cfg.synth.durations.push_back(static_cast<int>(d));
            }
            if (cfg.synth.durations.empty()) {
                throw Error(ErrorKind::Config, "synth.durations is empty");
            }
        } else if (key == "synth.opening_price_min") {
            cfg.synth.opening_price_min = parse_double(key, value);
        } else if (key == "synth.opening_price_max") {
            cfg.synth.opening_price_max = parse_double(key, value);
        } else if (key == "synth.plant_inconsistency_fraction") {
            cfg.synth.plant_inconsistency_fraction = parse_double(key, value);
        } else if (key == "synth.shill.early_fraction") {
            cfg.synth.shill.early_bid_fraction = parse_double(key, value);
        } else if (key == "synth.shill.stop_fraction") {
            cfg.synth.shill.stop_fraction = parse_double(key, value);
        } else if (key == "synth.shill.bid_share") {
            cfg.synth.shill.bid_share_target = parse_double(key, value);
        } else if (key == "synth.shill.avoid_winning") {
            cfg.synth.shill.avoid_winning = parse_bool(key, value);
        } else if (key == "synth.shill.zero_rating") {
            cfg.synth.shill.zero_rating = parse_bool(key, value);
        } else if (key == "synth.shill.items_30d") {
            cfg.synth.shill.items_30d = parse_long(key, value);
        } else if (key == "synth.shill.retractions") {
            cfg.synth.shill.retractions = parse_long(key, value);
        } else if (key == "synth.shill.auctions_per_shill") {
            cfg.synth.shill.auctions_per_shill = parse_long(key, value);
        } else {
            throw Error(ErrorKind::Config, "unknown config key: " + key);
        }
    }

    if (!mode_set && cfg.input_auctions.empty()) cfg.input_mode = "synth";
    if (cfg.ref_price_mode == RefPriceMode::Fixed && cfg.ref_price_value <= 0) {
        throw Error(ErrorKind::Config,
                    "metrics.ref_price_mode=fixed requires "
                    "metrics.ref_price_value");
    }
    const auto& sh = cfg.synth.shill;
    if (sh.early_bid_fraction > sh.stop_fraction) {
        throw Error(ErrorKind::Config,
                    "shill early_fraction must not exceed stop_fraction");
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace sb
