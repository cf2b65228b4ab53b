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

#ifndef SBPIPE_CONFIG_HPP
#define SBPIPE_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sb {

/// USD-per-unit exchange rates, keyed by ISO-4217 code. USD is implicitly
/// 1.0 and need not be listed.
using RateTable = std::map<std::string, double>;

enum class RefPriceMode { DatasetMeanWinning, Fixed };

struct ShillProfileConfig {
    double early_bid_fraction = 0.1;
    double stop_fraction = 0.8;
    double bid_share_target = 0.5;
    bool avoid_winning = true;
    bool zero_rating = true;
    long items_30d = 8;
    long retractions = 2;
    long auctions_per_shill = 8;
};

struct SynthConfig {
    std::uint64_t seed = 42;
    long n_auctions = 50;
    long n_honest_bidders = 100;
    long n_shills = 0;
    long n_sellers = 10;
    long n_products = 10;
    std::vector<int> durations = {1, 3, 5, 7, 10};
    double opening_price_min = 100.0;
    double opening_price_max = 300.0;
    // fraction of auctions whose declared winning price / bid count are
    // perturbed, exercising the consistency repair
    double plant_inconsistency_fraction = 0.0;
    ShillProfileConfig shill;
};

struct PipelineConfig {
    std::string input_auctions;
    std::string input_history;
    std::string input_mode = "files";  // "files" or "synth"
    std::string output_dir = "out";
    char delimiter = ',';

    // column-name maps; defaults documented in config.cpp
    std::map<std::string, std::string> auction_schema;
    std::map<std::string, std::string> history_schema;

    RateTable rates;

    double iqr_k = 1.5;
    long p_min = 4;
    double br_default = 0.5;
    RefPriceMode ref_price_mode = RefPriceMode::DatasetMeanWinning;
    double ref_price_value = 0.0;

    SynthConfig synth;
};

/// Loads a flat key=value config file ('#' starts a comment, dotted section
/// keys, e.g. rates.GBP=1.28). Unknown keys are rejected.
PipelineConfig load_config(const std::string& path);

/// Parses config text directly; load_config is a thin wrapper.
PipelineConfig parse_config(const std::string& text);

/// Default column-name maps applied when the config does not override them.
std::map<std::string, std::string> default_auction_schema();
std::map<std::string, std::string> default_history_schema();

}  // namespace sb

#endif  // SBPIPE_CONFIG_HPP
