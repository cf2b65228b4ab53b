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

#ifndef SBPIPE_PIPELINE_HPP
#define SBPIPE_PIPELINE_HPP

#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "records.hpp"

namespace sb {

// Stage output filenames under the configured output directory.
namespace files {
inline constexpr const char* kSynthAuctions = "synth_auctions.csv";
inline constexpr const char* kSynthHistory = "synth_history.csv";
inline constexpr const char* kTruth = "truth.csv";
inline constexpr const char* kCleanAuctions = "auctions_clean.csv";
inline constexpr const char* kAuctionMeta = "auction_meta.csv";
inline constexpr const char* kCleanHistory = "history_clean.csv";
inline constexpr const char* kRepairLog = "repair_log.csv";
inline constexpr const char* kDefectsAuctions = "defects_auctions.csv";
inline constexpr const char* kDefectsHistory = "defects_history.csv";
inline constexpr const char* kDefectsPreprocess = "defects_preprocess.csv";
inline constexpr const char* kStatsReport = "stats_report.csv";
inline constexpr const char* kAccounting = "accounting.csv";
inline constexpr const char* kSamplesRaw = "samples_raw.csv";
inline constexpr const char* kSamplesFinal = "samples_final.csv";
inline constexpr const char* kFilterReport = "filter_report.csv";
inline constexpr const char* kFilterSummary = "filter_summary.csv";
}  // namespace files

/// Summary dataset statistics; every count is recomputable from the
/// dataset it describes.
struct StatsReport {
    long raw_records = 0;
    long raw_bidder_ids = 0;
    long raw_attributes = 0;
    std::map<std::string, long> foreign_currency_counts;
    long clean_auction_ids = 0;
    long clean_bidder_ids = 0;
    long clean_records = 0;
    long clean_attributes = 9;
    double avg_winning_price = 0.0;
    double avg_starting_price = 0.0;
    double avg_n_bids = 0.0;
};

StatsReport compute_stats(const std::vector<RawBidRecord>& raw,
                          long raw_attribute_count,
                          const std::vector<Auction>& auctions);

void write_stats(const std::string& path, const StatsReport& stats,
                 char delim);

/// The nine-column canonical dataset plus the auction meta side file that
/// carries product/start info the metrics stage needs.
void write_clean_auctions(const std::string& bids_path,
                          const std::string& meta_path,
                          const std::vector<Auction>& auctions, char delim);

/// Loads back what write_clean_auctions produced. A missing meta file is
/// tolerated (concurrency then evaluates to zero).
std::vector<Auction> load_clean_auctions(const std::string& bids_path,
                                         const std::string& meta_path,
                                         char delim);

void write_clean_history(const std::string& path,
                         const std::vector<BidderHistory>& histories,
                         char delim);

std::map<std::string, BidderHistory> load_clean_history(
    const std::string& path, char delim);

/// True when the file's header is the canonical nine-column layout, i.e.
/// preprocess is being re-run on its own output.
bool is_clean_format(const std::string& path, char delim);

// Stage entry points. Each reads its inputs, writes its outputs under
// cfg.output_dir, and throws sb::Error on fatal conditions.
void cmd_synth(const PipelineConfig& cfg);
void cmd_preprocess(const PipelineConfig& cfg);
void cmd_features(const PipelineConfig& cfg);
void cmd_filter(const PipelineConfig& cfg);
void cmd_stats(const PipelineConfig& cfg);
void cmd_run(const PipelineConfig& cfg);

}  // namespace sb

#endif  // SBPIPE_PIPELINE_HPP
