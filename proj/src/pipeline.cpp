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

#include "pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include "csv.hpp"
#include "error.hpp"
#include "filter.hpp"
#include "ingest.hpp"
#include "metrics.hpp"
#include "preprocess.hpp"
#include "synth.hpp"

namespace sb {

namespace {

namespace fs = std::filesystem;

const char* const kCleanHeader[9] = {
    "auction_id", "bidder_id",         "seller_id",
    "bid_time",   "bid_amount_usd",    "opening_price_usd",
    "winning_price_usd", "n_bids",     "duration_days"};

std::string out_path(const PipelineConfig& cfg, const char* name) {
    fs::create_directories(cfg.output_dir);
    return (fs::path(cfg.output_dir) / name).string();
}

std::string money(double v) { return csv::format_real(v, 2); }

void write_repair_log(const std::string& path,
                      const std::vector<Repair>& repairs, char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({"auction_id", "field", "old_value", "new_value"});
    for (const auto& r : repairs) {
        writer.write_row({std::to_string(r.auction_id), r.field, r.old_value,
                          r.new_value});
    }
}

void write_stage_defects(const std::string& path,
                         const std::vector<Defect>& defects, char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({"row_number", "field", "reason"});
    for (const auto& d : defects) {
        writer.write_row({std::to_string(d.row_number), d.field, d.reason});
    }
}

void write_accounting(const std::string& path,
                      const PreprocessAccounting& acc,
                      long history_dups, long history_masked, char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({"quantity", "count"});
    writer.write_row({"rows_read", std::to_string(acc.rows_read)});
    writer.write_row({"parse_defects", std::to_string(acc.parse_defects)});
    writer.write_row(
        {"duplicates_removed", std::to_string(acc.duplicates_removed)});
    writer.write_row({"masked_dropped", std::to_string(acc.masked_dropped)});
    writer.write_row({"stage_defects", std::to_string(acc.stage_defects)});
    writer.write_row({"bids_out", std::to_string(acc.bids_out)});
    writer.write_row(
        {"history_duplicates_removed", std::to_string(history_dups)});
    writer.write_row(
        {"history_masked_dropped", std::to_string(history_masked)});
}

struct LoadedInputs {
    std::vector<RawBidRecord> bids;
    ParseReport bid_report;
    std::vector<RawHistoryRecord> history;
    ParseReport history_report;
    long raw_attribute_count = 0;
};

LoadedInputs load_raw_inputs(const PipelineConfig& cfg,
                             const std::string& auctions_path,
                             const std::string& history_path) {
    LoadedInputs in;
    {
        csv::Reader probe(auctions_path, cfg.delimiter);
        in.raw_attribute_count = static_cast<long>(probe.header().size());
    }
    auto [bids, bid_report] =
        parse_auction_file(auctions_path, cfg.auction_schema, cfg.delimiter);
    in.bids = std::move(bids);
    in.bid_report = std::move(bid_report);
    if (in.bid_report.rows_read == 0) {
        throw Error(ErrorKind::Invalid,
                    "auction input has no data rows: " + auctions_path);
    }

    if (!history_path.empty() && fs::exists(history_path)) {
        auto [hist, hist_report] = parse_history_file(
            history_path, cfg.history_schema, cfg.delimiter);
        in.history = std::move(hist);
        in.history_report = std::move(hist_report);
    } else if (!history_path.empty()) {
        std::fprintf(stderr,
                     "warning: bidder history file not found: %s; "
                     "history-based metrics fall back to defaults\n",
                     history_path.c_str());
    }
    return in;
}

void emit_preprocess_outputs(const PipelineConfig& cfg,
                             const PreprocessResult& res,
                             const LoadedInputs& in) {
    write_clean_auctions(out_path(cfg, files::kCleanAuctions),
                         out_path(cfg, files::kAuctionMeta), res.auctions,
                         cfg.delimiter);
    write_clean_history(out_path(cfg, files::kCleanHistory), res.histories,
                        cfg.delimiter);
    write_repair_log(out_path(cfg, files::kRepairLog), res.repairs,
                     cfg.delimiter);
    write_defects(out_path(cfg, files::kDefectsAuctions), in.bid_report,
                  cfg.delimiter);
    write_defects(out_path(cfg, files::kDefectsHistory), in.history_report,
                  cfg.delimiter);
    write_stage_defects(out_path(cfg, files::kDefectsPreprocess), res.defects,
                        cfg.delimiter);
    write_accounting(out_path(cfg, files::kAccounting), res.accounting,
                     res.history_duplicates_removed,
                     res.history_masked_dropped, cfg.delimiter);
    write_stats(out_path(cfg, files::kStatsReport),
                compute_stats(in.bids, in.raw_attribute_count, res.auctions),
                cfg.delimiter);
}

// preprocess re-run on the stage's own nine-column output: already merged
// and converted, so only regroup, repair, and re-emit
void preprocess_clean_input(const PipelineConfig& cfg) {
    const std::string meta_path =
        (fs::path(cfg.input_auctions).parent_path() / files::kAuctionMeta)
            .string();
    auto auctions = load_clean_auctions(
        cfg.input_auctions, fs::exists(meta_path) ? meta_path : "",
        cfg.delimiter);

    std::vector<Repair> repairs;
    long bids_out = 0;
    for (auto& a : auctions) {
        auto reps = repair_consistency(a);
        repairs.insert(repairs.end(), reps.begin(), reps.end());
        bids_out += static_cast<long>(a.bids.size());
    }

    std::vector<BidderHistory> histories;
    if (!cfg.input_history.empty() && fs::exists(cfg.input_history)) {
        auto map = load_clean_history(cfg.input_history, cfg.delimiter);
        for (auto& [id, h] : map) histories.push_back(std::move(h));
    }

    write_clean_auctions(out_path(cfg, files::kCleanAuctions),
                         out_path(cfg, files::kAuctionMeta), auctions,
                         cfg.delimiter);
    write_clean_history(out_path(cfg, files::kCleanHistory), histories,
                        cfg.delimiter);
    write_repair_log(out_path(cfg, files::kRepairLog), repairs,
                     cfg.delimiter);
    write_stage_defects(out_path(cfg, files::kDefectsAuctions), {},
                        cfg.delimiter);
    write_stage_defects(out_path(cfg, files::kDefectsHistory), {},
                        cfg.delimiter);
    write_stage_defects(out_path(cfg, files::kDefectsPreprocess), {},
                        cfg.delimiter);
    PreprocessAccounting acc;
    acc.rows_read = bids_out;
    acc.bids_out = bids_out;
    write_accounting(out_path(cfg, files::kAccounting), acc, 0, 0,
                     cfg.delimiter);
    write_stats(out_path(cfg, files::kStatsReport),
                compute_stats({}, 9, auctions), cfg.delimiter);
}

}  // namespace

StatsReport compute_stats(const std::vector<RawBidRecord>& raw,
                          long raw_attribute_count,
                          const std::vector<Auction>& auctions) {
    StatsReport s;
    s.raw_records = static_cast<long>(raw.size());
    s.raw_attributes = raw_attribute_count;
    std::set<std::string> raw_bidders;
    for (const auto& r : raw) {
        raw_bidders.insert(r.bidder_id);
        if (r.bid_currency != "USD") ++s.foreign_currency_counts[r.bid_currency];
    }
    s.raw_bidder_ids = static_cast<long>(raw_bidders.size());

    s.clean_auction_ids = static_cast<long>(auctions.size());
    std::set<std::string> clean_bidders;
    double winning_sum = 0.0, opening_sum = 0.0, bids_sum = 0.0;
    for (const auto& a : auctions) {
        for (const auto& b : a.bids) clean_bidders.insert(b.bidder_id);
        s.clean_records += a.n_bids;
        winning_sum += a.winning_price_usd;
        opening_sum += a.opening_price_usd;
        bids_sum += static_cast<double>(a.n_bids);
    }
    s.clean_bidder_ids = static_cast<long>(clean_bidders.size());
    if (!auctions.empty()) {
        const double n = static_cast<double>(auctions.size());
        s.avg_winning_price = winning_sum / n;
        s.avg_starting_price = opening_sum / n;
        s.avg_n_bids = bids_sum / n;
    }
    return s;
}

void write_stats(const std::string& path, const StatsReport& stats,
                 char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({"statistic", "value"});
    writer.write_row({"raw.n_records", std::to_string(stats.raw_records)});
    writer.write_row(
        {"raw.n_bidder_ids", std::to_string(stats.raw_bidder_ids)});
    writer.write_row(
        {"raw.n_attributes", std::to_string(stats.raw_attributes)});
    long foreign_total = 0;
    for (const auto& [code, count] : stats.foreign_currency_counts) {
        foreign_total += count;
    }
    writer.write_row(
        {"raw.n_foreign_currency_records", std::to_string(foreign_total)});
    for (const auto& [code, count] : stats.foreign_currency_counts) {
        writer.write_row(
            {"raw.n_foreign_currency_records." + code, std::to_string(count)});
    }
    writer.write_row(
        {"clean.n_auction_ids", std::to_string(stats.clean_auction_ids)});
    writer.write_row(
        {"clean.n_bidder_ids", std::to_string(stats.clean_bidder_ids)});
    writer.write_row(
        {"clean.n_records", std::to_string(stats.clean_records)});
    writer.write_row(
        {"clean.n_attributes", std::to_string(stats.clean_attributes)});
    writer.write_row({"clean.avg_winning_price",
                      csv::format_real(stats.avg_winning_price, 2)});
    writer.write_row({"clean.avg_starting_price",
                      csv::format_real(stats.avg_starting_price, 2)});
    writer.write_row(
        {"clean.avg_n_bids", csv::format_real(stats.avg_n_bids, 2)});
}

void write_clean_auctions(const std::string& bids_path,
                          const std::string& meta_path,
                          const std::vector<Auction>& auctions, char delim) {
    csv::Writer bids(bids_path, delim);
    bids.write_row(std::vector<std::string>(kCleanHeader, kCleanHeader + 9));
    for (const auto& a : auctions) {
        for (const auto& b : a.bids) {
            bids.write_row({std::to_string(a.auction_id), b.bidder_id,
                            a.seller_id, csv::format_real(b.bid_time, 6),
                            money(b.bid_amount_usd),
                            money(a.opening_price_usd),
                            money(a.winning_price_usd),
                            std::to_string(a.n_bids),
                            std::to_string(a.duration_days)});
        }
    }
    if (!meta_path.empty()) {
        csv::Writer meta(meta_path, delim);
        meta.write_row({"auction_id", "product_url", "start_epoch_s"});
        for (const auto& a : auctions) {
            meta.write_row({std::to_string(a.auction_id), a.product_url,
                            std::to_string(a.start_epoch_s)});
        }
    }
}

std::vector<Auction> load_clean_auctions(const std::string& bids_path,
                                         const std::string& meta_path,
                                         char delim) {
    csv::Reader reader(bids_path, delim);
    if (!is_clean_format(bids_path, delim)) {
        throw Error(ErrorKind::Parse,
                    "not a canonical nine-column dataset: " + bids_path);
    }

    struct MetaInfo {
        std::string product_url;
        std::int64_t start_epoch_s = 0;
    };
    std::map<long, MetaInfo> metas;
    if (!meta_path.empty()) {
        csv::Reader meta(meta_path, delim);
        std::vector<std::string> row;
        while (meta.next(row)) {
            if (row.size() != 3) {
                throw Error(ErrorKind::Parse,
                            "bad auction meta row in " + meta_path);
            }
            metas[std::stol(row[0])] = {row[1], std::stoll(row[2])};
        }
    }

    std::map<long, Auction> by_id;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (row.size() != 9) {
            throw Error(ErrorKind::Parse,
                        "bad row " + std::to_string(reader.row_number()) +
                            " in " + bids_path);
        }
        const long id = std::stol(row[0]);
        auto [it, inserted] = by_id.try_emplace(id);
        Auction& a = it->second;
        if (inserted) {
            a.auction_id = id;
            a.seller_id = row[2];
            a.opening_price_usd = std::stod(row[5]);
            a.winning_price_usd = std::stod(row[6]);
            a.n_bids = std::stol(row[7]);
            a.duration_days = std::stoi(row[8]);
            auto m = metas.find(id);
            if (m != metas.end()) {
                a.product_url = m->second.product_url;
                a.start_epoch_s = m->second.start_epoch_s;
            }
        }
        CleanBid b;
        b.auction_id = id;
        b.bidder_id = row[1];
        b.seller_id = row[2];
        b.bid_time = std::stod(row[3]);
        b.bid_amount_usd = std::stod(row[4]);
        b.duration_days = a.duration_days;
        a.bids.push_back(std::move(b));
    }

    std::vector<Auction> out;
    out.reserve(by_id.size());
    for (auto& [id, a] : by_id) {
        std::sort(a.bids.begin(), a.bids.end(),
                  [](const CleanBid& x, const CleanBid& y) {
                      if (x.bid_time != y.bid_time) return x.bid_time < y.bid_time;
                      if (x.bid_amount_usd != y.bid_amount_usd)
                          return x.bid_amount_usd < y.bid_amount_usd;
                      return x.bidder_id < y.bidder_id;
                  });
        out.push_back(std::move(a));
    }
    return out;
}

void write_clean_history(const std::string& path,
                         const std::vector<BidderHistory>& histories,
                         char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({"bidder_id", "buyer_rating", "items_bid_on_30d",
                      "n_bid_retractions_30d", "activity_with_seller"});
    for (const auto& h : histories) {
        writer.write_row({h.bidder_id, std::to_string(h.buyer_rating),
                          std::to_string(h.items_bid_on_30d),
                          std::to_string(h.n_bid_retractions_30d),
                          csv::format_real(h.activity_with_seller, 4)});
    }
}

std::map<std::string, BidderHistory> load_clean_history(
    const std::string& path, char delim) {
    csv::Reader reader(path, delim);
    std::map<std::string, BidderHistory> out;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (row.size() != 5) {
            throw Error(ErrorKind::Parse,
                        "bad history row " +
                            std::to_string(reader.row_number()) + " in " +
                            path);
        }
        BidderHistory h;
        h.bidder_id = row[0];
        h.buyer_rating = std::stol(row[1]);
        h.items_bid_on_30d = std::stol(row[2]);
        h.n_bid_retractions_30d = std::stol(row[3]);
        h.activity_with_seller = std::stod(row[4]);
        out.emplace(h.bidder_id, std::move(h));
    }
    return out;
}

bool is_clean_format(const std::string& path, char delim) {
    csv::Reader reader(path, delim);
    const auto& h = reader.header();
    if (h.size() != 9) return false;
    for (int i = 0; i < 9; ++i) {
        if (h[i] != kCleanHeader[i]) return false;
    }
    return true;
}

void cmd_synth(const PipelineConfig& cfg) {
    auto result = generate(cfg.synth);
    write_auction_records(out_path(cfg, files::kSynthAuctions),
                          result.auction_records, cfg.auction_schema,
                          cfg.delimiter);
    write_history_records(out_path(cfg, files::kSynthHistory),
                          result.history_records, cfg.history_schema,
                          cfg.delimiter);
    write_truth(out_path(cfg, files::kTruth), result.truth, cfg.delimiter);
}

void cmd_preprocess(const PipelineConfig& cfg) {
    if (cfg.input_auctions.empty()) {
        throw Error(ErrorKind::Config, "input.auctions is not configured");
    }
    if (is_clean_format(cfg.input_auctions, cfg.delimiter)) {
        preprocess_clean_input(cfg);
        return;
    }
    auto in = load_raw_inputs(cfg, cfg.input_auctions, cfg.input_history);
    auto res = run_preprocess(in.bids, in.bid_report, in.history,
                              in.history_report, cfg);
    if (!res.accounting.balanced()) {
        throw Error(ErrorKind::Internal,
                    "preprocess record accounting does not balance");
    }
    if (res.auctions.empty()) {
        throw Error(ErrorKind::Invalid,
                    "no auctions survive preprocessing; check the input and "
                    "the configured rate table");
    }
    emit_preprocess_outputs(cfg, res, in);
}

void cmd_features(const PipelineConfig& cfg) {
    const std::string bids_path = out_path(cfg, files::kCleanAuctions);
    const std::string meta_path = out_path(cfg, files::kAuctionMeta);
    if (!fs::exists(bids_path)) {
        throw Error(ErrorKind::Io,
                    "preprocessed dataset not found: " + bids_path +
                        " (run the preprocess stage first)");
    }
    auto auctions = load_clean_auctions(
        bids_path, fs::exists(meta_path) ? meta_path : "", cfg.delimiter);

    std::map<std::string, BidderHistory> histories;
    const std::string hist_path = out_path(cfg, files::kCleanHistory);
    if (fs::exists(hist_path)) {
        histories = load_clean_history(hist_path, cfg.delimiter);
    } else {
        std::fprintf(stderr,
                     "warning: %s not found; history-based metrics use "
                     "defaults\n",
                     hist_path.c_str());
    }

    auto samples = build_samples(auctions, histories, cfg);
    write_samples(out_path(cfg, files::kSamplesRaw), samples, cfg.delimiter);
}

void cmd_filter(const PipelineConfig& cfg) {
    const std::string in_path = out_path(cfg, files::kSamplesRaw);
    if (!fs::exists(in_path)) {
        throw Error(ErrorKind::Io,
                    "raw sample file not found: " + in_path +
                        " (run the features stage first)");
    }
    auto samples = read_samples(in_path, cfg.delimiter);
    if (samples.empty()) {
        throw Error(ErrorKind::Invalid, "raw sample file is empty: " + in_path);
    }

    auto [final_samples, report] = run_filter(samples, cfg.iqr_k);
    write_samples(out_path(cfg, files::kSamplesFinal), final_samples,
                  cfg.delimiter);
    write_filter_report(out_path(cfg, files::kFilterReport), report,
                        cfg.delimiter);

    // before/after summary over records, auctions, and bidders
    auto distinct = [](const std::vector<SBSample>& ss) {
        std::set<long> auctions;
        std::set<std::string> bidders;
        for (const auto& s : ss) {
            auctions.insert(s.auction_id);
            bidders.insert(s.bidder_id);
        }
        return std::make_pair(auctions.size(), bidders.size());
    };
    auto [a_before, b_before] = distinct(samples);
    auto [a_after, b_after] = distinct(final_samples);
    csv::Writer summary(out_path(cfg, files::kFilterSummary), cfg.delimiter);
    summary.write_row({"quantity", "before", "after"});
    summary.write_row({"n_auction_ids", std::to_string(a_before),
                       std::to_string(a_after)});
    summary.write_row(
        {"n_bidder_ids", std::to_string(b_before), std::to_string(b_after)});
    summary.write_row({"n_records", std::to_string(report.samples_in),
                       std::to_string(report.samples_out)});
}

void cmd_stats(const PipelineConfig& cfg) {
    if (cfg.input_auctions.empty()) {
        throw Error(ErrorKind::Config, "input.auctions is not configured");
    }
    if (is_clean_format(cfg.input_auctions, cfg.delimiter)) {
        auto auctions =
            load_clean_auctions(cfg.input_auctions, "", cfg.delimiter);
        write_stats(out_path(cfg, files::kStatsReport),
                    compute_stats({}, 9, auctions), cfg.delimiter);
        return;
    }
    auto in = load_raw_inputs(cfg, cfg.input_auctions, cfg.input_history);
    auto res = run_preprocess(in.bids, in.bid_report, in.history,
                              in.history_report, cfg);
    write_stats(out_path(cfg, files::kStatsReport),
                compute_stats(in.bids, in.raw_attribute_count, res.auctions),
                cfg.delimiter);
}

void cmd_run(const PipelineConfig& cfg) {
    PipelineConfig run_cfg = cfg;
    if (cfg.input_mode == "synth") {
        cmd_synth(cfg);
        run_cfg.input_auctions = out_path(cfg, files::kSynthAuctions);
        run_cfg.input_history = out_path(cfg, files::kSynthHistory);
    }
    cmd_preprocess(run_cfg);
    cmd_features(run_cfg);
    cmd_filter(run_cfg);
}

}  // namespace sb
