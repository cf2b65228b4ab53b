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

// End-to-end verification suite. Each criterion prints one PASS/FAIL line;
// the exit code is the number of failing criteria.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "filter.hpp"
#include "ingest.hpp"
#include "metrics.hpp"
#include "pipeline.hpp"
#include "preprocess.hpp"
#include "synth.hpp"
#include "time_util.hpp"
#include "test_util.hpp"

using namespace sb;
using namespace sbtest;

namespace {

namespace fs = std::filesystem;

struct Lcg {
    std::uint64_t s = 0x5deece66dULL;
    std::uint64_t next() {
        return s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    }
    double uniform() { return (next() >> 11) / 9007199254740992.0; }
};

bool nearly(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// criterion 1: buyer-rating/items golden table
bool check_brbi_goldens() {
    return nearly(brbi(0, 1), 0.0, 1e-5) && nearly(brbi(0, 8), 1.0, 1e-5) &&
           nearly(brbi(2715, 1), 0.0, 1e-5) &&
           nearly(brbi(7, 30), 0.23333, 1e-5);
}

// criterion 2: retraction rule truth table, exhaustively
bool check_retraction_sweep() {
    for (long n = 0; n <= 5; ++n) {
        for (int a10 = 0; a10 <= 10; ++a10) {
            const double activity = a10 / 10.0;
            const double got = bid_retraction(n, activity);
            const double want = (n >= 1 && a10 == 10) ? 1.0 : 0.5;
            if (got != want) return false;
        }
    }
    return true;
}

// criterion 3: bid-time golden value plus a seconds-arithmetic oracle
bool check_bid_time() {
    if (!nearly(compute_bid_time("2017-04-01", "00:00:00", "2017-04-02",
                                 "06:52:08"),
                1.2862, 1e-4)) {
        return false;
    }
    Lcg rng;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::int64_t start_day = 17000 + rng.next() % 400;
        const std::int64_t bid_day = 17000 + rng.next() % 400;
        const std::int64_t start_sec = rng.next() % 86400;
        const std::int64_t bid_sec = rng.next() % 86400;
        const double expected =
            static_cast<double>((bid_day - start_day) * 86400 +
                                (bid_sec - start_sec)) /
            86400.0;
        const double got = compute_bid_time(
            format_date(start_day * 86400), format_time(start_sec),
            format_date(bid_day * 86400), format_time(bid_sec));
        if (std::fabs(got - expected) > 1e-9) return false;
    }
    return true;
}

// criterion 4: quartiles/fences against a brute-force sorted-index oracle
bool check_iqr_oracle() {
    Lcg rng;
    auto oracle = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const size_t n = v.size();
        auto median_of = [&](size_t lo, size_t hi) {
            const size_t m = hi - lo;
            return m % 2 ? v[lo + m / 2]
                         : (v[lo + m / 2 - 1] + v[lo + m / 2]) / 2.0;
        };
        const size_t half = n / 2 + n % 2;
        return std::tuple<double, double, double>{
            median_of(0, half), median_of(0, n), median_of(n - half, n)};
    };
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(1 + rng.next() % 50);
        for (auto& x : v) x = rng.uniform() * 100.0;
        const auto got = quartiles(v);
        const auto want = oracle(v);
        if (got != want) return false;
        const auto f = fences(v, 1.5);
        const double iqr = std::get<2>(want) - std::get<0>(want);
        if (f.lower != std::get<0>(want) - 1.5 * iqr) return false;
        if (f.upper != std::get<2>(want) + 1.5 * iqr) return false;
    }
    return true;
}

// criterion 5: filter conservation and rescaled range on generated data
bool check_filter_conservation() {
    Lcg rng;
    std::vector<SBSample> samples;
    for (long i = 0; i < 500; ++i) {
        SBSample s;
        s.auction_id = i;
        s.bidder_id = "b" + std::to_string(i);
        for (int f = 0; f < kNumFeatures; ++f) {
            set_feature(s, f, rng.uniform());
        }
        // plant out-of-range values in a known subset
        if (i % 25 == 0) set_feature(s, static_cast<int>(i / 25) % kNumFeatures,
                                     1.0 + rng.uniform());
        if (i % 40 == 7) set_feature(s, 2, -rng.uniform());
        samples.push_back(s);
    }
    auto [out, report] = run_filter(samples, 1.5);
    if (report.samples_in !=
        report.samples_out + report.samples_dropped) {
        return false;
    }
    if (static_cast<long>(out.size()) != report.samples_out) return false;
    for (const auto& d : report.dropped) {
        bool has_oob = false;
        for (int f = 0; f < kNumFeatures; ++f) {
            const double v = get_feature(d.sample, f);
            if (v < 0.0 || v > 1.0) has_oob = true;
        }
        if (!has_oob) return false;
    }
    for (int f = 0; f < kNumFeatures; ++f) {
        double lo = 1e9, hi = -1e9;
        for (const auto& s : out) {
            const double v = get_feature(s, f);
            if (v < 0.0 || v > 1.0) return false;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (!nearly(lo, 0.0, 1e-12) || !nearly(hi, 1.0, 1e-12)) return false;
    }
    return true;
}

// criterion 6: preprocessing invariants on fixtures with planted defects
bool check_preprocess_invariants() {
    PipelineConfig cfg = parse_config("");
    cfg.rates = {{"GBP", 1.28}, {"CAD", 0.74}, {"EUR", 1.09}};

    SynthConfig sc;
    sc.seed = 31;
    sc.n_auctions = 50;
    sc.n_honest_bidders = 80;
    sc.n_shills = 0;
    sc.plant_inconsistency_fraction = 0.4;
    auto gen = generate(sc);

    // plant duplicates, masked ids, and foreign-currency rows on top
    auto records = gen.auction_records;
    records.push_back(records[3]);
    records.push_back(records[10]);
    auto masked = records[5];
    masked.bidder_id = "****";
    records.push_back(masked);
    auto gbp = records[7];
    gbp.bidder_id = "gbp_bidder";
    gbp.bid_amount = 160.0;
    gbp.bid_currency = "GBP";
    records.push_back(gbp);
    auto cad = gbp;
    cad.bidder_id = "cad_bidder";
    cad.bid_amount = 100.0;
    cad.bid_currency = "CAD";
    records.push_back(cad);

    ParseReport report;
    report.rows_read = static_cast<long>(records.size());
    report.rows_accepted = report.rows_read;

    auto res = run_preprocess(records, report, {}, {}, cfg);
    if (!res.accounting.balanced()) return false;
    if (res.accounting.duplicates_removed != 2) return false;
    if (res.accounting.masked_dropped != 1) return false;

    // dedup idempotence and masked-ID completeness on the raw fixture
    auto once = deduplicate(records);
    if (deduplicate(once) != once) return false;
    auto [unmasked, dropped] = drop_masked(records);
    for (const auto& r : unmasked) {
        if (is_masked_id(r.bidder_id)) return false;
    }

    // consistency holds on 100% of output auctions
    double gbp_usd = -1.0, cad_usd = -1.0;
    for (const auto& a : res.auctions) {
        double max_bid = 0.0;
        for (const auto& b : a.bids) {
            max_bid = std::max(max_bid, b.bid_amount_usd);
            if (b.bidder_id == "gbp_bidder") gbp_usd = b.bid_amount_usd;
            if (b.bidder_id == "cad_bidder") cad_usd = b.bid_amount_usd;
        }
        if (a.winning_price_usd != max_bid) return false;
        if (a.n_bids != static_cast<long>(a.bids.size())) return false;
    }
    // hand-computed conversions: 160 GBP * 1.28, 100 CAD * 0.74
    return nearly(gbp_usd, 204.80, 1e-9) && nearly(cad_usd, 74.00, 1e-9);
}

// criterion 7: shill separation at desk scale
bool check_shill_separation() {
    TempDir dir;
    PipelineConfig cfg = parse_config("");
    cfg.input_mode = "synth";
    cfg.output_dir = dir.file("out");
    cfg.synth.seed = 2026;
    cfg.synth.n_auctions = 200;
    cfg.synth.n_honest_bidders = 300;
    cfg.synth.n_shills = 20;
    cfg.synth.shill.early_bid_fraction = 0.1;
    cfg.synth.shill.stop_fraction = 0.8;
    cfg.synth.shill.bid_share_target = 0.5;
    cfg.synth.shill.avoid_winning = true;
    cfg.synth.shill.zero_rating = true;
    cfg.synth.shill.items_30d = 8;
    cmd_run(cfg);

    // truth labels
    std::map<std::string, std::string> truth;
    {
        csv::Reader reader((fs::path(cfg.output_dir) / files::kTruth).string(),
                           ',');
        std::vector<std::string> row;
        while (reader.next(row)) truth[row[0]] = row[1];
    }

    // bounds hold on the raw, pre-rescale samples
    const auto samples = read_samples(
        (fs::path(cfg.output_dir) / files::kSamplesRaw).string(), ',');

    std::map<std::string, std::vector<const SBSample*>> by_bidder;
    for (const auto& s : samples) by_bidder[s.bidder_id].push_back(&s);

    std::vector<double> honest_ratio_means;
    long shills_total = 0, shills_all_bounds = 0;
    std::vector<double> shill_ratio_means;
    for (const auto& [bidder, rows] : by_bidder) {
        double ratio_sum = 0.0;
        bool bounds_ok = true;
        for (const SBSample* s : rows) {
            ratio_sum += s->bidding_ratio;
            if (s->early_bidding < 0.9 - 1e-9) bounds_ok = false;
            if (s->last_bidding < 0.2 - 1e-9) bounds_ok = false;
            if (!nearly(s->winning_ratio, 1.0, 1e-9)) bounds_ok = false;
            if (!nearly(s->brbi, 1.0, 1e-9)) bounds_ok = false;
        }
        const double ratio_mean = ratio_sum / rows.size();
        if (truth.at(bidder) == "shill") {
            ++shills_total;
            if (bounds_ok) ++shills_all_bounds;
            shill_ratio_means.push_back(ratio_mean);
        } else {
            honest_ratio_means.push_back(ratio_mean);
        }
    }
    if (shills_total != 20) return false;
    if (shills_all_bounds != shills_total) return false;

    std::sort(honest_ratio_means.begin(), honest_ratio_means.end());
    const double p90 =
        honest_ratio_means[static_cast<size_t>(0.9 *
                                               honest_ratio_means.size())];
    long above = 0;
    for (double r : shill_ratio_means) {
        if (r > p90) ++above;
    }
    return static_cast<double>(above) / shills_total >= 0.95;
}

// criterion 8: byte-identical outputs across identical runs
bool check_determinism() {
    TempDir dir;
    PipelineConfig cfg = parse_config("");
    cfg.input_mode = "synth";
    cfg.synth.seed = 77;
    cfg.synth.n_auctions = 60;
    cfg.synth.n_honest_bidders = 90;
    cfg.synth.n_shills = 5;
    cfg.synth.shill.auctions_per_shill = 5;

    PipelineConfig c1 = cfg, c2 = cfg;
    c1.output_dir = dir.file("out1");
    c2.output_dir = dir.file("out2");
    cmd_run(c1);
    cmd_run(c2);

    for (const auto& entry : fs::directory_iterator(c1.output_dir)) {
        const auto name = entry.path().filename().string();
        if (read_file(entry.path().string()) !=
            read_file((fs::path(c2.output_dir) / name).string())) {
            return false;
        }
    }
    return true;
}

struct Criterion {
    const char* description;
    bool (*check)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"rating/items golden table", check_brbi_goldens},
        {"retraction rule exhaustive sweep", check_retraction_sweep},
        {"bid-time golden value and oracle agreement", check_bid_time},
        {"quartile/fence oracle equivalence", check_iqr_oracle},
        {"filter conservation and rescaled range", check_filter_conservation},
        {"preprocessing invariants with planted defects",
         check_preprocess_invariants},
        {"shill separation on a seeded synthetic run",
         check_shill_separation},
        {"byte-identical outputs across identical runs", check_determinism},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        bool ok = false;
        try {
            ok = c.check();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "criterion %d threw: %s\n", index, e.what());
        }
        std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", index,
                    c.description);
        if (!ok) ++failures;
    }
    return failures;
}
