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

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "sbpipe.h"

namespace {

int fail(sb_pipeline* p, sb_status st) {
    std::fprintf(stderr, "error: %s\n", sb_pipeline_last_error(p));
    sb_pipeline_destroy(p);
    return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shill-bidding training dataset pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;

    app.add_option("--config", config_path, "pipeline config file")
        ->required();
    app.add_option("--out", out_dir, "output directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", seed,
                                    "generator seed (synth/run only)");

    app.add_subcommand("preprocess",
                       "cleanse, reformat, and repair the raw inputs");
    app.add_subcommand("features",
                       "compute the nine fraud-pattern metrics per "
                       "(auction, bidder)");
    app.add_subcommand("filter",
                       "drop out-of-range samples and rescale features");
    app.add_subcommand("synth", "generate a synthetic labeled dataset");
    app.add_subcommand("run", "full pipeline: ingest through filter");
    app.add_subcommand("stats", "emit the dataset statistics report");

    // let the global options appear after the subcommand too
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;

    sb_pipeline* p = nullptr;
    sb_status st = sb_pipeline_create(config_path.c_str(), &p);
    if (st != SB_OK) {
        std::fprintf(stderr, "error: cannot load config: %s\n",
                     config_path.c_str());
        return static_cast<int>(st);
    }
    if (!out_dir.empty()) {
        st = sb_pipeline_set_output_dir(p, out_dir.c_str());
        if (st != SB_OK) return fail(p, st);
    }
    if (seed_given) {
        st = sb_pipeline_set_seed(p, seed);
        if (st != SB_OK) return fail(p, st);
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "preprocess") st = sb_pipeline_preprocess(p);
    else if (cmd == "features") st = sb_pipeline_features(p);
    else if (cmd == "filter") st = sb_pipeline_filter(p);
    else if (cmd == "synth") st = sb_pipeline_synth(p);
    else if (cmd == "run") st = sb_pipeline_run(p);
    else if (cmd == "stats") st = sb_pipeline_stats(p);

    if (st != SB_OK) return fail(p, st);
    sb_pipeline_destroy(p);
    return 0;
}
