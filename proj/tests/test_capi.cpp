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

#include <cstring>
#include <filesystem>
#include <string>

#include <doctest.h>

#include "sbpipe.h"
#include "test_util.hpp"

using namespace sbtest;

namespace {

std::string synth_config_text() {
    return "input.mode=synth\n"
           "synth.seed=11\n"
           "synth.n_auctions=20\n"
           "synth.n_honest_bidders=30\n"
           "synth.n_shills=2\n"
           "synth.n_sellers=4\n"
           "synth.shill.auctions_per_shill=5\n";
}

}  // namespace

TEST_CASE("sb_pipeline_create argument validation") {
    CHECK(sb_pipeline_create("x.conf", nullptr) == SB_ERR_INVALID);

    sb_pipeline* p = reinterpret_cast<sb_pipeline*>(0x1);
    CHECK(sb_pipeline_create(nullptr, &p) == SB_ERR_INVALID);
    CHECK(p == nullptr);

    CHECK(sb_pipeline_create("/nonexistent/pipeline.conf", &p) == SB_ERR_IO);
    CHECK(p == nullptr);
}

TEST_CASE("sb_pipeline_create rejects bad config content") {
    TempDir dir;
    const auto path = dir.file("bad.conf");
    write_file(path, "no_such_key=1\n");
    sb_pipeline* p = nullptr;
    CHECK(sb_pipeline_create(path.c_str(), &p) == SB_ERR_CONFIG);
    CHECK(p == nullptr);
}

TEST_CASE("null pipeline handles are rejected, not dereferenced") {
    CHECK(sb_pipeline_run(nullptr) == SB_ERR_INVALID);
    CHECK(sb_pipeline_preprocess(nullptr) == SB_ERR_INVALID);
    CHECK(std::string(sb_pipeline_last_error(nullptr)) == "");
    sb_pipeline_destroy(nullptr);  // must be a no-op
}

TEST_CASE("full run through the C API") {
    TempDir dir;
    const auto conf = dir.file("pipeline.conf");
    write_file(conf, synth_config_text());

    sb_pipeline* p = nullptr;
    REQUIRE(sb_pipeline_create(conf.c_str(), &p) == SB_OK);
    CHECK(sb_pipeline_set_output_dir(p, dir.file("out").c_str()) == SB_OK);
    CHECK(sb_pipeline_run(p) == SB_OK);
    CHECK(std::string(sb_pipeline_last_error(p)) == "");
    CHECK(std::filesystem::exists(dir.file("out") + "/samples_final.csv"));
    sb_pipeline_destroy(p);
}

TEST_CASE("stage errors set the status and last_error message") {
    TempDir dir;
    const auto conf = dir.file("pipeline.conf");
    write_file(conf, "input.mode=files\ninput.auctions=" +
                         dir.file("missing.csv") + "\n");

    sb_pipeline* p = nullptr;
    REQUIRE(sb_pipeline_create(conf.c_str(), &p) == SB_OK);
    CHECK(sb_pipeline_set_output_dir(p, dir.file("out").c_str()) == SB_OK);
    CHECK(sb_pipeline_preprocess(p) != SB_OK);
    CHECK(std::strlen(sb_pipeline_last_error(p)) > 0);

    // a later successful call clears the message
    CHECK(sb_pipeline_set_seed(p, 99) == SB_OK);
    CHECK(std::string(sb_pipeline_last_error(p)) == "");
    sb_pipeline_destroy(p);
}

TEST_CASE("seed override changes the synthetic output") {
    TempDir dir;
    const auto conf = dir.file("pipeline.conf");
    write_file(conf, synth_config_text());

    auto generate_with_seed = [&](uint64_t seed, const std::string& out) {
        sb_pipeline* p = nullptr;
        REQUIRE(sb_pipeline_create(conf.c_str(), &p) == SB_OK);
        REQUIRE(sb_pipeline_set_output_dir(p, out.c_str()) == SB_OK);
        REQUIRE(sb_pipeline_set_seed(p, seed) == SB_OK);
        REQUIRE(sb_pipeline_synth(p) == SB_OK);
        sb_pipeline_destroy(p);
        return read_file(out + "/synth_auctions.csv");
    };
    const auto a = generate_with_seed(1, dir.file("o1"));
    const auto b = generate_with_seed(1, dir.file("o2"));
    const auto c = generate_with_seed(2, dir.file("o3"));
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("set_output_dir rejects an empty path") {
    TempDir dir;
    const auto conf = dir.file("pipeline.conf");
    write_file(conf, synth_config_text());
    sb_pipeline* p = nullptr;
    REQUIRE(sb_pipeline_create(conf.c_str(), &p) == SB_OK);
    CHECK(sb_pipeline_set_output_dir(p, "") == SB_ERR_CONFIG);
    CHECK(std::strlen(sb_pipeline_last_error(p)) > 0);
    sb_pipeline_destroy(p);
}

TEST_CASE("sb_version") {
    CHECK(std::string(sb_version()) == "0.1.0");
}
