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

#include "sbpipe.h"

#include <string>

#include "config.hpp"
#include "error.hpp"
#include "pipeline.hpp"

struct sb_pipeline {
    sb::PipelineConfig config;
    std::string last_error;
};

namespace {

sb_status status_of(sb::ErrorKind kind) {
    switch (kind) {
        case sb::ErrorKind::Io: return SB_ERR_IO;
        case sb::ErrorKind::Config: return SB_ERR_CONFIG;
        case sb::ErrorKind::Parse: return SB_ERR_PARSE;
        case sb::ErrorKind::Invalid: return SB_ERR_INVALID;
        case sb::ErrorKind::Internal: return SB_ERR_INTERNAL;
    }
    return SB_ERR_INTERNAL;
}

template <typename Fn>
sb_status guarded(sb_pipeline* p, Fn&& fn) {
    if (!p) return SB_ERR_INVALID;
    p->last_error.clear();
    try {
        fn();
        return SB_OK;
    } catch (const sb::Error& e) {
        p->last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        p->last_error = e.what();
        return SB_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

sb_status sb_pipeline_create(const char* config_path, sb_pipeline** out) {
    if (!out) return SB_ERR_INVALID;
    *out = nullptr;
    if (!config_path) return SB_ERR_INVALID;
    try {
        auto p = new sb_pipeline{sb::load_config(config_path), {}};
        *out = p;
        return SB_OK;
    } catch (const sb::Error& e) {
        return status_of(e.kind());
    } catch (const std::exception&) {
        return SB_ERR_INTERNAL;
    }
}

void sb_pipeline_destroy(sb_pipeline* p) { delete p; }

sb_status sb_pipeline_set_output_dir(sb_pipeline* p, const char* dir) {
    return guarded(p, [&] {
        if (!dir || !*dir) {
            throw sb::Error(sb::ErrorKind::Config,
                            "output directory must be non-empty");
        }
        p->config.output_dir = dir;
    });
}

sb_status sb_pipeline_set_seed(sb_pipeline* p, uint64_t seed) {
    return guarded(p, [&] { p->config.synth.seed = seed; });
}

sb_status sb_pipeline_synth(sb_pipeline* p) {
    return guarded(p, [&] { sb::cmd_synth(p->config); });
}

sb_status sb_pipeline_preprocess(sb_pipeline* p) {
    return guarded(p, [&] { sb::cmd_preprocess(p->config); });
}

sb_status sb_pipeline_features(sb_pipeline* p) {
    return guarded(p, [&] { sb::cmd_features(p->config); });
}

sb_status sb_pipeline_filter(sb_pipeline* p) {
    return guarded(p, [&] { sb::cmd_filter(p->config); });
}

sb_status sb_pipeline_stats(sb_pipeline* p) {
    return guarded(p, [&] { sb::cmd_stats(p->config); });
}

sb_status sb_pipeline_run(sb_pipeline* p) {
    return guarded(p, [&] { sb::cmd_run(p->config); });
}

const char* sb_pipeline_last_error(const sb_pipeline* p) {
    return p ? p->last_error.c_str() : "";
}

const char* sb_version(void) { return "0.1.0"; }

}  // extern "C"
