/* Copyright 2026 The sbpipe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the shill-bidding dataset pipeline.
 *
 * Usage:
 *   sb_pipeline* p = NULL;
 *   if (sb_pipeline_create("pipeline.conf", &p) != SB_OK) { ... }
 *   sb_status st = sb_pipeline_run(p);
 *   if (st != SB_OK) fprintf(stderr, "%s\n", sb_pipeline_last_error(p));
 *   sb_pipeline_destroy(p);
 *
 * All stage functions read inputs and write outputs according to the
 * pipeline's configuration; they return SB_OK on success and leave a
 * human-readable message retrievable via sb_pipeline_last_error otherwise.
 */

#ifndef SBPIPE_H
#define SBPIPE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sb_pipeline sb_pipeline;

typedef enum sb_status {
    SB_OK = 0,
    SB_ERR_IO = 1,
    SB_ERR_CONFIG = 2,
    SB_ERR_PARSE = 3,
    SB_ERR_INVALID = 4,
    SB_ERR_INTERNAL = 5,
} sb_status;

/* Creates a pipeline from a config file; *out is NULL on failure. */
sb_status sb_pipeline_create(const char* config_path, sb_pipeline** out);

void sb_pipeline_destroy(sb_pipeline* p);

/* Config overrides, applied after sb_pipeline_create. */
sb_status sb_pipeline_set_output_dir(sb_pipeline* p, const char* dir);
sb_status sb_pipeline_set_seed(sb_pipeline* p, uint64_t seed);

/* Individual stages. */
sb_status sb_pipeline_synth(sb_pipeline* p);
sb_status sb_pipeline_preprocess(sb_pipeline* p);
sb_status sb_pipeline_features(sb_pipeline* p);
sb_status sb_pipeline_filter(sb_pipeline* p);
sb_status sb_pipeline_stats(sb_pipeline* p);

/* Full pipeline: (synth when configured) -> preprocess -> features ->
 * filter. */
sb_status sb_pipeline_run(sb_pipeline* p);

/* Message for the most recent failing call on this pipeline; empty string
 * when no error has occurred. The pointer stays valid until the next call
 * on the same pipeline. */
const char* sb_pipeline_last_error(const sb_pipeline* p);

const char* sb_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SBPIPE_H */
