/*
 * Copyright 2026 The LyricTrack Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the lyric-video pipeline.
 *
 * Every call returns an lt_status. On failure, lt_last_error() holds a
 * message for the calling thread until its next API call. Handles are
 * opaque and released with the matching *_free function; free(NULL) is a
 * no-op.
 */

#ifndef LYRICTRACK_LYRICTRACK_H_
#define LYRICTRACK_LYRICTRACK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LT_BUILDING_LIBRARY)
#    define LT_API __declspec(dllexport)
#  else
#    define LT_API __declspec(dllimport)
#  endif
#else
#  define LT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lt_status {
  LT_OK = 0,
  LT_ERR_INTERNAL = 1,
  LT_ERR_INVALID_ARGUMENT = 2,
  LT_ERR_SCHEMA = 3,
  LT_ERR_INFEASIBLE_PATH = 4,
  LT_ERR_TOO_FEW_VIDEOS = 5,
  LT_ERR_IO = 6,
  LT_ERR_EMPTY_LYRICS = 7,
  LT_ERR_NON_MONOTONE_FRAMES = 8,
  LT_ERR_MISSING_GT = 9,
  LT_ERR_INVALID_K = 10,
  LT_ERR_OUT_OF_BUCKET_RANGE = 11,
  LT_ERR_SCRIPT_OVERLAP = 12
} lt_status;

LT_API const char* lt_status_name(lt_status status);
LT_API const char* lt_last_error(void);
LT_API const char* lt_version(void);

/* ---- video: detections + meta (+ lyrics) ---- */

typedef struct lt_video lt_video;

/* lyrics_path may be NULL. dedup_overlap <= 0 disables deduplication. */
LT_API lt_status lt_video_load(const char* detections_path, const char* meta_path, const char* lyrics_path,
                               double dedup_overlap, lt_video** out);
LT_API void lt_video_free(lt_video* video);
LT_API int lt_video_frame_count(const lt_video* video);
LT_API size_t lt_video_word_count(const lt_video* video);

/* ---- lyric-frame matching ---- */

typedef struct lt_match lt_match;

typedef struct lt_anchor {
  int k;           /* 1-based lyric index */
  int t;           /* frame index */
  int cost;        /* D(k, t) */
  const char* word; /* owned by the match handle */
  int has_box;
} lt_anchor;

LT_API lt_status lt_match_run(const lt_video* video, int delta, int threads, lt_match** out);
/* Reads anchors.json and re-attaches boxes from the video's detections. */
LT_API lt_status lt_match_load(const char* anchors_path, const lt_video* video, lt_match** out);
LT_API lt_status lt_match_save(const lt_match* match, const char* path);
LT_API void lt_match_free(lt_match* match);
LT_API size_t lt_match_size(const lt_match* match);
LT_API int64_t lt_match_total_cost(const lt_match* match);
LT_API lt_status lt_match_anchor(const lt_match* match, size_t index, lt_anchor* out);

/* ---- tracking ---- */

typedef struct lt_track_params {
  double word_sim;  /* max normalized edit distance */
  double max_move;  /* fraction of the frame diagonal per frame */
  double min_scale; /* area ratio bound: [min_scale, 1 / min_scale] */
  int max_miss;     /* consecutive misses before a scan stops */
} lt_track_params;

typedef struct lt_tracks lt_tracks;

LT_API void lt_track_params_default(lt_track_params* params);
LT_API lt_status lt_track_params_validate(const lt_track_params* params);
/* params may be NULL for defaults. */
LT_API lt_status lt_tracks_run(const lt_match* match, const lt_video* video, const lt_track_params* params,
                               int threads, lt_tracks** out);
LT_API lt_status lt_tracks_load(const char* path, lt_tracks** out);
LT_API lt_status lt_tracks_save(const lt_tracks* tracks, const char* path);
LT_API void lt_tracks_free(lt_tracks* tracks);
LT_API size_t lt_tracks_size(const lt_tracks* tracks);

/* ---- evaluation ---- */

typedef enum lt_eval_mode { LT_MODE_MA = 0, LT_MODE_MA_TR = 1, LT_MODE_MA_TR_IN = 2 } lt_eval_mode;

typedef struct lt_metrics {
  int64_t tp;
  int64_t fp;
  int64_t fn;
  double precision; /* percent, unrounded */
  double recall;    /* percent, unrounded */
  double f_measure; /* [0, 1], unrounded */
  int precision_undefined;
  int recall_undefined;
} lt_metrics;

LT_API lt_status lt_eval_mode_parse(const char* name, lt_eval_mode* out);
LT_API const char* lt_eval_mode_name(lt_eval_mode mode);
LT_API lt_status lt_metrics_from_counts(int64_t tp, int64_t fp, int64_t fn, lt_metrics* out);
/* frame_count < 0 skips the range check on annotated frames. */
LT_API lt_status lt_eval_tracks(const lt_tracks* tracks, const char* gt_path, lt_eval_mode mode, int frame_count,
                                lt_metrics* out);
/* Scores anchor boxes only (MA). */
LT_API lt_status lt_eval_anchors(const lt_match* match, const char* gt_path, int frame_count, lt_metrics* out);
LT_API lt_status lt_metrics_save(const lt_metrics* metrics, lt_eval_mode mode, const char* path);

/* ---- motion analysis over several videos ---- */

typedef struct lt_bucket {
  int lo;
  int hi;
} lt_bucket;

typedef struct lt_analyze_params {
  const lt_bucket* buckets; /* NULL: 11-20, 21-30, 31-40, 41-50, 51-70, 71-100 */
  size_t bucket_count;
  int k_per_bucket;
  int k_min;
  int k_max;
  int restarts;
  uint64_t seed;
  int threads;
} lt_analyze_params;

LT_API void lt_analyze_params_default(lt_analyze_params* params);
LT_API lt_status lt_analyze_params_validate(const lt_analyze_params* params);
/* Video i is trajectories_paths[i] with meta_paths[i]. Writes
   representatives.json, histograms.csv, clusters.json, mean_histograms.csv
   into out_dir. chosen_k may be NULL. */
LT_API lt_status lt_analyze(const char* const* trajectories_paths, const char* const* meta_paths, size_t count,
                            const lt_analyze_params* params, const char* out_dir, int* chosen_k);

/* ---- synthetic data and reports ---- */

/* Writes detections.jsonl, gt.json, lyrics.txt, video.meta.json and
   gt_tracks.jsonl. */
LT_API lt_status lt_synth_run(const char* scenario_path, const char* out_dir);

typedef struct lt_synth_random_params {
  int frames;
  int words;
  int width;
  int height;
  double fps;
  double p_dropout;
  double p_char_sub;
  double p_spurious;
  double jitter_sigma;
  double p_duplicate;
  int gt_every;
  const char* video_id; /* NULL: "synthetic" */
} lt_synth_random_params;

LT_API void lt_synth_random_params_default(lt_synth_random_params* params);
/* Draws a scenario from seed, writes it as scenario.json next to the
   generated files. */
LT_API lt_status lt_synth_random(const lt_synth_random_params* params, uint64_t seed, const char* out_dir);

/* SVG chart per cluster plus a long-format CSV from an analysis directory. */
LT_API lt_status lt_report_write(const char* analysis_dir, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* LYRICTRACK_LYRICTRACK_H_ */
