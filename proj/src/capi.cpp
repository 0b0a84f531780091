// Copyright 2026 The LyricTrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lyrictrack/lyrictrack.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "lyrictrack/align.hpp"
#include "lyrictrack/corpus.hpp"
#include "lyrictrack/error.hpp"
#include "lyrictrack/eval.hpp"
#include "lyrictrack/motion.hpp"
#include "lyrictrack/pipeline.hpp"
#include "lyrictrack/report.hpp"
#include "lyrictrack/synth.hpp"
#include "lyrictrack/track.hpp"

namespace lt = lyrictrack;

struct lt_video {
  lt::pipeline::LoadedVideo data;
};

struct lt_match {
  lt::align::MatchResult result;
  std::string video_id;
  int delta = 0;
};

struct lt_tracks {
  std::vector<lt::track::Trajectory> trajectories;
};

namespace {

thread_local std::string g_last_error;

lt_status fail(lt_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
lt_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    fn();
    return LT_OK;
  } catch (const lt::Error& e) {
    return fail(static_cast<lt_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LT_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw lt::Error(lt::ErrorCode::kInvalidArgument, what);
}

lt::eval::EvalMode to_mode(lt_eval_mode mode) {
  switch (mode) {
    case LT_MODE_MA: return lt::eval::EvalMode::kMatching;
    case LT_MODE_MA_TR: return lt::eval::EvalMode::kMatchingTracking;
    case LT_MODE_MA_TR_IN: return lt::eval::EvalMode::kFull;
  }
  throw lt::Error(lt::ErrorCode::kInvalidArgument, "unknown evaluation mode");
}

void fill(const lt::eval::EvalReport& r, lt_metrics* out) {
  out->tp = r.counts.tp;
  out->fp = r.counts.fp;
  out->fn = r.counts.fn;
  out->precision = r.precision;
  out->recall = r.recall;
  out->f_measure = r.f_measure;
  out->precision_undefined = r.precision_undefined ? 1 : 0;
  out->recall_undefined = r.recall_undefined ? 1 : 0;
}

lt::eval::EvalReport to_report(const lt_metrics* m) {
  lt::eval::EvalReport r = lt::eval::metrics(m->tp, m->fp, m->fn);
  return r;
}

lt::track::TrackParams to_track_params(const lt_track_params* params) {
  lt::track::TrackParams p;
  if (params) {
    p.word_sim = params->word_sim;
    p.max_move = params->max_move;
    p.min_scale = params->min_scale;
    p.max_miss = params->max_miss;
  }
  return p;
}

lt::pipeline::AnalyzeConfig to_analyze_config(const lt_analyze_params* params) {
  lt::pipeline::AnalyzeConfig cfg;
  if (!params) return cfg;
  if (params->buckets) {
    cfg.motion.buckets.clear();
    for (size_t i = 0; i < params->bucket_count; ++i) {
      cfg.motion.buckets.push_back({params->buckets[i].lo, params->buckets[i].hi});
    }
  }
  cfg.motion.k_per_bucket = params->k_per_bucket;
  cfg.motion.seed = params->seed;
  cfg.motion.threads = params->threads;
  cfg.k_min = params->k_min;
  cfg.k_max = params->k_max;
  cfg.restarts = params->restarts;
  return cfg;
}

std::optional<int> frame_limit(int frame_count) {
  return frame_count < 0 ? std::nullopt : std::optional<int>(frame_count);
}

}  // namespace

extern "C" {

const char* lt_status_name(lt_status status) {
  if (status == LT_OK) return "Ok";
  return lt::error_code_name(static_cast<lt::ErrorCode>(status)).data();
}

const char* lt_last_error(void) { return g_last_error.c_str(); }

const char* lt_version(void) { return "0.1.0"; }

lt_status lt_video_load(const char* detections_path, const char* meta_path, const char* lyrics_path,
                        double dedup_overlap, lt_video** out) {
  return guarded([&] {
    require(detections_path && meta_path && out, "detections, meta and out are required");
    auto v = std::make_unique<lt_video>();
    v->data = lt::pipeline::load_video(detections_path, meta_path, lyrics_path ? lyrics_path : "",
                                       dedup_overlap > 0.0 ? std::optional<double>(dedup_overlap) : std::nullopt);
    *out = v.release();
  });
}

void lt_video_free(lt_video* video) { delete video; }

int lt_video_frame_count(const lt_video* video) { return video ? video->data.video.frame_count() : 0; }

size_t lt_video_word_count(const lt_video* video) { return video ? video->data.lyrics.size() : 0; }

lt_status lt_match_run(const lt_video* video, int delta, int threads, lt_match** out) {
  return guarded([&] {
    require(video && out, "video and out are required");
    auto m = std::make_unique<lt_match>();
    m->result = lt::align::lyric_frame_match(video->data.lyrics, video->data.video.frames, delta, threads);
    m->video_id = video->data.video.meta.id;
    m->delta = delta;
    *out = m.release();
  });
}

lt_status lt_match_load(const char* anchors_path, const lt_video* video, lt_match** out) {
  return guarded([&] {
    require(anchors_path && video && out, "anchors path, video and out are required");
    lt::align::AnchorsFile f = lt::align::parse_anchors(lt::corpus::read_file(anchors_path));
    if (f.match.anchors.size() != video->data.lyrics.size()) {
      throw lt::SchemaError("anchors file has " + std::to_string(f.match.anchors.size()) + " anchors but lyrics have " +
                            std::to_string(video->data.lyrics.size()) + " words");
    }
    for (const auto& a : f.match.anchors) {
      if (a.t >= video->data.video.frame_count()) throw lt::SchemaError("anchor frame outside the video");
    }
    lt::align::attach_boxes(f.match, video->data.lyrics, video->data.video.frames);
    auto m = std::make_unique<lt_match>();
    m->result = std::move(f.match);
    m->video_id = std::move(f.video);
    m->delta = f.delta;
    *out = m.release();
  });
}

lt_status lt_match_save(const lt_match* match, const char* path) {
  return guarded([&] {
    require(match && path, "match and path are required");
    lt::corpus::write_file(path, lt::align::serialize_anchors(match->result, match->video_id, match->delta));
  });
}

void lt_match_free(lt_match* match) { delete match; }

size_t lt_match_size(const lt_match* match) { return match ? match->result.anchors.size() : 0; }

int64_t lt_match_total_cost(const lt_match* match) { return match ? match->result.total_cost : 0; }

lt_status lt_match_anchor(const lt_match* match, size_t index, lt_anchor* out) {
  return guarded([&] {
    require(match && out, "match and out are required");
    require(index < match->result.anchors.size(), "anchor index out of range");
    const auto& a = match->result.anchors[index];
    out->k = a.k;
    out->t = a.t;
    out->cost = a.cost;
    out->word = a.word.c_str();
    out->has_box = a.box ? 1 : 0;
  });
}

void lt_track_params_default(lt_track_params* params) {
  if (!params) return;
  const lt::track::TrackParams d;
  params->word_sim = d.word_sim;
  params->max_move = d.max_move;
  params->min_scale = d.min_scale;
  params->max_miss = d.max_miss;
}

lt_status lt_track_params_validate(const lt_track_params* params) {
  return guarded([&] {
    require(params != nullptr, "params are required");
    to_track_params(params).validate();
  });
}

lt_status lt_tracks_run(const lt_match* match, const lt_video* video, const lt_track_params* params, int threads,
                        lt_tracks** out) {
  return guarded([&] {
    require(match && video && out, "match, video and out are required");
    const lt::track::TrackParams p = to_track_params(params);
    auto t = std::make_unique<lt_tracks>();
    t->trajectories = lt::track::track_all(match->result, video->data.video, p, threads);
    *out = t.release();
  });
}

lt_status lt_tracks_load(const char* path, lt_tracks** out) {
  return guarded([&] {
    require(path && out, "path and out are required");
    auto t = std::make_unique<lt_tracks>();
    t->trajectories = lt::track::load_trajectories(path);
    *out = t.release();
  });
}

lt_status lt_tracks_save(const lt_tracks* tracks, const char* path) {
  return guarded([&] {
    require(tracks && path, "tracks and path are required");
    lt::track::save_trajectories(path, tracks->trajectories);
  });
}

void lt_tracks_free(lt_tracks* tracks) { delete tracks; }

size_t lt_tracks_size(const lt_tracks* tracks) { return tracks ? tracks->trajectories.size() : 0; }

lt_status lt_eval_mode_parse(const char* name, lt_eval_mode* out) {
  return guarded([&] {
    require(name && out, "name and out are required");
    const auto mode = lt::eval::parse_mode(name);
    if (!mode) {
      throw lt::Error(lt::ErrorCode::kInvalidArgument,
                      std::string("unknown mode '") + name + "' (expected MA, MA+TR or MA+TR+IN)");
    }
    *out = static_cast<lt_eval_mode>(static_cast<int>(*mode));
  });
}

const char* lt_eval_mode_name(lt_eval_mode mode) {
  switch (mode) {
    case LT_MODE_MA: return "MA";
    case LT_MODE_MA_TR: return "MA+TR";
    case LT_MODE_MA_TR_IN: return "MA+TR+IN";
  }
  return "?";
}

lt_status lt_metrics_from_counts(int64_t tp, int64_t fp, int64_t fn, lt_metrics* out) {
  return guarded([&] {
    require(out != nullptr, "out is required");
    fill(lt::eval::metrics(tp, fp, fn), out);
  });
}

lt_status lt_eval_tracks(const lt_tracks* tracks, const char* gt_path, lt_eval_mode mode, int frame_count,
                         lt_metrics* out) {
  return guarded([&] {
    require(tracks && gt_path && out, "tracks, gt path and out are required");
    const auto gt = lt::corpus::load_ground_truth(gt_path);
    fill(lt::eval::evaluate_video(tracks->trajectories, gt, to_mode(mode), frame_limit(frame_count)), out);
  });
}

lt_status lt_eval_anchors(const lt_match* match, const char* gt_path, int frame_count, lt_metrics* out) {
  return guarded([&] {
    require(match && gt_path && out, "match, gt path and out are required");
    const auto gt = lt::corpus::load_ground_truth(gt_path);
    const auto trajs = lt::pipeline::anchor_trajectories(match->result);
    fill(lt::eval::evaluate_video(trajs, gt, lt::eval::EvalMode::kMatching, frame_limit(frame_count)), out);
  });
}

lt_status lt_metrics_save(const lt_metrics* metrics, lt_eval_mode mode, const char* path) {
  return guarded([&] {
    require(metrics && path, "metrics and path are required");
    lt::corpus::write_file(path, lt::eval::serialize_metrics(to_report(metrics), to_mode(mode)));
  });
}

void lt_analyze_params_default(lt_analyze_params* params) {
  if (!params) return;
  const lt::pipeline::AnalyzeConfig d;
  params->buckets = nullptr;
  params->bucket_count = 0;
  params->k_per_bucket = d.motion.k_per_bucket;
  params->k_min = d.k_min;
  params->k_max = d.k_max;
  params->restarts = d.restarts;
  params->seed = d.motion.seed;
  params->threads = d.motion.threads;
}

lt_status lt_analyze_params_validate(const lt_analyze_params* params) {
  return guarded([&] {
    require(params != nullptr, "params are required");
    lt::pipeline::validate(to_analyze_config(params));
  });
}

lt_status lt_analyze(const char* const* trajectories_paths, const char* const* meta_paths, size_t count,
                     const lt_analyze_params* params, const char* out_dir, int* chosen_k) {
  return guarded([&] {
    require(out_dir != nullptr, "out_dir is required");
    require(count == 0 || (trajectories_paths && meta_paths), "input paths are required");
    const lt::pipeline::AnalyzeConfig cfg = to_analyze_config(params);
    lt::pipeline::validate(cfg);
    std::vector<lt::pipeline::VideoTracks> videos;
    for (size_t i = 0; i < count; ++i) {
      require(trajectories_paths[i] && meta_paths[i], "input paths must not be NULL");
      videos.push_back({lt::corpus::load_meta(meta_paths[i]), lt::track::load_trajectories(trajectories_paths[i])});
    }
    const auto analysis = lt::pipeline::analyze(videos, cfg);
    lt::pipeline::write_analysis(analysis, out_dir);
    if (chosen_k) *chosen_k = analysis.clustering.chosen_k;
  });
}

lt_status lt_synth_run(const char* scenario_path, const char* out_dir) {
  return guarded([&] {
    require(scenario_path && out_dir, "scenario path and out_dir are required");
    const auto scenario = lt::synth::parse_scenario(lt::corpus::read_file(scenario_path));
    lt::synth::write_outputs(lt::synth::generate(scenario), out_dir);
  });
}

void lt_synth_random_params_default(lt_synth_random_params* params) {
  if (!params) return;
  const lt::synth::RandomScenarioParams d;
  params->frames = d.frames;
  params->words = d.words;
  params->width = d.width;
  params->height = d.height;
  params->fps = d.fps;
  params->p_dropout = d.noise.p_dropout;
  params->p_char_sub = d.noise.p_char_sub;
  params->p_spurious = d.noise.p_spurious;
  params->jitter_sigma = d.noise.jitter_sigma;
  params->p_duplicate = d.noise.p_duplicate;
  params->gt_every = d.gt_every;
  params->video_id = nullptr;
}

lt_status lt_synth_random(const lt_synth_random_params* params, uint64_t seed, const char* out_dir) {
  return guarded([&] {
    require(params && out_dir, "params and out_dir are required");
    lt::synth::RandomScenarioParams p;
    p.frames = params->frames;
    p.words = params->words;
    p.width = params->width;
    p.height = params->height;
    p.fps = params->fps;
    p.noise.p_dropout = params->p_dropout;
    p.noise.p_char_sub = params->p_char_sub;
    p.noise.p_spurious = params->p_spurious;
    p.noise.jitter_sigma = params->jitter_sigma;
    p.noise.p_duplicate = params->p_duplicate;
    p.noise.seed = seed ^ 0x6e6f697365ULL;  // independent of the layout stream
    p.gt_every = params->gt_every;
    if (params->video_id) p.id = params->video_id;
    const auto scenario = lt::synth::random_scenario(p, seed);
    const std::filesystem::path dir(out_dir);
    lt::synth::write_outputs(lt::synth::generate(scenario), dir);
    lt::corpus::write_file(dir / "scenario.json", lt::synth::serialize_scenario(scenario));
  });
}

lt_status lt_report_write(const char* analysis_dir, const char* out_dir) {
  return guarded([&] {
    require(analysis_dir && out_dir, "analysis_dir and out_dir are required");
    lt::report::write_report(analysis_dir, out_dir);
  });
}

}  // extern "C"
