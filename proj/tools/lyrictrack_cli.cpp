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

// lyrictrack: one subcommand per pipeline stage.
//
//   lyrictrack match   --video-dir DIR --out anchors.json
//   lyrictrack track   --video-dir DIR --anchors anchors.json --out trajectories.jsonl
//   lyrictrack eval    --trajectories T --gt gt.json --mode MA+TR+IN --out metrics.json
//   lyrictrack analyze DIR... --k 10 --seed 0 --out analysis/
//   lyrictrack synth   scenario.json --out DIR
//   lyrictrack report  analysis/ --out figures/
//
// Settings come from --config (TOML) and are overridden by flags. Errors are
// printed to stderr as one JSON object and mapped to distinct exit codes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <toml.hpp>

#include "lyrictrack/lyrictrack.h"

namespace fs = std::filesystem;

namespace {

struct CliError {
  lt_status status;
  std::string message;
};

void check(lt_status s) {
  if (s != LT_OK) throw CliError{s, lt_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw CliError{LT_ERR_INVALID_ARGUMENT, message}; }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using VideoPtr = std::unique_ptr<lt_video, Deleter<lt_video, lt_video_free>>;
using MatchPtr = std::unique_ptr<lt_match, Deleter<lt_match, lt_match_free>>;
using TracksPtr = std::unique_ptr<lt_tracks, Deleter<lt_tracks, lt_tracks_free>>;

// Flag value when given, else the config entry, else the built-in default.
class Settings {
 public:
  void load(const std::string& path) {
    try {
      table_ = toml::parse_file(path);
    } catch (const toml::parse_error& e) {
      const auto line = e.source().begin.line;
      throw CliError{LT_ERR_SCHEMA, path + ": line " + std::to_string(line) + ": " + std::string(e.description())};
    }
  }

  template <typename T>
  T pick(const CLI::Option* flag, const T& flag_value, std::string_view key, const T& fallback) const {
    if (flag && flag->count() > 0) return flag_value;
    const toml::node_view<const toml::node> node = table_.at_path(key);
    if (!node) return fallback;
    if constexpr (std::is_same_v<T, std::string>) {
      if (auto v = node.value<std::string>()) return *v;
    } else if constexpr (std::is_floating_point_v<T>) {
      if (auto v = node.value<double>()) return static_cast<T>(*v);
    } else {
      if (auto v = node.value<int64_t>()) return static_cast<T>(*v);
    }
    throw CliError{LT_ERR_SCHEMA, "config key '" + std::string(key) + "' has the wrong type"};
  }

  std::optional<std::vector<lt_bucket>> buckets(std::string_view key) const {
    const auto* arr = table_.at_path(key).as_array();
    if (!arr) return std::nullopt;
    std::vector<lt_bucket> out;
    for (const toml::node& n : *arr) {
      const auto* pair = n.as_array();
      if (!pair || pair->size() != 2 || !(*pair)[0].value<int64_t>() || !(*pair)[1].value<int64_t>()) {
        throw CliError{LT_ERR_SCHEMA, "config key '" + std::string(key) + "' must be a list of [lo, hi] pairs"};
      }
      out.push_back({static_cast<int>(*(*pair)[0].value<int64_t>()), static_cast<int>(*(*pair)[1].value<int64_t>())});
    }
    return out;
  }

 private:
  toml::table table_;
};

struct VideoPaths {
  std::string dir;
  std::string detections;
  std::string lyrics;
  std::string meta;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--video-dir", dir, "Directory with detections.jsonl, lyrics.txt, video.meta.json");
    cmd->add_option("--detections", detections, "Per-frame detections (JSONL)");
    cmd->add_option("--lyrics", lyrics, "Lyrics text");
    cmd->add_option("--meta", meta, "Video meta (JSON)");
  }

  void resolve() {
    if (!dir.empty()) {
      if (detections.empty()) detections = (fs::path(dir) / "detections.jsonl").string();
      if (lyrics.empty()) lyrics = (fs::path(dir) / "lyrics.txt").string();
      if (meta.empty()) meta = (fs::path(dir) / "video.meta.json").string();
    }
    if (detections.empty() || meta.empty()) usage_error("need --video-dir or both --detections and --meta");
  }
};

void print_metrics(const lt_metrics& m, lt_eval_mode mode) {
  std::cout << lt_eval_mode_name(mode) << ": tp=" << m.tp << " fp=" << m.fp << " fn=" << m.fn;
  std::cout << std::fixed;
  std::cout.precision(2);
  std::cout << " P=" << m.precision << " R=" << m.recall;
  std::cout.precision(4);
  std::cout << " F=" << m.f_measure << '\n';
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("lyrictrack");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LYRICTRACK_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Lyric-video word alignment, tracking, evaluation and motion analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lt_version()));

  std::string config_path;
  uint64_t seed = 0;
  int threads = 1;
  app.add_option("--config", config_path, "TOML settings; flags take precedence")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for every random choice");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads");

  // match
  auto* match_cmd = app.add_subcommand("match", "Align lyric words to frames");
  VideoPaths match_in;
  match_in.add_to(match_cmd);
  int delta = 1000;
  double dedup = 0.5;
  std::string match_out = "anchors.json";
  auto* delta_opt = match_cmd->add_option("--delta", delta, "Max frame gap between consecutive words");
  auto* dedup_opt = match_cmd->add_option("--dedup", dedup, "Cross-detector dedup IoU (<= 0 disables)");
  match_cmd->add_option("--out", match_out, "Output anchors.json");

  // track
  auto* track_cmd = app.add_subcommand("track", "Extend anchors into trajectories");
  VideoPaths track_in;
  track_in.add_to(track_cmd);
  std::string anchors_path;
  std::string track_out = "trajectories.jsonl";
  lt_track_params tp;
  lt_track_params_default(&tp);
  double track_dedup = 0.5;
  track_cmd->add_option("--anchors", anchors_path, "anchors.json from 'match'")->required();
  track_cmd->add_option("--out", track_out, "Output trajectories.jsonl");
  auto* word_sim_opt = track_cmd->add_option("--word-sim", tp.word_sim, "Max normalized edit distance");
  auto* max_move_opt = track_cmd->add_option("--max-move", tp.max_move, "Max shift per frame, fraction of diagonal");
  auto* min_scale_opt = track_cmd->add_option("--min-scale", tp.min_scale, "Min area ratio between frames");
  auto* max_miss_opt = track_cmd->add_option("--max-miss", tp.max_miss, "Misses before a scan stops");
  auto* track_dedup_opt = track_cmd->add_option("--dedup", track_dedup, "Cross-detector dedup IoU (<= 0 disables)");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score trajectories or anchors against ground truth");
  std::string eval_tracks, eval_anchors, eval_gt, eval_counts, eval_out;
  std::string mode_name = "MA+TR+IN";
  VideoPaths eval_in;
  eval_in.add_to(eval_cmd);
  auto* tracks_opt = eval_cmd->add_option("--trajectories", eval_tracks, "trajectories.jsonl");
  auto* anchors_opt = eval_cmd->add_option("--anchors", eval_anchors, "anchors.json (MA only; needs the video)");
  auto* counts_opt = eval_cmd->add_option("--counts", eval_counts, "JSON with tp/fp/fn to score directly");
  eval_cmd->add_option("--gt", eval_gt, "Ground truth gt.json");
  eval_cmd->add_option("--mode", mode_name, "MA, MA+TR or MA+TR+IN");
  eval_cmd->add_option("--out", eval_out, "Output metrics.json");
  tracks_opt->excludes(anchors_opt)->excludes(counts_opt);
  anchors_opt->excludes(counts_opt);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Representative motions, histograms and video clusters");
  std::vector<std::string> analyze_inputs;
  std::string analyze_out = "analysis";
  std::string traj_name = "trajectories.jsonl";
  lt_analyze_params ap;
  lt_analyze_params_default(&ap);
  analyze_cmd->add_option("inputs", analyze_inputs, "Video dirs (trajectories.jsonl + video.meta.json) or trajectory files")
      ->required();
  auto* k_opt = analyze_cmd->add_option("--k", ap.k_per_bucket, "Representatives per length bucket");
  auto* kmin_opt = analyze_cmd->add_option("--k-min", ap.k_min, "Smallest number of video clusters");
  auto* kmax_opt = analyze_cmd->add_option("--k-max", ap.k_max, "Largest number of video clusters");
  auto* restarts_opt = analyze_cmd->add_option("--restarts", ap.restarts, "k-means restarts");
  analyze_cmd->add_option("--trajectories-name", traj_name, "File name looked up inside video dirs");
  analyze_cmd->add_option("--out", analyze_out, "Output directory");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic video from a scenario");
  std::string scenario_path;
  std::string synth_out = "synth";
  bool synth_random = false;
  lt_synth_random_params sp;
  lt_synth_random_params_default(&sp);
  std::string synth_id;
  synth_cmd->add_option("scenario", scenario_path, "Scenario JSON");
  synth_cmd->add_flag("--random", synth_random, "Draw a random scenario from --seed instead");
  synth_cmd->add_option("--out", synth_out, "Output directory");
  auto* frames_opt = synth_cmd->add_option("--frames", sp.frames, "Frames (--random)");
  auto* words_opt = synth_cmd->add_option("--words", sp.words, "Lyric words (--random)");
  auto* dropout_opt = synth_cmd->add_option("--p-dropout", sp.p_dropout, "Missed box probability (--random)");
  auto* charsub_opt = synth_cmd->add_option("--p-char-sub", sp.p_char_sub, "Per-character substitution (--random)");
  auto* spurious_opt = synth_cmd->add_option("--p-spurious", sp.p_spurious, "Distractor boxes per frame (--random)");
  auto* jitter_opt = synth_cmd->add_option("--jitter", sp.jitter_sigma, "Vertex jitter sigma, px (--random)");
  auto* dup_opt = synth_cmd->add_option("--p-duplicate", sp.p_duplicate, "Second-detector duplicates (--random)");
  auto* gt_every_opt = synth_cmd->add_option("--gt-every", sp.gt_every, "Annotate every n-th frame (--random)");
  synth_cmd->add_option("--id", synth_id, "Video id (--random)");

  // report
  auto* report_cmd = app.add_subcommand("report", "SVG charts of per-cluster mean histograms");
  std::string report_in;
  std::string report_out = "report";
  report_cmd->add_option("analysis", report_in, "Directory written by 'analyze'")->required();
  report_cmd->add_option("--out", report_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    usage_error(e.what());
  }

  setup_logging();
  Settings cfg;
  if (!config_path.empty()) {
    cfg.load(config_path);
    spdlog::info("loaded config {}", config_path);
  }
  seed = cfg.pick<uint64_t>(seed_opt, seed, "seed", 0);
  threads = cfg.pick<int>(threads_opt, threads, "threads", 1);
  if (threads < 1) usage_error("--threads must be >= 1");

  if (match_cmd->parsed()) {
    match_in.resolve();
    if (match_in.lyrics.empty()) usage_error("match needs --lyrics or --video-dir");
    delta = cfg.pick<int>(delta_opt, delta, "match.delta", 1000);
    dedup = cfg.pick<double>(dedup_opt, dedup, "match.dedup", 0.5);
    if (delta < 1) usage_error("--delta must be >= 1");
    lt_video* v = nullptr;
    check(lt_video_load(match_in.detections.c_str(), match_in.meta.c_str(), match_in.lyrics.c_str(), dedup, &v));
    VideoPtr video(v);
    spdlog::info("matching {} words over {} frames (delta {})", lt_video_word_count(v), lt_video_frame_count(v),
                 delta);
    lt_match* m = nullptr;
    check(lt_match_run(v, delta, threads, &m));
    MatchPtr match(m);
    check(lt_match_save(m, match_out.c_str()));
    std::cout << "anchors: " << lt_match_size(m) << " total_cost: " << lt_match_total_cost(m) << '\n';
    return 0;
  }

  if (track_cmd->parsed()) {
    track_in.resolve();
    if (track_in.lyrics.empty()) usage_error("track needs --lyrics or --video-dir");
    tp.word_sim = cfg.pick<double>(word_sim_opt, tp.word_sim, "track.word_sim", tp.word_sim);
    tp.max_move = cfg.pick<double>(max_move_opt, tp.max_move, "track.max_move", tp.max_move);
    tp.min_scale = cfg.pick<double>(min_scale_opt, tp.min_scale, "track.min_scale", tp.min_scale);
    tp.max_miss = cfg.pick<int>(max_miss_opt, tp.max_miss, "track.max_miss", tp.max_miss);
    track_dedup = cfg.pick<double>(track_dedup_opt, track_dedup, "match.dedup", 0.5);
    check(lt_track_params_validate(&tp));
    lt_video* v = nullptr;
    check(lt_video_load(track_in.detections.c_str(), track_in.meta.c_str(), track_in.lyrics.c_str(), track_dedup,
                        &v));
    VideoPtr video(v);
    lt_match* m = nullptr;
    check(lt_match_load(anchors_path.c_str(), v, &m));
    MatchPtr match(m);
    lt_tracks* t = nullptr;
    check(lt_tracks_run(m, v, &tp, threads, &t));
    TracksPtr tracks(t);
    check(lt_tracks_save(t, track_out.c_str()));
    std::cout << "trajectories: " << lt_tracks_size(t) << '\n';
    return 0;
  }

  if (eval_cmd->parsed()) {
    lt_eval_mode mode;
    check(lt_eval_mode_parse(mode_name.c_str(), &mode));
    lt_metrics metrics{};
    if (!eval_counts.empty()) {
      std::ifstream in(eval_counts);
      if (!in) throw CliError{LT_ERR_IO, "cannot open " + eval_counts};
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw CliError{LT_ERR_SCHEMA, eval_counts + ": " + e.what()};
      }
      for (const char* key : {"tp", "fp", "fn"}) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
          throw CliError{LT_ERR_SCHEMA, eval_counts + ": '" + key + "' must be an integer"};
        }
      }
      check(lt_metrics_from_counts(j["tp"].get<int64_t>(), j["fp"].get<int64_t>(), j["fn"].get<int64_t>(), &metrics));
    } else {
      if (eval_gt.empty()) usage_error("eval needs --gt (or --counts)");
      if (!eval_tracks.empty()) {
        int frames = -1;
        if (!eval_in.dir.empty() || !eval_in.meta.empty()) {
          eval_in.resolve();
          lt_video* v = nullptr;
          check(lt_video_load(eval_in.detections.c_str(), eval_in.meta.c_str(), nullptr, 0.0, &v));
          frames = lt_video_frame_count(v);
          lt_video_free(v);
        }
        lt_tracks* t = nullptr;
        check(lt_tracks_load(eval_tracks.c_str(), &t));
        TracksPtr tracks(t);
        check(lt_eval_tracks(t, eval_gt.c_str(), mode, frames, &metrics));
      } else if (!eval_anchors.empty()) {
        if (mode != LT_MODE_MA) usage_error("anchors can only be scored in MA mode");
        eval_in.resolve();
        if (eval_in.lyrics.empty()) usage_error("scoring anchors needs --lyrics or --video-dir");
        lt_video* v = nullptr;
        check(lt_video_load(eval_in.detections.c_str(), eval_in.meta.c_str(), eval_in.lyrics.c_str(), 0.5, &v));
        VideoPtr video(v);
        lt_match* m = nullptr;
        check(lt_match_load(eval_anchors.c_str(), v, &m));
        MatchPtr match(m);
        check(lt_eval_anchors(m, eval_gt.c_str(), lt_video_frame_count(v), &metrics));
      } else {
        usage_error("eval needs --trajectories, --anchors or --counts");
      }
    }
    if (metrics.precision_undefined) spdlog::warn("precision undefined (no predictions); reported as 0");
    if (metrics.recall_undefined) spdlog::warn("recall undefined (no ground-truth boxes); reported as 0");
    if (!eval_out.empty()) check(lt_metrics_save(&metrics, mode, eval_out.c_str()));
    print_metrics(metrics, mode);
    return 0;
  }

  if (analyze_cmd->parsed()) {
    ap.k_per_bucket = cfg.pick<int>(k_opt, ap.k_per_bucket, "analyze.k", ap.k_per_bucket);
    ap.k_min = cfg.pick<int>(kmin_opt, ap.k_min, "analyze.k_min", ap.k_min);
    ap.k_max = cfg.pick<int>(kmax_opt, ap.k_max, "analyze.k_max", ap.k_max);
    ap.restarts = cfg.pick<int>(restarts_opt, ap.restarts, "analyze.restarts", ap.restarts);
    ap.seed = seed;
    ap.threads = threads;
    const auto buckets = cfg.buckets("analyze.buckets");
    if (buckets) {
      ap.buckets = buckets->data();
      ap.bucket_count = buckets->size();
    }
    check(lt_analyze_params_validate(&ap));
    std::vector<std::string> trajs, metas;
    for (const std::string& in : analyze_inputs) {
      const fs::path p(in);
      if (fs::is_directory(p)) {
        trajs.push_back((p / traj_name).string());
        metas.push_back((p / "video.meta.json").string());
      } else {
        trajs.push_back(p.string());
        metas.push_back((p.parent_path() / "video.meta.json").string());
      }
    }
    std::vector<const char*> traj_ptrs, meta_ptrs;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
      traj_ptrs.push_back(trajs[i].c_str());
      meta_ptrs.push_back(metas[i].c_str());
    }
    int chosen_k = 0;
    check(lt_analyze(traj_ptrs.data(), meta_ptrs.data(), trajs.size(), &ap, analyze_out.c_str(), &chosen_k));
    std::cout << "videos: " << trajs.size() << " clusters: " << chosen_k << '\n';
    return 0;
  }

  if (synth_cmd->parsed()) {
    if (synth_random) {
      sp.frames = cfg.pick<int>(frames_opt, sp.frames, "synth.frames", sp.frames);
      sp.words = cfg.pick<int>(words_opt, sp.words, "synth.words", sp.words);
      sp.p_dropout = cfg.pick<double>(dropout_opt, sp.p_dropout, "synth.p_dropout", sp.p_dropout);
      sp.p_char_sub = cfg.pick<double>(charsub_opt, sp.p_char_sub, "synth.p_char_sub", sp.p_char_sub);
      sp.p_spurious = cfg.pick<double>(spurious_opt, sp.p_spurious, "synth.p_spurious", sp.p_spurious);
      sp.jitter_sigma = cfg.pick<double>(jitter_opt, sp.jitter_sigma, "synth.jitter_sigma", sp.jitter_sigma);
      sp.p_duplicate = cfg.pick<double>(dup_opt, sp.p_duplicate, "synth.p_duplicate", sp.p_duplicate);
      sp.gt_every = cfg.pick<int>(gt_every_opt, sp.gt_every, "synth.gt_every", sp.gt_every);
      if (!synth_id.empty()) sp.video_id = synth_id.c_str();
      check(lt_synth_random(&sp, seed, synth_out.c_str()));
    } else {
      if (scenario_path.empty()) usage_error("synth needs a scenario file or --random");
      check(lt_synth_run(scenario_path.c_str(), synth_out.c_str()));
    }
    std::cout << "wrote " << synth_out << '\n';
    return 0;
  }

  if (report_cmd->parsed()) {
    check(lt_report_write(report_in.c_str(), report_out.c_str()));
    std::cout << "wrote " << report_out << '\n';
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    const nlohmann::json err = {{"error", lt_status_name(e.status)},
                                {"code", static_cast<int>(e.status)},
                                {"message", e.message}};
    std::cerr << err.dump() << '\n';
    return static_cast<int>(e.status);
  } catch (const std::exception& e) {
    const nlohmann::json err = {{"error", lt_status_name(LT_ERR_INTERNAL)},
                                {"code", static_cast<int>(LT_ERR_INTERNAL)},
                                {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return static_cast<int>(LT_ERR_INTERNAL);
  }
}
