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

// Exercises the shared library through its C header only.

#include "lyrictrack/lyrictrack.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lyrictrack_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string p(const fs::path& path) { return path.string(); }

lt_synth_random_params clean_params() {
  lt_synth_random_params sp;
  lt_synth_random_params_default(&sp);
  sp.frames = 400;
  sp.words = 12;
  sp.p_dropout = 0;
  sp.p_char_sub = 0;
  sp.p_spurious = 0;
  sp.jitter_sigma = 0;
  sp.p_duplicate = 0;
  return sp;
}

TEST(CApiTest, StatusNames) {
  EXPECT_STREQ(lt_status_name(LT_OK), "Ok");
  EXPECT_STREQ(lt_status_name(LT_ERR_SCRIPT_OVERLAP), "ScriptOverlapError");
  EXPECT_STRNE(lt_status_name(LT_ERR_SCHEMA), lt_status_name(LT_ERR_IO));
  EXPECT_NE(std::string(lt_version()), "");
}

TEST(CApiTest, MetricsFromCounts) {
  lt_metrics m;
  ASSERT_EQ(lt_metrics_from_counts(5547, 550, 2223, &m), LT_OK);
  EXPECT_NEAR(m.precision, 90.98, 0.005);
  EXPECT_NEAR(m.recall, 71.39, 0.005);
  EXPECT_NEAR(m.f_measure, 0.8, 0.00005);
  EXPECT_EQ(lt_metrics_from_counts(-1, 0, 0, &m), LT_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(lt_last_error()), "");
  EXPECT_EQ(lt_metrics_from_counts(1, 1, 1, nullptr), LT_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, ModeNames) {
  lt_eval_mode mode;
  ASSERT_EQ(lt_eval_mode_parse("MA+TR", &mode), LT_OK);
  EXPECT_EQ(mode, LT_MODE_MA_TR);
  EXPECT_STREQ(lt_eval_mode_name(LT_MODE_MA_TR_IN), "MA+TR+IN");
  EXPECT_EQ(lt_eval_mode_parse("IN", &mode), LT_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, ParamValidation) {
  lt_track_params tp;
  lt_track_params_default(&tp);
  EXPECT_EQ(tp.max_miss, 12);
  EXPECT_EQ(lt_track_params_validate(&tp), LT_OK);
  tp.min_scale = 2.0;
  EXPECT_EQ(lt_track_params_validate(&tp), LT_ERR_INVALID_ARGUMENT);

  lt_analyze_params ap;
  lt_analyze_params_default(&ap);
  EXPECT_EQ(ap.k_per_bucket, 10);
  EXPECT_EQ(lt_analyze_params_validate(&ap), LT_OK);
  ap.k_min = 1;
  EXPECT_EQ(lt_analyze_params_validate(&ap), LT_ERR_INVALID_K);
  lt_analyze_params_default(&ap);
  const lt_bucket overlapping[] = {{10, 20}, {15, 30}};
  ap.buckets = overlapping;
  ap.bucket_count = 2;
  EXPECT_EQ(lt_analyze_params_validate(&ap), LT_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, MissingFilesAreIoErrors) {
  lt_video* v = nullptr;
  EXPECT_EQ(lt_video_load("/nonexistent/d.jsonl", "/nonexistent/m.json", nullptr, 0.5, &v), LT_ERR_IO);
  EXPECT_EQ(v, nullptr);
  lt_video_free(nullptr);
  lt_match_free(nullptr);
  lt_tracks_free(nullptr);
}

TEST(CApiTest, ZeroNoisePipeline) {
  const fs::path dir = scratch("pipeline");
  const lt_synth_random_params sp = clean_params();
  ASSERT_EQ(lt_synth_random(&sp, 3, p(dir).c_str()), LT_OK) << lt_last_error();

  lt_video* video = nullptr;
  ASSERT_EQ(lt_video_load(p(dir / "detections.jsonl").c_str(), p(dir / "video.meta.json").c_str(),
                          p(dir / "lyrics.txt").c_str(), 0.5, &video),
            LT_OK)
      << lt_last_error();
  EXPECT_EQ(lt_video_frame_count(video), 400);
  EXPECT_EQ(lt_video_word_count(video), 12u);

  lt_match* match = nullptr;
  ASSERT_EQ(lt_match_run(video, 1000, 2, &match), LT_OK) << lt_last_error();
  EXPECT_EQ(lt_match_size(match), 12u);
  EXPECT_EQ(lt_match_total_cost(match), 0);
  lt_anchor a;
  ASSERT_EQ(lt_match_anchor(match, 0, &a), LT_OK);
  EXPECT_EQ(a.k, 1);
  EXPECT_EQ(a.cost, 0);
  EXPECT_TRUE(a.has_box);
  EXPECT_EQ(lt_match_anchor(match, 12, &a), LT_ERR_INVALID_ARGUMENT);

  ASSERT_EQ(lt_match_save(match, p(dir / "anchors.json").c_str()), LT_OK);
  lt_match* reloaded = nullptr;
  ASSERT_EQ(lt_match_load(p(dir / "anchors.json").c_str(), video, &reloaded), LT_OK) << lt_last_error();
  EXPECT_EQ(lt_match_total_cost(reloaded), 0);

  lt_tracks* tracks = nullptr;
  ASSERT_EQ(lt_tracks_run(reloaded, video, nullptr, 1, &tracks), LT_OK) << lt_last_error();
  EXPECT_EQ(lt_tracks_size(tracks), 12u);
  ASSERT_EQ(lt_tracks_save(tracks, p(dir / "trajectories.jsonl").c_str()), LT_OK);
  lt_tracks* loaded = nullptr;
  ASSERT_EQ(lt_tracks_load(p(dir / "trajectories.jsonl").c_str(), &loaded), LT_OK);
  EXPECT_EQ(lt_tracks_size(loaded), 12u);

  lt_metrics m;
  ASSERT_EQ(lt_eval_tracks(loaded, p(dir / "gt.json").c_str(), LT_MODE_MA_TR_IN, 400, &m), LT_OK)
      << lt_last_error();
  EXPECT_EQ(m.fp, 0);
  EXPECT_EQ(m.fn, 0);
  lt_metrics ma;
  ASSERT_EQ(lt_eval_anchors(match, p(dir / "gt.json").c_str(), -1, &ma), LT_OK);
  EXPECT_EQ(ma.tp, 12);
  EXPECT_LT(ma.recall, m.recall);
  ASSERT_EQ(lt_metrics_save(&m, LT_MODE_MA_TR_IN, p(dir / "metrics.json").c_str()), LT_OK);
  EXPECT_TRUE(fs::exists(dir / "metrics.json"));

  lt_tracks_free(loaded);
  lt_tracks_free(tracks);
  lt_match_free(reloaded);
  lt_match_free(match);
  lt_video_free(video);
}

TEST(CApiTest, AnalyzeAndReport) {
  const fs::path dir = scratch("analyze");
  std::vector<std::string> traj_paths, meta_paths;
  for (int i = 0; i < 4; ++i) {
    const fs::path vdir = dir / ("v" + std::to_string(i));
    lt_synth_random_params sp = clean_params();
    const std::string id = "v" + std::to_string(i);
    sp.video_id = id.c_str();
    sp.frames = 800;
    sp.words = 16;
    ASSERT_EQ(lt_synth_random(&sp, 50 + i, p(vdir).c_str()), LT_OK) << lt_last_error();
    traj_paths.push_back(p(vdir / "gt_tracks.jsonl"));
    meta_paths.push_back(p(vdir / "video.meta.json"));
  }
  std::vector<const char*> tp, mp;
  for (std::size_t i = 0; i < traj_paths.size(); ++i) {
    tp.push_back(traj_paths[i].c_str());
    mp.push_back(meta_paths[i].c_str());
  }
  lt_analyze_params ap;
  lt_analyze_params_default(&ap);
  ap.k_per_bucket = 3;
  int k = 0;
  const fs::path out = dir / "analysis";
  ASSERT_EQ(lt_analyze(tp.data(), mp.data(), tp.size(), &ap, p(out).c_str(), &k), LT_OK) << lt_last_error();
  EXPECT_GE(k, 2);
  for (const char* f : {"representatives.json", "histograms.csv", "clusters.json", "mean_histograms.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_EQ(lt_analyze(tp.data(), mp.data(), 2, &ap, p(out).c_str(), nullptr), LT_ERR_TOO_FEW_VIDEOS);

  const fs::path report = dir / "report";
  ASSERT_EQ(lt_report_write(p(out).c_str(), p(report).c_str()), LT_OK) << lt_last_error();
  EXPECT_TRUE(fs::exists(report / "cluster_0.svg"));
  EXPECT_TRUE(fs::exists(report / "mean_histograms_long.csv"));
}

TEST(CApiTest, ScenarioOverlapStatus) {
  const fs::path dir = scratch("overlap");
  std::ofstream(dir / "scenario.json") << R"({
    "meta": {"id": "o", "fps": 24, "width": 640, "height": 360, "frames": 30},
    "scripts": [
      {"word": "LOVE", "t_start": 0, "t_end": 10, "quad": [[0,0],[50,0],[50,20],[0,20]],
       "motion": {"type": "static"}},
      {"word": "love", "t_start": 5, "t_end": 20, "quad": [[100,0],[150,0],[150,20],[100,20]],
       "motion": {"type": "static"}}
    ]})";
  EXPECT_EQ(lt_synth_run(p(dir / "scenario.json").c_str(), p(dir / "out").c_str()), LT_ERR_SCRIPT_OVERLAP);
  std::ofstream(dir / "broken.json") << "{";
  EXPECT_EQ(lt_synth_run(p(dir / "broken.json").c_str(), p(dir / "out").c_str()), LT_ERR_SCHEMA);
}

}  // namespace
