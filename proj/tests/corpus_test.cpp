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

#include "lyrictrack/corpus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lyrictrack/error.hpp"
#include "lyrictrack/text.hpp"
#include "oracles.hpp"

namespace lyrictrack::corpus {
namespace {

using geometry::axis_aligned_quad;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(TokenizeTest, Examples) {
  const auto a = tokenize_lyrics("don't  stop");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].text, "DON'T");
  EXPECT_EQ(a[0].index, 1);
  EXPECT_EQ(a[1].text, "STOP");
  EXPECT_EQ(a[1].index, 2);

  const auto b = tokenize_lyrics("I love you");
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].text, "I");
  EXPECT_EQ(b[1].text, "LOVE");
  EXPECT_EQ(b[2].text, "YOU");
  EXPECT_EQ(b[2].raw, "you");

  EXPECT_EQ(code_of([] { tokenize_lyrics("!!!"); }), ErrorCode::kEmptyLyrics);
  EXPECT_EQ(code_of([] { tokenize_lyrics("  \n\t "); }), ErrorCode::kEmptyLyrics);
}

TEST(TokenizeTest, StripsOuterPunctuationKeepsInner) {
  const auto s = tokenize_lyrics("(oh-oh), \"rock'n'roll!\" -- ...");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].text, "OH-OH");
  EXPECT_EQ(s[1].text, "ROCK'N'ROLL");
}

TEST(TokenizeTest, IdempotentOnOutput) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const std::string raw = testing::random_string(rng, 40, "ab C'-!. \n\tyz,");
    LyricSequence once;
    try {
      once = tokenize_lyrics(raw);
    } catch (const Error&) {
      continue;
    }
    std::string joined;
    for (const auto& w : once.words) joined += w.text + " ";
    const auto twice = tokenize_lyrics(joined);
    ASSERT_EQ(twice.size(), once.size());
    for (std::size_t k = 0; k < once.size(); ++k) EXPECT_EQ(twice[k].text, once[k].text);
  }
}

TEST(NormalizeTest, KeepsNonAscii) {
  EXPECT_EQ(text::normalize_word("\"ça\""), "çA");
  EXPECT_EQ(text::codepoint_length("ÇA"), 2u);
}

constexpr const char* kTwoFrames =
    R"({"t":0,"boxes":[{"poly":[[0,0],[10,0],[10,5],[0,5]],"text":"love!","conf":0.9,"det":"a"}]})"
    "\n"
    R"({"t":3,"boxes":[]})"
    "\n";

TEST(DetectionsTest, ParsesAndNormalizes) {
  std::istringstream in(kTwoFrames);
  const auto frames = parse_detections(in);
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_EQ(frames[0].t, 0);
  ASSERT_EQ(frames[0].boxes.size(), 1u);
  EXPECT_EQ(frames[0].boxes[0].text, "LOVE");
  EXPECT_DOUBLE_EQ(frames[0].boxes[0].confidence, 0.9);
  EXPECT_EQ(frames[1].t, 3);
  EXPECT_TRUE(frames[1].boxes.empty());
}

TEST(DetectionsTest, ClockwiseInputIsStoredCounterClockwise) {
  std::istringstream in(R"({"t":0,"boxes":[{"poly":[[0,0],[0,5],[10,5],[10,0]],"text":"A","conf":1,"det":"a"}]})");
  const auto frames = parse_detections(in);
  EXPECT_GT(geometry::signed_area(frames[0].boxes[0].quad), 0.0);
}

TEST(DetectionsTest, SchemaErrorsCarryLineNumbers) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    parse_detections(in);
  };
  const std::string three = R"({"t":0,"boxes":[{"poly":[[0,0],[1,0],[1,1]],"text":"A","conf":1,"det":"a"}]})";
  try {
    parse(std::string(R"({"t":0,"boxes":[]})") + "\n" + three);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_EQ(code_of([&] { parse("{not json"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { parse(R"({"t":0,"boxes":[{"poly":[[0,0],[1,0],[1,1],[0,1]],"text":"A","conf":1.5,"det":"a"}]})"); }),
            ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { parse(R"({"t":0,"boxes":[{"poly":[[0,0],[2,1],[4,0],[2,4]],"text":"A","conf":1,"det":"a"}]})"); }),
            ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { parse(R"({"t":0,"boxes":[{"poly":[[0,0],[1,0],[1,1],[0,1]],"text":"A","conf":1}]})"); }),
            ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { parse(R"({"t":2,"boxes":[]})" "\n" R"({"t":1,"boxes":[]})"); }),
            ErrorCode::kNonMonotoneFrames);
  EXPECT_EQ(code_of([&] { parse(R"({"t":2,"boxes":[]})" "\n" R"({"t":2,"boxes":[]})"); }),
            ErrorCode::kNonMonotoneFrames);
}

TEST(DetectionsTest, RoundTripProperty) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FrameDetections> frames;
    int t = 0;
    for (int f = 0; f < 8; ++f) {
      t += 1 + static_cast<int>(rng() % 3);
      FrameDetections fd{t, {}};
      const int n = static_cast<int>(rng() % 4);
      for (int b = 0; b < n; ++b) {
        fd.boxes.push_back({testing::random_convex_quad(rng, {u(rng) * 1000, u(rng) * 1000}, 50),
                            text::normalize_word(testing::random_string(rng, 6, "ABC'")) + "X", u(rng),
                            b % 2 ? "det-b" : "det-a"});
      }
      frames.push_back(std::move(fd));
    }
    std::ostringstream out;
    serialize_detections(out, frames);
    std::istringstream in(out.str());
    const auto back = parse_detections(in);
    EXPECT_EQ(back, frames);
    std::ostringstream again;
    serialize_detections(again, back);
    EXPECT_EQ(again.str(), out.str());
  }
}

TEST(MetaTest, RoundTripAndValidation) {
  const VideoMeta m{"clip", 29.97, 1280, 720, 5471};
  EXPECT_EQ(parse_meta(serialize_meta(m)), m);
  EXPECT_EQ(code_of([] { parse_meta(R"({"id":"x","fps":0,"width":1,"height":1,"frames":1})"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_meta(R"({"id":"x","fps":24,"width":1,"height":1,"frames":0})"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_meta(R"({"id":"x","fps":24,"width":1,"height":1})"); }), ErrorCode::kSchema);
  EXPECT_NEAR(VideoMeta{}.diagonal(), std::hypot(1920.0, 1080.0), 1e-9);
}

TEST(GroundTruthTest, RoundTripSortsAndRejectsDuplicates) {
  GroundTruth gt;
  gt.frames.push_back({7, {{axis_aligned_quad(0, 0, 4, 2), "YOU"}}});
  gt.frames.push_back({2, {}});
  const GroundTruth back = parse_ground_truth(serialize_ground_truth(gt));
  ASSERT_EQ(back.frames.size(), 2u);
  EXPECT_EQ(back.frames[0].t, 2);
  EXPECT_EQ(back.frames[1], gt.frames[0]);
  EXPECT_EQ(code_of([] { parse_ground_truth(R"({"frames":[{"t":1,"boxes":[]},{"t":1,"boxes":[]}]})"); }),
            ErrorCode::kSchema);
}

TEST(MakeVideoTest, DensifiesAndChecksRange) {
  const VideoMeta m{"v", 24, 100, 100, 4};
  const auto v = make_video(m, {{1, {{axis_aligned_quad(0, 0, 1, 1), "A", 1.0, "a"}}}, {3, {}}});
  ASSERT_EQ(v.frame_count(), 4);
  for (int t = 0; t < 4; ++t) EXPECT_EQ(v.frames[static_cast<std::size_t>(t)].t, t);
  EXPECT_EQ(v.frames[1].boxes.size(), 1u);
  EXPECT_EQ(code_of([&] { make_video(m, {{4, {}}}); }), ErrorCode::kSchema);
}

Detection box(double x, const char* text, double conf, const char* det) {
  return {axis_aligned_quad(x, 0, x + 10, 10), text, conf, det};
}

TEST(DedupTest, Examples) {
  const auto one = dedup_detections({0, {box(0, "LOVE", 0.8, "a"), box(0, "LOVE", 0.9, "b")}});
  ASSERT_EQ(one.boxes.size(), 1u);
  EXPECT_DOUBLE_EQ(one.boxes[0].confidence, 0.9);

  EXPECT_EQ(dedup_detections({0, {box(0, "LOVE", 0.8, "a"), box(0, "LOVF", 0.9, "b")}}).boxes.size(), 2u);

  // Shift 6: overlap 40, union 160.
  const Detection a = box(0, "LOVE", 0.8, "a");
  const Detection b = box(6, "LOVE", 0.9, "b");
  ASSERT_LT(geometry::iou(a.quad, b.quad), 0.5);
  EXPECT_EQ(dedup_detections({0, {a, b}}).boxes.size(), 2u);

  // IoU exactly 0.4 with a shift of 30/7 on a 10-wide box.
  const Detection c = {axis_aligned_quad(30.0 / 7.0, 0, 30.0 / 7.0 + 10, 10), "LOVE", 0.9, "b"};
  EXPECT_NEAR(geometry::iou(a.quad, c.quad), 0.4, 1e-12);
  EXPECT_EQ(dedup_detections({0, {a, c}}).boxes.size(), 2u);
}

TEST(DedupTest, SameDetectorAndTiesKeepEarlier) {
  EXPECT_EQ(dedup_detections({0, {box(0, "A", 0.8, "a"), box(0, "A", 0.9, "a")}}).boxes.size(), 2u);
  const auto tie = dedup_detections({0, {box(0, "A", 0.7, "x"), box(0, "A", 0.7, "y")}});
  ASSERT_EQ(tie.boxes.size(), 1u);
  EXPECT_EQ(tie.boxes[0].detector, "x");
  EXPECT_EQ(code_of([] { dedup_detections({0, {}}, 0.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { dedup_detections({0, {}}, 1.5); }), ErrorCode::kInvalidArgument);
}

TEST(DedupProperty, Invariants) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    FrameDetections f{0, {}};
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      f.boxes.push_back({axis_aligned_quad(u(rng) * 8, 0, u(rng) * 8 + 10, 10), rng() % 2 ? "A" : "B",
                         std::round(u(rng) * 4) / 4, rng() % 3 == 0 ? "solo" : (rng() % 2 ? "p" : "q")});
    }
    const auto out = dedup_detections(f);
    ASSERT_LE(out.boxes.size(), f.boxes.size());
    // Order preserved: output is a subsequence of the input.
    std::size_t j = 0;
    for (const auto& b : f.boxes) {
      if (j < out.boxes.size() && out.boxes[j] == b) ++j;
    }
    EXPECT_EQ(j, out.boxes.size());
    // No surviving pair is still a duplicate.
    for (std::size_t a = 0; a < out.boxes.size(); ++a) {
      for (std::size_t b = a + 1; b < out.boxes.size(); ++b) {
        const auto& x = out.boxes[a];
        const auto& y = out.boxes[b];
        EXPECT_FALSE(x.detector != y.detector && x.text == y.text && geometry::iou(x.quad, y.quad) >= 0.5);
      }
    }
    // Every removed box has a kept duplicate with at least its confidence.
    for (const auto& b : f.boxes) {
      if (std::find(out.boxes.begin(), out.boxes.end(), b) != out.boxes.end()) continue;
      const bool covered = std::any_of(out.boxes.begin(), out.boxes.end(), [&](const Detection& k) {
        return k.detector != b.detector && k.text == b.text && geometry::iou(k.quad, b.quad) >= 0.5 &&
               k.confidence >= b.confidence;
      });
      EXPECT_TRUE(covered);
    }
  }
}

}  // namespace
}  // namespace lyrictrack::corpus
