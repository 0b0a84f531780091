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

#include "lyrictrack/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "lyrictrack/error.hpp"
#include "lyrictrack/text.hpp"
#include "random.hpp"

namespace lyrictrack::synth {

namespace {

constexpr std::array<std::string_view, 64> kVocabulary{
    "LOVE",    "HEART",   "NIGHT",    "DANCE",    "FOREVER",  "TONIGHT",  "BABY",     "NEVER",
    "ALWAYS",  "DREAM",   "FIRE",     "RAIN",     "WORLD",    "TOGETHER", "SUMMER",   "MOMENT",
    "FEEL",    "HOLD",    "SHINE",    "STARS",    "BROKEN",   "WILD",     "FREE",     "HOME",
    "BEAUTIFUL", "TIME",  "GOLDEN",   "OCEAN",    "RUNNING",  "SKY",      "CRAZY",    "SECRET",
    "MEMORY",  "PROMISE", "THUNDER",  "WHISPER",  "SILENCE",  "ANGEL",    "CASTLE",   "SUGAR",
    "PERFECT", "RULES",   "GOODBYE",  "SOMEBODY", "HIGHER",   "ELECTRIC", "PARADISE", "STRANGER",
    "MIDNIGHT", "COLORS", "RHYTHM",   "DESIRE",   "WINGS",    "SHADOW",   "MAGIC",    "HEAVEN",
    "FALLING", "ALIVE",   "YOU",      "ME",       "I",        "THE",      "AND",      "DON'T"};

constexpr std::array<std::string_view, 16> kDistractors{
    "SALE", "OPEN",  "EXIT", "CAFE",  "HOTEL", "TAXI", "BANK",  "POLICE",
    "PUSH", "METRO", "LOBBY", "QUIZ", "XQ",    "ZZZ",  "KIOSK", "VAULT"};

constexpr std::string_view kSubstitutionAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ'";

geometry::Point rotate_about(geometry::Point p, geometry::Point c, double radians) {
  const double cs = std::cos(radians);
  const double sn = std::sin(radians);
  const geometry::Point d = p - c;
  return {c.x + cs * d.x - sn * d.y, c.y + sn * d.x + cs * d.y};
}

std::string corrupt(std::string_view word, double p, detail::Rng& rng) {
  std::string out(word);
  if (p <= 0.0) return out;
  for (char& c : out) {
    if (!rng.bernoulli(p)) continue;
    char sub = c;
    while (sub == c) sub = kSubstitutionAlphabet[rng.below(kSubstitutionAlphabet.size())];
    c = sub;
  }
  return out;
}

Quad jitter(const Quad& q, double sigma, detail::Rng& rng) {
  if (sigma <= 0.0) return q;
  Quad out = q;
  for (auto& p : out) {
    p.x += rng.normal(0.0, sigma);
    p.y += rng.normal(0.0, sigma);
  }
  // Tiny boxes can fold under jitter; keep the exact quad then.
  return geometry::is_convex_ccw(out) ? out : q;
}

void check_scripts(const Scenario& s) {
  const int T = s.meta.frames;
  for (std::size_t i = 0; i < s.scripts.size(); ++i) {
    const MotionScript& m = s.scripts[i];
    const std::string where = "script " + std::to_string(i) + " ('" + m.word + "')";
    if (text::normalize_word(m.word).empty()) throw Error(ErrorCode::kInvalidArgument, where + ": empty word");
    if (m.t_start < 0 || m.t_end < m.t_start || m.t_end >= T) {
      throw Error(ErrorCode::kInvalidArgument, where + ": span must satisfy 0 <= t_start <= t_end < frames");
    }
    if (!geometry::is_convex_ccw(m.start)) {
      throw Error(ErrorCode::kInvalidArgument, where + ": start quad must be convex and counter-clockwise");
    }
    if (m.type == MotionType::kScale && !(m.scale_rate > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, where + ": scale rate must be positive");
    }
  }
  if (s.allow_overlap) return;
  for (std::size_t i = 0; i < s.scripts.size(); ++i) {
    for (std::size_t j = i + 1; j < s.scripts.size(); ++j) {
      const MotionScript& a = s.scripts[i];
      const MotionScript& b = s.scripts[j];
      if (text::normalize_word(a.word) != text::normalize_word(b.word)) continue;
      if (a.t_start <= b.t_end && b.t_start <= a.t_end) {
        throw Error(ErrorCode::kScriptOverlap, "scripts " + std::to_string(i) + " and " + std::to_string(j) +
                                                   " show '" + a.word + "' at the same time");
      }
    }
  }
}

}  // namespace

std::span<const std::string_view> lyric_vocabulary() { return kVocabulary; }
std::span<const std::string_view> distractor_words() { return kDistractors; }

std::string_view motion_type_name(MotionType type) {
  switch (type) {
    case MotionType::kStatic: return "static";
    case MotionType::kLinear: return "linear";
    case MotionType::kScale: return "scale";
    case MotionType::kRotate: return "rotate";
    case MotionType::kCircular: return "circular";
  }
  return "static";
}

Quad MotionScript::quad_at(int t) const {
  const double dt = t - t_start;
  const geometry::Point c = geometry::centroid(start);
  Quad q = start;
  switch (type) {
    case MotionType::kStatic:
      break;
    case MotionType::kLinear:
      for (auto& p : q) p = p + geometry::Point{vx * dt, vy * dt};
      break;
    case MotionType::kScale: {
      const double s = std::pow(scale_rate, dt);
      for (auto& p : q) p = c + s * (p - c);
      break;
    }
    case MotionType::kRotate: {
      const double a = deg_per_frame * dt * std::numbers::pi / 180.0;
      for (auto& p : q) p = rotate_about(p, c, a);
      break;
    }
    case MotionType::kCircular: {
      const double a = angular_velocity * dt * std::numbers::pi / 180.0;
      const geometry::Point shift{radius * std::cos(a) - radius, radius * std::sin(a)};
      for (auto& p : q) p = p + shift;
      break;
    }
  }
  return q;
}

void NoiseModel::validate() const {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must lie in [0, 1]");
  };
  prob(p_dropout, "p_dropout");
  prob(p_char_sub, "p_char_sub");
  prob(p_duplicate, "p_duplicate");
  if (!(p_spurious >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "p_spurious must be non-negative");
  if (!(jitter_sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "jitter_sigma must be non-negative");
}

SynthOutput generate(const Scenario& scenario) {
  scenario.noise.validate();
  if (scenario.meta.frames < 1 || scenario.meta.width <= 0 || scenario.meta.height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "video meta needs positive frames, width and height");
  }
  if (scenario.gt_every < 1) throw Error(ErrorCode::kInvalidArgument, "gt_every must be >= 1");
  check_scripts(scenario);

  // Lyric order is script order by start frame.
  std::vector<std::size_t> order(scenario.scripts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scenario.scripts[a].t_start < scenario.scripts[b].t_start;
  });

  SynthOutput out;
  out.meta = scenario.meta;
  const int T = scenario.meta.frames;
  const NoiseModel& noise = scenario.noise;
  detail::Rng rng(noise.seed);

  for (std::size_t i = 0; i < order.size(); ++i) {
    const MotionScript& m = scenario.scripts[order[i]];
    if (i > 0) out.lyrics_text += ' ';
    out.lyrics_text += m.word;
    track::Trajectory tr;
    tr.k = static_cast<int>(i) + 1;
    tr.word = text::normalize_word(m.word);
    tr.anchor_t = m.t_start;
    for (int t = m.t_start; t <= m.t_end; ++t) tr.frames.push_back({t, m.quad_at(t), track::FrameSource::kDetected});
    out.gt_tracks.push_back(std::move(tr));
  }
  out.lyrics_text += '\n';

  const double w = scenario.meta.width;
  const double h = scenario.meta.height;
  out.detections.resize(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    corpus::FrameDetections& frame = out.detections[static_cast<std::size_t>(t)];
    frame.t = t;
    corpus::GtFrame gt_frame;
    gt_frame.t = t;
    for (const track::Trajectory& tr : out.gt_tracks) {
      const track::TrackedFrame* f = tr.find(t);
      if (!f) continue;
      gt_frame.boxes.push_back({f->quad, tr.word});
      if (rng.bernoulli(noise.p_dropout)) continue;
      frame.boxes.push_back({jitter(f->quad, noise.jitter_sigma, rng), corrupt(tr.word, noise.p_char_sub, rng),
                             rng.uniform(0.6, 1.0), "synth-a"});
      if (rng.bernoulli(noise.p_duplicate)) {
        frame.boxes.push_back({jitter(f->quad, noise.jitter_sigma, rng), corrupt(tr.word, noise.p_char_sub, rng),
                               rng.uniform(0.6, 1.0), "synth-b"});
      }
    }
    const int spurious = rng.poisson(noise.p_spurious);
    for (int s = 0; s < spurious; ++s) {
      const double bw = rng.uniform(60.0, 320.0);
      const double bh = rng.uniform(30.0, 90.0);
      const geometry::Point c{rng.uniform(0.5 * bw, w - 0.5 * bw), rng.uniform(0.5 * bh, h - 0.5 * bh)};
      const double angle = rng.uniform(-0.3, 0.3);
      const auto word = kDistractors[rng.below(kDistractors.size())];
      frame.boxes.push_back({geometry::rotated_rect(c, bw, bh, angle), std::string(word), rng.uniform(0.3, 0.9),
                             "synth-a"});
    }
    // Fisher-Yates so scripted boxes do not always come first.
    for (std::size_t i = frame.boxes.size(); i > 1; --i) {
      std::swap(frame.boxes[i - 1], frame.boxes[rng.below(i)]);
    }
    if (t % scenario.gt_every == 0) out.gt.frames.push_back(std::move(gt_frame));
  }
  return out;
}

namespace {

using detail::json;

MotionType parse_motion_type(const std::string& name) {
  if (name == "static") return MotionType::kStatic;
  if (name == "linear") return MotionType::kLinear;
  if (name == "scale") return MotionType::kScale;
  if (name == "rotate") return MotionType::kRotate;
  if (name == "circular") return MotionType::kCircular;
  throw SchemaError("unknown motion type '" + name + "'");
}

double optional_number(const json& obj, const char* key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw SchemaError(std::string("field '") + key + "' must be a number");
  return it->get<double>();
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  const json j = detail::parse_json(json_text);
  Scenario s;
  const json& meta = detail::require(j, "meta");
  s.meta = corpus::parse_meta(meta.dump());
  if (auto it = j.find("noise"); it != j.end()) {
    const json& n = *it;
    s.noise.p_dropout = optional_number(n, "p_dropout", 0.0);
    s.noise.p_char_sub = optional_number(n, "p_char_sub", 0.0);
    s.noise.p_spurious = optional_number(n, "p_spurious", 0.0);
    s.noise.jitter_sigma = optional_number(n, "jitter_sigma", 0.0);
    s.noise.p_duplicate = optional_number(n, "p_duplicate", 0.0);
    if (auto seed = n.find("seed"); seed != n.end()) {
      if (!seed->is_number_unsigned() && !seed->is_number_integer()) throw SchemaError("'seed' must be an integer");
      s.noise.seed = seed->get<uint64_t>();
    }
  }
  if (auto it = j.find("allow_overlap"); it != j.end()) s.allow_overlap = it->get<bool>();
  if (auto it = j.find("gt_every"); it != j.end()) s.gt_every = it->get<int>();
  long rec = 0;
  for (const json& m : detail::require_array(j, "scripts")) {
    ++rec;
    MotionScript ms;
    ms.word = detail::require_string(m, "word", rec);
    ms.t_start = static_cast<int>(detail::require_int(m, "t_start", rec));
    ms.t_end = static_cast<int>(detail::require_int(m, "t_end", rec));
    ms.start = detail::quad_from_json(detail::require(m, "quad", rec), rec);
    const json& motion = detail::require(m, "motion", rec);
    ms.type = parse_motion_type(detail::require_string(motion, "type", rec));
    ms.vx = optional_number(motion, "vx", 0.0);
    ms.vy = optional_number(motion, "vy", 0.0);
    ms.scale_rate = optional_number(motion, "rate", 1.0);
    ms.deg_per_frame = optional_number(motion, "deg_per_frame", 0.0);
    ms.radius = optional_number(motion, "radius", 0.0);
    ms.angular_velocity = optional_number(motion, "deg_per_frame_circle", 0.0);
    s.scripts.push_back(std::move(ms));
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  json scripts = json::array();
  for (const MotionScript& m : s.scripts) {
    json motion = {{"type", std::string(motion_type_name(m.type))}};
    switch (m.type) {
      case MotionType::kStatic: break;
      case MotionType::kLinear:
        motion["vx"] = m.vx;
        motion["vy"] = m.vy;
        break;
      case MotionType::kScale: motion["rate"] = m.scale_rate; break;
      case MotionType::kRotate: motion["deg_per_frame"] = m.deg_per_frame; break;
      case MotionType::kCircular:
        motion["radius"] = m.radius;
        motion["deg_per_frame_circle"] = m.angular_velocity;
        break;
    }
    scripts.push_back({{"word", m.word},
                       {"t_start", m.t_start},
                       {"t_end", m.t_end},
                       {"quad", detail::quad_to_json(m.start)},
                       {"motion", std::move(motion)}});
  }
  json j = {{"meta", json::parse(corpus::serialize_meta(s.meta))},
            {"noise",
             {{"p_dropout", s.noise.p_dropout},
              {"p_char_sub", s.noise.p_char_sub},
              {"p_spurious", s.noise.p_spurious},
              {"jitter_sigma", s.noise.jitter_sigma},
              {"p_duplicate", s.noise.p_duplicate},
              {"seed", s.noise.seed}}},
            {"allow_overlap", s.allow_overlap},
            {"gt_every", s.gt_every},
            {"scripts", std::move(scripts)}};
  return j.dump(2) + "\n";
}

Scenario random_scenario(const RandomScenarioParams& params, uint64_t seed) {
  if (params.words < 1 || params.frames < 2 * params.words) {
    throw Error(ErrorCode::kInvalidArgument, "random scenario needs frames >= 2 * words >= 2");
  }
  detail::Rng rng(seed);
  Scenario s;
  s.meta = {params.id, params.fps, params.width, params.height, params.frames};
  s.noise = params.noise;
  s.gt_every = params.gt_every;

  // Timing: phrases of 2-5 words; words enter one after another and the
  // whole phrase leaves together, followed by a pause.
  const double margin = 0.02 * params.frames;
  const double per_word = (params.frames - 2.0 * margin) / params.words;
  struct Slot {
    int start, end;
    std::size_t phrase, pos;
  };
  std::vector<Slot> slots;
  double cursor = margin;
  std::size_t phrase = 0;
  while (static_cast<int>(slots.size()) < params.words) {
    const int n = std::min(rng.between(2, 5), params.words - static_cast<int>(slots.size()));
    const double budget = n * per_word;
    const double shown = budget * rng.uniform(0.65, 0.85);
    const double stagger = std::min(0.5 * shown / n, rng.uniform(3.0, 10.0));
    const int end = static_cast<int>(cursor + shown);
    for (int i = 0; i < n; ++i) {
      const int start = static_cast<int>(cursor + i * stagger);
      slots.push_back({start, std::max(start, end), phrase, static_cast<std::size_t>(i)});
    }
    cursor += budget;
    ++phrase;
  }

  // Words: a repeat must start min_word_gap frames after its last show
  // ended, and that show must be gone before the preceding word appears.
  std::vector<std::string> words(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    std::vector<std::string_view> allowed;
    const int prev_start = i > 0 ? slots[i - 1].start : slots[i].start;
    for (std::string_view cand : kVocabulary) {
      bool clash = false;
      for (std::size_t j = 0; j < i && !clash; ++j) {
        clash = words[j] == cand &&
                (slots[j].end + params.min_word_gap >= slots[i].start || slots[j].end >= prev_start);
      }
      if (!clash) allowed.push_back(cand);
    }
    words[i] = std::string(allowed[rng.below(allowed.size())]);
  }

  // Layout: left to right on one line per phrase, wrapping when needed.
  const double char_w = 34.0;
  const double box_h = 64.0;
  for (std::size_t i = 0; i < slots.size();) {
    std::size_t j = i;
    while (j < slots.size() && slots[j].phrase == slots[i].phrase) ++j;
    double x = rng.uniform(80.0, 0.35 * params.width);
    double y = rng.uniform(0.15 * params.height, 0.75 * params.height);
    for (std::size_t q = i; q < j; ++q) {
      const double bw = 20.0 + char_w * static_cast<double>(text::codepoint_length(words[q]));
      if (x + bw > params.width - 80.0) {
        x = 80.0;
        y += 1.6 * box_h;
      }
      MotionScript m;
      m.word = words[q];
      m.t_start = slots[q].start;
      m.t_end = slots[q].end;
      m.start = geometry::axis_aligned_quad(x, y, x + bw, y + box_h);
      const double r = rng.uniform();
      if (r < 0.5) {
        m.type = MotionType::kStatic;
      } else if (r < 0.7) {
        m.type = MotionType::kLinear;
        const double speed = rng.uniform(1.0, 8.0);
        const double dir = rng.uniform(0.0, 2.0 * std::numbers::pi);
        m.vx = speed * std::cos(dir);
        m.vy = speed * std::sin(dir);
      } else if (r < 0.8) {
        m.type = MotionType::kScale;
        m.scale_rate = rng.bernoulli(0.5) ? rng.uniform(1.002, 1.008) : rng.uniform(0.992, 0.998);
      } else if (r < 0.9) {
        m.type = MotionType::kRotate;
        m.deg_per_frame = (rng.bernoulli(0.5) ? 1.0 : -1.0) * rng.uniform(0.3, 1.5);
      } else {
        m.type = MotionType::kCircular;
        m.radius = rng.uniform(20.0, 60.0);
        m.angular_velocity = (rng.bernoulli(0.5) ? 1.0 : -1.0) * rng.uniform(2.0, 6.0);
      }
      s.scripts.push_back(std::move(m));
      x += bw + 30.0;
    }
    i = j;
  }
  return s;
}

RandomScenarioParams full_scale_params() {
  RandomScenarioParams p;
  p.frames = 5471;
  p.words = 338;
  p.fps = 24.0;
  p.id = "full-scale";
  return p;
}

CorpusStats corpus_stats(std::span<const corpus::FrameDetections> detections) {
  CorpusStats st;
  std::set<std::string> words;
  st.frames = detections.size();
  for (const auto& f : detections) {
    st.boxes += f.boxes.size();
    for (const auto& b : f.boxes) words.insert(b.text);
  }
  st.distinct_words = words.size();
  st.boxes_per_frame = st.frames ? static_cast<double>(st.boxes) / static_cast<double>(st.frames) : 0.0;
  return st;
}

void write_outputs(const SynthOutput& out, const std::filesystem::path& dir) {
  corpus::save_detections(dir / "detections.jsonl", out.detections);
  corpus::write_file(dir / "gt.json", corpus::serialize_ground_truth(out.gt));
  corpus::write_file(dir / "lyrics.txt", out.lyrics_text);
  corpus::write_file(dir / "video.meta.json", corpus::serialize_meta(out.meta));
  track::save_trajectories(dir / "gt_tracks.jsonl", out.gt_tracks);
}

}  // namespace lyrictrack::synth
