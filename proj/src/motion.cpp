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

#include "lyrictrack/motion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "json_util.hpp"
#include "lyrictrack/error.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace lyrictrack::motion {

MotionCurve to_motion_curve(const track::Trajectory& traj, const corpus::VideoMeta& meta) {
  if (traj.frames.empty()) throw Error(ErrorCode::kInvalidArgument, "trajectory has no frames");
  MotionCurve c;
  c.points.reserve(traj.frames.size());
  const Point origin = geometry::centroid(traj.frames.front().quad);
  const double w = meta.width;
  const double h = meta.height;
  for (const auto& f : traj.frames) {
    const Point p = geometry::centroid(f.quad);
    c.points.push_back({(p.x - origin.x) / w, (p.y - origin.y) / h});
  }
  return c;
}

void validate_buckets(std::span<const BucketRange> ranges) {
  if (ranges.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one length bucket is required");
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].lo < 1 || ranges[i].hi < ranges[i].lo) {
      throw Error(ErrorCode::kInvalidArgument, "bucket ranges need 1 <= lo <= hi");
    }
    if (i > 0 && ranges[i].lo <= ranges[i - 1].hi) {
      throw Error(ErrorCode::kInvalidArgument, "bucket ranges must be ascending and disjoint");
    }
  }
}

std::optional<std::size_t> bucket_index(std::size_t length, std::span<const BucketRange> ranges) {
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].contains(length)) return i;
  }
  return std::nullopt;
}

BucketedCurves bucket_curves(std::span<const MotionCurve> curves, std::span<const BucketRange> ranges) {
  validate_buckets(ranges);
  BucketedCurves out;
  out.ranges.assign(ranges.begin(), ranges.end());
  out.members.resize(ranges.size());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::size_t len = curves[i].length();
    if (auto b = bucket_index(len, ranges)) {
      out.members[*b].push_back(i);
    } else if (static_cast<int64_t>(len) < ranges.front().lo) {
      ++out.excluded_short;
    } else if (static_cast<int64_t>(len) > ranges.back().hi) {
      ++out.excluded_long;
    } else {
      ++out.excluded_gap;
    }
  }
  return out;
}

double dtw_distance(const MotionCurve& a, const MotionCurve& b) {
  const std::size_t n = a.length();
  const std::size_t m = b.length();
  if (n == 0 || m == 0) throw Error(ErrorCode::kInvalidArgument, "DTW needs non-empty curves");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, kInf);
  std::vector<double> cur(m + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = kInf;
    for (std::size_t j = 1; j <= m; ++j) {
      const double cost = geometry::distance(a.points[i - 1], b.points[j - 1]);
      cur[j] = cost + std::min({prev[j], cur[j - 1], prev[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

DistanceMatrix dtw_matrix(std::span<const MotionCurve> curves, int threads) {
  const std::size_t n = curves.size();
  DistanceMatrix d(n);
  // Row i fills (i, j > i); rows are independent.
  detail::parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, dtw_distance(curves[i], curves[j]));
    }
  });
  return d;
}

namespace {

struct Assignment {
  std::vector<std::size_t> cluster;
  double cost = 0.0;
};

// `medoids` ascending, so scanning in order resolves ties toward smaller indices.
Assignment assign_nearest(const DistanceMatrix& dist, const std::vector<std::size_t>& medoids) {
  Assignment a;
  a.cluster.resize(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < medoids.size(); ++c) {
      const double d = dist(i, medoids[c]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    a.cluster[i] = best;
    a.cost += best_d;
  }
  return a;
}

std::vector<std::size_t> seed_medoids(const DistanceMatrix& dist, std::size_t k, uint64_t seed) {
  const std::size_t n = dist.size();
  detail::Rng rng(seed);
  std::vector<std::size_t> chosen{static_cast<std::size_t>(rng.below(n))};
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = dist(i, chosen[0]);
  std::vector<bool> is_chosen(n, false);
  is_chosen[chosen[0]] = true;

  const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
  while (chosen.size() < k) {
    double weight = 0.0;
    for (std::size_t i = 0; i < n; ++i) weight += is_chosen[i] ? 0.0 : nearest[i] * nearest[i];

    std::size_t pick = n;
    if (weight <= 0.0) {
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (!is_chosen[i]) pick = i;
      }
    } else {
      // Greedy ++: sample a few D^2-weighted candidates, keep the one that
      // lowers the total cost most.
      double best_cost = std::numeric_limits<double>::infinity();
      for (std::size_t trial = 0; trial < trials; ++trial) {
        double r = rng.uniform() * weight;
        std::size_t cand = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (is_chosen[i]) continue;
          cand = i;
          r -= nearest[i] * nearest[i];
          if (r < 0.0) break;
        }
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) cost += std::min(nearest[i], dist(i, cand));
        if (cost < best_cost || (cost == best_cost && cand < pick)) {
          best_cost = cost;
          pick = cand;
        }
      }
    }
    chosen.push_back(pick);
    is_chosen[pick] = true;
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, pick));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

KMedoidsResult k_medoids(const DistanceMatrix& dist, std::size_t k, uint64_t seed) {
  const std::size_t n = dist.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidK, "k=" + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
  }
  KMedoidsResult r;
  r.medoids = seed_medoids(dist, k, seed);
  Assignment a = assign_nearest(dist, r.medoids);
  r.cost_history.push_back(a.cost);

  constexpr int kMaxIterations = 100;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < n; ++i) members[a.cluster[i]].push_back(i);

    bool moved = false;
    std::vector<std::size_t> next = r.medoids;
    for (std::size_t c = 0; c < k; ++c) {
      if (members[c].empty()) continue;
      auto in_cluster_cost = [&](std::size_t m) {
        double s = 0.0;
        for (std::size_t i : members[c]) s += dist(i, m);
        return s;
      };
      double best = in_cluster_cost(r.medoids[c]);
      for (std::size_t cand : members[c]) {
        const double s = in_cluster_cost(cand);
        if (s < best) {
          best = s;
          next[c] = cand;
        }
      }
      moved = moved || next[c] != r.medoids[c];
    }
    if (!moved) break;

    std::sort(next.begin(), next.end());
    Assignment updated = assign_nearest(dist, next);
    if (!(updated.cost < a.cost)) break;  // float noise can make a swap look neutral
    r.medoids = std::move(next);
    a = std::move(updated);
    r.cost_history.push_back(a.cost);
  }
  r.assignment = std::move(a.cluster);
  r.cost = a.cost;
  return r;
}

MotionModel build_representatives(std::span<const MotionCurve> curves, const MotionConfig& config) {
  if (config.k_per_bucket < 1) throw Error(ErrorCode::kInvalidK, "k per bucket must be >= 1");
  const BucketedCurves buckets = bucket_curves(curves, config.buckets);
  MotionModel model;
  model.buckets = buckets.ranges;
  model.k_per_bucket = config.k_per_bucket;
  for (std::size_t b = 0; b < buckets.ranges.size(); ++b) {
    const auto& idx = buckets.members[b];
    if (idx.empty()) continue;
    std::vector<MotionCurve> subset;
    subset.reserve(idx.size());
    for (std::size_t i : idx) subset.push_back(curves[i]);
    const DistanceMatrix dist = dtw_matrix(subset, config.threads);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(config.k_per_bucket), subset.size());
    const KMedoidsResult km = k_medoids(dist, k, detail::mix_seed(config.seed, b));
    for (std::size_t j = 0; j < km.medoids.size(); ++j) {
      RepresentativeMotion rep;
      rep.motion_id = static_cast<int>(b) * config.k_per_bucket + static_cast<int>(j) + 1;
      rep.bucket = buckets.ranges[b];
      rep.medoid = subset[km.medoids[j]];
      model.representatives.push_back(std::move(rep));
    }
  }
  return model;
}

int assign_motion(const MotionCurve& curve, const MotionModel& model) {
  const auto b = bucket_index(curve.length(), model.buckets);
  if (!b) {
    throw Error(ErrorCode::kOutOfBucketRange,
                "curve length " + std::to_string(curve.length()) + " is outside every bucket");
  }
  int best_id = -1;
  double best = std::numeric_limits<double>::infinity();
  for (const RepresentativeMotion& rep : model.representatives) {
    if (!(rep.bucket == model.buckets[*b])) continue;
    const double d = dtw_distance(curve, rep.medoid);
    if (d < best) {
      best = d;
      best_id = rep.motion_id;
    }
  }
  if (best_id < 0) {
    throw Error(ErrorCode::kOutOfBucketRange,
                "bucket " + std::to_string(model.buckets[*b].lo) + "-" + std::to_string(model.buckets[*b].hi) +
                    " has no representatives");
  }
  return best_id;
}

MotionHistogram motion_histogram(std::span<const track::Trajectory> trajs, const MotionModel& model,
                                 const corpus::VideoMeta& meta) {
  MotionHistogram h;
  h.video_id = meta.id;
  h.bins.assign(static_cast<std::size_t>(model.bins()), 0.0);
  std::vector<std::size_t> counts(h.bins.size(), 0);
  for (const track::Trajectory& tr : trajs) {
    if (tr.frames.empty()) continue;
    const MotionCurve c = to_motion_curve(tr, meta);
    const auto b = bucket_index(c.length(), model.buckets);
    if (!b) continue;
    const bool populated = std::any_of(model.representatives.begin(), model.representatives.end(),
                                       [&](const auto& r) { return r.bucket == model.buckets[*b]; });
    if (!populated) continue;
    ++counts[static_cast<std::size_t>(assign_motion(c, model) - 1)];
    ++h.votes;
  }
  h.empty = h.votes == 0;
  if (!h.empty) {
    for (std::size_t i = 0; i < h.bins.size(); ++i) {
      h.bins[i] = static_cast<double>(counts[i]) / static_cast<double>(h.votes);
    }
  }
  return h;
}

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

KMeansResult kmeans_once(const std::vector<std::vector<double>>& data, int k, detail::Rng& rng) {
  const std::size_t n = data.size();
  const std::size_t dim = data.front().size();
  KMeansResult r;

  // k-means++ seeding
  std::vector<std::size_t> centers{static_cast<std::size_t>(rng.below(n))};
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(data[i], data[centers[0]]);
  while (static_cast<int>(centers.size()) < k) {
    const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
    std::size_t pick = n;
    if (total <= 0.0) {
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (std::find(centers.begin(), centers.end(), i) == centers.end()) pick = i;
      }
    } else {
      double u = rng.uniform() * total;
      for (std::size_t i = 0; i < n; ++i) {
        if (nearest[i] <= 0.0) continue;
        pick = i;
        u -= nearest[i];
        if (u < 0.0) break;
      }
    }
    centers.push_back(pick);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], squared_distance(data[i], data[pick]));
  }
  for (std::size_t c : centers) r.centroids.push_back(data[c]);

  r.assignment.assign(n, -1);
  constexpr int kMaxIterations = 300;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = squared_distance(data[i], r.centroids[static_cast<std::size_t>(c)]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (r.assignment[i] != best) {
        r.assignment[i] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::vector<std::vector<double>> sums(static_cast<std::size_t>(k), std::vector<double>(dim, 0.0));
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(r.assignment[i]);
      ++sizes[c];
      for (std::size_t d = 0; d < dim; ++d) sums[c][d] += data[i][d];
    }
    for (int c = 0; c < k; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      if (sizes[cc] == 0) {
        // Re-seed an empty cluster at the point worst served by its centroid.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = squared_distance(data[i], r.centroids[static_cast<std::size_t>(r.assignment[i])]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        if (far_d > 0.0) r.centroids[cc] = data[far];
        continue;
      }
      for (std::size_t d = 0; d < dim; ++d) r.centroids[cc][d] = sums[cc][d] / static_cast<double>(sizes[cc]);
    }
  }
  r.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r.inertia += squared_distance(data[i], r.centroids[static_cast<std::size_t>(r.assignment[i])]);
  }
  return r;
}

void check_rectangular(const std::vector<std::vector<double>>& data) {
  if (data.empty()) throw Error(ErrorCode::kInvalidArgument, "no data to cluster");
  for (const auto& row : data) {
    if (row.size() != data.front().size()) throw Error(ErrorCode::kInvalidArgument, "rows differ in length");
  }
}

}  // namespace

KMeansResult kmeans(const std::vector<std::vector<double>>& data, int k, uint64_t seed, int restarts) {
  check_rectangular(data);
  if (k < 1 || static_cast<std::size_t>(k) > data.size()) throw Error(ErrorCode::kInvalidK, "k out of range");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, restarts); ++r) {
    detail::Rng rng(detail::mix_seed(seed, static_cast<uint64_t>(k), static_cast<uint64_t>(r)));
    KMeansResult cur = kmeans_once(data, k, rng);
    if (cur.inertia < best.inertia) best = std::move(cur);
  }
  return best;
}

double calinski_harabasz(const std::vector<std::vector<double>>& data, std::span<const int> assignment, int k) {
  const std::size_t n = data.size();
  const std::size_t dim = data.front().size();
  std::vector<double> mean(dim, 0.0);
  for (const auto& row : data) {
    for (std::size_t d = 0; d < dim; ++d) mean[d] += row[d] / static_cast<double>(n);
  }
  std::vector<std::vector<double>> centroids(static_cast<std::size_t>(k), std::vector<double>(dim, 0.0));
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(assignment[i]);
    ++sizes[c];
    for (std::size_t d = 0; d < dim; ++d) centroids[c][d] += data[i][d];
  }
  double between = 0.0;
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    if (sizes[c] == 0) continue;
    for (double& v : centroids[c]) v /= static_cast<double>(sizes[c]);
    between += static_cast<double>(sizes[c]) * squared_distance(centroids[c], mean);
  }
  double within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    within += squared_distance(data[i], centroids[static_cast<std::size_t>(assignment[i])]);
  }
  if (within <= 0.0) return std::numeric_limits<double>::infinity();
  return (between / static_cast<double>(k - 1)) / (within / static_cast<double>(n - static_cast<std::size_t>(k)));
}

VideoClustering cluster_videos(const std::vector<std::vector<double>>& histograms, int k_min, int k_max,
                               uint64_t seed, int restarts) {
  if (histograms.size() < 3) {
    throw Error(ErrorCode::kTooFewVideos,
                "video clustering needs at least 3 videos, got " + std::to_string(histograms.size()));
  }
  check_rectangular(histograms);
  const int n = static_cast<int>(histograms.size());
  const int lo = std::max(2, k_min);
  const int hi = std::min(k_max, n - 1);
  if (lo > hi) throw Error(ErrorCode::kInvalidK, "empty k range for " + std::to_string(n) + " videos");

  VideoClustering out;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int k = lo; k <= hi; ++k) {
    KMeansResult km = kmeans(histograms, k, seed, restarts);
    CandidateK cand;
    cand.k = k;
    cand.inertia = km.inertia;
    cand.score = calinski_harabasz(histograms, km.assignment, k);
    cand.assignment = km.assignment;
    if (std::isinf(cand.score)) out.degenerate = true;
    if (cand.score > best_score) {
      best_score = cand.score;
      out.chosen_k = k;
      out.assignment = km.assignment;
      out.centroids = std::move(km.centroids);
    }
    out.candidates.push_back(std::move(cand));
  }
  return out;
}

std::vector<std::vector<double>> mean_histograms(std::span<const int> assignment,
                                                 const std::vector<std::vector<double>>& histograms, int k) {
  if (assignment.size() != histograms.size()) {
    throw Error(ErrorCode::kInvalidArgument, "assignment and histogram counts differ");
  }
  const std::size_t dim = histograms.empty() ? 0 : histograms.front().size();
  std::vector<std::vector<double>> means(static_cast<std::size_t>(k), std::vector<double>(dim, 0.0));
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < histograms.size(); ++i) {
    const int c = assignment[i];
    if (c < 0 || c >= k) throw Error(ErrorCode::kInvalidArgument, "cluster id out of range");
    ++sizes[static_cast<std::size_t>(c)];
    for (std::size_t d = 0; d < dim; ++d) means[static_cast<std::size_t>(c)][d] += histograms[i][d];
  }
  for (std::size_t c = 0; c < means.size(); ++c) {
    if (sizes[c] == 0) continue;
    for (double& v : means[c]) v /= static_cast<double>(sizes[c]);
  }
  return means;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

detail::json curve_to_json(const MotionCurve& c) {
  detail::json pts = detail::json::array();
  for (const Point& p : c.points) pts.push_back(detail::json::array({p.x, p.y}));
  return pts;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s, long line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw SchemaError("bad number '" + s + "'", line);
  return v;
}

}  // namespace

std::string serialize_representatives(const MotionModel& model) {
  using detail::json;
  json buckets = json::array();
  for (const BucketRange& b : model.buckets) buckets.push_back(json::array({b.lo, b.hi}));
  json reps = json::array();
  for (const RepresentativeMotion& r : model.representatives) {
    reps.push_back({{"motion_id", r.motion_id},
                    {"bucket", json::array({r.bucket.lo, r.bucket.hi})},
                    {"length", r.medoid.length()},
                    {"points", curve_to_json(r.medoid)}});
  }
  json j = {{"k_per_bucket", model.k_per_bucket}, {"buckets", std::move(buckets)}, {"representatives", std::move(reps)}};
  return j.dump(1) + "\n";
}

MotionModel parse_representatives(std::string_view json_text) {
  const detail::json j = detail::parse_json(json_text);
  MotionModel m;
  m.k_per_bucket = static_cast<int>(detail::require_int(j, "k_per_bucket"));
  auto range_of = [](const detail::json& v, long rec) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
      throw SchemaError("bucket must be [lo, hi]", rec);
    }
    return BucketRange{v[0].get<int>(), v[1].get<int>()};
  };
  for (const auto& b : detail::require_array(j, "buckets")) m.buckets.push_back(range_of(b, 0));
  validate_buckets(m.buckets);
  long rec = 0;
  for (const auto& r : detail::require_array(j, "representatives")) {
    ++rec;
    RepresentativeMotion rep;
    rep.motion_id = static_cast<int>(detail::require_int(r, "motion_id", rec));
    rep.bucket = range_of(detail::require(r, "bucket", rec), rec);
    for (const auto& p : detail::require_array(r, "points", rec)) {
      if (!p.is_array() || p.size() != 2) throw SchemaError("points must be [x, y]", rec);
      rep.medoid.points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    if (rep.motion_id < 1 || rep.motion_id > m.bins()) throw SchemaError("motion_id out of range", rec);
    m.representatives.push_back(std::move(rep));
  }
  return m;
}

std::string histograms_csv(std::span<const MotionHistogram> hists, int bins) {
  std::ostringstream out;
  out << "video_id";
  for (int b = 1; b <= bins; ++b) out << ",bin_" << b;
  out << '\n';
  for (const MotionHistogram& h : hists) {
    out << h.video_id;
    for (double v : h.bins) out << ',' << format_double(v);
    out << '\n';
  }
  return out.str();
}

std::string clusters_json(const VideoClustering& clustering, std::span<const MotionHistogram> hists) {
  using detail::json;
  json scores = json::array();
  for (const CandidateK& c : clustering.candidates) {
    json s = {{"k", c.k}, {"inertia", c.inertia}};
    s["score"] = std::isinf(c.score) ? json("inf") : json(c.score);
    scores.push_back(std::move(s));
  }
  json assignments = json::array();
  for (std::size_t i = 0; i < clustering.assignment.size(); ++i) {
    assignments.push_back({{"video", i < hists.size() ? hists[i].video_id : std::to_string(i)},
                           {"cluster", clustering.assignment[i]}});
  }
  json j = {{"chosen_k", clustering.chosen_k},
            {"degenerate", clustering.degenerate},
            {"ch_scores", std::move(scores)},
            {"assignments", std::move(assignments)},
            {"centroids", clustering.centroids}};
  return j.dump(2) + "\n";
}

std::string mean_histograms_csv(const std::vector<std::vector<double>>& means, std::span<const int> sizes) {
  std::ostringstream out;
  const std::size_t bins = means.empty() ? 0 : means.front().size();
  out << "cluster,size";
  for (std::size_t b = 1; b <= bins; ++b) out << ",bin_" << b;
  out << '\n';
  for (std::size_t c = 0; c < means.size(); ++c) {
    out << c << ',' << (c < sizes.size() ? sizes[c] : 0);
    for (double v : means[c]) out << ',' << format_double(v);
    out << '\n';
  }
  return out.str();
}

MeanHistogramTable parse_mean_histograms_csv(std::string_view csv) {
  MeanHistogramTable t;
  std::istringstream in{std::string(csv)};
  std::string line;
  long line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (line_no == 1) {
      if (cells.size() < 3 || cells[0] != "cluster" || cells[1] != "size") {
        throw SchemaError("expected header 'cluster,size,bin_1,...'", line_no);
      }
      columns = cells.size();
      continue;
    }
    if (cells.size() != columns) throw SchemaError("wrong number of columns", line_no);
    t.cluster.push_back(static_cast<int>(parse_double(cells[0], line_no)));
    t.size.push_back(static_cast<int>(parse_double(cells[1], line_no)));
    std::vector<double> row;
    for (std::size_t i = 2; i < cells.size(); ++i) row.push_back(parse_double(cells[i], line_no));
    t.bins.push_back(std::move(row));
  }
  if (columns == 0) throw SchemaError("empty mean histogram table");
  return t;
}

}  // namespace lyrictrack::motion
