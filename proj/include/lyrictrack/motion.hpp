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

// Word-motion analytics.
//
// Trajectories become translation-normalized center curves, are split into
// length buckets, and each bucket is summarized by k medoids under DTW. A
// video is then described by how its words distribute over all medoids (a
// bag-of-motions histogram), and videos are grouped by k-means with the
// number of groups picked by the Calinski-Harabasz score.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lyrictrack/corpus.hpp"
#include "lyrictrack/geometry.hpp"
#include "lyrictrack/track.hpp"

namespace lyrictrack::motion {

using geometry::Point;

/// Centers in frame-relative units (x / width, y / height) minus the first
/// center, one point per trajectory frame.
struct MotionCurve {
  std::vector<Point> points;

  std::size_t length() const { return points.size(); }
  friend bool operator==(const MotionCurve&, const MotionCurve&) = default;
};

MotionCurve to_motion_curve(const track::Trajectory& traj, const corpus::VideoMeta& meta);

struct BucketRange {
  int lo = 0;  // inclusive, frames
  int hi = 0;  // inclusive, frames

  bool contains(std::size_t length) const {
    return static_cast<int64_t>(length) >= lo && static_cast<int64_t>(length) <= hi;
  }
  friend bool operator==(const BucketRange&, const BucketRange&) = default;
};

inline constexpr std::array<BucketRange, 6> kDefaultBuckets{
    {{11, 20}, {21, 30}, {31, 40}, {41, 50}, {51, 70}, {71, 100}}};
inline constexpr int kDefaultMedoidsPerBucket = 10;

/// Throws kInvalidArgument unless ranges are non-empty, ascending and disjoint.
void validate_buckets(std::span<const BucketRange> ranges);

std::optional<std::size_t> bucket_index(std::size_t length, std::span<const BucketRange> ranges);

struct BucketedCurves {
  std::vector<BucketRange> ranges;
  std::vector<std::vector<std::size_t>> members;  // indices into the input, per bucket
  std::size_t excluded_short = 0;  // shorter than the first bucket
  std::size_t excluded_long = 0;   // longer than the last bucket
  std::size_t excluded_gap = 0;    // between two non-adjacent buckets
};

BucketedCurves bucket_curves(std::span<const MotionCurve> curves,
                             std::span<const BucketRange> ranges = kDefaultBuckets);

/// Unconstrained DTW with Euclidean point cost; both ends aligned.
double dtw_distance(const MotionCurve& a, const MotionCurve& b);

/// Dense symmetric n x n matrix with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

DistanceMatrix dtw_matrix(std::span<const MotionCurve> curves, int threads = 1);

struct KMedoidsResult {
  std::vector<std::size_t> medoids;     // ascending point indices
  std::vector<std::size_t> assignment;  // cluster position in `medoids`, per point
  double cost = 0.0;                    // sum of distances to assigned medoids
  std::vector<double> cost_history;     // after initial assignment and each iteration
};

/// Alternating k-medoids: assign to the nearest medoid, then move each medoid
/// to the member minimizing in-cluster cost, until nothing moves. Seeding is
/// greedy k-medoids++ driven by `seed`. Ties go to smaller indices. Throws
/// kInvalidK unless 1 <= k <= n.
KMedoidsResult k_medoids(const DistanceMatrix& dist, std::size_t k, uint64_t seed);

struct RepresentativeMotion {
  int motion_id = 0;  // 1-based, bucket-major: bucket b owns ids b*k+1 .. b*k+k
  BucketRange bucket;
  MotionCurve medoid;
};

struct MotionModel {
  std::vector<BucketRange> buckets;
  int k_per_bucket = kDefaultMedoidsPerBucket;
  std::vector<RepresentativeMotion> representatives;  // ascending motion_id

  int bins() const { return static_cast<int>(buckets.size()) * k_per_bucket; }
};

struct MotionConfig {
  std::vector<BucketRange> buckets{kDefaultBuckets.begin(), kDefaultBuckets.end()};
  int k_per_bucket = kDefaultMedoidsPerBucket;
  uint64_t seed = 0;
  int threads = 1;
};

/// Runs k-medoids per bucket. A bucket with fewer than k curves contributes
/// one representative per curve and leaves its remaining ids unused.
MotionModel build_representatives(std::span<const MotionCurve> curves, const MotionConfig& config = {});

/// Nearest representative of the curve's own bucket (smaller id on ties).
/// Throws kOutOfBucketRange for excluded lengths or an empty bucket.
int assign_motion(const MotionCurve& curve, const MotionModel& model);

struct MotionHistogram {
  std::string video_id;
  std::vector<double> bins;
  std::size_t votes = 0;
  bool empty = true;  // no trajectory fell into any bucket; bins are all zero
};

MotionHistogram motion_histogram(std::span<const track::Trajectory> trajs, const MotionModel& model,
                                 const corpus::VideoMeta& meta);

struct KMeansResult {
  std::vector<int> assignment;
  std::vector<std::vector<double>> centroids;
  double inertia = 0.0;
};

/// Lloyd's k-means with k-means++ seeding; best inertia over `restarts`.
KMeansResult kmeans(const std::vector<std::vector<double>>& data, int k, uint64_t seed, int restarts = 10);

/// [B / (k - 1)] / [W / (n - k)] from between- and within-cluster sums of
/// squares; +inf when W == 0.
double calinski_harabasz(const std::vector<std::vector<double>>& data, std::span<const int> assignment, int k);

struct CandidateK {
  int k = 0;
  double score = 0.0;
  double inertia = 0.0;
  std::vector<int> assignment;
};

struct VideoClustering {
  int chosen_k = 0;
  std::vector<int> assignment;
  std::vector<std::vector<double>> centroids;
  std::vector<CandidateK> candidates;
  bool degenerate = false;  // some W == 0, scored as +inf
};

/// Scans k in [k_min, min(k_max, n - 1)] and keeps the highest CH score
/// (smallest k on ties). Throws kTooFewVideos for n < 3.
VideoClustering cluster_videos(const std::vector<std::vector<double>>& histograms, int k_min = 2, int k_max = 10,
                               uint64_t seed = 0, int restarts = 10);

std::vector<std::vector<double>> mean_histograms(std::span<const int> assignment,
                                                 const std::vector<std::vector<double>>& histograms, int k);

// Output files of the analysis stage.
std::string serialize_representatives(const MotionModel& model);
MotionModel parse_representatives(std::string_view json_text);
std::string histograms_csv(std::span<const MotionHistogram> hists, int bins);
std::string clusters_json(const VideoClustering& clustering, std::span<const MotionHistogram> hists);
std::string mean_histograms_csv(const std::vector<std::vector<double>>& means, std::span<const int> sizes);

struct MeanHistogramTable {
  std::vector<int> cluster;
  std::vector<int> size;
  std::vector<std::vector<double>> bins;
};

MeanHistogramTable parse_mean_histograms_csv(std::string_view csv);

}  // namespace lyrictrack::motion
