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

// Static figures for an analysis run: one SVG bar chart per video cluster
// with the mean motion histogram, bins grouped by length bucket.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lyrictrack/motion.hpp"

namespace lyrictrack::report {

/// SVG bar chart of one mean histogram. `buckets` and `k_per_bucket` label
/// the bin groups; bins.size() must equal buckets.size() * k_per_bucket.
std::string histogram_svg(const std::vector<double>& bins, const std::vector<motion::BucketRange>& buckets,
                          int k_per_bucket, const std::string& title);

/// Long-format table: cluster,size,motion_id,bucket_lo,bucket_hi,value.
std::string histogram_table_csv(const motion::MeanHistogramTable& table, const motion::MotionModel& model);

/// Reads representatives.json and mean_histograms.csv from `analysis_dir`
/// and writes cluster_<c>.svg plus mean_histograms_long.csv into `out_dir`.
/// Returns the written paths.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& analysis_dir,
                                                const std::filesystem::path& out_dir);

}  // namespace lyrictrack::report
