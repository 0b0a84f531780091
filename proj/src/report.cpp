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

#include "lyrictrack/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "lyrictrack/corpus.hpp"
#include "lyrictrack/error.hpp"

namespace lyrictrack::report {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 360.0;
constexpr double kLeft = 56.0;
constexpr double kRight = 16.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

// One fill per bucket, cycled.
constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#b07aa1"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string histogram_svg(const std::vector<double>& bins, const std::vector<motion::BucketRange>& buckets,
                          int k_per_bucket, const std::string& title) {
  if (k_per_bucket < 1 || bins.size() != buckets.size() * static_cast<std::size_t>(k_per_bucket)) {
    throw Error(ErrorCode::kInvalidArgument, "histogram has " + std::to_string(bins.size()) +
                                                 " bins, expected buckets x k_per_bucket");
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  double top = 0.0;
  for (double v : bins) top = std::max(top, v);
  top = top > 0.0 ? top * 1.1 : 1.0;
  const double slot = bins.empty() ? plot_w : plot_w / static_cast<double>(bins.size());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";

  // y axis with five ticks
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = top * i / 4.0;
    const double y = kTop + plot_h - plot_h * i / 4.0;
    svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft << "\" y2=\"" << num(y)
        << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(v)
        << "</text>\n";
  }
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";

  for (std::size_t i = 0; i < bins.size(); ++i) {
    const std::size_t b = i / static_cast<std::size_t>(k_per_bucket);
    const double h = plot_h * bins[i] / top;
    const double x = kLeft + slot * static_cast<double>(i) + 0.1 * slot;
    svg << "<rect x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h - h) << "\" width=\"" << num(0.8 * slot)
        << "\" height=\"" << num(h) << "\" fill=\"" << kPalette[b % std::size(kPalette)] << "\"><title>motion "
        << i + 1 << ": " << bins[i] << "</title></rect>\n";
  }
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    const double x = kLeft + slot * static_cast<double>(b * k_per_bucket) + slot * k_per_bucket / 2.0;
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
        << buckets[b].lo << '-' << buckets[b].hi << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">representative motion, grouped by trajectory length (frames)</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string histogram_table_csv(const motion::MeanHistogramTable& table, const motion::MotionModel& model) {
  std::ostringstream out;
  out << "cluster,size,motion_id,bucket_lo,bucket_hi,value\n";
  for (std::size_t c = 0; c < table.bins.size(); ++c) {
    for (std::size_t i = 0; i < table.bins[c].size(); ++i) {
      const auto& bucket = model.buckets[i / static_cast<std::size_t>(model.k_per_bucket)];
      char value[32];
      std::snprintf(value, sizeof value, "%.17g", table.bins[c][i]);
      out << table.cluster[c] << ',' << table.size[c] << ',' << i + 1 << ',' << bucket.lo << ',' << bucket.hi
          << ',' << value << '\n';
    }
  }
  return out.str();
}

std::vector<std::filesystem::path> write_report(const std::filesystem::path& analysis_dir,
                                                const std::filesystem::path& out_dir) {
  const motion::MotionModel model =
      motion::parse_representatives(corpus::read_file(analysis_dir / "representatives.json"));
  const motion::MeanHistogramTable table =
      motion::parse_mean_histograms_csv(corpus::read_file(analysis_dir / "mean_histograms.csv"));
  std::vector<std::filesystem::path> written;
  for (std::size_t c = 0; c < table.bins.size(); ++c) {
    const std::string title = "Cluster " + std::to_string(table.cluster[c]) + " (" +
                              std::to_string(table.size[c]) + " videos): mean word motion histogram";
    const auto path = out_dir / ("cluster_" + std::to_string(table.cluster[c]) + ".svg");
    corpus::write_file(path, histogram_svg(table.bins[c], model.buckets, model.k_per_bucket, title));
    written.push_back(path);
  }
  const auto csv = out_dir / "mean_histograms_long.csv";
  corpus::write_file(csv, histogram_table_csv(table, model));
  written.push_back(csv);
  return written;
}

}  // namespace lyrictrack::report
