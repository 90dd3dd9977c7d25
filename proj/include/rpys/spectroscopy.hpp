// Copyright 2026 The rpys Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpys/record_model.hpp"

namespace rpys {

inline constexpr std::size_t kDefaultMedianWindow = 5;

struct SpectrogramPoint {
  int rpy = 0;
  std::size_t ncr = 0;
  std::size_t n_distinct_crs = 0;
  double median_dev = 0.0;

  friend bool operator==(const SpectrogramPoint&, const SpectrogramPoint&) = default;
};

// One point per year of the range, ascending, no gaps.
struct Spectrogram {
  std::vector<SpectrogramPoint> points;
  std::vector<int> peaks;

  int first_year() const { return points.front().rpy; }
  int last_year() const { return points.back().rpy; }
  std::vector<double> ncr_series() const;

  friend bool operator==(const Spectrogram&, const Spectrogram&) = default;
};

// NCR and distinct-CR counts per year of `rpy_range`, keyed on each
// aggregate's canonical RPY. Aggregates without a year or outside the range
// are not plotted. median_dev stays zero and peaks empty.
Spectrogram compute_spectrogram(std::span<const AggregatedCR> aggregates,
                                const YearRange& rpy_range);

// value(t) - median(values in the window centered on t). The window is cut
// at the ends of the series; an even count takes the mean of the two middle
// values. Throws InvalidArgument for an even window or one below 3, and
// WindowTooLarge when it is longer than the series.
std::vector<double> median_deviation(std::span<const double> series,
                                     std::size_t window = kDefaultMedianWindow);

// Indices t with dev(t) > 0, dev(t) >= dev(t-1) and dev(t) > dev(t+1); end
// points compare only with their one neighbour. Comparisons carry a
// tolerance of 1e-9 times the largest |dev| so that rescaled series give the
// same answer despite rounding.
std::vector<std::size_t> detect_peaks(std::span<const double> deviations);

std::vector<int> detect_peaks(const Spectrogram& spectrogram);

// Fills median_dev and peaks.
void annotate_spectrogram(Spectrogram& spectrogram,
                          std::size_t window = kDefaultMedianWindow);

// compute_spectrogram followed by annotate_spectrogram.
Spectrogram analyze_spectrogram(std::span<const AggregatedCR> aggregates,
                                const YearRange& rpy_range,
                                std::size_t window = kDefaultMedianWindow);

// A row of a ranked CR table.
struct CrTableRow {
  std::size_t rank = 0;  // 1-based
  std::optional<int> rpy;
  std::string cr;  // canonical variant as cited
  std::size_t ncr = 0;
  std::size_t n_variants = 0;
  std::string key;
  std::size_t cluster_id = 0;

  friend bool operator==(const CrTableRow&, const CrTableRow&) = default;
};

// Total order used by every ranked output: ncr descending, then rpy
// ascending (missing last), normalized key, raw text, cluster id.
bool ranks_before(const AggregatedCR& a, const AggregatedCR& b);

std::vector<CrTableRow> rank_crs(std::span<const AggregatedCR> aggregates,
                                 std::optional<int> within_year = std::nullopt);

// The first n rows of rank_crs. n must be positive.
std::vector<CrTableRow> top_crs(std::span<const AggregatedCR> aggregates, std::size_t n,
                                std::optional<int> within_year = std::nullopt);

// For each peak year in ascending order, its `per_year` highest-ranked
// aggregates. Ranks run 1..N over the whole table.
std::vector<CrTableRow> peak_table(std::span<const AggregatedCR> aggregates,
                                   const Spectrogram& spectrogram, std::size_t per_year);

}  // namespace rpys
