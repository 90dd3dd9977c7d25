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
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>

#include "rpys/record_model.hpp"
#include "rpys/spectroscopy.hpp"

namespace rpys {

// CSV_CR: `rank,rpy,cr,ncr,n_variants`, rows in rank_crs order, LF endings.
std::string format_cr_csv(std::span<const AggregatedCR> aggregates);

// CSV_GRAPH: `rpy,ncr,median_dev,is_peak`, one row per year, median_dev
// with six decimals.
std::string format_graph_csv(const Spectrogram& spectrogram);

// Reads a CSV_GRAPH file back (for overlay plots).
Spectrogram read_graph_csv(std::istream& in);

// Write the formatted text; return the number of data rows. IoError on
// failure.
std::size_t export_cr_csv(std::span<const AggregatedCR> aggregates,
                          const std::filesystem::path& destination);
std::size_t export_graph_csv(const Spectrogram& spectrogram,
                             const std::filesystem::path& destination);

// Writes bytes to a file, creating parent directories.
void write_file(const std::filesystem::path& destination, std::string_view bytes);

struct PlotSeries {
  std::string name;
  Spectrogram spectrogram;
};

struct SvgOptions {
  std::string title;
  bool normalize = false;  // scale each NCR curve to max 1
  std::size_t window = kDefaultMedianWindow;  // legend label only
};

inline constexpr int kSvgWidth = 900;
inline constexpr int kSvgHeight = 500;

// NCR values as plotted: raw, or divided by the series maximum.
std::vector<double> plotted_ncr(const Spectrogram& spectrogram, bool normalize);

/// One series: NCR (red) and median deviation (blue) with point markers.
/// Several series: overlaid NCR curves with a legend; all series must span
/// the same years. Throws EmptySeries for no series or a series without
/// points.
std::string render_svg(std::span<const PlotSeries> series, const SvgOptions& options = {});

}  // namespace rpys
