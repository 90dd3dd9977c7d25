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
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/record_model.hpp"

namespace rpys::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // script, data or usage error
inline constexpr int kExitIoError = 2;

// "LO:HI" or "LO:HI:true|false" (third field: keep entries without a year).
YearRange parse_year_range(std::string_view text);
std::string format_year_range(const YearRange& range);

struct RunScriptOptions {
  std::filesystem::path script;
  std::optional<std::filesystem::path> data_dir;  // default: the script's directory
  std::filesystem::path out_dir = ".";
  std::size_t window = 5;
  unsigned threads = 0;
};

// Executes a script; outputs are written only if every command succeeds.
int run_script(const RunScriptOptions& options, std::ostream& out, std::ostream& err);

struct RpysCoOptions {
  std::filesystem::path input;
  std::string format = "wos";
  std::string rpy = "1950:1990";
  std::string py = "1500:2100:true";
  std::size_t max_cr = 0;
  std::vector<std::string> markers;
  std::vector<std::string> marker_dois;
  double cluster_threshold = 0.75;
  bool match_volume = true;
  bool match_page = true;
  bool match_doi = false;
  bool cross_rpy = false;
  std::size_t remove_below = 100;  // 0 keeps everything
  std::size_t window = 5;
  std::size_t top = 10;
  std::size_t peak_papers = 3;
  std::size_t suggest_markers = 0;
  double comparable_tolerance = 0.25;
  bool normalize_plot = false;
  std::filesystem::path out_dir;
  unsigned threads = 0;
};

// Writes cr.csv, graph.csv, peaks.csv, spectrogram.svg, manifest.json (and
// suggestions.csv when asked) into out_dir; prints n_citing and peaks.
int rpys_co(const RpysCoOptions& options, std::ostream& out, std::ostream& err);

struct PlotOptions {
  std::vector<std::string> series;  // "label=path/to/graph.csv"
  bool normalize = false;
  std::string title;
  std::filesystem::path output;
};

// Overlays CSV_GRAPH files into one SVG.
int plot(const PlotOptions& options, std::ostream& out, std::ostream& err);

struct StatsOptions {
  std::filesystem::path input;
  std::string format = "wos";
};

int stats(const StatsOptions& options, std::ostream& out, std::ostream& err);

}  // namespace rpys::cli
