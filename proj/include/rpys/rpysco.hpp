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
#include <string_view>
#include <utility>
#include <vector>

#include "rpys/cr_cluster.hpp"
#include "rpys/record_model.hpp"
#include "rpys/spectroscopy.hpp"
#include "rpys/wos_parser.hpp"

namespace rpys {

enum class MatchMode { Strict, DoiOnly };

// Bibliographic description of a marker paper.
struct MarkerQuery {
  std::optional<std::string> first_author;  // normalized; prefix match
  std::optional<int> rpy;
  std::optional<std::string> volume;
  std::optional<std::string> page;
  std::optional<std::string> doi;  // lowercase
  MatchMode match_mode = MatchMode::Strict;

  // Needs author and year, or a DOI; doi_only needs a DOI.
  void validate() const;
  std::string describe() const;

  friend bool operator==(const MarkerQuery&, const MarkerQuery&) = default;
};

// Parses "Becke AD,1988,V38,P3098" (cited-reference syntax; a source token
// after the year is accepted and ignored).
MarkerQuery parse_marker(std::string_view spec);
MarkerQuery marker_from_doi(std::string_view doi);

bool matches_marker(const CitedRef& cr, const MarkerQuery& marker);
bool match_marker(const Record& record, const MarkerQuery& marker);

// Records citing at least one marker, in corpus order. An empty result is a
// valid outcome (the caller decides how loudly to report it).
Corpus select_citing(const Corpus& corpus, std::span<const MarkerQuery> markers);

struct RpysConfig {
  ImportConfig import;
  ClusterConfig cluster;
  std::optional<std::pair<std::size_t, std::size_t>> remove_range{{0, 99}};
  std::size_t window = kDefaultMedianWindow;
  std::size_t top_n = 10;
  std::size_t peak_papers_per_year = 3;
};

struct RpysCoResult {
  std::vector<MarkerQuery> markers;
  std::size_t n_citing = 0;
  std::vector<AggregatedCR> aggregates;  // after remove_cr
  Spectrogram spectrogram;
  std::vector<CrTableRow> peak_table;
  std::vector<CrTableRow> top_table;
};

/// Plain RPYS over a corpus: import filter, cluster, merge, remove_cr,
/// spectrogram with median deviation and peaks, ranked tables.
/// n_citing is the number of records after the import filter.
RpysCoResult run_rpys(const Corpus& corpus, const RpysConfig& config);

/// RPYS over the records citing any marker. Marker selection looks at the
/// unfiltered reference lists, so the marker may lie outside the RPY range.
RpysCoResult run_rpys_co(const Corpus& corpus, std::span<const MarkerQuery> markers,
                         const RpysConfig& config);

struct MarkerSuggestion {
  CrTableRow row;
  double ratio = 0.0;  // ncr / n_citing
  bool comparable_to_marker = false;
  bool is_marker = false;
};

// Top-n aggregates in top_crs order, annotated for choosing the next marker.
// comparable_to_marker: |ncr - n_citing| <= tolerance * n_citing.
std::vector<MarkerSuggestion> suggest_markers(const RpysCoResult& result, std::size_t n = 10,
                                              double tolerance = 0.25);

}  // namespace rpys
