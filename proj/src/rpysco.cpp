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

#include "rpys/rpysco.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "rpys/errors.hpp"

namespace rpys {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool doi_equal(const std::optional<std::string>& cr_doi, const std::string& marker_doi) {
  return cr_doi && lowercase(*cr_doi) == marker_doi;
}

}  // namespace

void MarkerQuery::validate() const {
  if (match_mode == MatchMode::DoiOnly) {
    if (!doi) throw InvalidArgument("doi_only marker needs a DOI");
    return;
  }
  if (!doi && !(first_author && rpy)) {
    throw InvalidArgument("marker needs first author and year, or a DOI");
  }
}

std::string MarkerQuery::describe() const {
  std::string out;
  auto add = [&](const std::string& part) {
    if (!out.empty()) out += ", ";
    out += part;
  };
  if (first_author) add(*first_author);
  if (rpy) add(std::to_string(*rpy));
  if (volume) add("V" + *volume);
  if (page) add("P" + *page);
  if (doi) add("DOI " + *doi);
  if (match_mode == MatchMode::DoiOnly) out += " [doi_only]";
  return out;
}

MarkerQuery parse_marker(std::string_view spec) {
  if (trim(spec).empty()) throw InvalidArgument("marker specification is empty");
  const auto cr = parse_cr_line(spec);
  MarkerQuery marker;
  marker.first_author = cr.first_author;
  marker.rpy = cr.rpy;
  marker.volume = cr.volume;
  marker.page = cr.page;
  marker.doi = cr.doi;
  marker.validate();
  return marker;
}

MarkerQuery marker_from_doi(std::string_view doi) {
  auto text = trim(doi);
  if (text.size() >= 4 && lowercase(text.substr(0, 4)) == "doi ") text = trim(text.substr(4));
  MarkerQuery marker;
  if (!text.empty()) marker.doi = lowercase(text);
  marker.match_mode = MatchMode::DoiOnly;
  marker.validate();
  return marker;
}

bool matches_marker(const CitedRef& cr, const MarkerQuery& marker) {
  if (marker.match_mode == MatchMode::DoiOnly) {
    return marker.doi && doi_equal(cr.doi, *marker.doi);
  }
  if (marker.first_author) {
    if (!cr.first_author) return false;
    const auto want = normalize_text(*marker.first_author);
    if (!normalize_text(*cr.first_author).starts_with(want)) return false;
  }
  if (marker.rpy && cr.rpy != marker.rpy) return false;
  if (marker.volume && cr.volume != marker.volume) return false;
  if (marker.page && cr.page != marker.page) return false;
  if (marker.doi && !doi_equal(cr.doi, *marker.doi)) return false;
  return true;
}

bool match_marker(const Record& record, const MarkerQuery& marker) {
  return std::any_of(record.cited_refs.begin(), record.cited_refs.end(),
                     [&](const CitedRef& cr) { return matches_marker(cr, marker); });
}

Corpus select_citing(const Corpus& corpus, std::span<const MarkerQuery> markers) {
  if (markers.empty()) throw InvalidArgument("select_citing needs at least one marker");
  for (const auto& m : markers) m.validate();

  std::vector<Record> selected;
  for (const auto& record : corpus.records()) {
    const bool hit = std::any_of(markers.begin(), markers.end(), [&](const MarkerQuery& m) {
      return match_marker(record, m);
    });
    if (hit) selected.push_back(record);
  }
  Provenance provenance = corpus.provenance();
  for (const auto& m : markers) provenance.notes.push_back("cites marker: " + m.describe());
  return Corpus(std::move(selected), std::move(provenance));
}

RpysCoResult run_rpys(const Corpus& corpus, const RpysConfig& config) {
  config.cluster.validate();
  const Corpus filtered = apply_import_filter(corpus, config.import);

  RpysCoResult result;
  result.n_citing = filtered.size();
  const auto occurrences = collect_occurrences(filtered);
  auto aggregates = merge(cluster(occurrences, config.cluster));
  if (config.remove_range) {
    aggregates = remove_cr(std::move(aggregates), config.remove_range->first,
                           config.remove_range->second);
  }
  result.spectrogram = analyze_spectrogram(aggregates, config.import.rpy_range, config.window);
  result.peak_table = peak_table(aggregates, result.spectrogram, config.peak_papers_per_year);
  if (config.top_n > 0) result.top_table = top_crs(aggregates, config.top_n);
  result.aggregates = std::move(aggregates);
  return result;
}

RpysCoResult run_rpys_co(const Corpus& corpus, std::span<const MarkerQuery> markers,
                         const RpysConfig& config) {
  auto result = run_rpys(select_citing(corpus, markers), config);
  result.markers.assign(markers.begin(), markers.end());
  return result;
}

std::vector<MarkerSuggestion> suggest_markers(const RpysCoResult& result, std::size_t n,
                                              double tolerance) {
  std::vector<MarkerSuggestion> out;
  if (n == 0 || result.aggregates.empty()) return out;
  const double citing = static_cast<double>(result.n_citing);
  for (auto& row : top_crs(result.aggregates, n)) {
    MarkerSuggestion s;
    s.ratio = result.n_citing ? static_cast<double>(row.ncr) / citing : 0.0;
    s.comparable_to_marker =
        result.n_citing > 0 &&
        std::fabs(static_cast<double>(row.ncr) - citing) <= tolerance * citing;
    const auto& agg = *std::find_if(
        result.aggregates.begin(), result.aggregates.end(),
        [&](const AggregatedCR& a) { return a.cluster_id == row.cluster_id; });
    s.is_marker = std::any_of(agg.variants.begin(), agg.variants.end(), [&](const VariantCount& v) {
      return std::any_of(result.markers.begin(), result.markers.end(),
                         [&](const MarkerQuery& m) { return matches_marker(v.ref, m); });
    });
    s.row = std::move(row);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rpys
