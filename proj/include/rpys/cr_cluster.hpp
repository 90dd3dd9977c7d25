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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/record_model.hpp"

namespace rpys {

// Defaults follow `cluster(threshold: 0.75, volume: true, page: true, DOI: false)`.
struct ClusterConfig {
  double threshold = 0.75;
  bool require_volume_match = true;
  bool require_page_match = true;
  bool require_doi_match = false;
  bool cross_rpy = false;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;

  friend bool operator==(const ClusterConfig&, const ClusterConfig&) = default;
};

// Levenshtein distance over bytes.
std::size_t edit_distance(std::string_view a, std::string_view b);

// Levenshtein distance capped at limit + 1; stops early once every cell of a
// DP row exceeds `limit`.
std::size_t bounded_edit_distance(std::string_view a, std::string_view b,
                                  std::size_t limit);

// 1 - dist / max(|a|, |b|); 1.0 when both are empty.
double key_similarity(std::string_view a, std::string_view b);

// key_similarity over normalize_cr keys.
double cr_similarity(const CitedRef& a, const CitedRef& b);

// The hard field constraints of `config`: each enabled field is either
// present and equal in both, or absent in both. RPY must agree unless
// cross_rpy is set.
bool fields_compatible(const CitedRef& a, const CitedRef& b, const ClusterConfig& config);

// A distinct raw cited-reference string and how often it occurs.
struct Variant {
  CitedRef ref;
  std::string key;
  std::size_t count = 0;
};

struct Clustering {
  // In order of first occurrence.
  std::vector<Variant> variants;
  // Variant indices per cluster, ascending; clusters ordered by their
  // smallest variant index. Every variant is in exactly one cluster.
  std::vector<std::vector<std::size_t>> clusters;
  std::size_t occurrence_count = 0;
};

/// Groups equivalent variants. Two variants link when fields_compatible
/// holds and their key similarity reaches the threshold; clusters are the
/// connected components of that relation.
///
/// Candidates are blocked on the fields the config requires to be equal and
/// pruned by key length before any edit distance is computed, so the result
/// is identical to checking every pair. Blocks are processed in parallel.
Clustering cluster(std::span<const CitedRef> occurrences, const ClusterConfig& config);

/// One AggregatedCR per cluster. The canonical variant is the most frequent
/// member; ties go to the smallest normalized key, then the smallest raw
/// string. Variants are listed by count descending with the same tie-break.
std::vector<AggregatedCR> merge(const Clustering& clustering);

/// Drops aggregates whose ncr lies in [lo, hi]. Order is preserved.
std::vector<AggregatedCR> remove_cr(std::vector<AggregatedCR> aggregates,
                                    std::size_t lo, std::size_t hi);

}  // namespace rpys
