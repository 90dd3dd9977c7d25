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

#include "rpys/record_model.hpp"

#include <algorithm>
#include <unordered_set>

#include "rpys/errors.hpp"

namespace rpys {

std::optional<int> plausible_year(long long year) {
  if (year < kMinYear || year > kMaxYear) return std::nullopt;
  return static_cast<int>(year);
}

YearRange::YearRange(int lo, int hi, bool include_missing)
    : lo_(lo), hi_(hi), include_missing_(include_missing) {
  if (lo > hi) {
    throw InvalidArgument("year range [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] has lo > hi");
  }
}

bool YearRange::contains(std::optional<int> year) const {
  if (!year) return include_missing_;
  return *year >= lo_ && *year <= hi_;
}

Corpus::Corpus(std::vector<Record> records, Provenance provenance)
    : records_(std::move(records)), provenance_(std::move(provenance)) {
  std::unordered_set<std::string> seen;
  seen.reserve(records_.size());
  for (const auto& record : records_) {
    if (!seen.insert(record.id).second) {
      throw InvalidArgument("duplicate record id '" + record.id + "'");
    }
  }
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  stats.n_records = corpus.size();
  for (const auto& record : corpus.records()) {
    stats.n_cr_occurrences += record.cited_refs.size();
    for (const auto& cr : record.cited_refs) {
      if (!cr.rpy) continue;
      stats.rpy_min = stats.rpy_min ? std::min(*stats.rpy_min, *cr.rpy) : *cr.rpy;
      stats.rpy_max = stats.rpy_max ? std::max(*stats.rpy_max, *cr.rpy) : *cr.rpy;
    }
  }
  return stats;
}

std::vector<CitedRef> collect_occurrences(const Corpus& corpus) {
  std::vector<CitedRef> out;
  for (const auto& record : corpus.records()) {
    out.insert(out.end(), record.cited_refs.begin(), record.cited_refs.end());
  }
  return out;
}

}  // namespace rpys
