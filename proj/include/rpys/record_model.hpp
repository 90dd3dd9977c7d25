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

namespace rpys {

inline constexpr int kMinYear = 1500;
inline constexpr int kMaxYear = 2100;

// Years outside [kMinYear, kMaxYear] are OCR noise and count as missing.
std::optional<int> plausible_year(long long year);

// One cited-reference occurrence. Structured fields hold normalized text;
// `raw` keeps the source line verbatim.
struct CitedRef {
  std::string raw;
  std::optional<std::string> first_author;
  std::optional<int> rpy;
  std::optional<std::string> source;
  std::optional<std::string> volume;
  std::optional<std::string> page;
  std::optional<std::string> doi;

  friend bool operator==(const CitedRef&, const CitedRef&) = default;
};

struct Record {
  std::string id;
  std::optional<int> py;
  std::string title;
  std::string source;
  std::vector<CitedRef> cited_refs;

  friend bool operator==(const Record&, const Record&) = default;
};

struct VariantCount {
  CitedRef ref;
  std::size_t count = 0;

  friend bool operator==(const VariantCount&, const VariantCount&) = default;
};

// A deduplicated cited reference: one cluster of equivalent variants.
struct AggregatedCR {
  CitedRef canonical;
  std::string key;  // normalized key of `canonical`
  std::size_t ncr = 0;
  std::vector<VariantCount> variants;
  std::size_t cluster_id = 0;

  friend bool operator==(const AggregatedCR&, const AggregatedCR&) = default;
};

// Closed year interval plus the policy for entries without a year.
class YearRange {
 public:
  // Everything plausible, including entries without a year.
  YearRange() = default;
  YearRange(int lo, int hi, bool include_missing);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool include_missing() const { return include_missing_; }
  std::size_t span() const { return static_cast<std::size_t>(hi_ - lo_) + 1; }

  bool contains(std::optional<int> year) const;

  friend bool operator==(const YearRange&, const YearRange&) = default;

 private:
  int lo_ = kMinYear;
  int hi_ = kMaxYear;
  bool include_missing_ = true;
};

struct Provenance {
  std::string source;  // file path or stream label
  std::string format;  // "WOS", "CSV", or a derived-corpus label
  std::size_t records_seen = 0;
  std::size_t cr_lines_seen = 0;
  std::vector<std::string> notes;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Immutable set of citing records with unique ids.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Record> records, Provenance provenance);

  const std::vector<Record>& records() const { return records_; }
  const Provenance& provenance() const { return provenance_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<Record> records_;
  Provenance provenance_;
};

struct CorpusStats {
  std::size_t n_records = 0;
  std::size_t n_cr_occurrences = 0;
  std::optional<int> rpy_min;
  std::optional<int> rpy_max;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats corpus_stats(const Corpus& corpus);

// Every cited-reference occurrence of the corpus, record by record.
std::vector<CitedRef> collect_occurrences(const Corpus& corpus);

}  // namespace rpys
