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

// Random corpora and hand-built scenarios shared by unit and acceptance tests.

#include <cctype>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rpys/record_model.hpp"
#include "rpys/wos_parser.hpp"

#ifndef RPYS_TEST_DATA_DIR
#define RPYS_TEST_DATA_DIR "tests/data"
#endif

namespace rpys::testing {

inline const char* data_dir() { return RPYS_TEST_DATA_DIR; }

struct Work {
  std::string author;
  int year = 0;
  std::string source;
  std::string volume;  // empty = absent
  std::string page;
};

inline std::string render(const Work& w) {
  std::string s = w.author + ", " + std::to_string(w.year) + ", " + w.source;
  if (!w.volume.empty()) s += ", V" + w.volume;
  if (!w.page.empty()) s += ", P" + w.page;
  return s;
}

inline Work random_work(std::mt19937_64& rng, int year_lo, int year_hi) {
  static const char* kNames[] = {"KOHN",   "HOHENBERG", "BECKE", "LEE",    "PERDEW",
                                 "VOSKO",  "SLATER",    "BOYS",  "HEHRE",  "MULLIKEN",
                                 "CHEN",   "WANG",      "SMITH", "MULLER", "TANAKA"};
  static const char* kSources[] = {"PHYS REV",   "PHYS REV B",  "J CHEM PHYS",
                                   "MOL PHYS",   "CAN J PHYS",  "PHYS REV LETT",
                                   "J PHYS CHEM", "CHEM PHYS LETT"};
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  Work w;
  w.author = std::string(kNames[pick(std::size(kNames))]) + " " +
             static_cast<char>('A' + pick(26));
  w.year = std::uniform_int_distribution<int>(year_lo, year_hi)(rng);
  w.source = kSources[pick(std::size(kSources))];
  if (pick(10) != 0) w.volume = std::to_string(1 + pick(140));
  if (pick(10) != 0) w.page = std::to_string(1 + pick(9000));
  return w;
}

// One noisy spelling of `text`: digit swaps ("0" <-> "8" preferred),
// truncation, case changes, or a letter typo.
inline std::string mutate(const std::string& text, std::mt19937_64& rng) {
  std::string s = text;
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  switch (pick(5)) {
    case 0: {
      std::vector<std::size_t> zero_eight, digits;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '0' || s[i] == '8') zero_eight.push_back(i);
        if (std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(i);
      }
      if (!zero_eight.empty() && pick(3) != 0) {
        auto i = zero_eight[pick(zero_eight.size())];
        s[i] = s[i] == '0' ? '8' : '0';
      } else if (!digits.empty()) {
        auto i = digits[pick(digits.size())];
        s[i] = static_cast<char>('0' + (s[i] - '0' + 1 + pick(9)) % 10);
      }
      break;
    }
    case 1: {
      // drop the last field, or chop a few characters off the end
      const auto comma = s.rfind(',');
      if (comma != std::string::npos && pick(2) == 0) {
        s.erase(comma);
      } else if (s.size() > 12) {
        s.erase(s.size() - 1 - pick(3));
      }
      break;
    }
    case 2:
      for (auto& c : s) {
        if (pick(3) == 0) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      break;
    case 3: {
      std::vector<std::size_t> letters;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::isalpha(static_cast<unsigned char>(s[i]))) letters.push_back(i);
      }
      if (!letters.empty()) s[letters[pick(letters.size())]] = static_cast<char>('A' + pick(26));
      break;
    }
    default:
      s += ".";
      break;
  }
  return s;
}

// Up to `max_variants` distinct mutated spellings of a handful of works,
// each repeated 1-3 times. Years come from a narrow range so blocks are busy.
inline std::vector<CitedRef> random_variant_corpus(std::mt19937_64& rng,
                                                   std::size_t max_variants) {
  const std::size_t n_works = std::uniform_int_distribution<std::size_t>(3, 40)(rng);
  const std::size_t target = std::uniform_int_distribution<std::size_t>(1, max_variants)(rng);
  std::vector<Work> works;
  for (std::size_t i = 0; i < n_works; ++i) works.push_back(random_work(rng, 1960, 1966));
  std::vector<std::string> spellings;
  std::vector<CitedRef> out;
  std::uniform_int_distribution<std::size_t> which(0, n_works - 1);
  std::uniform_int_distribution<int> depth(0, 3);
  std::uniform_int_distribution<int> repeat(1, 3);
  for (std::size_t guard = 0; spellings.size() < target && guard < target * 4; ++guard) {
    std::string s = render(works[which(rng)]);
    for (int d = depth(rng); d > 0; --d) s = mutate(s, rng);
    if (std::find(spellings.begin(), spellings.end(), s) != spellings.end()) continue;
    spellings.push_back(s);
    const auto cr = parse_cr_line(s);
    for (int r = repeat(rng); r > 0; --r) out.push_back(cr);
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

// Records citing 1-12 references drawn from a shared pool of works.
inline Corpus random_corpus(std::mt19937_64& rng, std::size_t n_records) {
  std::vector<Work> pool;
  const std::size_t pool_size = std::uniform_int_distribution<std::size_t>(10, 80)(rng);
  for (std::size_t i = 0; i < pool_size; ++i) pool.push_back(random_work(rng, 1945, 1995));
  std::uniform_int_distribution<std::size_t> which(0, pool_size - 1);
  std::uniform_int_distribution<int> n_refs(1, 12);
  std::uniform_int_distribution<int> py(1985, 2018);
  std::bernoulli_distribution noisy(0.2);
  std::vector<Record> records;
  for (std::size_t r = 0; r < n_records; ++r) {
    Record rec;
    rec.id = "REC" + std::to_string(r);
    rec.py = py(rng);
    for (int k = n_refs(rng); k > 0; --k) {
      std::string s = render(pool[which(rng)]);
      if (noisy(rng)) s = mutate(s, rng);
      rec.cited_refs.push_back(parse_cr_line(s));
    }
    records.push_back(std::move(rec));
  }
  Provenance p;
  p.source = "random";
  p.format = "SYNTHETIC";
  p.records_seen = n_records;
  return Corpus(std::move(records), p);
}

// 69 papers citing a weak marker. Most cite it as written in the first
// variant below (51), the rest in a spelling too far away to cluster (18).
// The ten most-cited CRs carry NCR 51, 45, 37, 36, 31, 29, 27, 26, 25, 25.
inline Corpus weak_marker_corpus() {
  struct Cited {
    std::string text;
    std::size_t count;
  };
  const std::vector<Cited> top = {
      {"Perdew JP, 1996, Physical Review Letters, V77, P3865", 45},
      {"Tao JM, 2003, Physical Review Letters, V91", 37},
      {"Kohn W, 1965, Physical Review, V140, P1133", 36},
      {"Zhao Y, 2006, Journal of Chemical Physics, V125", 31},
      {"Perdew JP, 2009, Physical Review Letters, V103", 29},
      {"Sun JW, 2012, J Chem Phys, V137", 27},
      {"Becke AD, 1988, Physical Review A, V38, P3098", 26},
      {"Zhao Y, 2008, Theoretica Chimica Acta, V120, P215", 25},
      {"Perdew JP, 2008, Physical Review Letters, V100", 25},
  };
  const std::size_t n = 69;
  std::vector<Record> records(n);
  std::mt19937_64 rng(2019);
  for (std::size_t i = 0; i < n; ++i) {
    records[i].id = "SUN" + std::to_string(i + 1);
    records[i].py = 2013 + static_cast<int>(i % 6);
    records[i].cited_refs.push_back(parse_cr_line(
        i < 51 ? "Sun JW, 2013, Journal of Chemical Physics, V138" : "Sun J, 2013, J Chem Phys, V138"));
  }
  for (std::size_t k = 0; k < top.size(); ++k) {
    // a rotating window so co-citations spread over the whole set
    for (std::size_t j = 0; j < top[k].count; ++j) {
      records[(k * 11 + j) % n].cited_refs.push_back(parse_cr_line(top[k].text));
    }
  }
  // long tail, each cited at most 6 times
  for (int w = 0; w < 120; ++w) {
    Work work = random_work(rng, 1950, 2016);
    work.author = "TAIL" + std::to_string(w) + " X";
    const auto count = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    for (std::size_t j = 0; j < count; ++j) {
      records[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)].cited_refs.push_back(
          parse_cr_line(render(work)));
    }
  }
  Provenance p;
  p.source = "weak-marker";
  p.format = "SYNTHETIC";
  p.records_seen = n;
  return Corpus(std::move(records), p);
}

}  // namespace rpys::testing
