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

#include "rpys/cr_cluster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "rpys/errors.hpp"
#include "rpys/wos_parser.hpp"

namespace rpys {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

void append_field(std::string& out, const std::optional<std::string>& v) {
  if (v) {
    out += '\x02';
    out += *v;
  } else {
    out += '\x01';
  }
  out += '\x1f';
}

void append_year(std::string& out, const std::optional<int>& v) {
  append_field(out, v ? std::optional<std::string>(std::to_string(*v)) : std::nullopt);
}

// Largest distance that can still reach `threshold` for keys whose longer
// side has `length` bytes. Slightly generous; the exact test follows.
std::size_t max_admissible_distance(double threshold, std::size_t length) {
  return static_cast<std::size_t>(
      std::floor((1.0 - threshold) * static_cast<double>(length) + 1e-9));
}

struct Candidate {
  std::size_t variant;  // representative variant of an exact-duplicate group
  std::string_view key;
};

// Links inside one block. Returns the spanning edges found.
std::vector<std::pair<std::size_t, std::size_t>> link_block(
    std::vector<Candidate> block, double threshold) {
  std::sort(block.begin(), block.end(), [](const Candidate& a, const Candidate& b) {
    return std::pair(a.key.size(), a.variant) < std::pair(b.key.size(), b.variant);
  });
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  DisjointSets local(block.size());
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (std::size_t j = i + 1; j < block.size(); ++j) {
      const auto longer = block[j].key.size();
      const auto limit = max_admissible_distance(threshold, longer);
      // Length difference bounds the distance from below and only grows with j.
      if (longer - block[i].key.size() > limit) break;
      if (local.find(i) == local.find(j)) continue;
      const auto d = bounded_edit_distance(block[i].key, block[j].key, limit);
      if (d > limit) continue;
      if (key_similarity(block[i].key, block[j].key) < threshold) continue;
      local.unite(i, j);
      edges.emplace_back(block[i].variant, block[j].variant);
    }
  }
  return edges;
}

bool same_text(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  return a == b;
}

}  // namespace

void ClusterConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("cluster threshold must lie in [0, 1], got " +
                          std::to_string(threshold));
  }
}

std::size_t bounded_edit_distance(std::string_view a, std::string_view b,
                                  std::size_t limit) {
  if (a.size() > b.size()) std::swap(a, b);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t over = limit == static_cast<std::size_t>(-1) ? limit : limit + 1;
  if (m - n > limit) return over;
  if (n == 0) return m;

  std::vector<std::size_t> prev(n + 1);
  std::vector<std::size_t> cur(n + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t j = 1; j <= m; ++j) {
    cur[0] = j;
    std::size_t row_min = cur[0];
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t substitution = prev[i - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[i] = std::min({substitution, prev[i] + 1, cur[i - 1] + 1});
      row_min = std::min(row_min, cur[i]);
    }
    if (row_min > limit) return over;
    std::swap(prev, cur);
  }
  return std::min(prev[n], over);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return bounded_edit_distance(a, b, static_cast<std::size_t>(-1));
}

double key_similarity(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(longest);
}

double cr_similarity(const CitedRef& a, const CitedRef& b) {
  return key_similarity(normalize_cr(a), normalize_cr(b));
}

bool fields_compatible(const CitedRef& a, const CitedRef& b, const ClusterConfig& config) {
  if (!config.cross_rpy && a.rpy != b.rpy) return false;
  if (config.require_volume_match && !same_text(a.volume, b.volume)) return false;
  if (config.require_page_match && !same_text(a.page, b.page)) return false;
  if (config.require_doi_match && !same_text(a.doi, b.doi)) return false;
  return true;
}

Clustering cluster(std::span<const CitedRef> occurrences, const ClusterConfig& config) {
  config.validate();

  Clustering result;
  result.occurrence_count = occurrences.size();
  std::unordered_map<std::string_view, std::size_t> by_raw;
  // Variants hold their own copies; index by raw text of the stored copy.
  result.variants.reserve(occurrences.size());
  for (const auto& occurrence : occurrences) {
    auto it = by_raw.find(occurrence.raw);
    if (it == by_raw.end()) {
      result.variants.push_back(Variant{occurrence, normalize_cr(occurrence), 0});
      it = by_raw.emplace(result.variants.back().ref.raw, result.variants.size() - 1).first;
    }
    ++result.variants[it->second].count;
  }
  const auto& variants = result.variants;
  DisjointSets sets(variants.size());

  // Variants with identical key and compared fields link under any config.
  std::unordered_map<std::string, std::size_t> exact;
  std::unordered_map<std::string, std::vector<Candidate>> blocks;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    const auto& ref = variants[v].ref;
    std::string exact_key = variants[v].key;
    exact_key += '\x1f';
    append_year(exact_key, ref.rpy);
    append_field(exact_key, ref.volume);
    append_field(exact_key, ref.page);
    append_field(exact_key, ref.doi);
    auto [it, inserted] = exact.try_emplace(std::move(exact_key), v);
    if (!inserted) {
      sets.unite(it->second, v);
      continue;
    }
    std::string block_key;
    if (!config.cross_rpy) append_year(block_key, ref.rpy);
    if (config.require_volume_match) append_field(block_key, ref.volume);
    if (config.require_page_match) append_field(block_key, ref.page);
    if (config.require_doi_match) append_field(block_key, ref.doi);
    blocks[std::move(block_key)].push_back(Candidate{v, variants[v].key});
  }

  std::vector<std::vector<Candidate>> work;
  for (auto& [_, block] : blocks) {
    if (block.size() > 1) work.push_back(std::move(block));
  }
  std::sort(work.begin(), work.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.front().variant < b.front().variant;
  });

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges(work.size());
  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(work.size())));
  if (workers <= 1) {
    for (std::size_t b = 0; b < work.size(); ++b) {
      edges[b] = link_block(std::move(work[b]), config.threshold);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < work.size(); b = next++) {
          edges[b] = link_block(std::move(work[b]), config.threshold);
        }
      });
    }
  }
  for (const auto& block_edges : edges) {
    for (const auto& [a, b] : block_edges) sets.unite(a, b);
  }

  std::unordered_map<std::size_t, std::size_t> cluster_of_root;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    auto [it, inserted] = cluster_of_root.try_emplace(sets.find(v), result.clusters.size());
    if (inserted) result.clusters.emplace_back();
    result.clusters[it->second].push_back(v);
  }
  return result;
}

std::vector<AggregatedCR> merge(const Clustering& clustering) {
  std::vector<AggregatedCR> out;
  out.reserve(clustering.clusters.size());
  for (const auto& members : clustering.clusters) {
    std::vector<std::size_t> order(members);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const auto& a = clustering.variants[x];
      const auto& b = clustering.variants[y];
      if (a.count != b.count) return a.count > b.count;
      if (a.key != b.key) return a.key < b.key;
      return a.ref.raw < b.ref.raw;
    });
    AggregatedCR agg;
    agg.cluster_id = out.size();
    agg.canonical = clustering.variants[order.front()].ref;
    agg.key = clustering.variants[order.front()].key;
    for (std::size_t v : order) {
      const auto& variant = clustering.variants[v];
      agg.ncr += variant.count;
      agg.variants.push_back(VariantCount{variant.ref, variant.count});
    }
    out.push_back(std::move(agg));
  }
  return out;
}

std::vector<AggregatedCR> remove_cr(std::vector<AggregatedCR> aggregates,
                                    std::size_t lo, std::size_t hi) {
  if (lo > hi) {
    throw InvalidArgument("removeCR range [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] has lo > hi");
  }
  std::erase_if(aggregates, [&](const AggregatedCR& a) { return a.ncr >= lo && a.ncr <= hi; });
  return aggregates;
}

}  // namespace rpys
