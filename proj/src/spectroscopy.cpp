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

#include "rpys/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "rpys/errors.hpp"

namespace rpys {

std::vector<double> Spectrogram::ncr_series() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(static_cast<double>(p.ncr));
  return out;
}

Spectrogram compute_spectrogram(std::span<const AggregatedCR> aggregates,
                                const YearRange& rpy_range) {
  Spectrogram s;
  s.points.resize(rpy_range.span());
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    s.points[i].rpy = rpy_range.lo() + static_cast<int>(i);
  }
  for (const auto& agg : aggregates) {
    const auto year = agg.canonical.rpy;
    if (!year || *year < rpy_range.lo() || *year > rpy_range.hi()) continue;
    auto& point = s.points[static_cast<std::size_t>(*year - rpy_range.lo())];
    point.ncr += agg.ncr;
    ++point.n_distinct_crs;
  }
  return s;
}

std::vector<double> median_deviation(std::span<const double> series, std::size_t window) {
  if (window < 3 || window % 2 == 0) {
    throw InvalidArgument("median window must be odd and at least 3, got " +
                          std::to_string(window));
  }
  if (window > series.size()) throw WindowTooLarge(window, series.size());

  const std::size_t half = window / 2;
  const std::size_t n = series.size();
  std::vector<double> out(n);
  std::vector<double> scratch;
  scratch.reserve(window);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t begin = t >= half ? t - half : 0;
    const std::size_t end = std::min(n, t + half + 1);
    scratch.assign(series.begin() + static_cast<std::ptrdiff_t>(begin),
                   series.begin() + static_cast<std::ptrdiff_t>(end));
    const std::size_t mid = scratch.size() / 2;
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(mid),
                     scratch.end());
    double median = scratch[mid];
    if (scratch.size() % 2 == 0) {
      const double lower =
          *std::max_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(mid));
      median = (lower + median) / 2.0;
    }
    out[t] = series[t] - median;
  }
  return out;
}

std::vector<std::size_t> detect_peaks(std::span<const double> dev) {
  double scale = 0.0;
  for (double d : dev) scale = std::max(scale, std::fabs(d));
  const double tol = 1e-9 * scale;

  std::vector<std::size_t> peaks;
  for (std::size_t t = 0; t < dev.size(); ++t) {
    if (!(dev[t] > tol)) continue;
    if (t > 0 && dev[t] < dev[t - 1] - tol) continue;
    if (t + 1 < dev.size() && dev[t] <= dev[t + 1] + tol) continue;
    peaks.push_back(t);
  }
  return peaks;
}

std::vector<int> detect_peaks(const Spectrogram& spectrogram) {
  std::vector<double> dev;
  dev.reserve(spectrogram.points.size());
  for (const auto& p : spectrogram.points) dev.push_back(p.median_dev);
  std::vector<int> years;
  for (std::size_t t : detect_peaks(dev)) years.push_back(spectrogram.points[t].rpy);
  return years;
}

void annotate_spectrogram(Spectrogram& spectrogram, std::size_t window) {
  const auto dev = median_deviation(spectrogram.ncr_series(), window);
  for (std::size_t i = 0; i < dev.size(); ++i) spectrogram.points[i].median_dev = dev[i];
  spectrogram.peaks = detect_peaks(spectrogram);
}

Spectrogram analyze_spectrogram(std::span<const AggregatedCR> aggregates,
                                const YearRange& rpy_range, std::size_t window) {
  auto s = compute_spectrogram(aggregates, rpy_range);
  annotate_spectrogram(s, window);
  return s;
}

bool ranks_before(const AggregatedCR& a, const AggregatedCR& b) {
  if (a.ncr != b.ncr) return a.ncr > b.ncr;
  if (a.canonical.rpy != b.canonical.rpy) {
    if (!a.canonical.rpy) return false;
    if (!b.canonical.rpy) return true;
    return *a.canonical.rpy < *b.canonical.rpy;
  }
  return std::tie(a.key, a.canonical.raw, a.cluster_id) <
         std::tie(b.key, b.canonical.raw, b.cluster_id);
}

namespace {

CrTableRow to_row(const AggregatedCR& agg, std::size_t rank) {
  return CrTableRow{rank,    agg.canonical.rpy,   agg.canonical.raw, agg.ncr,
                    agg.variants.size(), agg.key, agg.cluster_id};
}

std::vector<const AggregatedCR*> ranked(std::span<const AggregatedCR> aggregates,
                                        std::optional<int> within_year) {
  std::vector<const AggregatedCR*> order;
  order.reserve(aggregates.size());
  for (const auto& agg : aggregates) {
    if (within_year && agg.canonical.rpy != within_year) continue;
    order.push_back(&agg);
  }
  std::sort(order.begin(), order.end(),
            [](const AggregatedCR* a, const AggregatedCR* b) { return ranks_before(*a, *b); });
  return order;
}

}  // namespace

std::vector<CrTableRow> rank_crs(std::span<const AggregatedCR> aggregates,
                                 std::optional<int> within_year) {
  std::vector<CrTableRow> rows;
  for (const auto* agg : ranked(aggregates, within_year)) {
    rows.push_back(to_row(*agg, rows.size() + 1));
  }
  return rows;
}

std::vector<CrTableRow> top_crs(std::span<const AggregatedCR> aggregates, std::size_t n,
                                std::optional<int> within_year) {
  if (n == 0) throw InvalidArgument("top_crs needs n > 0");
  auto rows = rank_crs(aggregates, within_year);
  if (rows.size() > n) rows.resize(n);
  return rows;
}

std::vector<CrTableRow> peak_table(std::span<const AggregatedCR> aggregates,
                                   const Spectrogram& spectrogram, std::size_t per_year) {
  std::vector<CrTableRow> rows;
  if (per_year == 0) return rows;
  for (int year : spectrogram.peaks) {
    const auto in_year = ranked(aggregates, year);
    for (std::size_t i = 0; i < in_year.size() && i < per_year; ++i) {
      rows.push_back(to_row(*in_year[i], rows.size() + 1));
    }
  }
  return rows;
}

}  // namespace rpys
