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

#include "rpys/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rpys/csv.hpp"
#include "rpys/errors.hpp"

namespace rpys {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out(buf);
  // Never print a negative zero.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// 1, 2 or 5 times a power of ten, at least `raw`.
double nice_step(double raw) {
  if (!(raw > 0.0)) return 1.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * magnitude >= raw - 1e-12 * magnitude) return m * magnitude;
  }
  return 10.0 * magnitude;
}

std::string format_tick(double value, double step) {
  if (step >= 1.0) return fixed(value, 0);
  const int decimals = static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
  return fixed(value, std::clamp(decimals, 0, 6));
}

std::string deviation_label(std::size_t window) {
  if (window == 5) return "Five-year median deviation";
  return std::to_string(window) + "-year median deviation";
}

const char* const kNcrColor = "#d62728";
const char* const kDeviationColor = "#1f77b4";
const char* const kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct Frame {
  double left = 80, right = kSvgWidth - 30, top = 60, bottom = kSvgHeight - 60;
  int first_year = 0, last_year = 0;
  double y_min = 0, y_max = 1;

  double x(int year) const {
    if (first_year == last_year) return (left + right) / 2;
    return left + (right - left) * (year - first_year) / double(last_year - first_year);
  }
  double y(double v) const { return bottom - (bottom - top) * (v - y_min) / (y_max - y_min); }
};

void draw_axes(std::ostringstream& svg, const Frame& f, const std::string& y_label) {
  svg << "<g stroke=\"#000000\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << fixed(f.left, 2) << "\" y1=\"" << fixed(f.bottom, 2) << "\" x2=\""
      << fixed(f.right, 2) << "\" y2=\"" << fixed(f.bottom, 2) << "\"/>\n";
  svg << "<line x1=\"" << fixed(f.left, 2) << "\" y1=\"" << fixed(f.top, 2) << "\" x2=\""
      << fixed(f.left, 2) << "\" y2=\"" << fixed(f.bottom, 2) << "\"/>\n";
  svg << "</g>\n";

  if (f.y_min < 0.0) {
    svg << "<line x1=\"" << fixed(f.left, 2) << "\" y1=\"" << fixed(f.y(0), 2) << "\" x2=\""
        << fixed(f.right, 2) << "\" y2=\"" << fixed(f.y(0), 2)
        << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  }

  const int span = f.last_year - f.first_year;
  const int year_step = std::max(1, static_cast<int>(nice_step(span / 10.0)));
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  const int first_tick = (f.first_year + year_step - 1) / year_step * year_step;
  for (int year = first_tick; year <= f.last_year; year += year_step) {
    const double x = f.x(year);
    svg << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << fixed(f.bottom, 2) << "\" x2=\""
        << fixed(x, 2) << "\" y2=\"" << fixed(f.bottom + 5, 2) << "\" stroke=\"#000000\"/>\n";
    svg << "<text x=\"" << fixed(x, 2) << "\" y=\"" << fixed(f.bottom + 18, 2) << "\">" << year
        << "</text>\n";
  }
  svg << "<text x=\"" << fixed((f.left + f.right) / 2, 2) << "\" y=\""
      << fixed(f.bottom + 40, 2) << "\" font-size=\"13\">Reference publication year</text>\n";
  svg << "</g>\n";

  const double value_step = nice_step((f.y_max - f.y_min) / 6.0);
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">\n";
  for (double v = std::ceil(f.y_min / value_step - 1e-9) * value_step; v <= f.y_max + 1e-9 * value_step;
       v += value_step) {
    const double y = f.y(v);
    svg << "<line x1=\"" << fixed(f.left - 5, 2) << "\" y1=\"" << fixed(y, 2) << "\" x2=\""
        << fixed(f.left, 2) << "\" y2=\"" << fixed(y, 2) << "\" stroke=\"#000000\"/>\n";
    svg << "<text x=\"" << fixed(f.left - 8, 2) << "\" y=\"" << fixed(y + 4, 2) << "\">"
        << format_tick(v, value_step) << "</text>\n";
  }
  svg << "<text x=\"" << fixed(20, 2) << "\" y=\"" << fixed((f.top + f.bottom) / 2, 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << fixed((f.top + f.bottom) / 2, 2) << ")\">" << xml_escape(y_label) << "</text>\n";
  svg << "</g>\n";
}

void draw_curve(std::ostringstream& svg, const Frame& f, const Spectrogram& s,
                const std::vector<double>& values, const char* color) {
  svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) svg << ' ';
    svg << fixed(f.x(s.points[i].rpy), 2) << ',' << fixed(f.y(values[i]), 2);
  }
  svg << "\"/>\n";
  svg << "<g fill=\"" << color << "\">\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    svg << "<circle cx=\"" << fixed(f.x(s.points[i].rpy), 2) << "\" cy=\""
        << fixed(f.y(values[i]), 2) << "\" r=\"2.5\"/>\n";
  }
  svg << "</g>\n";
}

void draw_legend(std::ostringstream& svg, const Frame& f,
                 const std::vector<std::pair<std::string, const char*>>& entries,
                 const std::string& caption) {
  const double x = f.right - 260;
  double y = f.top + 8;
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!caption.empty()) {
    svg << "<text x=\"" << fixed(x, 2) << "\" y=\"" << fixed(y + 4, 2)
        << "\" font-style=\"italic\">" << xml_escape(caption) << "</text>\n";
    y += 18;
  }
  for (const auto& [label, color] : entries) {
    svg << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << fixed(y, 2) << "\" x2=\""
        << fixed(x + 24, 2) << "\" y2=\"" << fixed(y, 2) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fixed(x + 30, 2) << "\" y=\"" << fixed(y + 4, 2) << "\">"
        << xml_escape(label) << "</text>\n";
    y += 18;
  }
  svg << "</g>\n";
}

}  // namespace

std::string format_cr_csv(std::span<const AggregatedCR> aggregates) {
  std::string out = "rank,rpy,cr,ncr,n_variants\n";
  for (const auto& row : rank_crs(aggregates)) {
    out += csv::join_row({std::to_string(row.rank), row.rpy ? std::to_string(*row.rpy) : "",
                          row.cr, std::to_string(row.ncr), std::to_string(row.n_variants)});
    out += '\n';
  }
  return out;
}

std::string format_graph_csv(const Spectrogram& spectrogram) {
  std::string out = "rpy,ncr,median_dev,is_peak\n";
  for (const auto& p : spectrogram.points) {
    const bool peak = std::find(spectrogram.peaks.begin(), spectrogram.peaks.end(), p.rpy) !=
                      spectrogram.peaks.end();
    out += std::to_string(p.rpy) + ',' + std::to_string(p.ncr) + ',' + fixed(p.median_dev, 6) +
           ',' + (peak ? "true" : "false") + '\n';
  }
  return out;
}

Spectrogram read_graph_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row) || row != std::vector<std::string>{"rpy", "ncr", "median_dev", "is_peak"}) {
    throw MalformedFile("graph CSV header must be rpy,ncr,median_dev,is_peak", 1);
  }
  Spectrogram s;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 4) throw MalformedFile("expected 4 columns", reader.row_line());
    SpectrogramPoint p;
    try {
      std::size_t used = 0;
      p.rpy = std::stoi(row[0], &used);
      if (used != row[0].size()) throw std::invalid_argument("rpy");
      const long long ncr = std::stoll(row[1], &used);
      if (used != row[1].size() || ncr < 0) throw std::invalid_argument("ncr");
      p.ncr = static_cast<std::size_t>(ncr);
      p.median_dev = std::stod(row[2], &used);
      if (used != row[2].size()) throw std::invalid_argument("median_dev");
    } catch (const std::exception&) {
      throw MalformedFile("unparseable graph CSV row", reader.row_line());
    }
    if (!s.points.empty() && p.rpy != s.points.back().rpy + 1) {
      throw MalformedFile("graph CSV years are not contiguous", reader.row_line());
    }
    if (row[3] == "true") {
      s.peaks.push_back(p.rpy);
    } else if (row[3] != "false") {
      throw MalformedFile("is_peak must be true or false", reader.row_line());
    }
    s.points.push_back(p);
  }
  return s;
}

void write_file(const std::filesystem::path& destination, std::string_view bytes) {
  std::error_code ec;
  if (destination.has_parent_path()) {
    std::filesystem::create_directories(destination.parent_path(), ec);
  }
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + destination.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + destination.string() + "'");
}

std::size_t export_cr_csv(std::span<const AggregatedCR> aggregates,
                          const std::filesystem::path& destination) {
  write_file(destination, format_cr_csv(aggregates));
  return aggregates.size();
}

std::size_t export_graph_csv(const Spectrogram& spectrogram,
                             const std::filesystem::path& destination) {
  write_file(destination, format_graph_csv(spectrogram));
  return spectrogram.points.size();
}

std::vector<double> plotted_ncr(const Spectrogram& spectrogram, bool normalize) {
  auto values = spectrogram.ncr_series();
  if (normalize) {
    const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    if (peak > 0.0) {
      for (auto& v : values) v /= peak;
    }
  }
  return values;
}

std::string render_svg(std::span<const PlotSeries> series, const SvgOptions& options) {
  if (series.empty()) throw EmptySeries("nothing to plot");
  for (const auto& s : series) {
    if (s.spectrogram.points.empty()) throw EmptySeries("series '" + s.name + "' has no points");
  }
  Frame f;
  f.first_year = series.front().spectrogram.first_year();
  f.last_year = series.front().spectrogram.last_year();
  for (const auto& s : series) {
    if (s.spectrogram.first_year() != f.first_year || s.spectrogram.last_year() != f.last_year) {
      throw InvalidArgument("series '" + s.name + "' does not share the year axis");
    }
  }

  const bool single = series.size() == 1;
  std::vector<std::vector<double>> values;
  std::vector<double> deviation;
  for (const auto& s : series) values.push_back(plotted_ncr(s.spectrogram, options.normalize));
  if (single) {
    for (const auto& p : series.front().spectrogram.points) {
      deviation.push_back(options.normalize ? 0.0 : p.median_dev);
    }
    if (options.normalize) {
      // Deviation shares the NCR scale.
      const auto raw = series.front().spectrogram.ncr_series();
      const double peak = *std::max_element(raw.begin(), raw.end());
      for (std::size_t i = 0; i < deviation.size(); ++i) {
        const double dev = series.front().spectrogram.points[i].median_dev;
        deviation[i] = peak > 0.0 ? dev / peak : dev;
      }
    }
  }
  f.y_min = 0.0;
  f.y_max = 0.0;
  for (const auto& v : values) {
    for (double x : v) f.y_max = std::max(f.y_max, x);
  }
  for (double d : deviation) {
    f.y_min = std::min(f.y_min, d);
    f.y_max = std::max(f.y_max, d);
  }
  if (f.y_max <= f.y_min) f.y_max = f.y_min + 1.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSvgWidth
      << "\" height=\"" << kSvgHeight << "\" viewBox=\"0 0 " << kSvgWidth << ' ' << kSvgHeight
      << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kSvgWidth << "\" height=\"" << kSvgHeight
      << "\" fill=\"#ffffff\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << kSvgWidth / 2 << "\" y=\"30\" font-family=\"sans-serif\" "
        << "font-size=\"16\" text-anchor=\"middle\">" << xml_escape(options.title) << "</text>\n";
  }
  const std::string y_label = options.normalize ? "NCR / max NCR" : "NCR";
  draw_axes(svg, f, y_label);

  const std::string caption = options.normalize ? "normalized to max = 1" : "raw counts";
  if (single) {
    const auto& s = series.front().spectrogram;
    draw_curve(svg, f, s, values.front(), kNcrColor);
    draw_curve(svg, f, s, deviation, kDeviationColor);
    const std::string ncr_label = series.front().name.empty() ? "NCR" : "NCR: " + series.front().name;
    draw_legend(svg, f, {{ncr_label, kNcrColor}, {deviation_label(options.window), kDeviationColor}},
                caption);
  } else {
    std::vector<std::pair<std::string, const char*>> entries;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const char* color = kPalette[i % std::size(kPalette)];
      draw_curve(svg, f, series[i].spectrogram, values[i], color);
      entries.emplace_back(series[i].name, color);
    }
    draw_legend(svg, f, entries, caption);
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rpys
