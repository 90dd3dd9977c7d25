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

#include "rpys/cli.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "rpys/csv.hpp"
#include "rpys/errors.hpp"
#include "rpys/export.hpp"
#include "rpys/rpysco.hpp"
#include "rpys/script.hpp"
#include "rpys/version.hpp"
#include "rpys/wos_parser.hpp"

namespace rpys::cli {

namespace {

using nlohmann::json;

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int parse_int(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("cannot read " + std::string(what) + " from '" + std::string(text) + "'");
}

json to_json(const YearRange& r) {
  return {{"lo", r.lo()}, {"hi", r.hi()}, {"include_missing", r.include_missing()}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json to_json(const MarkerQuery& m) {
  return {{"first_author", optional_json(m.first_author)},
          {"rpy", optional_json(m.rpy)},
          {"volume", optional_json(m.volume)},
          {"page", optional_json(m.page)},
          {"doi", optional_json(m.doi)},
          {"match_mode", m.match_mode == MatchMode::Strict ? "strict" : "doi_only"}};
}

std::string table_csv(const std::vector<CrTableRow>& rows) {
  std::string out = "rank,rpy,cr,ncr,n_variants\n";
  for (const auto& row : rows) {
    out += csv::join_row({std::to_string(row.rank), row.rpy ? std::to_string(*row.rpy) : "",
                          row.cr, std::to_string(row.ncr), std::to_string(row.n_variants)});
    out += '\n';
  }
  return out;
}

std::string ratio_text(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", ratio);
  return buf;
}

std::string suggestions_csv(const std::vector<MarkerSuggestion>& suggestions) {
  std::string out = "rank,rpy,cr,ncr,ratio,comparable_to_marker,is_marker\n";
  for (const auto& s : suggestions) {
    out += csv::join_row({std::to_string(s.row.rank),
                          s.row.rpy ? std::to_string(*s.row.rpy) : "", s.row.cr,
                          std::to_string(s.row.ncr), ratio_text(s.ratio),
                          s.comparable_to_marker ? "true" : "false",
                          s.is_marker ? "true" : "false"});
    out += '\n';
  }
  return out;
}

void print_rows(std::ostream& out, const std::vector<CrTableRow>& rows) {
  for (const auto& row : rows) {
    out << "  " << row.rank << '\t' << (row.rpy ? std::to_string(*row.rpy) : "-") << '\t'
        << row.ncr << '\t' << row.cr << '\n';
  }
}

}  // namespace

YearRange parse_year_range(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 2 && parts.size() != 3) {
    throw InvalidArgument("year range must look like LO:HI or LO:HI:true, got '" +
                          std::string(text) + "'");
  }
  bool include_missing = false;
  if (parts.size() == 3) {
    if (parts[2] == "true") {
      include_missing = true;
    } else if (parts[2] != "false") {
      throw InvalidArgument("third year-range field must be true or false");
    }
  }
  return YearRange(parse_int(parts[0], "year"), parse_int(parts[1], "year"), include_missing);
}

std::string format_year_range(const YearRange& range) {
  return std::to_string(range.lo()) + ":" + std::to_string(range.hi()) + ":" +
         (range.include_missing() ? "true" : "false");
}

int run_script(const RunScriptOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto text = read_text(options.script);
    std::vector<script::Command> commands;
    try {
      commands = script::parse_script(text);
    } catch (Error& e) {
      e.add_context(options.script.string());
      throw;
    }
    script::BufferedSink sink;
    script::ExecutionContext context;
    context.data_dir = options.data_dir ? *options.data_dir : options.script.parent_path();
    if (context.data_dir.empty()) context.data_dir = ".";
    context.out_dir = options.out_dir;
    context.sink = &sink;
    context.window = options.window;
    context.threads = options.threads;
    const auto session = script::execute(commands, script::AnalysisSession{}, context);
    sink.commit();
    out << "executed " << session.history.size() << " command(s)\n";
    for (const auto& [path, bytes] : sink.staged()) out << "wrote " << path.string() << '\n';
    return kExitOk;
  });
}

int rpys_co(const RpysCoOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RpysConfig config;
    config.import.rpy_range = parse_year_range(options.rpy);
    config.import.py_range = parse_year_range(options.py);
    config.import.max_cr_per_record = options.max_cr;
    config.cluster.threshold = options.cluster_threshold;
    config.cluster.require_volume_match = options.match_volume;
    config.cluster.require_page_match = options.match_page;
    config.cluster.require_doi_match = options.match_doi;
    config.cluster.cross_rpy = options.cross_rpy;
    config.cluster.threads = options.threads;
    config.cluster.validate();
    config.remove_range.reset();
    if (options.remove_below > 0) config.remove_range = {{0, options.remove_below - 1}};
    config.window = options.window;
    config.top_n = options.top;
    config.peak_papers_per_year = options.peak_papers;

    std::vector<MarkerQuery> markers;
    for (const auto& m : options.markers) markers.push_back(parse_marker(m));
    for (const auto& d : options.marker_dois) markers.push_back(marker_from_doi(d));
    if (markers.empty()) throw InvalidArgument("give at least one --marker or --marker-doi");
    if (options.out_dir.empty()) throw InvalidArgument("--out is required");

    const auto format = parse_input_format(options.format);
    const Corpus corpus = load_corpus(options.input, format, ImportConfig{});
    const auto result = run_rpys_co(corpus, markers, config);
    if (result.n_citing == 0) {
      err << "warning: no records cite the given marker(s); writing empty outputs\n";
    }

    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("cr.csv", format_cr_csv(result.aggregates));
    files.emplace_back("graph.csv", format_graph_csv(result.spectrogram));
    files.emplace_back("peaks.csv", table_csv(result.peak_table));
    const PlotSeries series{"RPYS-CO", result.spectrogram};
    files.emplace_back("spectrogram.svg",
                       render_svg(std::span(&series, 1),
                                  SvgOptions{.title = "RPYS-CO: " + markers.front().describe(),
                                             .normalize = options.normalize_plot,
                                             .window = options.window}));
    std::vector<MarkerSuggestion> suggestions;
    if (options.suggest_markers > 0) {
      suggestions = suggest_markers(result, options.suggest_markers, options.comparable_tolerance);
      files.emplace_back("suggestions.csv", suggestions_csv(suggestions));
    }

    json manifest;
    manifest["tool"] = "rpys";
    manifest["version"] = kVersion;
    manifest["command"] = "rpys-co";
    manifest["input"] = {{"path", options.input.string()},
                         {"format", std::string(to_string(format))},
                         {"records_seen", corpus.provenance().records_seen},
                         {"cr_lines_seen", corpus.provenance().cr_lines_seen}};
    manifest["markers"] = json::array();
    for (const auto& m : markers) manifest["markers"].push_back(to_json(m));
    manifest["marker_args"] = options.markers;
    manifest["marker_doi_args"] = options.marker_dois;
    manifest["import"] = {{"rpy", to_json(config.import.rpy_range)},
                          {"py", to_json(config.import.py_range)},
                          {"max_cr_per_record", config.import.max_cr_per_record}};
    manifest["cluster"] = {{"threshold", config.cluster.threshold},
                           {"require_volume_match", config.cluster.require_volume_match},
                           {"require_page_match", config.cluster.require_page_match},
                           {"require_doi_match", config.cluster.require_doi_match},
                           {"cross_rpy", config.cluster.cross_rpy}};
    manifest["remove_below"] = options.remove_below;
    manifest["remove_range"] =
        config.remove_range ? json::array({config.remove_range->first, config.remove_range->second})
                            : json(nullptr);
    manifest["window"] = config.window;
    manifest["top_n"] = config.top_n;
    manifest["peak_papers_per_year"] = config.peak_papers_per_year;
    manifest["suggest_markers"] = options.suggest_markers;
    manifest["comparable_tolerance"] = options.comparable_tolerance;
    manifest["normalize_plot"] = options.normalize_plot;
    manifest["results"] = {{"n_citing", result.n_citing},
                           {"n_aggregates", result.aggregates.size()},
                           {"peaks", result.spectrogram.peaks}};
    json outputs = json::array();
    for (const auto& [name, _] : files) outputs.push_back(name);
    outputs.push_back("manifest.json");
    manifest["outputs"] = outputs;
    files.emplace_back("manifest.json", manifest.dump(2) + "\n");

    for (const auto& [name, bytes] : files) write_file(options.out_dir / name, bytes);

    out << "n_citing=" << result.n_citing << '\n';
    out << "peaks=";
    for (std::size_t i = 0; i < result.spectrogram.peaks.size(); ++i) {
      out << (i ? " " : "") << result.spectrogram.peaks[i];
    }
    out << '\n';
    if (!result.top_table.empty()) {
      out << "top CRs:\n";
      print_rows(out, result.top_table);
    }
    if (!suggestions.empty()) {
      out << "marker candidates (ncr, ncr/n_citing, comparable, marker):\n";
      for (const auto& s : suggestions) {
        out << "  " << s.row.rank << '\t' << s.row.ncr << '\t' << ratio_text(s.ratio) << '\t'
            << (s.comparable_to_marker ? "comparable" : "-") << '\t'
            << (s.is_marker ? "marker" : "-") << '\t' << s.row.cr << '\n';
      }
    }
    return kExitOk;
  });
}

int plot(const PlotOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<PlotSeries> series;
    for (const auto& spec : options.series) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw InvalidArgument("series must look like LABEL=PATH, got '" + spec + "'");
      }
      const std::filesystem::path path = spec.substr(eq + 1);
      std::ifstream in(path, std::ios::binary);
      if (!in) throw IoError("cannot open '" + path.string() + "'");
      series.push_back(PlotSeries{spec.substr(0, eq), read_graph_csv(in)});
    }
    write_file(options.output,
               render_svg(series, SvgOptions{.title = options.title, .normalize = options.normalize}));
    out << "wrote " << options.output.string() << '\n';
    return kExitOk;
  });
}

int stats(const StatsOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto corpus = load_corpus(options.input, parse_input_format(options.format), ImportConfig{});
    const auto s = corpus_stats(corpus);
    out << "records=" << s.n_records << '\n';
    out << "cr_occurrences=" << s.n_cr_occurrences << '\n';
    out << "rpy_min=" << (s.rpy_min ? std::to_string(*s.rpy_min) : "-") << '\n';
    out << "rpy_max=" << (s.rpy_max ? std::to_string(*s.rpy_max) : "-") << '\n';
    return kExitOk;
  });
}

}  // namespace rpys::cli
