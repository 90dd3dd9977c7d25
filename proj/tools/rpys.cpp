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

#include <iostream>

#include "CLI11.hpp"
#include "rpys/cli.hpp"
#include "rpys/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Reference publication year spectroscopy (RPYS / RPYS-CO)"};
  app.set_version_flag("--version", rpys::kVersion);
  app.require_subcommand(1);

  rpys::cli::RunScriptOptions script_opts;
  auto* run = app.add_subcommand("run-script", "Execute an analysis script");
  run->add_option("script", script_opts.script, "Script file")->required();
  run->add_option("--data-dir", script_opts.data_dir,
                  "Base directory for importFile paths (default: the script's directory)");
  run->add_option("--out", script_opts.out_dir, "Base directory for exportFile paths")
      ->capture_default_str();
  run->add_option("--window", script_opts.window, "Median window for CSV_GRAPH")
      ->capture_default_str();
  run->add_option("--threads", script_opts.threads, "Clustering threads (0 = all cores)");

  rpys::cli::RpysCoOptions co;
  auto* rpysco = app.add_subcommand("rpys-co", "RPYS over the papers citing marker papers");
  rpysco->add_option("--input", co.input, "Corpus file")->required();
  rpysco->add_option("--format", co.format, "wos or csv")
      ->check(CLI::IsMember({"wos", "csv", "WOS", "CSV"}))
      ->capture_default_str();
  rpysco->add_option("--rpy", co.rpy, "Reference year range LO:HI[:include_missing]")
      ->capture_default_str();
  rpysco->add_option("--py", co.py, "Citing year range LO:HI[:include_missing]")
      ->capture_default_str();
  rpysco->add_option("--max-cr", co.max_cr, "Cap on CRs per record (0 = none)")
      ->capture_default_str();
  rpysco->add_option("--marker", co.markers, "Marker as \"Author,Year[,V..][,P..]\"");
  rpysco->add_option("--marker-doi", co.marker_dois, "Marker matched by DOI only");
  rpysco->add_option("--cluster-threshold", co.cluster_threshold, "Similarity threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  rpysco->add_flag("--match-volume,!--no-match-volume", co.match_volume,
                   "Volumes must agree to cluster (default on)");
  rpysco->add_flag("--match-page,!--no-match-page", co.match_page,
                   "Pages must agree to cluster (default on)");
  rpysco->add_flag("--match-doi,!--no-match-doi", co.match_doi,
                   "DOIs must agree to cluster (default off)");
  rpysco->add_flag("--cross-rpy", co.cross_rpy, "Allow clustering across reference years");
  rpysco->add_option("--remove-below", co.remove_below,
                     "Drop CRs cited fewer times than this (0 keeps all)")
      ->capture_default_str();
  rpysco->add_option("--window", co.window, "Median window")->capture_default_str();
  rpysco->add_option("--top", co.top, "Rows in the top-CR table")->capture_default_str();
  rpysco->add_option("--peak-papers", co.peak_papers, "CRs listed per peak year")
      ->capture_default_str();
  rpysco->add_option("--suggest-markers", co.suggest_markers,
                     "Append N marker candidates (0 = off)")
      ->capture_default_str();
  rpysco->add_option("--comparable-tolerance", co.comparable_tolerance,
                     "Relative band for NCR comparable to n_citing")
      ->capture_default_str();
  rpysco->add_flag("--normalize-plot", co.normalize_plot, "Scale the NCR curve to max 1");
  rpysco->add_option("--out", co.out_dir, "Output directory")->required();
  rpysco->add_option("--threads", co.threads, "Clustering threads (0 = all cores)");

  rpys::cli::PlotOptions plot_opts;
  auto* plot = app.add_subcommand("plot", "Overlay CSV_GRAPH files in one SVG");
  plot->add_option("--series", plot_opts.series, "LABEL=graph.csv (repeatable)")->required();
  plot->add_flag("--normalize", plot_opts.normalize, "Scale each NCR curve to max 1");
  plot->add_option("--title", plot_opts.title, "Plot title");
  plot->add_option("--out", plot_opts.output, "SVG file to write")->required();

  rpys::cli::StatsOptions stats_opts;
  auto* stats = app.add_subcommand("stats", "Count records and cited references");
  stats->add_option("--input", stats_opts.input, "Corpus file")->required();
  stats->add_option("--format", stats_opts.format, "wos or csv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? rpys::cli::kExitOk : rpys::cli::kExitFailure;
  }

  if (*run) return rpys::cli::run_script(script_opts, std::cout, std::cerr);
  if (*rpysco) return rpys::cli::rpys_co(co, std::cout, std::cerr);
  if (*plot) return rpys::cli::plot(plot_opts, std::cout, std::cerr);
  return rpys::cli::stats(stats_opts, std::cout, std::cerr);
}
