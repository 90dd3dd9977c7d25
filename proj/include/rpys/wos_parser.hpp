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
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "rpys/record_model.hpp"

namespace rpys {

struct ImportConfig {
  YearRange rpy_range;
  YearRange py_range;
  std::size_t max_cr_per_record = 0;  // 0 = no cap

  friend bool operator==(const ImportConfig&, const ImportConfig&) = default;
};

enum class InputFormat { Wos, Csv };

InputFormat parse_input_format(std::string_view name);
std::string_view to_string(InputFormat format);

/// Parses a tagged-field export (PT ... ER records, EF end of file).
///
/// Records whose PY falls outside `config.py_range` are dropped, and so are
/// CR lines whose RPY falls outside `config.rpy_range`. Unknown tags are
/// skipped. The provenance counts records and CR lines before filtering.
/// Throws MalformedFile with the offending line number on framing errors.
Corpus parse_corpus(std::istream& in, const ImportConfig& config,
                    std::string source_name = "<stream>");

/// Parses the CSV import format: header `id,py,cr_raw`, one cited reference
/// per row. Rows sharing an id form one record; an empty cr_raw yields a
/// record without references.
Corpus parse_csv_corpus(std::istream& in, const ImportConfig& config,
                        std::string source_name = "<stream>");

/// Opens and parses a file. Throws IoError when it cannot be read.
Corpus load_corpus(const std::filesystem::path& path, InputFormat format,
                   const ImportConfig& config);

/// Applies the PY/RPY range filters and the per-record CR cap to an
/// already-parsed corpus.
Corpus apply_import_filter(const Corpus& corpus, const ImportConfig& config);

/// Splits one comma-separated cited-reference line into structured fields.
/// Never fails on a line with visible content; throws EmptyLine otherwise.
CitedRef parse_cr_line(std::string_view line);

/// Uppercase, drop ASCII punctuation, collapse whitespace.
std::string normalize_text(std::string_view text);

/// Clustering key "AUTHOR|RPY|SOURCE|VOLUME|PAGE" over normalized fields.
std::string normalize_cr(const CitedRef& cr);

/// Renders structured fields back into a cited-reference line
/// ("AUTHOR, RPY, SOURCE, V.., P.., DOI ..."), omitting absent fields.
std::string format_cr_line(const CitedRef& cr);

}  // namespace rpys
