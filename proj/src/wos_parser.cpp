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

#include "rpys/wos_parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rpys/csv.hpp"
#include "rpys/errors.hpp"

namespace rpys {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return std::isdigit(c) != 0;
         });
}

bool is_year_token(std::string_view t) { return t.size() == 4 && all_digits(t); }

bool is_volume_token(std::string_view t) {
  return t.size() >= 2 && (t[0] == 'V' || t[0] == 'v') && all_digits(t.substr(1));
}

bool is_page_token(std::string_view t) {
  if (t.size() < 2 || (t[0] != 'P' && t[0] != 'p')) return false;
  return std::all_of(t.begin() + 1, t.end(),
                     [](unsigned char c) { return std::isalnum(c) != 0; });
}

bool starts_with_doi_prefix(std::string_view t) {
  return t.size() >= 4 && (t[0] == 'D' || t[0] == 'd') &&
         (t[1] == 'O' || t[1] == 'o') && (t[2] == 'I' || t[2] == 'i') &&
         is_space(t[3]);
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string uppercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::optional<std::string> non_empty(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

std::optional<int> parse_year_field(std::string_view text) {
  text = trim(text);
  if (!all_digits(text) || text.size() > 9) return std::nullopt;
  return plausible_year(std::stoll(std::string(text)));
}

bool has_tag_shape(std::string_view line) {
  if (line.size() < 2) return false;
  const auto a = static_cast<unsigned char>(line[0]);
  const auto b = static_cast<unsigned char>(line[1]);
  if (!std::isupper(a) || !(std::isupper(b) || std::isdigit(b))) return false;
  return line.size() == 2 || is_space(line[2]);
}

void append_text(std::string& field, std::string_view more) {
  more = trim(more);
  if (more.empty()) return;
  if (!field.empty()) field.push_back(' ');
  field.append(more);
}

// Tagged-file reader producing unfiltered records.
class TaggedFileParser {
 public:
  explicit TaggedFileParser(std::istream& in) : in_(in) {}

  std::pair<std::vector<Record>, Provenance> run() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line_no_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      handle_line(line);
    }
    const std::size_t eof_line = line_no_ + 1;
    if (in_record_) throw MalformedFile("end of input inside a record (missing ER)", eof_line);
    if (!ef_closed_) throw MalformedFile("end of input without EF", eof_line);
    return {std::move(records_), std::move(provenance_)};
  }

 private:
  void handle_line(std::string_view line) {
    if (trim(line).empty()) return;

    if (line.starts_with("   ")) {
      if (!in_record_ || tag_.empty()) {
        throw MalformedFile("continuation line outside a field", line_no_);
      }
      handle_field(tag_, line.substr(3));
      return;
    }

    if (!has_tag_shape(line)) {
      throw MalformedFile("expected a two-letter field tag", line_no_);
    }
    const std::string tag(line.substr(0, 2));
    const std::string_view content = line.size() > 3 ? line.substr(3) : std::string_view{};

    if (tag == "PT") {
      if (in_record_) throw MalformedFile("PT inside an open record (missing ER)", line_no_);
      in_record_ = true;
      ef_closed_ = false;
      current_ = Record{};
      has_id_ = false;
      tag_.clear();
      return;
    }
    if (tag == "ER") {
      if (!in_record_) throw MalformedFile("ER without a preceding PT", line_no_);
      finish_record();
      return;
    }
    if (tag == "EF") {
      if (in_record_) throw MalformedFile("EF inside an open record (missing ER)", line_no_);
      ef_closed_ = true;
      return;
    }
    if (!in_record_) {
      // FN/VR form the export header; each concatenated export repeats it.
      if (tag == "FN" || tag == "VR") {
        ef_closed_ = false;
        return;
      }
      throw MalformedFile("tag " + tag + " before record start", line_no_);
    }
    tag_ = tag;
    handle_field(tag_, content);
  }

  void handle_field(const std::string& tag, std::string_view content) {
    if (tag == "CR") {
      if (trim(content).empty()) return;
      ++provenance_.cr_lines_seen;
      current_.cited_refs.push_back(parse_cr_line(trim_right(content)));
    } else if (tag == "PY") {
      if (!trim(content).empty() && !all_digits(trim(content))) {
        throw MalformedFile("PY is not a year: '" + std::string(trim(content)) + "'", line_no_);
      }
      current_.py = parse_year_field(content);
    } else if (tag == "TI") {
      append_text(current_.title, content);
    } else if (tag == "SO") {
      append_text(current_.source, content);
    } else if (tag == "UT") {
      if (!has_id_) {
        current_.id = std::string(trim(content));
        has_id_ = !current_.id.empty();
        id_line_ = line_no_;
      }
    }
    // AU and unknown tags carry nothing the analysis needs.
  }

  void finish_record() {
    ++provenance_.records_seen;
    if (!has_id_) current_.id = "R" + std::to_string(provenance_.records_seen);
    if (!ids_.insert(current_.id).second) {
      throw MalformedFile("duplicate record id '" + current_.id + "'",
                          has_id_ ? id_line_ : line_no_);
    }
    records_.push_back(std::move(current_));
    in_record_ = false;
    tag_.clear();
  }

  std::istream& in_;
  std::size_t line_no_ = 0;
  bool in_record_ = false;
  bool ef_closed_ = false;
  bool has_id_ = false;
  std::size_t id_line_ = 0;
  std::string tag_;
  Record current_;
  std::vector<Record> records_;
  std::unordered_set<std::string> ids_;
  Provenance provenance_;
};

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  const auto upper = uppercase(trim(name));
  if (upper == "WOS") return InputFormat::Wos;
  if (upper == "CSV") return InputFormat::Csv;
  throw InvalidArgument("unknown input format '" + std::string(name) + "'");
}

std::string_view to_string(InputFormat format) {
  return format == InputFormat::Wos ? "WOS" : "CSV";
}

Corpus apply_import_filter(const Corpus& corpus, const ImportConfig& config) {
  std::vector<Record> kept;
  kept.reserve(corpus.size());
  for (const auto& record : corpus.records()) {
    if (!config.py_range.contains(record.py)) continue;
    Record filtered = record;
    filtered.cited_refs.clear();
    for (const auto& cr : record.cited_refs) {
      if (!config.rpy_range.contains(cr.rpy)) continue;
      if (config.max_cr_per_record != 0 &&
          filtered.cited_refs.size() >= config.max_cr_per_record) {
        break;
      }
      filtered.cited_refs.push_back(cr);
    }
    kept.push_back(std::move(filtered));
  }
  return Corpus(std::move(kept), corpus.provenance());
}

Corpus parse_corpus(std::istream& in, const ImportConfig& config,
                    std::string source_name) {
  auto [records, provenance] = TaggedFileParser(in).run();
  provenance.source = std::move(source_name);
  provenance.format = "WOS";
  return apply_import_filter(Corpus(std::move(records), std::move(provenance)), config);
}

Corpus parse_csv_corpus(std::istream& in, const ImportConfig& config,
                        std::string source_name) {
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw MalformedFile("missing CSV header id,py,cr_raw", 1);
  if (row.size() != 3 || trim(row[0]) != "id" || trim(row[1]) != "py" ||
      trim(row[2]) != "cr_raw") {
    throw MalformedFile("CSV header must be id,py,cr_raw", reader.row_line());
  }

  Provenance provenance;
  provenance.source = std::move(source_name);
  provenance.format = "CSV";
  std::vector<Record> records;
  std::unordered_map<std::string, std::size_t> index;
  while (reader.next(row)) {
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (row.size() != 3) {
      throw MalformedFile("expected 3 CSV columns, found " + std::to_string(row.size()),
                          reader.row_line());
    }
    const std::string id(trim(row[0]));
    if (id.empty()) throw MalformedFile("empty record id", reader.row_line());
    std::optional<int> py;
    const auto py_text = trim(row[1]);
    if (!py_text.empty()) {
      if (!all_digits(py_text)) {
        throw MalformedFile("py is not an integer year", reader.row_line());
      }
      py = parse_year_field(py_text);
    }
    auto [it, inserted] = index.try_emplace(id, records.size());
    if (inserted) {
      Record record;
      record.id = id;
      record.py = py;
      records.push_back(std::move(record));
    } else if (records[it->second].py != py) {
      throw MalformedFile("conflicting py for record '" + id + "'", reader.row_line());
    }
    const auto cr_text = trim_right(row[2]);
    if (!trim(cr_text).empty()) {
      ++provenance.cr_lines_seen;
      records[it->second].cited_refs.push_back(parse_cr_line(cr_text));
    }
  }
  provenance.records_seen = records.size();
  return apply_import_filter(Corpus(std::move(records), std::move(provenance)), config);
}

Corpus load_corpus(const std::filesystem::path& path, InputFormat format,
                   const ImportConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file '" + path.string() + "'");
  return format == InputFormat::Wos ? parse_corpus(in, config, path.string())
                                    : parse_csv_corpus(in, config, path.string());
}

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::isspace(c)) {
      pending_space = !out.empty();
    } else if (c < 0x80 && std::ispunct(c)) {
      continue;
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c < 0x80 ? static_cast<char>(std::toupper(c)) : ch);
    }
  }
  return out;
}

CitedRef parse_cr_line(std::string_view line) {
  if (trim(line).empty()) throw EmptyLine();

  CitedRef cr;
  cr.raw = std::string(line);

  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    auto t = trim(line.substr(start, comma - start));
    // "V38." and "1965." are common; a DOI keeps its text as written
    if (!starts_with_doi_prefix(t)) {
      while (!t.empty() && t.back() == '.') t.remove_suffix(1);
    }
    tokens.push_back(trim_right(t));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }

  const auto year_it = std::find_if(tokens.begin(), tokens.end(), is_year_token);
  std::size_t rest = 1;
  if (year_it != tokens.end()) {
    const auto year_pos = static_cast<std::size_t>(year_it - tokens.begin());
    cr.rpy = plausible_year(std::stoll(std::string(*year_it)));
    if (year_pos > 0) cr.first_author = non_empty(normalize_text(tokens[0]));
    rest = year_pos + 1;
    if (rest < tokens.size() && !is_volume_token(tokens[rest]) &&
        !starts_with_doi_prefix(tokens[rest])) {
      cr.source = non_empty(normalize_text(tokens[rest]));
      ++rest;
    }
  } else {
    cr.first_author = non_empty(normalize_text(tokens[0]));
  }

  for (std::size_t i = rest; i < tokens.size(); ++i) {
    const auto t = tokens[i];
    if (!cr.volume && is_volume_token(t)) {
      cr.volume = std::string(t.substr(1));
    } else if (!cr.page && is_page_token(t)) {
      cr.page = uppercase(t.substr(1));
    } else if (!cr.doi && starts_with_doi_prefix(t)) {
      auto doi = t;
      while (starts_with_doi_prefix(doi)) doi = trim(doi.substr(4));
      cr.doi = non_empty(lowercase(doi));
    }
  }
  return cr;
}

std::string normalize_cr(const CitedRef& cr) {
  auto field = [](const std::optional<std::string>& v) {
    return v ? normalize_text(*v) : std::string{};
  };
  std::string key = field(cr.first_author);
  key += '|';
  if (cr.rpy) key += std::to_string(*cr.rpy);
  key += '|';
  key += field(cr.source);
  key += '|';
  key += field(cr.volume);
  key += '|';
  key += field(cr.page);
  return key;
}

std::string format_cr_line(const CitedRef& cr) {
  std::vector<std::string> parts;
  if (cr.first_author) {
    parts.push_back(*cr.first_author);
  } else if (!cr.rpy && !cr.source) {
    parts.emplace_back();  // keep the author slot empty
  }
  if (cr.rpy) {
    parts.push_back(std::to_string(*cr.rpy));
  } else if (cr.source) {
    // Placeholder year token so the source keeps its position on reparse.
    parts.push_back("0000");
  }
  if (cr.source) parts.push_back(*cr.source);
  if (cr.volume) parts.push_back("V" + *cr.volume);
  if (cr.page) parts.push_back("P" + *cr.page);
  if (cr.doi) parts.push_back("DOI " + *cr.doi);
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace rpys
