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
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace rpys::csv {

// RFC 4180 field: quoted only when it contains a comma, quote, CR or LF.
std::string quote(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

// Streaming RFC 4180 reader. Accepts LF or CRLF and quoted fields spanning
// lines. Throws MalformedFile on an unterminated quote.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads the next row; false at end of input.
  bool next(std::vector<std::string>& row);

  // 1-based line on which the last returned row started.
  std::size_t row_line() const { return row_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t row_line_ = 0;
};

}  // namespace rpys::csv
