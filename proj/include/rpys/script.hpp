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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rpys/cr_cluster.hpp"
#include "rpys/errors.hpp"
#include "rpys/record_model.hpp"
#include "rpys/spectroscopy.hpp"
#include "rpys/wos_parser.hpp"

namespace rpys::script {

enum class ErrorKind {
  Syntax,
  UnknownCommand,
  UnknownArgument,
  TypeMismatch,
  MissingArgument,
  InvalidValue,
  State,
};

std::string_view to_string(ErrorKind kind);

// Script problems. Parse errors carry a 1-based line/column; execution
// errors carry the 1-based index of the failing command.
class ScriptError : public Error {
 public:
  ScriptError(ErrorKind kind, const std::string& message, std::size_t line,
              std::size_t column);
  ScriptError(ErrorKind kind, const std::string& message, std::size_t command_index);

  ErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::size_t command_index() const { return command_index_; }

 private:
  ErrorKind kind_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
  std::size_t command_index_ = 0;
};

struct Value;
using List = std::vector<Value>;

struct Value {
  std::variant<std::string, std::int64_t, double, bool, List> data;

  friend bool operator==(const Value&, const Value&) = default;
};

enum class CommandName { ImportFile, Cluster, Merge, RemoveCR, ExportFile };

std::string_view to_string(CommandName name);

struct Command {
  CommandName name;
  std::map<std::string, Value> args;
  std::size_t line = 0;  // position of the command name
  std::size_t column = 0;

  // Positions are not part of a command's identity.
  friend bool operator==(const Command& a, const Command& b) {
    return a.name == b.name && a.args == b.args;
  }
};

/// Grammar: `name(arg: value, ...)` repeated; values are double-quoted
/// strings, integers, reals, true/false, or bracketed lists. Whitespace and
/// newlines between tokens are insignificant. Arguments are checked against
/// each command's schema while parsing.
std::vector<Command> parse_script(std::string_view text);

// Canonical text for one command; parse_script accepts it back unchanged.
std::string to_script(const Command& command);
std::string to_script(std::span<const Command> commands);

struct AnalysisSession {
  std::optional<Corpus> corpus;
  std::vector<CitedRef> occurrences;
  std::optional<Clustering> clustering;
  std::optional<std::vector<AggregatedCR>> aggregates;
  YearRange rpy_range;
  std::vector<std::string> history;
};

// Receives export bytes. Lets callers stage outputs and commit them only
// when the whole script succeeds.
class OutputSink {
 public:
  virtual ~OutputSink() = default;
  virtual void write(const std::filesystem::path& path, std::string bytes) = 0;
};

class FileSink : public OutputSink {
 public:
  void write(const std::filesystem::path& path, std::string bytes) override;
};

class BufferedSink : public OutputSink {
 public:
  void write(const std::filesystem::path& path, std::string bytes) override;
  // Writes every staged file. IoError on failure.
  void commit() const;
  const std::vector<std::pair<std::filesystem::path, std::string>>& staged() const {
    return staged_;
  }

 private:
  std::vector<std::pair<std::filesystem::path, std::string>> staged_;
};

struct ExecutionContext {
  std::filesystem::path data_dir = ".";  // base for importFile paths
  std::filesystem::path out_dir = ".";   // base for exportFile paths
  OutputSink* sink = nullptr;            // nullptr writes files directly
  std::size_t window = kDefaultMedianWindow;
  unsigned threads = 0;
};

/// Runs commands in order, threading the session through. Stops at the
/// first failure; errors from the library carry "command N (name)" context.
AnalysisSession execute(std::span<const Command> commands, AnalysisSession session,
                        const ExecutionContext& context);

}  // namespace rpys::script
