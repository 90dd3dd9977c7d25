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

#include "rpys/script.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "rpys/export.hpp"

namespace rpys::script {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::UnknownCommand: return "unknown command";
    case ErrorKind::UnknownArgument: return "unknown argument";
    case ErrorKind::TypeMismatch: return "type mismatch";
    case ErrorKind::MissingArgument: return "missing argument";
    case ErrorKind::InvalidValue: return "invalid value";
    case ErrorKind::State: return "state error";
  }
  return "error";
}

ScriptError::ScriptError(ErrorKind kind, const std::string& message, std::size_t line,
                         std::size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

ScriptError::ScriptError(ErrorKind kind, const std::string& message, std::size_t command_index)
    : Error("command " + std::to_string(command_index) + ": " + std::string(to_string(kind)) +
            ": " + message),
      kind_(kind),
      command_index_(command_index) {}

std::string_view to_string(CommandName name) {
  switch (name) {
    case CommandName::ImportFile: return "importFile";
    case CommandName::Cluster: return "cluster";
    case CommandName::Merge: return "merge";
    case CommandName::RemoveCR: return "removeCR";
    case CommandName::ExportFile: return "exportFile";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, String, Integer, Real, LParen, RParen, LBracket, RBracket, Comma, Colon, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;

    const char c = text_[pos_];
    switch (c) {
      case '(': return single(tok, Tok::LParen);
      case ')': return single(tok, Tok::RParen);
      case '[': return single(tok, Tok::LBracket);
      case ']': return single(tok, Tok::RBracket);
      case ',': return single(tok, Tok::Comma);
      case ':': return single(tok, Tok::Colon);
      case '"': return string(tok);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.type = Tok::Ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        tok.text.push_back(advance());
      }
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
         (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '.'))) {
      return number(tok);
    }
    throw ScriptError(ErrorKind::Syntax, std::string("unexpected character '") + c + "'",
                      tok.line, tok.column);
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  Token single(Token& tok, Tok type) {
    tok.type = type;
    tok.text.push_back(advance());
    return tok;
  }

  Token string(Token& tok) {
    tok.type = Tok::String;
    advance();
    for (;;) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw ScriptError(ErrorKind::Syntax, "unterminated string", tok.line, tok.column);
      }
      const char c = advance();
      if (c == '"') return tok;
      if (c == '\\') {
        if (pos_ >= text_.size()) continue;
        const char e = advance();
        switch (e) {
          case 'n': tok.text.push_back('\n'); break;
          case 't': tok.text.push_back('\t'); break;
          case '"':
          case '\\': tok.text.push_back(e); break;
          default:
            throw ScriptError(ErrorKind::Syntax, std::string("unknown escape \\") + e, line_,
                              column_ - 1);
        }
      } else {
        tok.text.push_back(c);
      }
    }
  }

  Token number(Token& tok) {
    tok.type = Tok::Integer;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        tok.text.push_back(advance());
      }
    };
    if (text_[pos_] == '-' || text_[pos_] == '+') tok.text.push_back(advance());
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      tok.type = Tok::Real;
      tok.text.push_back(advance());
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      tok.type = Tok::Real;
      tok.text.push_back(advance());
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        tok.text.push_back(advance());
      }
      digits();
    }
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      throw ScriptError(ErrorKind::Syntax, "malformed number", tok.line, tok.column);
    }
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Schema

enum class ArgType { String, Number, Integer, Bool, YearRangeList, CountRange };

struct ArgSpec {
  std::string_view name;
  ArgType type;
  bool required;
};

struct CommandSpec {
  CommandName name;
  std::vector<ArgSpec> args;
};

const std::vector<CommandSpec>& schemas() {
  static const std::vector<CommandSpec> specs = {
      {CommandName::ImportFile,
       {{"file", ArgType::String, true},
        {"type", ArgType::String, false},
        {"RPY", ArgType::YearRangeList, false},
        {"PY", ArgType::YearRangeList, false},
        {"maxCR", ArgType::Integer, false}}},
      {CommandName::Cluster,
       {{"threshold", ArgType::Number, false},
        {"volume", ArgType::Bool, false},
        {"page", ArgType::Bool, false},
        {"DOI", ArgType::Bool, false}}},
      {CommandName::Merge, {}},
      {CommandName::RemoveCR, {{"N_CR", ArgType::CountRange, true}}},
      {CommandName::ExportFile,
       {{"file", ArgType::String, true}, {"type", ArgType::String, true}}},
  };
  return specs;
}

std::string_view type_name(ArgType t) {
  switch (t) {
    case ArgType::String: return "a string";
    case ArgType::Number: return "a number";
    case ArgType::Integer: return "an integer";
    case ArgType::Bool: return "true or false";
    case ArgType::YearRangeList: return "[lo, hi, include_missing]";
    case ArgType::CountRange: return "[lo, hi]";
  }
  return "?";
}

bool is_int(const Value& v) { return std::holds_alternative<std::int64_t>(v.data); }

// Type conformance; value constraints are checked separately.
bool has_type(const Value& v, ArgType t) {
  switch (t) {
    case ArgType::String: return std::holds_alternative<std::string>(v.data);
    case ArgType::Number:
      return is_int(v) || std::holds_alternative<double>(v.data);
    case ArgType::Integer: return is_int(v);
    case ArgType::Bool: return std::holds_alternative<bool>(v.data);
    case ArgType::YearRangeList: {
      const auto* list = std::get_if<List>(&v.data);
      if (!list || (list->size() != 2 && list->size() != 3)) return false;
      if (!is_int((*list)[0]) || !is_int((*list)[1])) return false;
      return list->size() == 2 || std::holds_alternative<bool>((*list)[2].data);
    }
    case ArgType::CountRange: {
      const auto* list = std::get_if<List>(&v.data);
      return list && list->size() == 2 && is_int((*list)[0]) && is_int((*list)[1]);
    }
  }
  return false;
}

std::int64_t as_int(const Value& v) { return std::get<std::int64_t>(v.data); }

double as_number(const Value& v) {
  if (is_int(v)) return static_cast<double>(as_int(v));
  return std::get<double>(v.data);
}

// Empty string when valid, otherwise the complaint.
std::string check_value(CommandName command, std::string_view arg, const Value& v) {
  if (command == CommandName::ImportFile && arg == "type") {
    const auto& s = std::get<std::string>(v.data);
    if (s != "WOS" && s != "CSV") return "import type must be \"WOS\" or \"CSV\"";
  }
  if (command == CommandName::ImportFile && (arg == "RPY" || arg == "PY")) {
    const auto& list = std::get<List>(v.data);
    if (as_int(list[0]) > as_int(list[1])) return "range has lo > hi";
  }
  if (command == CommandName::ImportFile && arg == "maxCR" && as_int(v) < 0) {
    return "maxCR must be non-negative";
  }
  if (command == CommandName::Cluster && arg == "threshold") {
    const double t = as_number(v);
    if (!(t >= 0.0 && t <= 1.0)) return "threshold must lie in [0, 1]";
  }
  if (command == CommandName::RemoveCR) {
    const auto& list = std::get<List>(v.data);
    if (as_int(list[0]) < 0 || as_int(list[1]) < 0) return "N_CR bounds must be non-negative";
    if (as_int(list[0]) > as_int(list[1])) return "N_CR range has lo > hi";
  }
  if (command == CommandName::ExportFile && arg == "type") {
    const auto& s = std::get<std::string>(v.data);
    if (s != "CSV_CR" && s != "CSV_GRAPH" && s != "SVG_GRAPH") {
      return "export type must be \"CSV_CR\", \"CSV_GRAPH\" or \"SVG_GRAPH\"";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { tok_ = lexer_.next(); }

  std::vector<Command> run() {
    std::vector<Command> out;
    while (tok_.type != Tok::End) out.push_back(command());
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ScriptError(ErrorKind::Syntax, message, tok_.line, tok_.column);
  }

  Token take(Tok type, const char* what) {
    if (tok_.type != type) {
      fail(std::string("expected ") + what +
           (tok_.type == Tok::End ? " before end of script" : ", found '" + tok_.text + "'"));
    }
    Token t = std::move(tok_);
    tok_ = lexer_.next();
    return t;
  }

  Command command() {
    const Token name = take(Tok::Ident, "a command name");
    const CommandSpec* spec = nullptr;
    for (const auto& s : schemas()) {
      if (to_string(s.name) == name.text) spec = &s;
    }
    if (!spec) {
      throw ScriptError(ErrorKind::UnknownCommand, "'" + name.text + "'", name.line, name.column);
    }
    Command cmd{spec->name, {}, name.line, name.column};
    take(Tok::LParen, "'('");
    if (tok_.type != Tok::RParen) {
      for (;;) {
        argument(*spec, cmd);
        if (tok_.type != Tok::Comma) break;
        take(Tok::Comma, "','");
      }
    }
    take(Tok::RParen, "')'");
    for (const auto& a : spec->args) {
      if (a.required && !cmd.args.contains(std::string(a.name))) {
        throw ScriptError(ErrorKind::MissingArgument,
                          std::string(to_string(spec->name)) + " needs '" + std::string(a.name) + "'",
                          name.line, name.column);
      }
    }
    return cmd;
  }

  void argument(const CommandSpec& spec, Command& cmd) {
    const Token name = take(Tok::Ident, "an argument name");
    const ArgSpec* arg = nullptr;
    for (const auto& a : spec.args) {
      if (a.name == name.text) arg = &a;
    }
    if (!arg) {
      throw ScriptError(ErrorKind::UnknownArgument,
                        "'" + name.text + "' for " + std::string(to_string(spec.name)), name.line,
                        name.column);
    }
    if (cmd.args.contains(name.text)) {
      throw ScriptError(ErrorKind::Syntax, "duplicate argument '" + name.text + "'", name.line,
                        name.column);
    }
    take(Tok::Colon, "':'");
    const std::size_t line = tok_.line;
    const std::size_t column = tok_.column;
    Value v = value();
    if (!has_type(v, arg->type)) {
      throw ScriptError(ErrorKind::TypeMismatch,
                        "'" + name.text + "' expects " + std::string(type_name(arg->type)), line,
                        column);
    }
    if (auto problem = check_value(spec.name, arg->name, v); !problem.empty()) {
      throw ScriptError(ErrorKind::InvalidValue, problem, line, column);
    }
    cmd.args.emplace(name.text, std::move(v));
  }

  Value value() {
    switch (tok_.type) {
      case Tok::String: return Value{take(Tok::String, "").text};
      case Tok::Integer: {
        const Token t = take(Tok::Integer, "");
        try {
          return Value{static_cast<std::int64_t>(std::stoll(t.text))};
        } catch (const std::exception&) {
          throw ScriptError(ErrorKind::Syntax, "integer out of range", t.line, t.column);
        }
      }
      case Tok::Real: {
        const Token t = take(Tok::Real, "");
        try {
          return Value{std::stod(t.text)};
        } catch (const std::exception&) {
          throw ScriptError(ErrorKind::Syntax, "number out of range", t.line, t.column);
        }
      }
      case Tok::Ident:
        if (tok_.text == "true" || tok_.text == "false") {
          return Value{take(Tok::Ident, "").text == "true"};
        }
        fail("expected a value, found '" + tok_.text + "'");
      case Tok::LBracket: {
        take(Tok::LBracket, "'['");
        List items;
        if (tok_.type != Tok::RBracket) {
          for (;;) {
            items.push_back(value());
            if (tok_.type != Tok::Comma) break;
            take(Tok::Comma, "','");
          }
        }
        take(Tok::RBracket, "']'");
        return Value{std::move(items)};
      }
      default:
        fail(tok_.type == Tok::End ? "expected a value before end of script"
                                   : "expected a value, found '" + tok_.text + "'");
    }
  }

  Lexer lexer_;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Printer

std::string print(const Value& v) {
  struct Visitor {
    std::string operator()(const std::string& s) const {
      std::string out = "\"";
      for (char c : s) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out.push_back(c);
        }
      }
      return out + "\"";
    }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      std::string out(buf);
      if (out.find_first_of(".e") == std::string::npos) out += ".0";
      return out;
    }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const List& list) const {
      std::string out = "[";
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ", ";
        out += print(list[i]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v.data);
}

// ---------------------------------------------------------------------------
// Execution

const Value* find_arg(const Command& cmd, std::string_view name) {
  const auto it = cmd.args.find(std::string(name));
  return it == cmd.args.end() ? nullptr : &it->second;
}

YearRange year_range_arg(const Command& cmd, std::string_view name) {
  const Value* v = find_arg(cmd, name);
  if (!v) return YearRange{};
  const auto& list = std::get<List>(v->data);
  const bool include_missing = list.size() == 3 && std::get<bool>(list[2].data);
  return YearRange(static_cast<int>(as_int(list[0])), static_cast<int>(as_int(list[1])),
                   include_missing);
}

bool bool_arg(const Command& cmd, std::string_view name, bool fallback) {
  const Value* v = find_arg(cmd, name);
  return v ? std::get<bool>(v->data) : fallback;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : base / p;
}

void require(bool condition, const Command& cmd, std::size_t index, const char* what) {
  if (!condition) {
    throw ScriptError(ErrorKind::State,
                      std::string(to_string(cmd.name)) + " requires " + what, index);
  }
}

void run_command(const Command& cmd, std::size_t index, AnalysisSession& session,
                 const ExecutionContext& context, OutputSink& sink) {
  switch (cmd.name) {
    case CommandName::ImportFile: {
      ImportConfig config;
      config.rpy_range = year_range_arg(cmd, "RPY");
      config.py_range = year_range_arg(cmd, "PY");
      if (const Value* v = find_arg(cmd, "maxCR")) {
        config.max_cr_per_record = static_cast<std::size_t>(as_int(*v));
      }
      const Value* type = find_arg(cmd, "type");
      const auto format =
          parse_input_format(type ? std::get<std::string>(type->data) : std::string("WOS"));
      const auto path = resolve(context.data_dir, std::get<std::string>(find_arg(cmd, "file")->data));
      session.corpus = load_corpus(path, format, config);
      session.occurrences = collect_occurrences(*session.corpus);
      session.clustering.reset();
      session.aggregates.reset();
      session.rpy_range = config.rpy_range;
      break;
    }
    case CommandName::Cluster: {
      require(session.corpus.has_value(), cmd, index, "a corpus (run importFile first)");
      ClusterConfig config;
      if (const Value* v = find_arg(cmd, "threshold")) config.threshold = as_number(*v);
      config.require_volume_match = bool_arg(cmd, "volume", config.require_volume_match);
      config.require_page_match = bool_arg(cmd, "page", config.require_page_match);
      config.require_doi_match = bool_arg(cmd, "DOI", config.require_doi_match);
      config.threads = context.threads;
      session.clustering = cluster(session.occurrences, config);
      session.aggregates.reset();
      break;
    }
    case CommandName::Merge:
      require(session.clustering.has_value(), cmd, index, "clusters (run cluster first)");
      session.aggregates = merge(*session.clustering);
      break;
    case CommandName::RemoveCR: {
      require(session.aggregates.has_value(), cmd, index,
              "merged references (run importFile, cluster and merge first)");
      const auto& range = std::get<List>(find_arg(cmd, "N_CR")->data);
      session.aggregates = remove_cr(std::move(*session.aggregates),
                                     static_cast<std::size_t>(as_int(range[0])),
                                     static_cast<std::size_t>(as_int(range[1])));
      break;
    }
    case CommandName::ExportFile: {
      require(session.aggregates.has_value(), cmd, index,
              "merged references (run importFile, cluster and merge first)");
      const auto& type = std::get<std::string>(find_arg(cmd, "type")->data);
      const auto path = resolve(context.out_dir, std::get<std::string>(find_arg(cmd, "file")->data));
      if (type == "CSV_CR") {
        sink.write(path, format_cr_csv(*session.aggregates));
      } else {
        const auto spectrogram =
            analyze_spectrogram(*session.aggregates, session.rpy_range, context.window);
        if (type == "CSV_GRAPH") {
          sink.write(path, format_graph_csv(spectrogram));
        } else {
          const PlotSeries series{path.stem().string(), spectrogram};
          SvgOptions options;
          options.window = context.window;
          sink.write(path, render_svg(std::span(&series, 1), options));
        }
      }
      break;
    }
  }
}

}  // namespace

std::vector<Command> parse_script(std::string_view text) { return Parser(text).run(); }

std::string to_script(const Command& command) {
  std::string out(to_string(command.name));
  out += '(';
  bool first = true;
  for (const auto& [name, value] : command.args) {
    if (!first) out += ", ";
    first = false;
    out += name + ": " + print(value);
  }
  return out + ")";
}

std::string to_script(std::span<const Command> commands) {
  std::string out;
  for (const auto& c : commands) out += to_script(c) + "\n";
  return out;
}

void FileSink::write(const std::filesystem::path& path, std::string bytes) {
  write_file(path, bytes);
}

void BufferedSink::write(const std::filesystem::path& path, std::string bytes) {
  staged_.emplace_back(path, std::move(bytes));
}

void BufferedSink::commit() const {
  for (const auto& [path, bytes] : staged_) write_file(path, bytes);
}

AnalysisSession execute(std::span<const Command> commands, AnalysisSession session,
                        const ExecutionContext& context) {
  FileSink direct;
  OutputSink& sink = context.sink ? *context.sink : direct;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto& cmd = commands[i];
    try {
      run_command(cmd, i + 1, session, context, sink);
    } catch (const ScriptError&) {
      throw;
    } catch (Error& e) {
      e.add_context("command " + std::to_string(i + 1) + " (" + std::string(to_string(cmd.name)) +
                    ")");
      throw;
    }
    session.history.push_back(to_script(cmd));
  }
  return session;
}

}  // namespace rpys::script
