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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "rpys/errors.hpp"
#include "rpys/script.hpp"

namespace rpys::script {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string full_rpys_script() {
  return read_file(fs::path(testing::data_dir()) / "full_rpys.script");
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_script(text);
  } catch (const ScriptError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::Syntax;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("rpys_script_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(ParseScript, FullRpysScriptHasSixCommands) {
  const auto cmds = parse_script(full_rpys_script());
  ASSERT_EQ(cmds.size(), 6u);
  EXPECT_EQ(cmds[0].name, CommandName::ImportFile);
  EXPECT_EQ(cmds[1].name, CommandName::Cluster);
  EXPECT_EQ(cmds[2].name, CommandName::Merge);
  EXPECT_EQ(cmds[3].name, CommandName::RemoveCR);
  EXPECT_EQ(cmds[4].name, CommandName::ExportFile);
  EXPECT_EQ(cmds[5].name, CommandName::ExportFile);

  const auto& import = cmds[0].args;
  EXPECT_EQ(std::get<std::string>(import.at("file").data), "citing_papers.wos.txt");
  EXPECT_EQ(std::get<std::string>(import.at("type").data), "WOS");
  const auto& rpy = std::get<List>(import.at("RPY").data);
  ASSERT_EQ(rpy.size(), 3u);
  EXPECT_EQ(std::get<std::int64_t>(rpy[0].data), 1950);
  EXPECT_EQ(std::get<std::int64_t>(rpy[1].data), 1990);
  EXPECT_EQ(std::get<bool>(rpy[2].data), false);
  EXPECT_EQ(std::get<std::int64_t>(import.at("maxCR").data), 0);
  EXPECT_DOUBLE_EQ(std::get<double>(cmds[1].args.at("threshold").data), 0.75);
  EXPECT_TRUE(cmds[2].args.empty());
  EXPECT_EQ(cmds[3].line, 5u);  // import spans two lines
  EXPECT_EQ(std::get<std::string>(cmds[5].args.at("type").data), "CSV_GRAPH");
}

TEST(ParseScript, EmptyAndBlank) {
  EXPECT_TRUE(parse_script("").empty());
  EXPECT_TRUE(parse_script("  \n\t\n").empty());
}

TEST(ParseScript, ErrorKinds) {
  EXPECT_EQ(kind_of("cluster(threshold: \"high\")"), ErrorKind::TypeMismatch);
  EXPECT_EQ(kind_of("cluster(volume: 1)"), ErrorKind::TypeMismatch);
  EXPECT_EQ(kind_of("importFile(file: 3)"), ErrorKind::TypeMismatch);
  EXPECT_EQ(kind_of("removeCR(N_CR: [0, 99, true])"), ErrorKind::TypeMismatch);
  EXPECT_EQ(kind_of("frobnicate()"), ErrorKind::UnknownCommand);
  EXPECT_EQ(kind_of("cluster(bogus: 1)"), ErrorKind::UnknownArgument);
  EXPECT_EQ(kind_of("merge(x: 1)"), ErrorKind::UnknownArgument);
  EXPECT_EQ(kind_of("importFile(type: \"WOS\")"), ErrorKind::MissingArgument);
  EXPECT_EQ(kind_of("exportFile(file: \"a.csv\")"), ErrorKind::MissingArgument);
  EXPECT_EQ(kind_of("removeCR()"), ErrorKind::MissingArgument);
  EXPECT_EQ(kind_of("cluster(threshold: 1.5)"), ErrorKind::InvalidValue);
  EXPECT_EQ(kind_of("removeCR(N_CR: [99, 0])"), ErrorKind::InvalidValue);
  EXPECT_EQ(kind_of("removeCR(N_CR: [-1, 5])"), ErrorKind::InvalidValue);
  EXPECT_EQ(kind_of("importFile(file: \"x\", type: \"RIS\")"), ErrorKind::InvalidValue);
  EXPECT_EQ(kind_of("importFile(file: \"x\", RPY: [1990, 1950, false])"), ErrorKind::InvalidValue);
  EXPECT_EQ(kind_of("importFile(file: \"x\", maxCR: -1)"), ErrorKind::InvalidValue);
  EXPECT_EQ(kind_of("exportFile(file: \"x\", type: \"XLSX\")"), ErrorKind::InvalidValue);
  EXPECT_EQ(kind_of("merge("), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("merge() merge"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("cluster(threshold: 0.5, threshold: 0.6)"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("importFile(file: \"unterminated)"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("merge() @"), ErrorKind::Syntax);
}

TEST(ParseScript, ErrorNamesLineAndColumn) {
  try {
    parse_script("merge()\nmerge()\ncluster(threshold: \"high\")\n");
    FAIL();
  } catch (const ScriptError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 20u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ParseScript, LiteralForms) {
  const auto cmds = parse_script(
      "importFile(file: \"a\\\"b\\\\c\\n\", RPY: [1950, 1990], PY: [1988, 2017, true])\n"
      "cluster(threshold: 1, volume: false)\ncluster(threshold: 7.5e-1)\n");
  ASSERT_EQ(cmds.size(), 3u);
  EXPECT_EQ(std::get<std::string>(cmds[0].args.at("file").data), "a\"b\\c\n");
  EXPECT_EQ(std::get<std::int64_t>(cmds[1].args.at("threshold").data), 1);
  EXPECT_DOUBLE_EQ(std::get<double>(cmds[2].args.at("threshold").data), 0.75);
}

TEST(ToScript, RoundTrip) {
  const auto cmds = parse_script(full_rpys_script());
  const auto printed = to_script(cmds);
  const auto again = parse_script(printed);
  EXPECT_EQ(again, cmds);
  EXPECT_EQ(to_script(again), printed);
}

TEST(ToScript, RoundTripRandomCommands) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  std::uniform_int_distribution<int> y(1500, 2100);
  std::bernoulli_distribution b(0.5);
  for (int i = 0; i < 200; ++i) {
    const int lo = y(rng);
    const int hi = std::max(lo, y(rng));
    std::string text = "importFile(file: \"f" + std::to_string(i) + ".txt\", RPY: [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + ", " +
                       (b(rng) ? "true" : "false") + "])\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", t(rng));
    text += std::string("cluster(threshold: ") + buf + ", page: " + (b(rng) ? "true" : "false") +
            ")\nmerge()\n";
    const auto cmds = parse_script(text);
    EXPECT_EQ(parse_script(to_script(cmds)), cmds) << text;
  }
}

TEST(Execute, StateErrors) {
  auto state_error_at = [](const std::string& text) -> std::size_t {
    const auto cmds = parse_script(text);
    try {
      execute(cmds, {}, ExecutionContext{});
    } catch (const ScriptError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::State);
      return e.command_index();
    }
    return 0;
  };
  EXPECT_EQ(state_error_at("removeCR(N_CR: [0, 99])"), 1u);
  EXPECT_EQ(state_error_at("merge()"), 1u);
  EXPECT_EQ(state_error_at("cluster()"), 1u);
  EXPECT_EQ(state_error_at("exportFile(file: \"x.csv\", type: \"CSV_CR\")"), 1u);
}

TEST(Execute, MergeWithoutClusterIsAnError) {
  const fs::path data = testing::data_dir();
  const auto cmds = parse_script("importFile(file: \"corpus100.wos.txt\")\nmerge()\n");
  ExecutionContext ctx;
  ctx.data_dir = data;
  try {
    execute(cmds, {}, ctx);
    FAIL();
  } catch (const ScriptError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::State);
    EXPECT_EQ(e.command_index(), 2u);
  }
}

TEST(Execute, ImportOnly) {
  const auto cmds = parse_script("importFile(file: \"corpus100.wos.txt\", type: \"WOS\")");
  ExecutionContext ctx;
  ctx.data_dir = testing::data_dir();
  const auto session = execute(cmds, {}, ctx);
  ASSERT_TRUE(session.corpus.has_value());
  EXPECT_EQ(session.corpus->size(), 100u);
  EXPECT_FALSE(session.clustering.has_value());
  EXPECT_FALSE(session.aggregates.has_value());
  ASSERT_EQ(session.history.size(), 1u);
}

TEST(Execute, MissingInputIsIoErrorWithContext) {
  const auto cmds = parse_script("importFile(file: \"no_such_file.txt\")");
  ExecutionContext ctx;
  ctx.data_dir = testing::data_dir();
  try {
    execute(cmds, {}, ctx);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("command 1 (importFile)"), std::string::npos);
  }
}

TEST(Execute, FullRpysScriptMatchesGoldenAndIsDeterministic) {
  const auto cmds = parse_script(full_rpys_script());
  TempDir out1, out2;
  for (const auto* out : {&out1, &out2}) {
    ExecutionContext ctx;
    ctx.data_dir = testing::data_dir();
    ctx.out_dir = out->path();
    const auto session = execute(cmds, {}, ctx);
    EXPECT_EQ(session.history.size(), 6u);
  }
  const fs::path golden = fs::path(testing::data_dir()) / "golden";
  for (const char* name : {"full_rpys_CR.csv", "full_rpys_GRAPH.csv"}) {
    const auto a = read_file(out1.path() / name);
    EXPECT_FALSE(a.empty()) << name;
    EXPECT_EQ(a, read_file(out2.path() / name)) << name;
    EXPECT_EQ(a, read_file(golden / name)) << name;
  }
}

TEST(Execute, BufferedSinkStagesUntilCommit) {
  const auto cmds = parse_script(
      "importFile(file: \"corpus100.wos.txt\")\ncluster()\nmerge()\n"
      "exportFile(file: \"a.csv\", type: \"CSV_CR\")\n"
      "exportFile(file: \"g.svg\", type: \"SVG_GRAPH\")\n");
  TempDir out;
  BufferedSink sink;
  ExecutionContext ctx;
  ctx.data_dir = testing::data_dir();
  ctx.out_dir = out.path();
  ctx.sink = &sink;
  execute(cmds, {}, ctx);
  ASSERT_EQ(sink.staged().size(), 2u);
  EXPECT_FALSE(fs::exists(out.path() / "a.csv"));
  sink.commit();
  EXPECT_TRUE(fs::exists(out.path() / "a.csv"));
  EXPECT_NE(read_file(out.path() / "g.svg").find("<svg"), std::string::npos);
}

TEST(Execute, ThresholdArgumentReachesClustering) {
  const auto loose = parse_script("importFile(file: \"corpus100.wos.txt\")\ncluster(threshold: 0.0, volume: false, page: false)\nmerge()");
  const auto strict = parse_script("importFile(file: \"corpus100.wos.txt\")\ncluster(threshold: 1.0)\nmerge()");
  ExecutionContext ctx;
  ctx.data_dir = testing::data_dir();
  const auto a = execute(loose, {}, ctx);
  const auto b = execute(strict, {}, ctx);
  EXPECT_LT(a.aggregates->size(), b.aggregates->size());
}

}  // namespace
}  // namespace rpys::script
