// Copyright 2026 The relgraph Authors.
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

#include "cli_runner.h"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "test_paths.h"

namespace relgraph::testing {

namespace fs = std::filesystem;

namespace {

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

int RunCli(const fs::path& workdir, const std::vector<std::string>& args) {
  std::string cmd = "cd " + Quote(workdir.string()) + " && " + Quote(kCliPath.string());
  for (const auto& a : args) cmd += " " + Quote(a);
  cmd += " >> cli.log 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string RunSmokePipeline(const fs::path& workdir) {
  fs::create_directories(workdir);
  const fs::path news = kTestDataDir / "news";
  const std::vector<std::vector<std::string>> steps = {
      {"ingest", news.string(), "-o", "corpus.jsonl", "--domain", "news"},
      {"augment", "-i", "corpus.jsonl", "-o", "corpus.augmented.jsonl", "--offline",
       "--fixtures", (news / "fixtures.json").string(), "--cache-dir", "cache"},
      {"train", "-c", "corpus.augmented.jsonl", "-o", "runs/smoke", "--encoder",
       "bert-base-cased", "--fusion", "none", "--domain", "news", "--epochs", "1"},
      {"eval", "-m", "runs/smoke", "-c", "corpus.augmented.jsonl", "--split", "test"},
      {"report", "runs", "-o", "report", "--domains", "news", "--fusions", "none"},
  };
  for (const auto& step : steps) {
    const int code = RunCli(workdir, step);
    if (code != 0) return step.front() + " exited with " + std::to_string(code);
  }
  return {};
}

std::map<std::string, std::string> SnapshotOutputs(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name == "cli.log" || name.ends_with(".meta.json")) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    out[fs::relative(entry.path(), root).string()] = buf.str();
  }
  return out;
}

}  // namespace relgraph::testing
