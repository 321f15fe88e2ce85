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

#ifndef RELGRAPH_FILEIO_H_
#define RELGRAPH_FILEIO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace relgraph {

// Writes `content` to a sibling temp file and renames it over `path`.
// Creates missing parent directories. Throws std::runtime_error on failure.
void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view content);

// Whole-file read; nullopt when the file cannot be opened.
std::optional<std::string> ReadFile(const std::filesystem::path& path);

}  // namespace relgraph

#endif  // RELGRAPH_FILEIO_H_
