// Copyright 2026 The qvtlab Authors
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

#include <filesystem>
#include <string>

namespace qvt::cli {

/// Whole-file read; throws DataError if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Write to a sibling temporary file and rename it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qvt::cli
