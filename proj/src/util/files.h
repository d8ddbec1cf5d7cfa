// Copyright 2026 The kgcr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KGCR_UTIL_FILES_H_
#define KGCR_UTIL_FILES_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace kgcr {

std::string ReadFile(const std::filesystem::path& path);

// Creates parent directories as needed.
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Lowercase hex SHA-256 of the file contents.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(std::string_view data);

}  // namespace kgcr

#endif  // KGCR_UTIL_FILES_H_
