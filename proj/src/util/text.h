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

#ifndef KGCR_UTIL_TEXT_H_
#define KGCR_UTIL_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kgcr {

std::string_view Trim(std::string_view text);

// Splits on every occurrence of `delimiter`; keeps empty fields.
std::vector<std::string_view> Split(std::string_view text, char delimiter);

// Comma-separated list with surrounding whitespace trimmed and empty items
// dropped.
std::vector<std::string> SplitList(std::string_view text);

std::string Join(const std::vector<std::string>& items, std::string_view sep);

// Shortest representation that parses back to the same double.
std::string FormatDouble(double value);

double ParseDouble(std::string_view text, std::string_view what);
uint64_t ParseUint(std::string_view text, std::string_view what);

std::string ToLower(std::string_view text);

}  // namespace kgcr

#endif  // KGCR_UTIL_TEXT_H_
