// Copyright 2026 The disinfox-cpp Authors
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
#include <string>
#include <string_view>
#include <vector>

namespace disinfox::text {

std::string_view trim(std::string_view s);

/// Trims and collapses interior whitespace runs to one space.
std::string squash(std::string_view s);

/// ASCII lowercase; bytes >= 0x80 pass through unchanged.
std::string lower(std::string_view s);
std::string upper(std::string_view s);

/// Matching key for free-text names: squash + lower.
inline std::string normalize_key(std::string_view s) { return lower(squash(s)); }

std::vector<std::string> split(std::string_view s, char sep);

bool is_valid_utf8(std::string_view s);

/// Number of UTF-8 code points (input assumed valid).
std::size_t utf8_length(std::string_view s);

/// Shortens `s` to at most `max_chars` code points, cutting at the last
/// whitespace before the limit when one exists, and appends an ellipsis.
/// Strings within the limit are returned unchanged.
std::string excerpt(std::string_view s, std::size_t max_chars);

bool iequals(std::string_view a, std::string_view b);
bool icontains(std::string_view haystack, std::string_view needle);

}  // namespace disinfox::text
