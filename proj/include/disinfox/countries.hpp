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

#include <span>
#include <string_view>

namespace disinfox {

struct Country {
  std::string_view alpha2;
  std::string_view name;
};

/// Every ISO 3166-1 entry, ordered by alpha-2 code.
std::span<const Country> all_countries();

/// Resolves a display name, a common alias ("USA", "Russian Federation")
/// or an alpha-2 code, ignoring case and surrounding whitespace.
const Country* find_country(std::string_view name_or_code);

}  // namespace disinfox
