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

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace disinfox {

/// UTC instant with microsecond resolution.
///
/// Always rendered as RFC 3339 with six fractional digits and a `Z`
/// suffix, e.g. `2022-04-01T00:00:00.000000Z`. Parsing is lenient: zero
/// to six fractional digits and numeric UTC offsets are accepted and
/// normalized.
class Timestamp {
 public:
  using duration = std::chrono::microseconds;
  using time_point = std::chrono::sys_time<duration>;

  constexpr Timestamp() = default;
  constexpr explicit Timestamp(time_point tp) : tp_(tp) {}

  static constexpr Timestamp epoch() { return Timestamp{}; }
  static Timestamp now();
  static constexpr Timestamp from_micros(std::int64_t us) { return Timestamp{time_point{duration{us}}}; }
  /// Midnight UTC of the given calendar date.
  static Timestamp from_date(std::chrono::year_month_day date);

  static std::optional<Timestamp> parse(std::string_view text);

  std::string to_string() const;
  std::chrono::year_month_day date() const;

  constexpr std::int64_t micros() const { return tp_.time_since_epoch().count(); }
  constexpr time_point time() const { return tp_; }
  constexpr Timestamp plus(duration d) const { return Timestamp{tp_ + d}; }
  /// Smallest representable step; used to force strict ordering.
  constexpr Timestamp next_tick() const { return plus(duration{1}); }

  friend constexpr auto operator<=>(const Timestamp&, const Timestamp&) = default;

 private:
  time_point tp_{};
};

using Clock = std::function<Timestamp()>;

/// Parses a strict `YYYY-MM-DD` calendar date.
std::optional<std::chrono::year_month_day> parse_date(std::string_view text);
std::string format_date(std::chrono::year_month_day date);

}  // namespace disinfox
