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

#include "disinfox/timestamp.hpp"

#include <cstdio>

namespace disinfox {

namespace {

using namespace std::chrono;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads exactly `n` digits at `pos`, advancing it.
std::optional<int> read_fixed(std::string_view s, std::size_t& pos, std::size_t n) {
  if (pos + n > s.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char c = s[pos + i];
    if (!is_digit(c)) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  pos += n;
  return value;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c) return false;
  ++pos;
  return true;
}

std::optional<year_month_day> read_date(std::string_view s, std::size_t& pos) {
  const auto y = read_fixed(s, pos, 4);
  if (!y || !expect(s, pos, '-')) return std::nullopt;
  const auto m = read_fixed(s, pos, 2);
  if (!m || !expect(s, pos, '-')) return std::nullopt;
  const auto d = read_fixed(s, pos, 2);
  if (!d) return std::nullopt;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

}  // namespace

Timestamp Timestamp::now() {
  return Timestamp{time_point_cast<duration>(system_clock::now())};
}

Timestamp Timestamp::from_date(year_month_day date) {
  return Timestamp{time_point_cast<duration>(sys_days{date})};
}

std::optional<Timestamp> Timestamp::parse(std::string_view s) {
  std::size_t pos = 0;
  const auto date = read_date(s, pos);
  if (!date) return std::nullopt;
  if (pos >= s.size() || (s[pos] != 'T' && s[pos] != 't')) return std::nullopt;
  ++pos;
  const auto hh = read_fixed(s, pos, 2);
  if (!hh || !expect(s, pos, ':')) return std::nullopt;
  const auto mm = read_fixed(s, pos, 2);
  if (!mm || !expect(s, pos, ':')) return std::nullopt;
  const auto ss = read_fixed(s, pos, 2);
  if (!ss) return std::nullopt;
  if (*hh > 23 || *mm > 59 || *ss > 60) return std::nullopt;

  std::int64_t frac_us = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && is_digit(s[pos])) {
      if (++digits > 6) return std::nullopt;
      frac_us = frac_us * 10 + (s[pos] - '0');
      ++pos;
    }
    if (digits == 0) return std::nullopt;
    for (; digits < 6; ++digits) frac_us *= 10;
  }

  // Some query-string decoders turn '+' into a space.
  minutes offset{0};
  if (pos >= s.size()) return std::nullopt;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-' || s[pos] == ' ') {
    const int sign = s[pos] == '-' ? -1 : 1;
    ++pos;
    const auto oh = read_fixed(s, pos, 2);
    if (!oh || !expect(s, pos, ':')) return std::nullopt;
    const auto om = read_fixed(s, pos, 2);
    if (!om || *oh > 23 || *om > 59) return std::nullopt;
    offset = minutes{sign * (*oh * 60 + *om)};
  } else {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;

  // Leap seconds collapse onto the following second.
  const auto tp = time_point_cast<duration>(sys_days{*date}) + hours{*hh} + minutes{*mm} +
                  seconds{*ss} + duration{frac_us} - offset;
  return Timestamp{tp};
}

std::string Timestamp::to_string() const {
  const auto days = floor<std::chrono::days>(tp_);
  const year_month_day ymd{days};
  const hh_mm_ss<duration> tod{tp_ - days};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%06lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()), static_cast<long long>(tod.subseconds().count()));
  return buf;
}

year_month_day Timestamp::date() const { return year_month_day{floor<std::chrono::days>(tp_)}; }

std::optional<year_month_day> parse_date(std::string_view text) {
  std::size_t pos = 0;
  auto date = read_date(text, pos);
  if (!date || pos != text.size()) return std::nullopt;
  return date;
}

std::string format_date(year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

}  // namespace disinfox
