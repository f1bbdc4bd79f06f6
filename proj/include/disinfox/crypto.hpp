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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace disinfox::crypto {

using Uuid = std::array<std::uint8_t, 16>;

std::vector<std::uint8_t> random_bytes(std::size_t n);
std::string to_hex(std::span<const std::uint8_t> bytes);

std::array<std::uint8_t, 20> sha1(std::string_view data);
std::array<std::uint8_t, 32> sha256(std::string_view data);
std::string sha256_hex(std::string_view data);

/// RFC 4122 version 4 (random).
Uuid uuid_v4();
/// RFC 4122 version 5 (SHA-1 name-based) within `ns`.
Uuid uuid_v5(const Uuid& ns, std::string_view name);
std::string format_uuid(const Uuid& u);
/// Parses the canonical 8-4-4-4-12 hex form.
bool parse_uuid(std::string_view text, Uuid& out);

bool constant_time_equal(std::string_view a, std::string_view b);

struct ScryptParams {
  std::uint64_t n = 1u << 15;
  std::uint32_t r = 8;
  std::uint32_t p = 1;
};

/// Salted scrypt digest encoded as `scrypt$N$r$p$<salt hex>$<hash hex>`.
std::string hash_password(std::string_view password, ScryptParams params = {});
bool verify_password(std::string_view password, std::string_view encoded);

}  // namespace disinfox::crypto
