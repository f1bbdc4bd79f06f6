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

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace disinfox {

/// Machine-readable failure classes shared by every module. The string
/// form (see to_string) is part of the HTTP error contract and must not
/// change between releases.
enum class Errc {
  invalid_type,
  invalid_argument,
  relationship_constraint,
  parse_error,
  schema_error,
  empty_catalog,
  unknown_technique,
  unknown_country,
  validation,
  not_found,
  wrong_type,
  duplicate_username,
  bad_credentials,
  empty_import,
  encoding,
  io,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_type: return "invalid-type";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::relationship_constraint: return "relationship-constraint";
    case Errc::parse_error: return "parse-error";
    case Errc::schema_error: return "schema-error";
    case Errc::empty_catalog: return "empty-catalog";
    case Errc::unknown_technique: return "unknown-technique";
    case Errc::unknown_country: return "unknown-country";
    case Errc::validation: return "validation-error";
    case Errc::not_found: return "not-found";
    case Errc::wrong_type: return "wrong-type";
    case Errc::duplicate_username: return "duplicate-username";
    case Errc::bad_credentials: return "bad-credentials";
    case Errc::empty_import: return "empty-import";
    case Errc::encoding: return "encoding-error";
    case Errc::io: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, nlohmann::json details = nullptr)
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  Errc code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

 private:
  Errc code_;
  nlohmann::json details_;
};

}  // namespace disinfox
