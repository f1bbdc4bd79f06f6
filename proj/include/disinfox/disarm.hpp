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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "disinfox/stix.hpp"
#include "disinfox/timestamp.hpp"

namespace disinfox::disarm {

/// Group name for techniques that declare no kill-chain phase.
inline constexpr std::string_view kUnphased = "(unphased)";

struct Technique {
  stix::StixObject object;
  /// Canonical code, e.g. `T0114` or `T0114.001`.
  std::string external_id;
  std::string display_name;
  std::vector<std::string> tactic_phases;
};

struct LoadReport {
  std::size_t indexed = 0;
  std::size_t skipped_without_id = 0;
  /// "name: kept T.., dropped T.." entries. The first technique with a
  /// given normalized name wins; later ones are left out of the catalog.
  std::vector<std::string> name_collisions;
  std::vector<std::string> duplicate_ids;

  std::size_t skipped() const { return skipped_without_id + name_collisions.size() + duplicate_ids.size(); }
};

/// Whether `code` looks like a DISARM technique code (`T` + digits,
/// optional `.digits`).
bool is_technique_code(std::string_view code);

/// The DISARM external_id of an attack-pattern, if it carries one.
std::optional<std::string> disarm_external_id(const stix::StixObject& object);

/// Immutable index over the DISARM attack-pattern bundle.
class Catalog {
 public:
  using TacticGroups = std::vector<std::pair<std::string, std::vector<const Technique*>>>;

  /// Throws parse/schema errors from parse_bundle, or empty-catalog
  /// when nothing was indexed.
  static Catalog load(std::string_view bundle_bytes, Timestamp loaded_at = Timestamp::now());
  static Catalog load_file(const std::filesystem::path& path);

  const Technique* find_by_external_id(std::string_view code) const;
  const Technique* find_by_name(std::string_view name) const;
  /// External id first, then name.
  const Technique* resolve(std::string_view ref) const;

  /// Phase order follows first appearance in the source bundle; within
  /// a phase techniques are sorted by external id.
  TacticGroups list_by_tactic() const;

  /// Techniques in source order.
  const std::vector<Technique>& techniques() const { return techniques_; }
  std::size_t size() const { return techniques_.size(); }
  const std::string& version_label() const { return version_label_; }
  Timestamp loaded_at() const { return loaded_at_; }
  const LoadReport& load_report() const { return report_; }

 private:
  Catalog() = default;

  std::vector<Technique> techniques_;
  std::unordered_map<std::string, std::size_t> by_external_id_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::vector<std::string> phase_order_;
  std::string version_label_;
  Timestamp loaded_at_;
  LoadReport report_;
};

}  // namespace disinfox::disarm
