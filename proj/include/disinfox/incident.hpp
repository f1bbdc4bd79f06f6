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
#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "disinfox/disarm.hpp"
#include "disinfox/stix.hpp"
#include "disinfox/timestamp.hpp"

namespace disinfox::incident {

enum class SourceKind { form, csv, bundle_import };

std::string_view to_string(SourceKind kind);

/// An analyst's incident before transformation.
struct IncidentSubmission {
  std::string name;
  std::string description;
  std::chrono::year_month_day first_seen{};
  std::vector<std::string> target_countries;
  std::vector<std::string> threat_actors;
  /// DISARM codes or technique names.
  std::vector<std::string> technique_refs;
  SourceKind source_kind = SourceKind::form;

  friend bool operator==(const IncidentSubmission&, const IncidentSubmission&) = default;
};

/// Squashes the name, trims the description, drops blank list entries
/// and de-duplicates lists by normalized key (first spelling wins).
/// Throws validation-error for an empty name or an invalid date.
IncidentSubmission normalized(IncidentSubmission submission);

/// Reads the JSON form payload: name, description, first_seen
/// (YYYY-MM-DD), target_countries, threat_actors, techniques.
IncidentSubmission submission_from_json(const nlohmann::json& body, SourceKind kind = SourceKind::form);
nlohmann::json submission_to_json(const IncidentSubmission& submission);

/// One incident as STIX objects; every relationship starts at
/// intrusion_set.
struct IncidentGraph {
  stix::StixObject intrusion_set;
  std::vector<stix::StixObject> actors;
  std::vector<stix::StixObject> locations;
  std::vector<stix::StixObject> techniques;
  std::vector<stix::StixObject> relationships;

  std::size_t sdo_count() const { return 1 + actors.size() + locations.size() + techniques.size(); }
  std::size_t sro_count() const { return relationships.size(); }
  /// intrusion-set, actors, locations, techniques, relationships.
  std::vector<stix::StixObject> objects() const;
};

/// Throws unknown-technique (details.unresolved lists every unresolved
/// ref), unknown-country (details.unresolved) or validation-error.
IncidentGraph build_incident_graph(const IncidentSubmission& submission, const disarm::Catalog& catalog,
                                   Timestamp at);

stix::Bundle graph_to_bundle(const IncidentGraph& graph);

struct RowError {
  std::size_t row;
  std::string code;
  std::string reason;
};

// ---- CSV template -------------------------------------------------------

inline constexpr std::array<std::string_view, 6> kCsvColumns = {
    "name", "description", "first_seen", "target_countries", "threat_actors", "techniques"};

struct CsvRow {
  /// 1-based line number where the record starts (the header is line 1).
  std::size_t row;
  std::variant<IncidentSubmission, RowError> result;
};

/// Throws schema-error (details.missing / details.unexpected) when the
/// header differs from the template, encoding-error for non-UTF-8 input.
std::vector<CsvRow> parse_csv_submissions(std::string_view csv_bytes);

std::string csv_header();
/// One template row, quoted as needed, without trailing newline.
std::string to_csv_row(const IncidentSubmission& submission);

// ---- STIX bundle import -------------------------------------------------

struct ImportedIncident {
  std::size_t object_index;
  std::string intrusion_set_id;
  IncidentSubmission submission;
};

struct BundleImport {
  std::vector<ImportedIncident> incidents;
  /// Intrusion-sets that could not become submissions; `row` is the
  /// object's index in the bundle.
  std::vector<RowError> rejected;
  /// Ids of objects not reachable from any intrusion-set.
  std::vector<std::string> unreachable;
};

/// Throws empty-import when the bundle holds no intrusion-set.
BundleImport parse_bundle_import(const stix::Bundle& bundle);

}  // namespace disinfox::incident
