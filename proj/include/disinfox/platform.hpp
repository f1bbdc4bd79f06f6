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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disinfox/disarm.hpp"
#include "disinfox/incident.hpp"
#include "disinfox/store.hpp"

namespace disinfox {

/// Runtime settings shared by the server binaries. Every field has an
/// environment key of the same name (upper-case spelling also accepted).
struct PlatformConfig {
  std::string bind_addr = "127.0.0.1:8080";
  std::string public_bind_addr = "127.0.0.1:8081";
  /// Empty selects the in-memory backend.
  std::filesystem::path data_dir;
  std::filesystem::path catalog_path;
  bool seed_on_start = false;
  std::filesystem::path seed_path;
  /// Directory served at / by the internal API server, if set.
  std::filesystem::path static_dir;
  /// Feed responses above this many objects are refused with 413.
  std::size_t max_feed_objects = 50000;

  using Lookup = std::function<std::optional<std::string>(std::string_view key)>;
  /// Reads keys through `lookup`; unset keys keep their defaults.
  static PlatformConfig from_lookup(const Lookup& lookup, PlatformConfig defaults);
  static PlatformConfig from_environment(PlatformConfig defaults);
};

struct HostPort {
  std::string host;
  int port = 0;
};

/// "host:port"; throws invalid-argument.
HostPort parse_bind_addr(std::string_view text);

struct SubmitResult {
  std::string intrusion_set_id;
  /// The incident's objects as stored (with their stored `modified`).
  std::vector<stix::StixObject> objects;
  store::UpsertReport upsert;
};

struct ImportReport {
  std::size_t accepted = 0;
  std::vector<incident::RowError> rejected;
  std::size_t inserted = 0;
  std::size_t updated = 0;
  std::vector<std::string> unreachable;
  std::vector<std::string> intrusion_set_ids;
};

/// The catalog, object store and account store behind both HTTP
/// surfaces, plus the incident workflows that span them.
class Platform {
 public:
  Platform(disarm::Catalog catalog, std::shared_ptr<store::StorageBackend> backend,
           crypto::ScryptParams scrypt = {}, Clock clock = &Timestamp::now);

  const disarm::Catalog& catalog() const { return catalog_; }
  store::ObjectStore& objects() { return objects_; }
  const store::ObjectStore& objects() const { return objects_; }
  store::AccountStore& accounts() { return accounts_; }

  /// Transforms and stores one incident. Throws the transformation
  /// errors (unknown-technique, unknown-country, validation-error).
  SubmitResult submit_incident(const incident::IncidentSubmission& submission, std::string_view uploader);

  /// Valid rows are stored together; invalid rows are reported with
  /// their line number. Throws schema-error or encoding-error for
  /// file-level problems.
  ImportReport import_csv(std::string_view csv_bytes, std::string_view uploader);

  /// Re-derives every intrusion-set in the bundle through the catalog;
  /// `row` in rejections is the object index. Throws parse-error,
  /// schema-error or empty-import.
  ImportReport import_bundle(std::string_view bundle_bytes, std::string_view uploader);

  /// Objects of one incident as an exportable bundle whose id is derived
  /// from the content, so repeated exports serialize identically.
  stix::Bundle incident_bundle(std::string_view intrusion_set_id) const;

 private:
  Timestamp now() const { return clock_(); }
  ImportReport commit_graphs(std::vector<std::pair<std::size_t, incident::IncidentSubmission>> submissions,
                             ImportReport report, std::string_view uploader);

  disarm::Catalog catalog_;
  Clock clock_;
  store::ObjectStore objects_;
  store::AccountStore accounts_;
};

}  // namespace disinfox
