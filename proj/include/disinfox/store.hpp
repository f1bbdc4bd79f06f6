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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "disinfox/crypto.hpp"
#include "disinfox/incident.hpp"
#include "disinfox/stix.hpp"
#include "disinfox/timestamp.hpp"

namespace disinfox::store {

/// Uploader marker for objects written by the platform itself.
inline constexpr std::string_view kSystemUploader = "system";

struct StoredObject {
  stix::StixObject object;
  /// Parsed from object.modified; the feed cursor compares against it.
  Timestamp modified;
  Timestamp stored_at;
  std::string uploader;
};

enum class Role { viewer, reporter, admin };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

struct UserAccount {
  std::string user_id;
  std::string username;
  std::string password_digest;
  Role role = Role::reporter;
  std::set<std::string> favorites;
  Timestamp created_at;
};

struct ApiKey {
  std::string key_id;
  std::string owner;
  std::string secret_digest;
  std::string label;
  Timestamp created_at;
  bool revoked = false;
};

struct AccountsState {
  std::vector<UserAccount> users;
  std::vector<ApiKey> keys;
};

/// Persistence boundary. The default implementation is an embedded
/// journal on disk; a document database can stand behind the same calls.
class StorageBackend {
 public:
  virtual ~StorageBackend() = default;

  virtual std::vector<StoredObject> load_objects() = 0;
  /// Records one committed batch durably, all or nothing. Throws on
  /// failure, in which case nothing is recorded.
  virtual void append_batch(std::span<const StoredObject> batch) = 0;

  virtual AccountsState load_accounts() = 0;
  virtual void save_accounts(const AccountsState& state) = 0;
};

std::shared_ptr<StorageBackend> make_memory_backend();

/// Layout under `dir`:
///   objects.jsonl  one JSON line per committed batch
///                  {"batch":[{"object":{..},"stored_at":"..","uploader":".."}]}
///   accounts.json  users and API keys, replaced via write-then-rename
/// A torn trailing journal line is discarded on open; the journal is
/// compacted to a single batch whenever it holds more than one.
std::shared_ptr<StorageBackend> make_file_backend(const std::filesystem::path& dir);

struct UpsertReport {
  std::size_t inserted = 0;
  std::size_t updated = 0;
};

struct IncidentRow {
  std::string id;
  std::string name;
  std::string description_excerpt;
  std::string first_seen;
};

struct IncidentPage {
  std::vector<IncidentRow> rows;
  std::size_t total = 0;
  std::size_t page = 1;
  std::size_t page_size = 0;
};

struct CountEntry {
  std::string id;
  std::string name;
  /// ISO alpha-2 for locations, empty for actors.
  std::string country_code;
  std::size_t incident_count = 0;
};

struct DashboardStats {
  std::vector<IncidentRow> recent_incidents;
  std::vector<CountEntry> top_actors;
  std::vector<CountEntry> top_countries;
};

inline constexpr std::size_t kExcerptChars = 280;
inline constexpr std::size_t kMaxPageSize = 200;

/// STIX object store keyed by id. Readers share a lock; each upsert
/// batch is applied under an exclusive lock after the backend accepted
/// it, so readers observe whole batches only.
class ObjectStore {
 public:
  explicit ObjectStore(std::shared_ptr<StorageBackend> backend, Clock clock = &Timestamp::now);

  /// Inserts or replaces every object. The stored `modified` becomes
  /// max(incoming, commit time) for inserts and
  /// max(incoming, previous + 1us, commit time) for replacements, where
  /// commit time is max(at, clock()) read under the write lock.
  /// Throws validation-error for malformed ids before touching state.
  UpsertReport upsert_objects(std::span<const stix::StixObject> objects, std::string_view uploader, Timestamp at);

  /// Objects with modified > t, ordered by (modified, id).
  std::vector<stix::StixObject> objects_newer_than(Timestamp t) const;

  IncidentPage list_incidents(std::size_t page, std::size_t page_size,
                              std::optional<std::string_view> name_filter = std::nullopt) const;

  /// Throws not-found, wrong-type, or invalid-argument for malformed ids.
  incident::IncidentGraph get_incident_view(std::string_view id) const;

  DashboardStats dashboard_stats(std::size_t top_n) const;

  std::optional<StoredObject> get(std::string_view id) const;
  std::size_t size() const;
  std::size_t incident_count() const;
  /// id -> stored modified, for equality checks against a replica.
  std::map<std::string, Timestamp> modified_index() const;

 private:
  void index_insert(const StoredObject& stored);
  void index_erase(const StoredObject& stored);
  IncidentRow row_for(const StoredObject& intrusion_set) const;
  std::vector<IncidentRow> sorted_rows(std::optional<std::string_view> name_filter) const;

  std::shared_ptr<StorageBackend> backend_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, StoredObject> objects_;
  std::set<std::pair<Timestamp, std::string>> by_modified_;
  std::unordered_map<std::string, std::set<std::string>> relationships_by_source_;
  std::set<std::string> intrusion_sets_;
};

struct CreatedApiKey {
  ApiKey key;
  /// Shown once; only its digest is kept.
  std::string raw_token;
};

enum class KeyCheck { ok, malformed, unknown, revoked };

struct ApiKeyVerdict {
  KeyCheck status = KeyCheck::malformed;
  std::string owner;
};

/// Users, sessions, API keys and favorites. Sessions live in memory
/// only; users and keys go through the storage backend.
class AccountStore {
 public:
  explicit AccountStore(std::shared_ptr<StorageBackend> backend, crypto::ScryptParams params = {},
                        Clock clock = &Timestamp::now);

  /// The first account ever created is an admin; later ones default to
  /// reporter. Throws duplicate-username or validation-error.
  UserAccount create_user(std::string_view username, std::string_view password,
                          std::optional<Role> role = std::nullopt);

  /// Returns a bearer session token; throws bad-credentials.
  std::string authenticate(std::string_view username, std::string_view password);
  std::optional<UserAccount> session_user(std::string_view token) const;
  void end_session(std::string_view token);

  CreatedApiKey create_api_key(std::string_view user_id, std::string_view label);
  /// Throws not-found unless the key exists and belongs to user_id.
  void revoke_api_key(std::string_view user_id, std::string_view key_id);
  std::vector<ApiKey> list_api_keys(std::string_view user_id) const;
  ApiKeyVerdict check_api_key(std::string_view raw_token) const;
  std::optional<std::string> verify_api_key(std::string_view raw_token) const;

  /// Returns whether the incident is a favorite afterwards.
  bool toggle_favorite(std::string_view user_id, std::string_view intrusion_set_id);
  void set_favorite(std::string_view user_id, std::string_view intrusion_set_id, bool favorite);

  std::optional<UserAccount> find_user(std::string_view user_id) const;
  std::size_t user_count() const;

 private:
  UserAccount* user_by_id(std::string_view user_id);
  void persist();

  std::shared_ptr<StorageBackend> backend_;
  crypto::ScryptParams params_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  AccountsState state_;
  /// sha256(token) -> user_id
  std::unordered_map<std::string, std::string> sessions_;
  std::string dummy_digest_;
};

}  // namespace disinfox::store
