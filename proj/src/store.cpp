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

#include "disinfox/store.hpp"

#include <algorithm>
#include <tuple>

#include "disinfox/disarm.hpp"
#include "disinfox/error.hpp"
#include "disinfox/text.hpp"

namespace disinfox::store {

using stix::ObjectType;
using stix::RelationshipType;
using stix::StixObject;

std::string_view to_string(Role role) {
  switch (role) {
    case Role::viewer: return "viewer";
    case Role::reporter: return "reporter";
    case Role::admin: return "admin";
  }
  return "viewer";
}

std::optional<Role> parse_role(std::string_view text) {
  const auto key = text::normalize_key(text);
  if (key == "viewer") return Role::viewer;
  if (key == "reporter") return Role::reporter;
  if (key == "admin") return Role::admin;
  return std::nullopt;
}

namespace {

Timestamp incoming_modified(const StixObject& object) {
  if (auto m = object.modified()) return *m;
  if (auto c = object.created()) return *c;
  return Timestamp::epoch();
}

void check_object_id(const StixObject& object) {
  const auto id = stix::StixId::parse(object.id());
  if (!id || !stix::is_well_formed_id(object.id())) {
    throw Error(Errc::validation, "malformed STIX id '" + object.id() + "'", nlohmann::json{{"id", object.id()}});
  }
  if (id->object_type() != object.type()) {
    throw Error(Errc::validation, "id '" + object.id() + "' does not match type '" + object.type() + "'",
                nlohmann::json{{"id", object.id()}});
  }
}

std::string first_seen_date(const StixObject& intrusion_set) {
  if (const auto text = intrusion_set.string_property("first_seen")) {
    if (const auto ts = Timestamp::parse(*text)) return format_date(ts->date());
  }
  if (const auto created = intrusion_set.created()) return format_date(created->date());
  return {};
}

std::string sort_name(const StixObject& object) { return text::normalize_key(object.name().value_or("")); }

}  // namespace

// ---- ObjectStore ----------------------------------------------------------

ObjectStore::ObjectStore(std::shared_ptr<StorageBackend> backend, Clock clock)
    : backend_(std::move(backend)), clock_(std::move(clock)) {
  for (auto& stored : backend_->load_objects()) {
    if (auto it = objects_.find(stored.object.id()); it != objects_.end()) {
      index_erase(it->second);
      objects_.erase(it);
    }
    index_insert(stored);
    objects_.emplace(stored.object.id(), std::move(stored));
  }
}

void ObjectStore::index_insert(const StoredObject& stored) {
  const auto& object = stored.object;
  by_modified_.emplace(stored.modified, object.id());
  if (object.kind() == ObjectType::intrusion_set) intrusion_sets_.insert(object.id());
  if (object.kind() == ObjectType::relationship) {
    if (auto source = object.string_property("source_ref")) relationships_by_source_[*source].insert(object.id());
  }
}

void ObjectStore::index_erase(const StoredObject& stored) {
  const auto& object = stored.object;
  by_modified_.erase({stored.modified, object.id()});
  if (object.kind() == ObjectType::intrusion_set) intrusion_sets_.erase(object.id());
  if (object.kind() == ObjectType::relationship) {
    if (auto source = object.string_property("source_ref")) {
      auto it = relationships_by_source_.find(*source);
      if (it != relationships_by_source_.end()) {
        it->second.erase(object.id());
        if (it->second.empty()) relationships_by_source_.erase(it);
      }
    }
  }
}

UpsertReport ObjectStore::upsert_objects(std::span<const StixObject> objects, std::string_view uploader,
                                         Timestamp at) {
  for (const auto& object : objects) check_object_id(object);
  if (objects.empty()) return {};

  std::unique_lock lock(mutex_);
  const Timestamp stamp = std::max(at, clock_());

  UpsertReport report;
  std::vector<StoredObject> staged;
  std::unordered_map<std::string, std::size_t> staged_index;
  staged.reserve(objects.size());
  for (const auto& object : objects) {
    const auto incoming = incoming_modified(object);
    std::optional<Timestamp> previous;
    if (auto s = staged_index.find(object.id()); s != staged_index.end()) {
      previous = staged[s->second].modified;
    } else if (auto it = objects_.find(object.id()); it != objects_.end()) {
      previous = it->second.modified;
    }
    Timestamp modified = std::max(incoming, stamp);
    if (previous) {
      modified = std::max(modified, previous->next_tick());
      ++report.updated;
    } else {
      ++report.inserted;
    }
    StoredObject stored{object.with_modified(modified), modified, stamp, std::string(uploader)};
    if (auto s = staged_index.find(object.id()); s != staged_index.end()) {
      staged[s->second] = std::move(stored);
    } else {
      staged_index.emplace(object.id(), staged.size());
      staged.push_back(std::move(stored));
    }
  }

  backend_->append_batch(staged);

  for (auto& stored : staged) {
    if (auto it = objects_.find(stored.object.id()); it != objects_.end()) {
      index_erase(it->second);
      objects_.erase(it);
    }
    index_insert(stored);
    objects_.emplace(stored.object.id(), std::move(stored));
  }
  return report;
}

std::vector<StixObject> ObjectStore::objects_newer_than(Timestamp t) const {
  std::shared_lock lock(mutex_);
  std::vector<StixObject> out;
  for (auto it = by_modified_.lower_bound({t.next_tick(), std::string()}); it != by_modified_.end(); ++it) {
    out.push_back(objects_.at(it->second).object);
  }
  return out;
}

IncidentRow ObjectStore::row_for(const StoredObject& intrusion_set) const {
  const auto& object = intrusion_set.object;
  return IncidentRow{object.id(), object.name().value_or(""),
                     text::excerpt(object.string_property("description").value_or(""), kExcerptChars),
                     first_seen_date(object)};
}

std::vector<IncidentRow> ObjectStore::sorted_rows(std::optional<std::string_view> name_filter) const {
  std::vector<IncidentRow> rows;
  rows.reserve(intrusion_sets_.size());
  for (const auto& id : intrusion_sets_) {
    const auto& stored = objects_.at(id);
    if (name_filter && !text::icontains(stored.object.name().value_or(""), *name_filter)) continue;
    rows.push_back(row_for(stored));
  }
  std::sort(rows.begin(), rows.end(), [](const IncidentRow& a, const IncidentRow& b) {
    if (a.first_seen != b.first_seen) return a.first_seen > b.first_seen;
    const auto an = text::normalize_key(a.name);
    const auto bn = text::normalize_key(b.name);
    return std::tie(an, a.id) < std::tie(bn, b.id);
  });
  return rows;
}

IncidentPage ObjectStore::list_incidents(std::size_t page, std::size_t page_size,
                                         std::optional<std::string_view> name_filter) const {
  if (page < 1) throw Error(Errc::invalid_argument, "page must be >= 1");
  if (page_size < 1 || page_size > kMaxPageSize) {
    throw Error(Errc::invalid_argument, "page_size must be between 1 and " + std::to_string(kMaxPageSize));
  }
  std::shared_lock lock(mutex_);
  auto rows = sorted_rows(name_filter);
  IncidentPage result;
  result.total = rows.size();
  result.page = page;
  result.page_size = page_size;
  const auto first = (page - 1) * page_size;
  if (first < rows.size()) {
    const auto last = std::min(rows.size(), first + page_size);
    result.rows.assign(std::make_move_iterator(rows.begin() + static_cast<std::ptrdiff_t>(first)),
                       std::make_move_iterator(rows.begin() + static_cast<std::ptrdiff_t>(last)));
  }
  return result;
}

incident::IncidentGraph ObjectStore::get_incident_view(std::string_view id) const {
  const auto parsed = stix::StixId::parse(id);
  if (!parsed || !stix::is_well_formed_id(id)) {
    throw Error(Errc::invalid_argument, "malformed STIX id '" + std::string(id) + "'");
  }
  if (parsed->object_type() != "intrusion-set") {
    throw Error(Errc::wrong_type, "'" + std::string(id) + "' is not an intrusion-set");
  }

  std::shared_lock lock(mutex_);
  const auto it = objects_.find(std::string(id));
  if (it == objects_.end()) throw Error(Errc::not_found, "no incident with id '" + std::string(id) + "'");

  incident::IncidentGraph view{it->second.object, {}, {}, {}, {}};
  std::unordered_map<std::string, const StixObject*> relationship_to;
  if (auto rels = relationships_by_source_.find(std::string(id)); rels != relationships_by_source_.end()) {
    for (const auto& rel_id : rels->second) {
      const auto& rel = objects_.at(rel_id).object;
      const auto type = stix::parse_relationship_type(rel.string_property("relationship_type").value_or(""));
      const auto target_it = objects_.find(rel.string_property("target_ref").value_or(""));
      if (!type || target_it == objects_.end()) continue;
      const auto& target = target_it->second.object;
      if (!stix::allowed_triple(ObjectType::intrusion_set, *type, target.kind())) continue;
      switch (*type) {
        case RelationshipType::attributed_to: view.actors.push_back(target); break;
        case RelationshipType::targets: view.locations.push_back(target); break;
        case RelationshipType::uses: view.techniques.push_back(target); break;
      }
      relationship_to[target.id()] = &rel;
    }
  }

  auto by_name = [](const StixObject& a, const StixObject& b) {
    return std::make_pair(sort_name(a), a.id()) < std::make_pair(sort_name(b), b.id());
  };
  std::sort(view.actors.begin(), view.actors.end(), by_name);
  std::sort(view.locations.begin(), view.locations.end(), by_name);
  std::sort(view.techniques.begin(), view.techniques.end(), [](const StixObject& a, const StixObject& b) {
    return std::make_pair(disarm::disarm_external_id(a).value_or("~"), a.id()) <
           std::make_pair(disarm::disarm_external_id(b).value_or("~"), b.id());
  });
  for (const auto* group : {&view.actors, &view.locations, &view.techniques}) {
    for (const auto& target : *group) view.relationships.push_back(*relationship_to.at(target.id()));
  }
  return view;
}

DashboardStats ObjectStore::dashboard_stats(std::size_t top_n) const {
  if (top_n < 1) throw Error(Errc::invalid_argument, "top_n must be >= 1");
  std::shared_lock lock(mutex_);

  DashboardStats stats;
  auto rows = sorted_rows(std::nullopt);
  if (rows.size() > top_n) rows.resize(top_n);
  stats.recent_incidents = std::move(rows);

  std::unordered_map<std::string, std::set<std::string>> actor_incidents;
  std::unordered_map<std::string, std::set<std::string>> location_incidents;
  for (const auto& incident_id : intrusion_sets_) {
    const auto rels = relationships_by_source_.find(incident_id);
    if (rels == relationships_by_source_.end()) continue;
    for (const auto& rel_id : rels->second) {
      const auto& rel = objects_.at(rel_id).object;
      const auto type = stix::parse_relationship_type(rel.string_property("relationship_type").value_or(""));
      const auto target_it = objects_.find(rel.string_property("target_ref").value_or(""));
      if (!type || target_it == objects_.end()) continue;
      const auto kind = target_it->second.object.kind();
      if (*type == RelationshipType::attributed_to && kind == ObjectType::threat_actor) {
        actor_incidents[target_it->first].insert(incident_id);
      } else if (*type == RelationshipType::targets && kind == ObjectType::location) {
        location_incidents[target_it->first].insert(incident_id);
      }
    }
  }

  auto ranked = [&](const std::unordered_map<std::string, std::set<std::string>>& counts) {
    std::vector<CountEntry> entries;
    for (const auto& [target_id, incidents] : counts) {
      const auto& object = objects_.at(target_id).object;
      entries.push_back(CountEntry{target_id, object.name().value_or(""),
                                   object.string_property("country").value_or(""), incidents.size()});
    }
    std::sort(entries.begin(), entries.end(), [](const CountEntry& a, const CountEntry& b) {
      if (a.incident_count != b.incident_count) return a.incident_count > b.incident_count;
      const auto an = text::normalize_key(a.name);
      const auto bn = text::normalize_key(b.name);
      return std::tie(an, a.id) < std::tie(bn, b.id);
    });
    if (entries.size() > top_n) entries.resize(top_n);
    return entries;
  };
  stats.top_actors = ranked(actor_incidents);
  stats.top_countries = ranked(location_incidents);
  return stats;
}

std::optional<StoredObject> ObjectStore::get(std::string_view id) const {
  std::shared_lock lock(mutex_);
  const auto it = objects_.find(std::string(id));
  if (it == objects_.end()) return std::nullopt;
  return it->second;
}

std::size_t ObjectStore::size() const {
  std::shared_lock lock(mutex_);
  return objects_.size();
}

std::size_t ObjectStore::incident_count() const {
  std::shared_lock lock(mutex_);
  return intrusion_sets_.size();
}

std::map<std::string, Timestamp> ObjectStore::modified_index() const {
  std::shared_lock lock(mutex_);
  std::map<std::string, Timestamp> out;
  for (const auto& [id, stored] : objects_) out.emplace(id, stored.modified);
  return out;
}

// ---- AccountStore ---------------------------------------------------------

namespace {

constexpr std::string_view kSessionPrefix = "dfs_";
constexpr std::string_view kKeyPrefix = "dfx_";
constexpr std::size_t kKeyIdHex = 16;
constexpr std::size_t kSecretHex = 64;

bool is_lower_hex(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

void check_username(std::string_view username) {
  const bool charset_ok = std::all_of(username.begin(), username.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
           c == '-';
  });
  if (username.size() < 3 || username.size() > 64 || !charset_ok) {
    throw Error(Errc::validation, "username must be 3-64 characters of letters, digits, '.', '_' or '-'");
  }
}

std::string random_hex(std::size_t bytes) { return crypto::to_hex(crypto::random_bytes(bytes)); }

}  // namespace

AccountStore::AccountStore(std::shared_ptr<StorageBackend> backend, crypto::ScryptParams params, Clock clock)
    : backend_(std::move(backend)), params_(params), clock_(std::move(clock)) {
  state_ = backend_->load_accounts();
  dummy_digest_ = crypto::hash_password(random_hex(16), params_);
}

UserAccount* AccountStore::user_by_id(std::string_view user_id) {
  for (auto& user : state_.users) {
    if (user.user_id == user_id) return &user;
  }
  return nullptr;
}

void AccountStore::persist() { backend_->save_accounts(state_); }

UserAccount AccountStore::create_user(std::string_view username, std::string_view password,
                                      std::optional<Role> role) {
  check_username(username);
  if (password.size() < 8) throw Error(Errc::validation, "password must be at least 8 characters");
  auto digest = crypto::hash_password(password, params_);

  std::unique_lock lock(mutex_);
  for (const auto& user : state_.users) {
    if (text::iequals(user.username, username)) {
      throw Error(Errc::duplicate_username, "username '" + std::string(username) + "' is taken");
    }
  }
  UserAccount account;
  account.user_id = crypto::format_uuid(crypto::uuid_v4());
  account.username = std::string(username);
  account.password_digest = std::move(digest);
  account.role = state_.users.empty() ? Role::admin : role.value_or(Role::reporter);
  account.created_at = clock_();
  state_.users.push_back(account);
  try {
    persist();
  } catch (...) {
    state_.users.pop_back();
    throw;
  }
  return account;
}

std::string AccountStore::authenticate(std::string_view username, std::string_view password) {
  std::optional<UserAccount> found;
  {
    std::shared_lock lock(mutex_);
    for (const auto& user : state_.users) {
      if (text::iequals(user.username, username)) found = user;
    }
  }
  const bool ok = crypto::verify_password(password, found ? found->password_digest : dummy_digest_);
  if (!found || !ok) throw Error(Errc::bad_credentials, "invalid username or password");

  auto token = std::string(kSessionPrefix) + random_hex(32);
  std::unique_lock lock(mutex_);
  sessions_[crypto::sha256_hex(token)] = found->user_id;
  return token;
}

std::optional<UserAccount> AccountStore::session_user(std::string_view token) const {
  if (!token.starts_with(kSessionPrefix)) return std::nullopt;
  std::shared_lock lock(mutex_);
  const auto it = sessions_.find(crypto::sha256_hex(token));
  if (it == sessions_.end()) return std::nullopt;
  for (const auto& user : state_.users) {
    if (user.user_id == it->second) return user;
  }
  return std::nullopt;
}

void AccountStore::end_session(std::string_view token) {
  std::unique_lock lock(mutex_);
  sessions_.erase(crypto::sha256_hex(token));
}

CreatedApiKey AccountStore::create_api_key(std::string_view user_id, std::string_view label) {
  std::unique_lock lock(mutex_);
  if (!user_by_id(user_id)) throw Error(Errc::not_found, "no user '" + std::string(user_id) + "'");
  ApiKey key;
  key.key_id = random_hex(kKeyIdHex / 2);
  key.owner = std::string(user_id);
  key.label = std::string(text::trim(label));
  key.created_at = clock_();
  auto raw = std::string(kKeyPrefix) + key.key_id + "_" + random_hex(kSecretHex / 2);
  key.secret_digest = crypto::sha256_hex(raw);
  state_.keys.push_back(key);
  try {
    persist();
  } catch (...) {
    state_.keys.pop_back();
    throw;
  }
  return CreatedApiKey{std::move(key), std::move(raw)};
}

void AccountStore::revoke_api_key(std::string_view user_id, std::string_view key_id) {
  std::unique_lock lock(mutex_);
  for (auto& key : state_.keys) {
    if (key.key_id == key_id && key.owner == user_id) {
      if (key.revoked) return;
      key.revoked = true;
      try {
        persist();
      } catch (...) {
        key.revoked = false;
        throw;
      }
      return;
    }
  }
  throw Error(Errc::not_found, "no API key '" + std::string(key_id) + "'");
}

std::vector<ApiKey> AccountStore::list_api_keys(std::string_view user_id) const {
  std::shared_lock lock(mutex_);
  std::vector<ApiKey> out;
  for (const auto& key : state_.keys) {
    if (key.owner == user_id) out.push_back(key);
  }
  return out;
}

ApiKeyVerdict AccountStore::check_api_key(std::string_view raw_token) const {
  // dfx_<16 hex key id>_<64 hex secret>
  const auto expected_size = kKeyPrefix.size() + kKeyIdHex + 1 + kSecretHex;
  if (raw_token.size() != expected_size || !raw_token.starts_with(kKeyPrefix) ||
      raw_token[kKeyPrefix.size() + kKeyIdHex] != '_') {
    return {KeyCheck::malformed, {}};
  }
  const auto key_id = raw_token.substr(kKeyPrefix.size(), kKeyIdHex);
  const auto secret = raw_token.substr(kKeyPrefix.size() + kKeyIdHex + 1);
  if (!is_lower_hex(key_id) || !is_lower_hex(secret)) return {KeyCheck::malformed, {}};

  const auto digest = crypto::sha256_hex(raw_token);
  std::shared_lock lock(mutex_);
  const ApiKey* match = nullptr;
  for (const auto& key : state_.keys) {
    if (key.key_id == key_id) match = &key;
  }
  const auto& stored = match ? match->secret_digest : dummy_digest_;
  if (!crypto::constant_time_equal(digest, stored) || !match) return {KeyCheck::unknown, {}};
  if (match->revoked) return {KeyCheck::revoked, {}};
  return {KeyCheck::ok, match->owner};
}

std::optional<std::string> AccountStore::verify_api_key(std::string_view raw_token) const {
  auto verdict = check_api_key(raw_token);
  if (verdict.status != KeyCheck::ok) return std::nullopt;
  return std::move(verdict.owner);
}

bool AccountStore::toggle_favorite(std::string_view user_id, std::string_view intrusion_set_id) {
  std::unique_lock lock(mutex_);
  auto* user = user_by_id(user_id);
  if (!user) throw Error(Errc::not_found, "no user '" + std::string(user_id) + "'");
  const std::string id(intrusion_set_id);
  const bool now_favorite = !user->favorites.contains(id);
  if (now_favorite) {
    user->favorites.insert(id);
  } else {
    user->favorites.erase(id);
  }
  try {
    persist();
  } catch (...) {
    if (now_favorite) {
      user->favorites.erase(id);
    } else {
      user->favorites.insert(id);
    }
    throw;
  }
  return now_favorite;
}

void AccountStore::set_favorite(std::string_view user_id, std::string_view intrusion_set_id, bool favorite) {
  std::unique_lock lock(mutex_);
  auto* user = user_by_id(user_id);
  if (!user) throw Error(Errc::not_found, "no user '" + std::string(user_id) + "'");
  const std::string id(intrusion_set_id);
  if (user->favorites.contains(id) == favorite) return;
  const auto before = user->favorites;
  if (favorite) {
    user->favorites.insert(id);
  } else {
    user->favorites.erase(id);
  }
  try {
    persist();
  } catch (...) {
    user->favorites = before;
    throw;
  }
}

std::optional<UserAccount> AccountStore::find_user(std::string_view user_id) const {
  std::shared_lock lock(mutex_);
  for (const auto& user : state_.users) {
    if (user.user_id == user_id) return user;
  }
  return std::nullopt;
}

std::size_t AccountStore::user_count() const {
  std::shared_lock lock(mutex_);
  return state_.users.size();
}

}  // namespace disinfox::store
