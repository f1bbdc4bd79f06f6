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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "disinfox/crypto.hpp"
#include "disinfox/timestamp.hpp"

/// The STIX 2.1 subset exchanged by the platform: five object types,
/// identifiers, relationships, bundles and their validation.
namespace disinfox::stix {

enum class ObjectType { intrusion_set, threat_actor, location, attack_pattern, relationship, opaque };

std::string_view type_name(ObjectType type);
/// Maps a `type` property to a supported type; anything else is opaque.
ObjectType classify(std::string_view type);

enum class RelationshipType { attributed_to, targets, uses };

std::string_view to_string(RelationshipType type);
std::optional<RelationshipType> parse_relationship_type(std::string_view text);

/// Whether `source -[type]-> target` is one of the incident model triples.
bool allowed_triple(ObjectType source, RelationshipType type, ObjectType target);

/// `{object_type}--{uuid}`.
class StixId {
 public:
  static std::optional<StixId> parse(std::string_view text);

  const std::string& object_type() const { return object_type_; }
  const std::string& uuid() const { return uuid_; }
  std::string str() const { return object_type_ + "--" + uuid_; }

  friend auto operator<=>(const StixId&, const StixId&) = default;

 private:
  StixId(std::string object_type, std::string uuid) : object_type_(std::move(object_type)), uuid_(std::move(uuid)) {}

  std::string object_type_;
  std::string uuid_;
};

bool is_well_formed_id(std::string_view text);

/// Namespace for every name-based id this platform mints.
extern const crypto::Uuid kPlatformNamespace;

/// Random (v4) id. Accepts the five supported types and `bundle`.
StixId new_random_id(std::string_view object_type);

/// Name-based (v5) id over the normalized seed (trimmed, lowercased,
/// whitespace collapsed). Same inputs always give the same id.
StixId deterministic_id(std::string_view object_type, std::string_view seed_text);

/// One STIX object. The full property map is kept verbatim so unknown
/// properties survive a round trip; typed accessors read from it.
class StixObject {
 public:
  /// Requires a JSON object with string `type` and `id`.
  static StixObject from_json(nlohmann::json props);

  const std::string& type() const { return type_; }
  ObjectType kind() const { return kind_; }
  const std::string& id() const { return id_; }

  std::optional<Timestamp> created() const;
  std::optional<Timestamp> modified() const;
  std::optional<std::string> string_property(std::string_view key) const;
  std::optional<std::string> name() const { return string_property("name"); }

  const nlohmann::json& json() const { return props_; }

  StixObject with_modified(Timestamp modified) const;

  friend bool operator==(const StixObject& a, const StixObject& b) { return a.props_ == b.props_; }

 private:
  explicit StixObject(nlohmann::json props);

  nlohmann::json props_;
  std::string type_;
  std::string id_;
  ObjectType kind_ = ObjectType::opaque;
};

StixObject make_intrusion_set(std::string_view name, std::string_view description, Timestamp first_seen,
                              Timestamp at);
StixObject make_threat_actor(std::string_view name, Timestamp at);
StixObject make_location(std::string_view country_name, std::string_view alpha2, Timestamp at);

/// Relationship with id seeded by `"{source}|{type}|{target}"`.
/// Throws relationship-constraint for triples outside the incident model.
StixObject make_relationship(const StixObject& source, const StixObject& target, RelationshipType type,
                             Timestamp at);

struct Bundle {
  std::string id;
  std::vector<StixObject> objects;
  /// Top-level properties other than type/id/objects.
  nlohmann::json extra = nlohmann::json::object();

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

Bundle make_bundle(std::vector<StixObject> objects);

/// Canonical UTF-8 text: two-space indent, keys sorted.
std::string serialize_bundle(const Bundle& bundle);

/// Throws parse-error (with `byte` detail) on malformed text and
/// schema-error (with `index` detail) on objects lacking `type`/`id`.
Bundle parse_bundle(std::string_view bytes);

struct Violation {
  enum class Kind { malformed_id, duplicate_id, dangling_ref, disallowed_triple, foreign_triple };

  Kind kind;
  /// Position in bundle.objects; npos for the bundle wrapper itself.
  std::size_t index;
  std::string object_id;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

/// Empty iff ids are well formed, unique, every relationship endpoint
/// resolves inside the bundle and every relationship triple is allowed.
std::vector<Violation> validate_bundle(const Bundle& bundle);

/// Relationships touching foreign object types; informational only.
std::vector<Violation> bundle_warnings(const Bundle& bundle);

}  // namespace disinfox::stix
