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

#include "disinfox/stix.hpp"

#include <unordered_map>
#include <unordered_set>

#include "disinfox/error.hpp"
#include "disinfox/text.hpp"

namespace disinfox::stix {

using nlohmann::json;

namespace {

bool is_type_name(std::string_view s) {
  if (s.empty() || s.front() < 'a' || s.front() > 'z') return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
  }
  return true;
}

bool is_uuid_text(std::string_view s) {
  crypto::Uuid scratch;
  return crypto::parse_uuid(s, scratch);
}

// Splits `type--uuid`; the uuid is always the trailing 36 characters.
bool split_id(std::string_view text, std::string_view& type, std::string_view& uuid) {
  if (text.size() < 36 + 3) return false;
  uuid = text.substr(text.size() - 36);
  const auto sep = text.substr(text.size() - 38, 2);
  if (sep != "--") return false;
  type = text.substr(0, text.size() - 38);
  return is_type_name(type) && is_uuid_text(uuid);
}

StixId make_id(std::string_view object_type, const crypto::Uuid& u) {
  auto parsed = StixId::parse(std::string(object_type) + "--" + crypto::format_uuid(u));
  return *parsed;
}

json base_object(ObjectType type, const StixId& id, Timestamp at) {
  const auto stamp = at.to_string();
  return json{{"type", type_name(type)}, {"id", id.str()}, {"spec_version", "2.1"},
              {"created", stamp},        {"modified", stamp}};
}

}  // namespace

const crypto::Uuid kPlatformNamespace = [] {
  crypto::Uuid u{};
  crypto::parse_uuid("2f6d8b1e-7c3a-5e94-a1d2-6b0c9e4f8a17", u);
  return u;
}();

std::string_view type_name(ObjectType type) {
  switch (type) {
    case ObjectType::intrusion_set: return "intrusion-set";
    case ObjectType::threat_actor: return "threat-actor";
    case ObjectType::location: return "location";
    case ObjectType::attack_pattern: return "attack-pattern";
    case ObjectType::relationship: return "relationship";
    case ObjectType::opaque: return "";
  }
  return "";
}

ObjectType classify(std::string_view type) {
  for (auto t : {ObjectType::intrusion_set, ObjectType::threat_actor, ObjectType::location, ObjectType::attack_pattern,
                 ObjectType::relationship}) {
    if (type == type_name(t)) return t;
  }
  return ObjectType::opaque;
}

std::string_view to_string(RelationshipType type) {
  switch (type) {
    case RelationshipType::attributed_to: return "attributed-to";
    case RelationshipType::targets: return "targets";
    case RelationshipType::uses: return "uses";
  }
  return "";
}

std::optional<RelationshipType> parse_relationship_type(std::string_view text) {
  for (auto t : {RelationshipType::attributed_to, RelationshipType::targets, RelationshipType::uses}) {
    if (text == to_string(t)) return t;
  }
  return std::nullopt;
}

bool allowed_triple(ObjectType source, RelationshipType type, ObjectType target) {
  if (source != ObjectType::intrusion_set) return false;
  switch (type) {
    case RelationshipType::attributed_to: return target == ObjectType::threat_actor;
    case RelationshipType::targets: return target == ObjectType::location;
    case RelationshipType::uses: return target == ObjectType::attack_pattern;
  }
  return false;
}

std::optional<StixId> StixId::parse(std::string_view text) {
  std::string_view type, uuid;
  if (!split_id(text, type, uuid)) return std::nullopt;
  return StixId(std::string(type), std::string(uuid));
}

bool is_well_formed_id(std::string_view text) {
  std::string_view type, uuid;
  return split_id(text, type, uuid);
}

StixId new_random_id(std::string_view object_type) {
  if (object_type != "bundle" && classify(object_type) == ObjectType::opaque) {
    throw Error(Errc::invalid_type, "unsupported object type '" + std::string(object_type) + "'");
  }
  return make_id(object_type, crypto::uuid_v4());
}

StixId deterministic_id(std::string_view object_type, std::string_view seed_text) {
  if (!is_type_name(object_type)) {
    throw Error(Errc::invalid_type, "malformed object type '" + std::string(object_type) + "'");
  }
  const auto seed = text::normalize_key(seed_text);
  if (seed.empty()) throw Error(Errc::invalid_argument, "deterministic id seed is empty");
  std::string name(object_type);
  name += '|';
  name += seed;
  return make_id(object_type, crypto::uuid_v5(kPlatformNamespace, name));
}

StixObject::StixObject(nlohmann::json props) : props_(std::move(props)) {
  type_ = props_.at("type").get<std::string>();
  id_ = props_.at("id").get<std::string>();
  kind_ = classify(type_);
}

StixObject StixObject::from_json(nlohmann::json props) {
  if (!props.is_object()) throw Error(Errc::schema_error, "STIX object must be a JSON object");
  const auto type = props.find("type");
  if (type == props.end() || !type->is_string()) throw Error(Errc::schema_error, "object lacks a string 'type'");
  const auto id = props.find("id");
  if (id == props.end() || !id->is_string()) throw Error(Errc::schema_error, "object lacks a string 'id'");
  return StixObject(std::move(props));
}

std::optional<std::string> StixObject::string_property(std::string_view key) const {
  const auto it = props_.find(key);
  if (it == props_.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

std::optional<Timestamp> StixObject::created() const {
  const auto s = string_property("created");
  return s ? Timestamp::parse(*s) : std::nullopt;
}

std::optional<Timestamp> StixObject::modified() const {
  const auto s = string_property("modified");
  return s ? Timestamp::parse(*s) : std::nullopt;
}

StixObject StixObject::with_modified(Timestamp modified) const {
  nlohmann::json copy = props_;
  copy["modified"] = modified.to_string();
  return StixObject(std::move(copy));
}

StixObject make_intrusion_set(std::string_view name, std::string_view description, Timestamp first_seen,
                              Timestamp at) {
  const auto clean_name = text::squash(name);
  if (clean_name.empty()) throw Error(Errc::validation, "intrusion-set name is empty");
  const auto id = deterministic_id("intrusion-set", clean_name + "|" + format_date(first_seen.date()));
  json props = base_object(ObjectType::intrusion_set, id, at);
  props["name"] = clean_name;
  props["first_seen"] = first_seen.to_string();
  if (!text::trim(description).empty()) props["description"] = std::string(text::trim(description));
  return StixObject::from_json(std::move(props));
}

StixObject make_threat_actor(std::string_view name, Timestamp at) {
  const auto clean_name = text::squash(name);
  if (clean_name.empty()) throw Error(Errc::validation, "threat-actor name is empty");
  json props = base_object(ObjectType::threat_actor, deterministic_id("threat-actor", clean_name), at);
  props["name"] = clean_name;
  return StixObject::from_json(std::move(props));
}

StixObject make_location(std::string_view country_name, std::string_view alpha2, Timestamp at) {
  const auto clean_name = text::squash(country_name);
  if (clean_name.empty()) throw Error(Errc::validation, "location name is empty");
  json props = base_object(ObjectType::location, deterministic_id("location", clean_name), at);
  props["name"] = clean_name;
  props["country"] = text::upper(alpha2);
  return StixObject::from_json(std::move(props));
}

StixObject make_relationship(const StixObject& source, const StixObject& target, RelationshipType type,
                             Timestamp at) {
  if (!allowed_triple(source.kind(), type, target.kind())) {
    throw Error(Errc::relationship_constraint, "relationship (" + source.type() + ", " + std::string(to_string(type)) +
                                                   ", " + target.type() + ") is not allowed");
  }
  const auto id = deterministic_id("relationship", source.id() + "|" + std::string(to_string(type)) + "|" + target.id());
  json props = base_object(ObjectType::relationship, id, at);
  props["relationship_type"] = to_string(type);
  props["source_ref"] = source.id();
  props["target_ref"] = target.id();
  return StixObject::from_json(std::move(props));
}

Bundle make_bundle(std::vector<StixObject> objects) {
  return Bundle{new_random_id("bundle").str(), std::move(objects), json::object()};
}

std::string serialize_bundle(const Bundle& bundle) {
  json out = bundle.extra.is_object() ? bundle.extra : json::object();
  out["type"] = "bundle";
  out["id"] = bundle.id;
  json objects = json::array();
  for (const auto& obj : bundle.objects) objects.push_back(obj.json());
  out["objects"] = std::move(objects);
  return out.dump(2, ' ', false, json::error_handler_t::replace);
}

Bundle parse_bundle(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what(), json{{"byte", e.byte}});
  }
  if (!doc.is_object()) throw Error(Errc::schema_error, "bundle must be a JSON object");
  const auto type = doc.find("type");
  if (type == doc.end() || *type != "bundle") throw Error(Errc::schema_error, "top-level 'type' must be \"bundle\"");
  const auto id = doc.find("id");
  if (id == doc.end() || !id->is_string()) throw Error(Errc::schema_error, "bundle lacks a string 'id'");

  Bundle bundle;
  bundle.id = id->get<std::string>();
  if (const auto objects = doc.find("objects"); objects != doc.end()) {
    if (!objects->is_array()) throw Error(Errc::schema_error, "'objects' must be an array");
    bundle.objects.reserve(objects->size());
    for (std::size_t i = 0; i < objects->size(); ++i) {
      try {
        bundle.objects.push_back(StixObject::from_json(std::move((*objects)[i])));
      } catch (const Error& e) {
        throw Error(Errc::schema_error, "object " + std::to_string(i) + ": " + e.what(), json{{"index", i}});
      }
    }
  }
  doc.erase("type");
  doc.erase("id");
  doc.erase("objects");
  bundle.extra = std::move(doc);
  return bundle;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::malformed_id: return "malformed-id";
    case Violation::Kind::duplicate_id: return "duplicate-id";
    case Violation::Kind::dangling_ref: return "dangling-ref";
    case Violation::Kind::disallowed_triple: return "disallowed-triple";
    case Violation::Kind::foreign_triple: return "foreign-triple";
  }
  return "";
}

namespace {

// Shared walk for validate_bundle and bundle_warnings.
void check_bundle(const Bundle& bundle, std::vector<Violation>* violations, std::vector<Violation>* warnings) {
  constexpr auto npos = static_cast<std::size_t>(-1);
  auto report = [](std::vector<Violation>* out, Violation::Kind kind, std::size_t index, std::string id,
                   std::string message) {
    if (out) out->push_back(Violation{kind, index, std::move(id), std::move(message)});
  };

  {
    std::string_view type, uuid;
    if (!split_id(bundle.id, type, uuid) || type != "bundle") {
      report(violations, Violation::Kind::malformed_id, npos, bundle.id, "bundle id is not a bundle--<uuid> id");
    }
  }

  std::unordered_map<std::string_view, std::size_t> index_of;
  for (std::size_t i = 0; i < bundle.objects.size(); ++i) {
    const auto& obj = bundle.objects[i];
    std::string_view type, uuid;
    if (!split_id(obj.id(), type, uuid)) {
      report(violations, Violation::Kind::malformed_id, i, obj.id(), "malformed id '" + obj.id() + "'");
    } else if (type != obj.type()) {
      report(violations, Violation::Kind::malformed_id, i, obj.id(),
             "id prefix '" + std::string(type) + "' does not match type '" + obj.type() + "'");
    }
    if (!index_of.emplace(obj.id(), i).second) {
      report(violations, Violation::Kind::duplicate_id, i, obj.id(), "duplicate id '" + obj.id() + "'");
    }
  }

  for (std::size_t i = 0; i < bundle.objects.size(); ++i) {
    const auto& obj = bundle.objects[i];
    if (obj.kind() != ObjectType::relationship) continue;
    ObjectType endpoint_kinds[2] = {ObjectType::opaque, ObjectType::opaque};
    bool resolved = true;
    const char* keys[2] = {"source_ref", "target_ref"};
    for (int k = 0; k < 2; ++k) {
      const auto ref = obj.string_property(keys[k]).value_or("");
      const auto it = index_of.find(ref);
      if (it == index_of.end()) {
        resolved = false;
        report(violations, Violation::Kind::dangling_ref, i, ref.empty() ? obj.id() : ref,
               ref.empty() ? obj.id() + " has no " + keys[k]
                           : obj.id() + " " + keys[k] + " '" + ref + "' not found in bundle");
      } else {
        endpoint_kinds[k] = bundle.objects[it->second].kind();
      }
    }
    if (!resolved) continue;
    const auto rel = parse_relationship_type(obj.string_property("relationship_type").value_or(""));
    const auto source = endpoint_kinds[0];
    const auto target = endpoint_kinds[1];
    if (source == ObjectType::opaque || target == ObjectType::opaque) {
      report(warnings, Violation::Kind::foreign_triple, i, obj.id(), obj.id() + " links foreign object types");
      continue;
    }
    if (!rel || !allowed_triple(source, *rel, target)) {
      report(violations, Violation::Kind::disallowed_triple, i, obj.id(),
             obj.id() + " triple (" + std::string(type_name(source)) + ", " +
                 obj.string_property("relationship_type").value_or("?") + ", " + std::string(type_name(target)) +
                 ") is not allowed");
    }
  }
}

}  // namespace

std::vector<Violation> validate_bundle(const Bundle& bundle) {
  std::vector<Violation> out;
  check_bundle(bundle, &out, nullptr);
  return out;
}

std::vector<Violation> bundle_warnings(const Bundle& bundle) {
  std::vector<Violation> out;
  check_bundle(bundle, nullptr, &out);
  return out;
}

}  // namespace disinfox::stix
