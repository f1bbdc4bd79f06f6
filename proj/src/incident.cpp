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

#include "disinfox/incident.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

#include "disinfox/countries.hpp"
#include "disinfox/error.hpp"
#include "disinfox/text.hpp"

namespace disinfox::incident {

using nlohmann::json;
using stix::ObjectType;
using stix::RelationshipType;
using stix::StixObject;

namespace {

std::vector<std::string> dedupe(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& v : values) {
    auto clean = text::squash(v);
    if (clean.empty()) continue;
    if (seen.insert(text::normalize_key(clean)).second) out.push_back(std::move(clean));
  }
  return out;
}

std::vector<std::string> string_list(const json& body, std::string_view key) {
  std::vector<std::string> out;
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) return out;
  if (it->is_string()) {
    for (auto& part : text::split(it->get<std::string>(), ';')) out.push_back(std::move(part));
    return out;
  }
  if (!it->is_array()) throw Error(Errc::validation, "'" + std::string(key) + "' must be a list of strings");
  for (const auto& v : *it) {
    if (!v.is_string()) throw Error(Errc::validation, "'" + std::string(key) + "' must be a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::form: return "form";
    case SourceKind::csv: return "csv";
    case SourceKind::bundle_import: return "bundle-import";
  }
  return "";
}

IncidentSubmission normalized(IncidentSubmission s) {
  s.name = text::squash(s.name);
  if (s.name.empty()) throw Error(Errc::validation, "incident name is empty");
  if (!s.first_seen.ok()) throw Error(Errc::validation, "incident first_seen is not a valid date");
  s.description = std::string(text::trim(s.description));
  s.target_countries = dedupe(s.target_countries);
  s.threat_actors = dedupe(s.threat_actors);
  s.technique_refs = dedupe(s.technique_refs);
  return s;
}

IncidentSubmission submission_from_json(const json& body, SourceKind kind) {
  if (!body.is_object()) throw Error(Errc::validation, "incident payload must be a JSON object");
  IncidentSubmission s;
  s.source_kind = kind;
  if (const auto it = body.find("name"); it != body.end() && it->is_string()) s.name = it->get<std::string>();
  if (const auto it = body.find("description"); it != body.end() && it->is_string()) {
    s.description = it->get<std::string>();
  }
  const auto date = body.find("first_seen");
  if (date == body.end() || !date->is_string()) throw Error(Errc::validation, "'first_seen' (YYYY-MM-DD) is required");
  const auto parsed = parse_date(text::trim(date->get<std::string>()));
  if (!parsed) throw Error(Errc::validation, "'first_seen' must be a YYYY-MM-DD date");
  s.first_seen = *parsed;
  s.target_countries = string_list(body, "target_countries");
  s.threat_actors = string_list(body, "threat_actors");
  s.technique_refs = string_list(body, body.contains("techniques") ? "techniques" : "technique_refs");
  return normalized(std::move(s));
}

json submission_to_json(const IncidentSubmission& s) {
  return json{{"name", s.name},
              {"description", s.description},
              {"first_seen", format_date(s.first_seen)},
              {"target_countries", s.target_countries},
              {"threat_actors", s.threat_actors},
              {"techniques", s.technique_refs},
              {"source_kind", to_string(s.source_kind)}};
}

std::vector<StixObject> IncidentGraph::objects() const {
  std::vector<StixObject> out;
  out.reserve(sdo_count() + sro_count());
  out.push_back(intrusion_set);
  out.insert(out.end(), actors.begin(), actors.end());
  out.insert(out.end(), locations.begin(), locations.end());
  out.insert(out.end(), techniques.begin(), techniques.end());
  out.insert(out.end(), relationships.begin(), relationships.end());
  return out;
}

IncidentGraph build_incident_graph(const IncidentSubmission& submission, const disarm::Catalog& catalog,
                                   Timestamp at) {
  const auto s = normalized(submission);

  std::vector<const disarm::Technique*> techniques;
  std::vector<std::string> unresolved_techniques;
  std::unordered_set<std::string> seen_codes;
  for (const auto& ref : s.technique_refs) {
    const auto* technique = catalog.resolve(ref);
    if (!technique) {
      unresolved_techniques.push_back(ref);
    } else if (seen_codes.insert(technique->external_id).second) {
      techniques.push_back(technique);
    }
  }

  std::vector<const Country*> countries;
  std::vector<std::string> unresolved_countries;
  std::unordered_set<std::string_view> seen_countries;
  for (const auto& name : s.target_countries) {
    const auto* country = find_country(name);
    if (!country) {
      unresolved_countries.push_back(name);
    } else if (seen_countries.insert(country->alpha2).second) {
      countries.push_back(country);
    }
  }

  if (!unresolved_techniques.empty()) {
    std::string list;
    for (const auto& r : unresolved_techniques) list += (list.empty() ? "" : ", ") + r;
    throw Error(Errc::unknown_technique, "unknown DISARM technique(s): " + list,
                json{{"unresolved", unresolved_techniques}, {"unknown_countries", unresolved_countries}});
  }
  if (!unresolved_countries.empty()) {
    std::string list;
    for (const auto& r : unresolved_countries) list += (list.empty() ? "" : ", ") + r;
    throw Error(Errc::unknown_country, "unknown country name(s): " + list,
                json{{"unresolved", unresolved_countries}});
  }

  IncidentGraph graph{stix::make_intrusion_set(s.name, s.description, Timestamp::from_date(s.first_seen), at),
                      {}, {}, {}, {}};
  for (const auto& actor : s.threat_actors) graph.actors.push_back(stix::make_threat_actor(actor, at));
  for (const auto* country : countries) {
    graph.locations.push_back(stix::make_location(country->name, country->alpha2, at));
  }
  for (const auto* technique : techniques) graph.techniques.push_back(technique->object);

  for (const auto& actor : graph.actors) {
    graph.relationships.push_back(
        stix::make_relationship(graph.intrusion_set, actor, RelationshipType::attributed_to, at));
  }
  for (const auto& location : graph.locations) {
    graph.relationships.push_back(
        stix::make_relationship(graph.intrusion_set, location, RelationshipType::targets, at));
  }
  for (const auto& technique : graph.techniques) {
    graph.relationships.push_back(stix::make_relationship(graph.intrusion_set, technique, RelationshipType::uses, at));
  }
  return graph;
}

stix::Bundle graph_to_bundle(const IncidentGraph& graph) { return stix::make_bundle(graph.objects()); }

BundleImport parse_bundle_import(const stix::Bundle& bundle) {
  std::unordered_map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < bundle.objects.size(); ++i) index_of.emplace(bundle.objects[i].id(), i);

  std::unordered_map<std::string, std::vector<std::size_t>> outgoing;
  for (std::size_t i = 0; i < bundle.objects.size(); ++i) {
    const auto& obj = bundle.objects[i];
    if (obj.kind() != ObjectType::relationship) continue;
    if (const auto source = obj.string_property("source_ref")) outgoing[*source].push_back(i);
  }

  BundleImport result;
  std::vector<bool> reachable(bundle.objects.size(), false);
  bool any_intrusion_set = false;

  for (std::size_t i = 0; i < bundle.objects.size(); ++i) {
    const auto& obj = bundle.objects[i];
    if (obj.kind() != ObjectType::intrusion_set) continue;
    any_intrusion_set = true;
    reachable[i] = true;

    IncidentSubmission s;
    s.source_kind = SourceKind::bundle_import;
    s.name = obj.name().value_or("");
    s.description = obj.string_property("description").value_or("");
    auto first_seen = obj.string_property("first_seen") ? Timestamp::parse(*obj.string_property("first_seen"))
                                                        : std::nullopt;
    if (!first_seen) first_seen = obj.created();
    if (!first_seen) {
      result.rejected.push_back(RowError{i, std::string(to_string(Errc::validation)),
                                         obj.id() + " has neither first_seen nor created"});
      continue;
    }
    s.first_seen = first_seen->date();

    if (const auto it = outgoing.find(obj.id()); it != outgoing.end()) {
      for (const auto rel_index : it->second) {
        const auto& rel = bundle.objects[rel_index];
        const auto type = stix::parse_relationship_type(rel.string_property("relationship_type").value_or(""));
        const auto target_it = index_of.find(rel.string_property("target_ref").value_or(""));
        if (!type || target_it == index_of.end()) continue;
        const auto& target = bundle.objects[target_it->second];
        if (!stix::allowed_triple(ObjectType::intrusion_set, *type, target.kind())) continue;
        reachable[rel_index] = true;
        reachable[target_it->second] = true;
        switch (*type) {
          case RelationshipType::attributed_to:
            if (auto name = target.name()) s.threat_actors.push_back(*name);
            break;
          case RelationshipType::targets:
            if (auto name = target.name()) {
              s.target_countries.push_back(*name);
            } else if (auto code = target.string_property("country")) {
              s.target_countries.push_back(*code);
            }
            break;
          case RelationshipType::uses:
            if (auto code = disarm::disarm_external_id(target)) {
              s.technique_refs.push_back(*code);
            } else if (auto name = target.name()) {
              s.technique_refs.push_back(*name);
            }
            break;
        }
      }
    }

    try {
      result.incidents.push_back(ImportedIncident{i, obj.id(), normalized(std::move(s))});
    } catch (const Error& e) {
      result.rejected.push_back(RowError{i, std::string(to_string(e.code())), obj.id() + ": " + e.what()});
    }
  }

  if (!any_intrusion_set) throw Error(Errc::empty_import, "bundle contains no intrusion-set");
  for (std::size_t i = 0; i < bundle.objects.size(); ++i) {
    if (!reachable[i]) result.unreachable.push_back(bundle.objects[i].id());
  }
  return result;
}

}  // namespace disinfox::incident
