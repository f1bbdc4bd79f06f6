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

#include <sstream>

#include "disinfox/http_api.hpp"
#include "disinfox/text.hpp"

namespace disinfox::http {

using nlohmann::json;

json ApiError::to_json() const {
  return json{{"status", status}, {"code", code}, {"message", message}, {"details", details}};
}

int status_for(Errc code) {
  switch (code) {
    case Errc::invalid_type:
    case Errc::invalid_argument:
    case Errc::relationship_constraint:
    case Errc::parse_error:
    case Errc::encoding:
    case Errc::wrong_type:
      return 400;
    case Errc::bad_credentials:
      return 401;
    case Errc::not_found:
      return 404;
    case Errc::duplicate_username:
      return 409;
    case Errc::schema_error:
    case Errc::empty_catalog:
    case Errc::unknown_technique:
    case Errc::unknown_country:
    case Errc::validation:
    case Errc::empty_import:
      return 422;
    case Errc::io:
      return 500;
  }
  return 500;
}

ApiError api_error_from(const Error& error) {
  return ApiError{status_for(error.code()), std::string(to_string(error.code())), error.what(), error.details()};
}

json graph_json(const incident::IncidentGraph& view) {
  json nodes = json::array();
  auto add_node = [&](const stix::StixObject& object) {
    json node{{"id", object.id()}, {"type", object.type()}, {"label", object.name().value_or(object.id())}};
    if (auto code = disarm::disarm_external_id(object)) node["external_id"] = *code;
    nodes.push_back(std::move(node));
  };
  add_node(view.intrusion_set);
  for (const auto* group : {&view.actors, &view.locations, &view.techniques}) {
    for (const auto& object : *group) add_node(object);
  }
  json edges = json::array();
  for (const auto& rel : view.relationships) {
    edges.push_back(json{{"id", rel.id()},
                         {"source", rel.string_property("source_ref").value_or("")},
                         {"target", rel.string_property("target_ref").value_or("")},
                         {"relationship_type", rel.string_property("relationship_type").value_or("")}});
  }
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

namespace {

std::string table_cell(std::string_view value) {
  std::string out;
  for (char c : text::squash(value)) {
    if (c == '|') out += "\\|";
    else out.push_back(c);
  }
  return out;
}

}  // namespace

std::string report_markup(const incident::IncidentGraph& view, const disarm::Catalog& catalog) {
  const auto& is = view.intrusion_set;
  std::ostringstream out;
  out << "# " << is.name().value_or(is.id()) << "\n\n";
  out << "- **Incident id:** `" << is.id() << "`\n";
  std::string first_seen;
  if (auto fs = is.string_property("first_seen")) {
    if (auto ts = Timestamp::parse(*fs)) first_seen = format_date(ts->date());
  }
  out << "- **First seen:** " << (first_seen.empty() ? "unknown" : first_seen) << "\n\n";

  out << "## Description\n\n";
  const auto description = is.string_property("description").value_or("");
  out << (description.empty() ? "_No description provided._" : description) << "\n\n";

  out << "## Target countries\n\n";
  if (view.locations.empty()) out << "_None recorded._\n";
  for (const auto& location : view.locations) {
    out << "- " << location.name().value_or(location.id());
    if (auto code = location.string_property("country")) out << " (" << *code << ")";
    out << "\n";
  }
  out << "\n## Threat actors\n\n";
  if (view.actors.empty()) out << "_None recorded._\n";
  for (const auto& actor : view.actors) out << "- " << actor.name().value_or(actor.id()) << "\n";

  out << "\n## Techniques\n\n";
  out << "| External ID | Technique | Tactic |\n";
  out << "| --- | --- | --- |\n";
  for (const auto& technique : view.techniques) {
    const auto code = disarm::disarm_external_id(technique).value_or("");
    std::string tactic;
    if (const auto* entry = catalog.find_by_external_id(code); entry && !entry->tactic_phases.empty()) {
      tactic = entry->tactic_phases.front();
    }
    out << "| " << table_cell(code) << " | " << table_cell(technique.name().value_or("")) << " | "
        << table_cell(tactic) << " |\n";
  }
  return out.str();
}

json incident_row_json(const store::IncidentRow& row) {
  return json{{"id", row.id},
              {"name", row.name},
              {"description_excerpt", row.description_excerpt},
              {"first_seen", row.first_seen}};
}

json incident_view_json(const incident::IncidentGraph& view) {
  auto objects = [](const std::vector<stix::StixObject>& list) {
    json out = json::array();
    for (const auto& o : list) out.push_back(o.json());
    return out;
  };
  return json{{"intrusion_set", view.intrusion_set.json()},
              {"actors", objects(view.actors)},
              {"locations", objects(view.locations)},
              {"techniques", objects(view.techniques)},
              {"relationships", objects(view.relationships)}};
}

json dashboard_json(const store::DashboardStats& stats) {
  json recent = json::array();
  for (const auto& row : stats.recent_incidents) recent.push_back(incident_row_json(row));
  json actors = json::array();
  for (const auto& e : stats.top_actors) {
    actors.push_back(json{{"id", e.id}, {"name", e.name}, {"incident_count", e.incident_count}});
  }
  json countries = json::array();
  for (const auto& e : stats.top_countries) {
    countries.push_back(
        json{{"id", e.id}, {"country", e.name}, {"country_code", e.country_code}, {"incident_count", e.incident_count}});
  }
  return json{{"recent_incidents", std::move(recent)}, {"top_actors", std::move(actors)},
              {"top_countries", std::move(countries)}};
}

json import_report_json(const ImportReport& report) {
  json rejected = json::array();
  for (const auto& r : report.rejected) {
    rejected.push_back(json{{"row", r.row}, {"code", r.code}, {"reason", r.reason}});
  }
  return json{{"accepted", report.accepted},
              {"rejected", std::move(rejected)},
              {"inserted", report.inserted},
              {"updated", report.updated},
              {"unreachable", report.unreachable},
              {"intrusion_set_ids", report.intrusion_set_ids}};
}

std::string feed_bundle(const std::vector<stix::StixObject>& objects, Timestamp newer_than) {
  std::string seed = "feed|" + newer_than.to_string() + "|" + std::to_string(objects.size());
  if (!objects.empty()) {
    const auto& last = objects.back();
    seed += "|" + last.id() + "@" + last.json().value("modified", "");
  }
  stix::Bundle bundle{stix::deterministic_id("bundle", seed).str(), objects, json::object()};
  return stix::serialize_bundle(bundle);
}

}  // namespace disinfox::http
