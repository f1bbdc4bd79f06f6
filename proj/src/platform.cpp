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

#include "disinfox/platform.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <unordered_map>

#include "disinfox/error.hpp"
#include "disinfox/text.hpp"

namespace disinfox {

namespace {

bool parse_flag(std::string_view key, std::string_view value) {
  const auto v = text::normalize_key(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off" || v.empty()) return false;
  throw Error(Errc::invalid_argument, std::string(key) + ": expected a boolean, got '" + std::string(value) + "'");
}

std::size_t parse_count(std::string_view key, std::string_view value) {
  const auto trimmed = text::trim(value);
  std::size_t out = 0;
  const auto [end, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), out);
  if (ec != std::errc() || end != trimmed.data() + trimmed.size() || out == 0) {
    throw Error(Errc::invalid_argument, std::string(key) + ": expected a positive integer");
  }
  return out;
}

}  // namespace

PlatformConfig PlatformConfig::from_lookup(const Lookup& lookup, PlatformConfig config) {
  auto get = [&](std::string_view key) -> std::optional<std::string> {
    if (auto v = lookup(key)) return v;
    return lookup(text::upper(key));
  };
  if (auto v = get("bind_addr")) config.bind_addr = *v;
  if (auto v = get("public_bind_addr")) config.public_bind_addr = *v;
  if (auto v = get("data_dir")) config.data_dir = *v;
  if (auto v = get("catalog_path")) config.catalog_path = *v;
  if (auto v = get("seed_on_start")) config.seed_on_start = parse_flag("seed_on_start", *v);
  if (auto v = get("seed_path")) config.seed_path = *v;
  if (auto v = get("static_dir")) config.static_dir = *v;
  if (auto v = get("max_feed_objects")) config.max_feed_objects = parse_count("max_feed_objects", *v);
  return config;
}

PlatformConfig PlatformConfig::from_environment(PlatformConfig defaults) {
  return from_lookup(
      [](std::string_view key) -> std::optional<std::string> {
        const char* value = std::getenv(std::string(key).c_str());
        if (!value) return std::nullopt;
        return std::string(value);
      },
      std::move(defaults));
}

HostPort parse_bind_addr(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(Errc::invalid_argument, "bind address '" + std::string(text) + "' is not host:port");
  }
  HostPort out;
  out.host = std::string(text.substr(0, colon));
  if (out.host.size() > 2 && out.host.front() == '[' && out.host.back() == ']') {
    out.host = out.host.substr(1, out.host.size() - 2);
  }
  const auto port = text.substr(colon + 1);
  const auto [end, ec] = std::from_chars(port.data(), port.data() + port.size(), out.port);
  if (ec != std::errc() || end != port.data() + port.size() || out.port < 0 || out.port > 65535) {
    throw Error(Errc::invalid_argument, "bind address '" + std::string(text) + "' has a bad port");
  }
  return out;
}

Platform::Platform(disarm::Catalog catalog, std::shared_ptr<store::StorageBackend> backend,
                   crypto::ScryptParams scrypt, Clock clock)
    : catalog_(std::move(catalog)),
      clock_(std::move(clock)),
      objects_(backend, clock_),
      accounts_(backend, scrypt, clock_) {}

SubmitResult Platform::submit_incident(const incident::IncidentSubmission& submission, std::string_view uploader) {
  const auto graph = incident::build_incident_graph(submission, catalog_, now());
  const auto objects = graph.objects();
  SubmitResult result;
  result.intrusion_set_id = graph.intrusion_set.id();
  result.upsert = objects_.upsert_objects(objects, uploader, now());
  for (const auto& object : objects) {
    if (auto stored = objects_.get(object.id())) result.objects.push_back(stored->object);
  }
  return result;
}

ImportReport Platform::commit_graphs(std::vector<std::pair<std::size_t, incident::IncidentSubmission>> submissions,
                                     ImportReport report, std::string_view uploader) {
  const auto at = now();
  std::vector<stix::StixObject> batch;
  std::unordered_map<std::string, std::size_t> position;
  for (const auto& [row, submission] : submissions) {
    try {
      const auto graph = incident::build_incident_graph(submission, catalog_, at);
      for (auto& object : graph.objects()) {
        if (auto it = position.find(object.id()); it != position.end()) {
          batch[it->second] = std::move(object);
        } else {
          position.emplace(object.id(), batch.size());
          batch.push_back(std::move(object));
        }
      }
      ++report.accepted;
      report.intrusion_set_ids.push_back(graph.intrusion_set.id());
    } catch (const Error& e) {
      report.rejected.push_back(incident::RowError{row, std::string(to_string(e.code())), e.what()});
    }
  }
  const auto upsert = objects_.upsert_objects(batch, uploader, at);
  report.inserted = upsert.inserted;
  report.updated = upsert.updated;
  std::stable_sort(report.rejected.begin(), report.rejected.end(),
                   [](const incident::RowError& a, const incident::RowError& b) { return a.row < b.row; });
  return report;
}

ImportReport Platform::import_csv(std::string_view csv_bytes, std::string_view uploader) {
  ImportReport report;
  std::vector<std::pair<std::size_t, incident::IncidentSubmission>> submissions;
  for (auto& row : incident::parse_csv_submissions(csv_bytes)) {
    if (auto* error = std::get_if<incident::RowError>(&row.result)) {
      report.rejected.push_back(std::move(*error));
    } else {
      submissions.emplace_back(row.row, std::get<incident::IncidentSubmission>(std::move(row.result)));
    }
  }
  return commit_graphs(std::move(submissions), std::move(report), uploader);
}

ImportReport Platform::import_bundle(std::string_view bundle_bytes, std::string_view uploader) {
  const auto bundle = stix::parse_bundle(bundle_bytes);
  auto parsed = incident::parse_bundle_import(bundle);
  ImportReport report;
  report.rejected = std::move(parsed.rejected);
  report.unreachable = std::move(parsed.unreachable);
  std::vector<std::pair<std::size_t, incident::IncidentSubmission>> submissions;
  for (auto& imported : parsed.incidents) {
    submissions.emplace_back(imported.object_index, std::move(imported.submission));
  }
  return commit_graphs(std::move(submissions), std::move(report), uploader);
}

stix::Bundle Platform::incident_bundle(std::string_view intrusion_set_id) const {
  const auto view = objects_.get_incident_view(intrusion_set_id);
  auto objects = view.objects();
  std::string seed(intrusion_set_id);
  for (const auto& object : objects) seed += "|" + object.id() + "@" + object.json().value("modified", "");
  const auto id = stix::deterministic_id("bundle", seed).str();
  return stix::Bundle{id, std::move(objects), nlohmann::json::object()};
}

}  // namespace disinfox
