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

#include "disinfox/connector.hpp"

#include <charconv>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "disinfox/error.hpp"
#include "disinfox/text.hpp"

namespace disinfox::connector {

using nlohmann::json;

std::chrono::microseconds parse_duration(std::string_view text) {
  static const std::regex pattern(
      R"(P(?:(\d+(?:\.\d+)?)D)?(?:T(?:(\d+(?:\.\d+)?)H)?(?:(\d+(?:\.\d+)?)M)?(?:(\d+(?:\.\d+)?)S)?)?)");
  const std::string input(text::upper(text::trim(text)));
  std::smatch m;
  if (input.empty() || input == "P" || input.back() == 'T' || !std::regex_match(input, m, pattern)) {
    throw Error(Errc::invalid_argument, "'" + std::string(text) + "' is not an ISO 8601 duration such as PT30S");
  }
  constexpr long double kUnits[] = {86400e6L, 3600e6L, 60e6L, 1e6L};
  long double micros = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (m[i + 1].matched) micros += std::stold(m[i + 1].str()) * kUnits[i];
  }
  const auto rounded = static_cast<std::int64_t>(micros + 0.5L);
  if (rounded <= 0) throw Error(Errc::invalid_argument, "duration '" + std::string(text) + "' must be positive");
  return std::chrono::microseconds(rounded);
}

ConnectorConfig ConnectorConfig::from_lookup(const Lookup& lookup) {
  auto get = [&](std::string_view key) -> std::optional<std::string> {
    if (auto v = lookup(key)) return v;
    return lookup(text::upper(key));
  };
  ConnectorConfig config;
  const auto url = get("feed_url");
  const auto key = get("feed_api_key");
  if (!url || text::trim(*url).empty()) throw Error(Errc::invalid_argument, "feed_url is not set");
  if (!key || text::trim(*key).empty()) throw Error(Errc::invalid_argument, "feed_api_key is not set");
  config.feed_url = std::string(text::trim(*url));
  config.feed_api_key = std::string(text::trim(*key));
  if (auto v = get("run_every")) config.run_every = parse_duration(*v);
  if (auto v = get("state_path")) config.state_path = *v;
  if (auto v = get("sink_path")) config.sink_path = *v;
  if (auto v = get("timeout_seconds")) {
    int seconds = 0;
    const auto t = text::trim(*v);
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), seconds);
    if (ec != std::errc() || end != t.data() + t.size() || seconds <= 0) {
      throw Error(Errc::invalid_argument, "timeout_seconds must be a positive integer");
    }
    config.timeout = std::chrono::seconds(seconds);
  }
  return config;
}

ConnectorConfig ConnectorConfig::from_environment() {
  return from_lookup([](std::string_view key) -> std::optional<std::string> {
    const char* value = std::getenv(std::string(key).c_str());
    if (!value) return std::nullopt;
    return std::string(value);
  });
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::never: return "never";
    case RunStatus::ok: return "ok";
    case RunStatus::error: return "error";
  }
  return "never";
}

namespace {

std::uint64_t parse_u64(const std::string& value, const std::filesystem::path& path) {
  std::uint64_t out = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw Error(Errc::io, "corrupt connector state in " + path.string());
  }
  return out;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error(Errc::io, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io, "cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace

ConnectorState load_state(const std::filesystem::path& path) {
  ConnectorState state;
  std::ifstream in(path);
  if (!in) return state;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::io, "corrupt connector state in " + path.string());
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 1);
    if (key == "last_run") {
      if (value.empty()) continue;
      state.last_run = Timestamp::parse(value);
      if (!state.last_run) throw Error(Errc::io, "corrupt last_run in " + path.string());
    } else if (key == "last_status") {
      state.last_status = value == "ok" ? RunStatus::ok : value == "error" ? RunStatus::error : RunStatus::never;
    } else if (key == "last_error") {
      state.last_error = value;
    } else if (key == "total_objects_forwarded") {
      state.total_objects_forwarded = parse_u64(value, path);
    } else if (key == "last_forwarded") {
      state.last_forwarded = parse_u64(value, path);
    }
  }
  return state;
}

void save_state(const std::filesystem::path& path, const ConnectorState& state) {
  std::string error = state.last_error;
  for (auto& c : error) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::ostringstream out;
  out << "# disinfox connector state\n"
      << "last_run=" << (state.last_run ? state.last_run->to_string() : "") << "\n"
      << "last_status=" << to_string(state.last_status) << "\n"
      << "last_error=" << error << "\n"
      << "total_objects_forwarded=" << state.total_objects_forwarded << "\n"
      << "last_forwarded=" << state.last_forwarded << "\n";
  write_file_atomically(path, out.str());
}

// ---- MockSink ---------------------------------------------------------------

namespace {

std::optional<Timestamp> version_of(const json& object) {
  for (const char* key : {"modified", "created"}) {
    if (const auto it = object.find(key); it != object.end() && it->is_string()) {
      if (auto ts = Timestamp::parse(it->get<std::string>())) return ts;
    }
  }
  return std::nullopt;
}

}  // namespace

MockSink::MockSink(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_);
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    json object;
    try {
      object = json::parse(line);
    } catch (const json::parse_error&) {
      continue;  // torn trailing line
    }
    const auto id = object.value("id", "");
    const auto modified = version_of(object).value_or(Timestamp::epoch());
    auto& entry = objects_[id];
    if (entry.json.empty() || entry.modified < modified) entry = Entry{modified, object.dump()};
  }
}

SinkReport MockSink::ingest(std::string_view bundle_bytes) {
  SinkReport report;
  json bundle;
  try {
    bundle = json::parse(bundle_bytes);
  } catch (const json::parse_error&) {
    report.errors = 1;
    return report;
  }
  if (!bundle.is_object() || bundle.value("type", "") != "bundle" || !bundle.contains("objects") ||
      !bundle["objects"].is_array()) {
    report.errors = 1;
    return report;
  }
  for (const auto& object : bundle["objects"]) {
    if (!object.is_object() || !object.contains("id") || !object["id"].is_string() || !object.contains("type")) {
      report.errors = 1;
      return report;
    }
  }

  std::lock_guard lock(mutex_);
  std::string appended;
  for (const auto& object : bundle["objects"]) {
    const auto id = object["id"].get<std::string>();
    const auto modified = version_of(object).value_or(Timestamp::epoch());
    const auto it = objects_.find(id);
    if (it != objects_.end() && !(it->second.modified < modified)) {
      ++report.deduplicated;
      continue;
    }
    auto dumped = object.dump();
    if (path_) appended += dumped + "\n";
    objects_[id] = Entry{modified, std::move(dumped)};
    ++report.ingested;
  }
  if (path_ && !appended.empty()) {
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    out << appended;
    out.flush();
    if (!out) throw Error(Errc::io, "cannot append to sink file " + path_->string());
  }
  return report;
}

std::map<std::string, Timestamp> MockSink::object_set() const {
  std::lock_guard lock(mutex_);
  std::map<std::string, Timestamp> out;
  for (const auto& [id, entry] : objects_) out.emplace(id, entry.modified);
  return out;
}

std::size_t MockSink::size() const {
  std::lock_guard lock(mutex_);
  return objects_.size();
}

std::optional<std::string> MockSink::object_json(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = objects_.find(id);
  if (it == objects_.end()) return std::nullopt;
  return it->second.json;
}

// ---- runs -------------------------------------------------------------------

namespace {

struct FeedEndpoint {
  std::string origin;
  std::string path;
};

FeedEndpoint split_feed_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
    throw Error(Errc::invalid_argument, "feed_url must be an http:// URL, got '" + url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  FeedEndpoint out;
  out.origin = url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path.empty() && path.back() == '/') path.pop_back();
  if (!path.ends_with("/incidents")) path += "/incidents";
  out.path = path;
  return out;
}

}  // namespace

RunReport run_once(const ConnectorConfig& config, const ConnectorState& state, Sink& sink, const Clock& clock) {
  const auto endpoint = split_feed_url(config.feed_url);
  const auto cursor = state.last_run.value_or(Timestamp::epoch());
  const auto initiated = clock();

  RunReport report;
  report.state = state;
  auto fail = [&](std::string message) {
    report.state.last_status = RunStatus::error;
    report.state.last_error = std::move(message);
    report.state.last_forwarded = 0;
    return report;
  };

  httplib::Client client(endpoint.origin);
  const auto timeout = std::chrono::duration_cast<std::chrono::seconds>(config.timeout).count();
  client.set_connection_timeout(timeout, 0);
  client.set_read_timeout(timeout, 0);
  const httplib::Params params{{"newer_than", cursor.to_string()}};
  const httplib::Headers headers{{"Authorization", config.feed_api_key}};
  const auto res = client.Get(endpoint.path, params, headers);
  if (!res) return fail("feed request failed: " + httplib::to_string(res.error()));
  if (res->status == 401) {
    throw CredentialError("feed rejected the API key (HTTP 401): " + res->body);
  }
  if (res->status != 200) {
    std::string code;
    try {
      code = json::parse(res->body).value("code", "");
    } catch (const json::exception&) {
    }
    return fail("feed returned HTTP " + std::to_string(res->status) + (code.empty() ? "" : " " + code));
  }

  std::size_t count = 0;
  try {
    const auto doc = json::parse(res->body);
    count = doc.at("objects").size();
  } catch (const json::exception& e) {
    return fail(std::string("feed response is not a bundle: ") + e.what());
  }

  report.sink = sink.ingest(res->body);
  if (report.sink.errors > 0) return fail("sink rejected the bundle");

  report.forwarded = count;
  report.state.last_run = state.last_run ? std::max(*state.last_run, initiated) : initiated;
  report.state.last_status = RunStatus::ok;
  report.state.last_error.clear();
  report.state.last_forwarded = count;
  report.state.total_objects_forwarded += count;
  return report;
}

void run_loop(const ConnectorConfig& config, Sink& sink, std::stop_token stop,
              const std::function<void(const RunReport&)>& on_cycle, const Clock& clock) {
  auto state = load_state(config.state_path);
  std::mutex mutex;
  std::condition_variable_any wake;
  while (!stop.stop_requested()) {
    RunReport report;
    try {
      report = run_once(config, state, sink, clock);
    } catch (const CredentialError& e) {
      state.last_status = RunStatus::error;
      state.last_error = e.what();
      save_state(config.state_path, state);
      throw;
    } catch (const std::exception& e) {
      report.state = state;
      report.state.last_status = RunStatus::error;
      report.state.last_error = e.what();
    }
    state = report.state;
    save_state(config.state_path, state);
    if (state.last_status == RunStatus::ok) {
      spdlog::info("forwarded {} objects (total {})", report.forwarded, state.total_objects_forwarded);
    } else {
      spdlog::warn("run failed: {}", state.last_error);
    }
    if (on_cycle) on_cycle(report);

    std::unique_lock lock(mutex);
    wake.wait_for(lock, stop, config.run_every, [] { return false; });
  }
}

}  // namespace disinfox::connector
