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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <string_view>

#include "disinfox/timestamp.hpp"

namespace disinfox::connector {

/// "PT30S", "PT0.2S", "PT5M", "P1DT2H", ... Throws invalid-argument for
/// anything else or a zero duration.
std::chrono::microseconds parse_duration(std::string_view text);

struct ConnectorConfig {
  /// Base URL of the public API, e.g. http://127.0.0.1:8081.
  std::string feed_url;
  std::string feed_api_key;
  std::chrono::microseconds run_every = std::chrono::seconds(60);
  std::filesystem::path state_path = "connector.state";
  /// Where the bundled mock sink keeps its objects.
  std::filesystem::path sink_path = "connector-sink.jsonl";
  std::chrono::seconds timeout = std::chrono::seconds(30);

  using Lookup = std::function<std::optional<std::string>(std::string_view key)>;
  /// Reads feed_url, feed_api_key, run_every, state_path, sink_path,
  /// timeout_seconds (upper-case spellings also accepted). Throws
  /// invalid-argument when feed_url or feed_api_key is missing.
  static ConnectorConfig from_lookup(const Lookup& lookup);
  static ConnectorConfig from_environment();
};

enum class RunStatus { never, ok, error };

std::string_view to_string(RunStatus status);

/// Persisted between runs as `key=value` lines.
struct ConnectorState {
  std::optional<Timestamp> last_run;
  RunStatus last_status = RunStatus::never;
  std::string last_error;
  std::uint64_t total_objects_forwarded = 0;
  std::uint64_t last_forwarded = 0;

  friend bool operator==(const ConnectorState&, const ConnectorState&) = default;
};

/// A missing file yields the initial state. Throws io-error for an
/// unreadable or corrupt file.
ConnectorState load_state(const std::filesystem::path& path);
/// Write-then-rename.
void save_state(const std::filesystem::path& path, const ConnectorState& state);

struct SinkReport {
  std::size_t ingested = 0;
  std::size_t deduplicated = 0;
  std::size_t errors = 0;
};

/// Downstream ingestion boundary. Receives bundles exactly as fetched.
class Sink {
 public:
  virtual ~Sink() = default;
  virtual SinkReport ingest(std::string_view bundle_bytes) = 0;
};

/// In-process stand-in for a downstream CTI platform: keeps the newest
/// version of each object by `modified` (falling back to `created`). A
/// bundle that does not parse is rejected whole and counted as one error.
/// With a path, the object set is loaded from and appended to that file.
class MockSink final : public Sink {
 public:
  MockSink() = default;
  explicit MockSink(std::filesystem::path path);

  SinkReport ingest(std::string_view bundle_bytes) override;

  /// id -> modified of the retained version.
  std::map<std::string, Timestamp> object_set() const;
  std::size_t size() const;
  /// The retained object, serialized compactly.
  std::optional<std::string> object_json(const std::string& id) const;

 private:
  struct Entry {
    Timestamp modified;
    std::string json;
  };

  mutable std::mutex mutex_;
  std::map<std::string, Entry> objects_;
  std::optional<std::filesystem::path> path_;
};

/// 401 from the feed. Not retried.
class CredentialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunReport {
  ConnectorState state;
  std::size_t forwarded = 0;
  SinkReport sink;
};

/// One fetch-forward cycle. The cursor is the previous last_run (epoch
/// on the first run); on success last_run becomes the instant the
/// request was initiated. Failures keep last_run and record the error.
/// Throws CredentialError on 401.
RunReport run_once(const ConnectorConfig& config, const ConnectorState& state, Sink& sink,
                   const Clock& clock = &Timestamp::now);

/// run_once every config.run_every until `stop` is requested, saving
/// state after every cycle. `on_cycle` (optional) sees each report.
void run_loop(const ConnectorConfig& config, Sink& sink, std::stop_token stop,
              const std::function<void(const RunReport&)>& on_cycle = {}, const Clock& clock = &Timestamp::now);

}  // namespace disinfox::connector
