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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <thread>

#include "disinfox/connector.hpp"
#include "disinfox/error.hpp"
#include "disinfox/synth.hpp"
#include "harness.hpp"

namespace disinfox::connector {
namespace {

using namespace std::chrono_literals;
using nlohmann::json;
using testing::Instance;
using testing::TempDir;

TEST(DurationTest, ParsesIsoDurations) {
  EXPECT_EQ(parse_duration("PT30S"), 30s);
  EXPECT_EQ(parse_duration("PT1H"), 1h);
  EXPECT_EQ(parse_duration("P1DT2H3M4S"), 1 * 24h + 2h + 3min + 4s);
  EXPECT_EQ(parse_duration("pt0.2s"), 200ms);
  EXPECT_EQ(parse_duration("PT1.5M"), 90s);
  for (const char* bad : {"", "P", "PT", "30S", "PT-1S", "PT0S", "P1H", "PT1S2", "1 minute"}) {
    EXPECT_THROW(parse_duration(bad), Error) << bad;
  }
}

TEST(ConfigTest, ReadsKeysWithUppercaseFallback) {
  std::map<std::string, std::string> env{{"FEED_URL", "http://127.0.0.1:9"},
                                         {"feed_api_key", "dfx_x"},
                                         {"RUN_EVERY", "PT5M"},
                                         {"state_path", "/tmp/s"},
                                         {"timeout_seconds", "7"}};
  auto lookup = [&](std::string_view key) -> std::optional<std::string> {
    const auto it = env.find(std::string(key));
    return it == env.end() ? std::nullopt : std::optional(it->second);
  };
  const auto config = ConnectorConfig::from_lookup(lookup);
  EXPECT_EQ(config.feed_url, "http://127.0.0.1:9");
  EXPECT_EQ(config.run_every, 5min);
  EXPECT_EQ(config.state_path, "/tmp/s");
  EXPECT_EQ(config.sink_path, "connector-sink.jsonl");
  EXPECT_EQ(config.timeout, 7s);

  env["timeout_seconds"] = "zero";
  EXPECT_THROW(ConnectorConfig::from_lookup(lookup), Error);
  env.erase("timeout_seconds");
  env.erase("feed_api_key");
  EXPECT_THROW(ConnectorConfig::from_lookup(lookup), Error);
}

TEST(StateTest, MissingFileMeansNeverRun) {
  TempDir dir;
  const auto state = load_state(dir.path() / "absent.state");
  EXPECT_EQ(state, ConnectorState{});
  EXPECT_FALSE(state.last_run);
}

TEST(StateTest, SaveLoadRoundTrip) {
  TempDir dir;
  ConnectorState state;
  state.last_run = Timestamp::parse("2024-01-02T03:04:05.000006Z");
  state.last_status = RunStatus::error;
  state.last_error = "feed returned HTTP 500";
  state.total_objects_forwarded = 1370;
  state.last_forwarded = 29;
  save_state(dir.path() / "c.state", state);
  EXPECT_EQ(load_state(dir.path() / "c.state"), state);
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "c.state.tmp"));

  std::ofstream(dir.path() / "bad.state") << "last_run=yesterday\n";
  EXPECT_THROW(load_state(dir.path() / "bad.state"), Error);
}

std::string bundle_of(const std::vector<json>& objects) {
  return json{{"type", "bundle"}, {"id", "bundle--00000000-0000-4000-8000-000000000000"}, {"objects", objects}}.dump();
}

json object(const std::string& id, const std::string& modified) {
  return json{{"type", "threat-actor"}, {"id", id}, {"modified", modified}};
}

TEST(MockSinkTest, KeepsNewestVersionAndPersists) {
  TempDir dir;
  const auto path = dir.path() / "sink.jsonl";
  {
    MockSink sink(path);
    auto r = sink.ingest(bundle_of({object("a", "2024-01-01T00:00:00Z"), object("b", "2024-01-01T00:00:00Z")}));
    EXPECT_EQ(r.ingested, 2u);
    r = sink.ingest(bundle_of({object("a", "2024-01-01T00:00:00Z"), object("b", "2024-02-01T00:00:00Z"),
                               object("c", "2023-01-01T00:00:00Z")}));
    EXPECT_EQ(r.ingested, 2u);
    EXPECT_EQ(r.deduplicated, 1u);
    r = sink.ingest(bundle_of({object("b", "2023-12-01T00:00:00Z")}));
    EXPECT_EQ(r.deduplicated, 1u);
    EXPECT_EQ(sink.size(), 3u);
  }
  std::ofstream(path, std::ios::app) << "{\"id\":\"torn";
  MockSink reopened(path);
  EXPECT_EQ(reopened.size(), 3u);
  EXPECT_EQ(reopened.object_set().at("b"), *Timestamp::parse("2024-02-01T00:00:00Z"));
  EXPECT_NE(reopened.object_json("a")->find("threat-actor"), std::string::npos);
}

TEST(MockSinkTest, MalformedBundlesAreErrors) {
  MockSink sink;
  EXPECT_EQ(sink.ingest("{").errors, 1u);
  EXPECT_EQ(sink.ingest(R"({"type":"report","objects":[]})").errors, 1u);
  EXPECT_EQ(sink.ingest(R"({"type":"bundle","objects":[{"type":"x"}]})").errors, 1u);
  EXPECT_EQ(sink.size(), 0u);
}

class ConnectorRunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    config.feed_url = instance.feed_url();
    config.feed_api_key = instance.api_key();
    config.state_path = dir.path() / "connector.state";
    config.sink_path = dir.path() / "sink.jsonl";
    config.timeout = 5s;
  }
  Instance instance;
  TempDir dir;
  ConnectorConfig config;
};

TEST_F(ConnectorRunTest, ForwardsDeltaThenNothing) {
  instance.platform().submit_incident(synth::bucha_example(), "tester");
  MockSink sink;
  const auto first = run_once(config, ConnectorState{}, sink);
  EXPECT_EQ(first.state.last_status, RunStatus::ok);
  EXPECT_EQ(first.forwarded, 29u);
  EXPECT_EQ(first.state.total_objects_forwarded, 29u);
  EXPECT_EQ(sink.object_set(), instance.platform().objects().modified_index());
  ASSERT_TRUE(first.state.last_run);

  const auto second = run_once(config, first.state, sink);
  EXPECT_EQ(second.forwarded, 0u);
  EXPECT_EQ(second.state.total_objects_forwarded, 29u);
  EXPECT_GE(*second.state.last_run, *first.state.last_run);
}

TEST_F(ConnectorRunTest, CursorNeverMovesBackwards) {
  MockSink sink;
  ConnectorState state;
  state.last_run = Timestamp::from_micros(4'000'000'000'000'000);  // far future
  const auto report = run_once(config, state, sink, [] { return Timestamp::from_micros(5); });
  EXPECT_EQ(report.state.last_run, state.last_run);
}

TEST_F(ConnectorRunTest, FeedUrlMayIncludeEndpointPath) {
  instance.platform().submit_incident(synth::bucha_example(), "tester");
  config.feed_url = instance.feed_url() + "/incidents/";
  MockSink sink;
  EXPECT_EQ(run_once(config, ConnectorState{}, sink).forwarded, 29u);
}

TEST_F(ConnectorRunTest, FailuresKeepCursor) {
  MockSink sink;
  ConnectorState state;
  state.last_run = Timestamp::from_micros(42);
  config.feed_api_key = "dfx_0123456789abcdef_" + std::string(64, 'a');
  EXPECT_THROW(run_once(config, state, sink), CredentialError);

  config.feed_api_key = instance.api_key();
  config.feed_url = "http://127.0.0.1:1";
  const auto unreachable = run_once(config, state, sink);
  EXPECT_EQ(unreachable.state.last_status, RunStatus::error);
  EXPECT_EQ(unreachable.state.last_run, state.last_run);
  EXPECT_FALSE(unreachable.state.last_error.empty());

  config.feed_url = "https://example.invalid";
  EXPECT_THROW(run_once(config, state, sink), Error);
}

TEST_F(ConnectorRunTest, LoopRunsUntilStopped) {
  config.run_every = parse_duration("PT0.2S");
  MockSink sink;
  std::stop_source stop;
  std::atomic<int> cycles = 0;
  std::thread loop([&] {
    run_loop(config, sink, stop.get_token(), [&](const RunReport& report) {
      EXPECT_EQ(report.state.last_status, RunStatus::ok);
      if (++cycles == 1) instance.platform().submit_incident(synth::bucha_example(), "tester");
    });
  });
  const auto deadline = std::chrono::steady_clock::now() + 20s;
  while (cycles < 3 && std::chrono::steady_clock::now() < deadline) std::this_thread::sleep_for(20ms);
  stop.request_stop();
  loop.join();
  EXPECT_GE(cycles.load(), 3);
  EXPECT_EQ(sink.object_set(), instance.platform().objects().modified_index());
  const auto saved = load_state(config.state_path);
  EXPECT_EQ(saved.last_status, RunStatus::ok);
  EXPECT_EQ(saved.total_objects_forwarded, 29u);
}

TEST_F(ConnectorRunTest, LoopStopsOnCredentialError) {
  config.feed_api_key = "dfx_0123456789abcdef_" + std::string(64, 'a');
  MockSink sink;
  std::stop_source stop;
  EXPECT_THROW(run_loop(config, sink, stop.get_token()), CredentialError);
  EXPECT_EQ(load_state(config.state_path).last_status, RunStatus::error);
}

// ---- command line -----------------------------------------------------------------

int run_cli(const std::string& env, const std::string& args) {
  const auto command = env + " " + DISINFOX_CONNECTOR_BIN + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(ConnectorRunTest, CommandLineExitCodes) {
  instance.platform().submit_incident(synth::bucha_example(), "tester");
  const auto env = "env -i feed_url=" + config.feed_url + " feed_api_key=" + config.feed_api_key +
                   " state_path=" + config.state_path.string() + " sink_path=" + config.sink_path.string();
  EXPECT_EQ(run_cli(env, "--once"), 0);
  EXPECT_EQ(MockSink(config.sink_path).object_set(), instance.platform().objects().modified_index());
  EXPECT_EQ(load_state(config.state_path).total_objects_forwarded, 29u);
  EXPECT_EQ(run_cli(env, "--once"), 0);
  EXPECT_EQ(load_state(config.state_path).last_forwarded, 0u);

  EXPECT_EQ(run_cli(env, ""), 3);
  EXPECT_NE(run_cli(env, "--once --loop"), 0);
  EXPECT_EQ(run_cli("env -i feed_url=" + config.feed_url, "--once"), 3);
  EXPECT_EQ(run_cli(env + " run_every=soon", "--loop"), 3);
  EXPECT_EQ(run_cli(env + " feed_api_key=dfx_0123456789abcdef_" + std::string(64, 'a'), "--once"), 2);
  EXPECT_EQ(run_cli(env + " feed_url=http://127.0.0.1:1", "--once"), 1);
}

}  // namespace
}  // namespace disinfox::connector
