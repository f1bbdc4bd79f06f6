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

// connector: pulls the public feed into the bundled mock sink.
//
// Exit codes: 0 success, 1 run failed (network or feed error),
// 2 credential rejected, 3 configuration error.

#include <csignal>
#include <ctime>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "disinfox/connector.hpp"
#include "disinfox/error.hpp"

int main(int argc, char** argv) {
  using namespace disinfox;
  using namespace disinfox::connector;

  CLI::App app{"DISINFOX CTI connector (configured through feed_url, feed_api_key, run_every, state_path, sink_path)"};
  bool once = false;
  bool loop = false;
  auto* once_flag = app.add_flag("--once", once, "run a single fetch-forward cycle");
  auto* loop_flag = app.add_flag("--loop", loop, "run every run_every until SIGINT/SIGTERM");
  once_flag->excludes(loop_flag);
  loop_flag->excludes(once_flag);
  CLI11_PARSE(app, argc, argv);
  if (!once && !loop) {
    std::fputs("connector: one of --once or --loop is required\n", stderr);
    return 3;
  }

  ConnectorConfig config;
  try {
    config = ConnectorConfig::from_environment();
  } catch (const Error& e) {
    spdlog::error("configuration: {}", e.what());
    return 3;
  }

  try {
    MockSink sink(config.sink_path);
    if (once) {
      auto state = load_state(config.state_path);
      try {
        const auto report = run_once(config, state, sink);
        save_state(config.state_path, report.state);
        if (report.state.last_status != RunStatus::ok) {
          spdlog::error("run failed: {}", report.state.last_error);
          return 1;
        }
        spdlog::info("forwarded {} objects (ingested {}, deduplicated {}); cursor now {}", report.forwarded,
                     report.sink.ingested, report.sink.deduplicated, report.state.last_run->to_string());
        return 0;
      } catch (const CredentialError& e) {
        state.last_status = RunStatus::error;
        state.last_error = e.what();
        save_state(config.state_path, state);
        spdlog::error("{}", e.what());
        return 2;
      }
    }

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    std::stop_source stop;
    std::thread watcher([&] {
      const timespec poll{0, 200'000'000};
      while (!stop.stop_requested()) {
        if (sigtimedwait(&signals, nullptr, &poll) > 0) {
          spdlog::info("shutdown requested");
          stop.request_stop();
        }
      }
    });
    int code = 0;
    try {
      run_loop(config, sink, stop.get_token());
    } catch (const CredentialError& e) {
      spdlog::error("{}", e.what());
      code = 2;
    }
    stop.request_stop();
    watcher.join();
    return code;
  } catch (const Error& e) {
    spdlog::error("{}: {}", to_string(e.code()), e.what());
    return e.code() == Errc::invalid_argument ? 3 : 1;
  }
}
