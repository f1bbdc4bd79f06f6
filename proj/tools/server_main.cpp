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

// disinfox-server: internal REST API and public feed over one store.

#include <csignal>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "disinfox/error.hpp"
#include "disinfox/http_api.hpp"
#include "disinfox/platform.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw disinfox::Error(disinfox::Errc::io, "cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace disinfox;

  PlatformConfig defaults;
  defaults.catalog_path = DISINFOX_DEFAULT_CATALOG;
  defaults.seed_path = DISINFOX_DEFAULT_SEED;

  PlatformConfig config;
  try {
    config = PlatformConfig::from_environment(defaults);
  } catch (const Error& e) {
    spdlog::error("configuration: {}", e.what());
    return 3;
  }

  CLI::App app{"DISINFOX server: internal REST API plus the public incident feed"};
  app.option_defaults()->always_capture_default();
  app.add_option("--bind", config.bind_addr, "internal API address (bind_addr)");
  app.add_option("--public-bind", config.public_bind_addr, "public feed address (public_bind_addr)");
  app.add_option("--data-dir", config.data_dir, "persistence directory; in-memory when empty (data_dir)");
  app.add_option("--catalog", config.catalog_path, "DISARM STIX bundle (catalog_path)");
  app.add_flag("--seed", config.seed_on_start, "import the seed CSV when the store is empty (seed_on_start)");
  app.add_option("--seed-path", config.seed_path, "seed CSV (seed_path)");
  app.add_option("--static-dir", config.static_dir, "web UI directory served at / (static_dir)");
  app.add_option("--max-feed-objects", config.max_feed_objects, "feed response ceiling (max_feed_objects)");
  CLI11_PARSE(app, argc, argv);

  // Handle SIGINT/SIGTERM synchronously on the main thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  try {
    auto catalog = disarm::Catalog::load_file(config.catalog_path);
    spdlog::info("catalog {}: {} techniques ({} skipped)", catalog.version_label(), catalog.size(),
                 catalog.load_report().skipped());
    auto backend = config.data_dir.empty() ? store::make_memory_backend() : store::make_file_backend(config.data_dir);
    Platform platform(std::move(catalog), backend);
    spdlog::info("store: {} objects, {} incidents", platform.objects().size(), platform.objects().incident_count());

    if (config.seed_on_start && platform.objects().incident_count() == 0) {
      const auto report = platform.import_csv(read_file(config.seed_path), store::kSystemUploader);
      spdlog::info("seeded from {}: accepted {}, rejected {}", config.seed_path.string(), report.accepted,
                   report.rejected.size());
    }

    http::HttpServer internal;
    http::register_backend_routes(internal.server(), platform, config);
    http::HttpServer feed;
    http::register_public_routes(feed.server(), platform, config);

    auto internal_bind = parse_bind_addr(config.bind_addr);
    auto feed_bind = parse_bind_addr(config.public_bind_addr);
    internal_bind.port = internal.start(internal_bind);
    feed_bind.port = feed.start(feed_bind);
    spdlog::info("internal API on http://{}:{}", internal_bind.host, internal_bind.port);
    spdlog::info("public feed on http://{}:{}", feed_bind.host, feed_bind.port);

    int received = 0;
    sigwait(&signals, &received);
    spdlog::info("signal {} received, shutting down", received);
    feed.stop();
    internal.stop();
  } catch (const Error& e) {
    spdlog::error("{}: {}", to_string(e.code()), e.what());
    return 1;
  }
  return 0;
}
