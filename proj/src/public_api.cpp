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

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "disinfox/http_api.hpp"

namespace disinfox::http {

using nlohmann::json;

namespace {

void send_error(httplib::Response& res, const ApiError& error) {
  res.status = error.status;
  res.set_content(error.to_json().dump(2), "application/json");
}

std::string_view reason(store::KeyCheck check) {
  switch (check) {
    case store::KeyCheck::ok: return "ok";
    case store::KeyCheck::malformed: return "malformed";
    case store::KeyCheck::unknown: return "unknown";
    case store::KeyCheck::revoked: return "revoked";
  }
  return "unknown";
}

}  // namespace

void register_public_routes(httplib::Server& server, Platform& platform, const PlatformConfig& config) {
  const std::size_t max_objects = config.max_feed_objects;

  server.Get("/incidents", [&platform, max_objects](const httplib::Request& req, httplib::Response& res) {
    try {
      // The header carries the raw token verbatim, without an auth scheme.
      const auto token = req.get_header_value("Authorization");
      if (token.empty()) {
        send_error(res, ApiError{401, "invalid-api-key", "an API key is required in the Authorization header",
                                 json{{"reason", "missing"}}});
        return;
      }
      const auto verdict = platform.accounts().check_api_key(token);
      if (verdict.status != store::KeyCheck::ok) {
        send_error(res, ApiError{401, "invalid-api-key", "the API key is not valid",
                                 json{{"reason", reason(verdict.status)}}});
        return;
      }
      if (!req.has_param("newer_than")) {
        send_error(res, ApiError{400, "missing-parameter", "query parameter 'newer_than' is required",
                                 json{{"parameter", "newer_than"}}});
        return;
      }
      const auto raw = req.get_param_value("newer_than");
      const auto cursor = Timestamp::parse(raw);
      if (!cursor) {
        send_error(res, ApiError{400, "bad-timestamp",
                                 "'newer_than' must be an ISO 8601 timestamp such as 1970-01-01T00:00:00.000000Z",
                                 json{{"value", raw}}});
        return;
      }
      const auto objects = platform.objects().objects_newer_than(*cursor);
      if (objects.size() > max_objects) {
        send_error(res, ApiError{413, "feed-too-large",
                                 "the delta exceeds the response ceiling; use a later newer_than cursor",
                                 json{{"object_count", objects.size()}, {"max_feed_objects", max_objects}}});
        return;
      }
      res.status = 200;
      res.set_content(feed_bundle(objects, *cursor), "application/json");
    } catch (const std::exception& e) {
      spdlog::error("feed error: {}", e.what());
      send_error(res, ApiError{500, "internal-error", "internal server error"});
    }
  });

  server.Get("/health", [&platform](const httplib::Request&, httplib::Response& res) {
    res.status = 200;
    res.set_content(json{{"status", "ok"},
                         {"object_count", platform.objects().size()},
                         {"catalog_version", platform.catalog().version_label()}}
                        .dump(2),
                    "application/json");
  });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) {
      send_error(res, ApiError{404, "not-found", "no such endpoint"});
    }
  });
}

HttpServer::HttpServer() : server_(std::make_unique<httplib::Server>()) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const HostPort& bind) {
  if (bind.port == 0) {
    port_ = server_->bind_to_any_port(bind.host);
    if (port_ <= 0) throw Error(Errc::io, "cannot bind " + bind.host + " on any port");
  } else {
    if (!server_->bind_to_port(bind.host, bind.port)) {
      throw Error(Errc::io, "cannot bind " + bind.host + ":" + std::to_string(bind.port));
    }
    port_ = bind.port;
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void HttpServer::stop() {
  if (thread_.joinable()) {
    server_->stop();
    thread_.join();
  }
}

}  // namespace disinfox::http
