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

#include <memory>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "disinfox/error.hpp"
#include "disinfox/platform.hpp"

namespace httplib {
class Server;
}

namespace disinfox::http {

/// Wire shape of every error response: {status, code, message, details}.
struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
  nlohmann::json details = nullptr;

  nlohmann::json to_json() const;
};

int status_for(Errc code);
ApiError api_error_from(const Error& error);

// ---- response documents -------------------------------------------------

/// {nodes: [{id, type, label}], edges: [{source, target, relationship_type}]}
nlohmann::json graph_json(const incident::IncidentGraph& view);

/// Markdown document: title, first-seen date, description, target
/// countries, threat actors and a techniques table.
std::string report_markup(const incident::IncidentGraph& view, const disarm::Catalog& catalog);

nlohmann::json incident_row_json(const store::IncidentRow& row);
nlohmann::json incident_view_json(const incident::IncidentGraph& view);
nlohmann::json dashboard_json(const store::DashboardStats& stats);
nlohmann::json import_report_json(const ImportReport& report);

/// The public feed bundle for cursor `newer_than` over `objects`. The
/// bundle id is derived from the cursor and the returned content, so an
/// unchanged store answers a repeated cursor with identical bytes.
std::string feed_bundle(const std::vector<stix::StixObject>& objects, Timestamp newer_than);

// ---- servers --------------------------------------------------------------

/// Internal REST API (session-authenticated) consumed by the web UI.
void register_backend_routes(httplib::Server& server, Platform& platform, const PlatformConfig& config);

/// Public machine feed (API-key authenticated) plus /health.
void register_public_routes(httplib::Server& server, Platform& platform, const PlatformConfig& config);

/// An httplib server listening on its own thread.
class HttpServer {
 public:
  HttpServer();
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  httplib::Server& server() { return *server_; }

  /// Binds (port 0 picks a free port), starts serving and returns the
  /// bound port. Throws io-error when the address cannot be bound.
  int start(const HostPort& bind);
  void stop();
  int port() const { return port_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace disinfox::http
