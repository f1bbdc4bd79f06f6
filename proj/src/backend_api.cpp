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

#include <charconv>
#include <functional>
#include <variant>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "disinfox/http_api.hpp"
#include "disinfox/text.hpp"

namespace disinfox::http {

using nlohmann::json;
using store::Role;
using store::UserAccount;

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2, ' ', false, json::error_handler_t::replace), kJson);
}

void send_error(httplib::Response& res, const ApiError& error) { send_json(res, error.status, error.to_json()); }

int rank(Role role) {
  switch (role) {
    case Role::viewer: return 0;
    case Role::reporter: return 1;
    case Role::admin: return 2;
  }
  return 0;
}

std::string bearer_token(const httplib::Request& req) {
  const auto header = req.get_header_value("Authorization");
  const std::string_view value = header;
  constexpr std::string_view kScheme = "Bearer ";
  if (value.size() <= kScheme.size() || !text::iequals(value.substr(0, kScheme.size()), kScheme)) return {};
  return std::string(text::trim(value.substr(kScheme.size())));
}

struct Context {
  Platform& platform;
  const PlatformConfig& config;
};

using Handler = std::function<void(const httplib::Request&, httplib::Response&, const UserAccount&)>;
using PublicHandler = std::function<void(const httplib::Request&, httplib::Response&)>;

void run_guarded(httplib::Response& res, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    send_error(res, api_error_from(e));
  } catch (const json::exception& e) {
    send_error(res, ApiError{400, "parse-error", std::string("malformed JSON body: ") + e.what()});
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    send_error(res, ApiError{500, "internal-error", "internal server error"});
  }
}

/// Session authentication with a minimum role. API keys are refused
/// here; they only open the public feed.
httplib::Server::Handler authed(Context ctx, Role minimum, Handler handler) {
  return [ctx, minimum, handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
    run_guarded(res, [&] {
      const auto token = bearer_token(req);
      if (token.empty()) {
        send_error(res, ApiError{401, "unauthenticated", "a bearer session token is required"});
        return;
      }
      auto user = ctx.platform.accounts().session_user(token);
      if (!user) {
        const bool api_key = token.starts_with("dfx_");
        send_error(res, api_key ? ApiError{401, "api-key-not-accepted",
                                           "API keys are accepted by the public feed only; log in for a session"}
                                : ApiError{401, "invalid-session", "session token is unknown or expired"});
        return;
      }
      if (rank(user->role) < rank(minimum)) {
        send_error(res, ApiError{403, "forbidden",
                                 "role '" + std::string(store::to_string(user->role)) + "' may not perform this action",
                                 json{{"required_role", store::to_string(minimum)}}});
        return;
      }
      handler(req, res, *user);
    });
  };
}

httplib::Server::Handler open(PublicHandler handler) {
  return [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
    run_guarded(res, [&] { handler(req, res); });
  };
}

json parse_body(const httplib::Request& req) {
  if (text::trim(req.body).empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, std::string("malformed JSON body: ") + e.what(), json{{"byte", e.byte}});
  }
}

std::string required_string(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(Errc::validation, std::string("'") + key + "' is required", json{{"field", key}});
  }
  return it->get<std::string>();
}

std::size_t query_count(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  const auto value = req.get_param_value(key);
  std::size_t out = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw Error(Errc::invalid_argument, std::string("query parameter '") + key + "' must be a non-negative integer",
                json{{"parameter", key}});
  }
  return out;
}

json user_json(const UserAccount& user) {
  return json{{"user_id", user.user_id},
              {"username", user.username},
              {"role", store::to_string(user.role)},
              {"favorites", user.favorites},
              {"created_at", user.created_at.to_string()}};
}

json key_json(const store::ApiKey& key) {
  return json{{"key_id", key.key_id},
              {"label", key.label},
              {"created_at", key.created_at.to_string()},
              {"revoked", key.revoked}};
}

struct Upload {
  std::string content;
  std::string content_type;
  std::string filename;
};

Upload upload_from(const httplib::Request& req) {
  if (req.is_multipart_form_data()) {
    if (req.files.empty()) throw Error(Errc::invalid_argument, "multipart upload carries no file");
    const auto& file = req.files.begin()->second;
    return Upload{file.content, file.content_type, file.filename};
  }
  return Upload{req.body, req.get_header_value("Content-Type"), {}};
}

bool is_csv(const Upload& upload) {
  const auto type = text::lower(upload.content_type);
  if (type.starts_with("text/csv") || type.starts_with("application/csv")) return true;
  return text::lower(upload.filename).ends_with(".csv");
}

bool is_bundle(const Upload& upload) {
  const auto type = text::lower(upload.content_type);
  if (type.starts_with("application/json") || type.starts_with("application/stix+json")) return true;
  return text::lower(upload.filename).ends_with(".json");
}

void register_account_routes(httplib::Server& server, Context ctx) {
  server.Post("/api/users", open([ctx](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    std::optional<Role> role;
    if (const auto it = body.find("role"); it != body.end() && !it->is_null()) {
      role = it->is_string() ? store::parse_role(it->get<std::string>()) : std::nullopt;
      if (!role) throw Error(Errc::validation, "'role' must be viewer, reporter or admin");
      if (ctx.platform.accounts().user_count() > 0) {
        const auto caller = ctx.platform.accounts().session_user(bearer_token(req));
        if (!caller || caller->role != Role::admin) {
          send_error(res, ApiError{403, "forbidden", "only an admin may assign roles"});
          return;
        }
      }
    }
    const auto user =
        ctx.platform.accounts().create_user(required_string(body, "username"), required_string(body, "password"), role);
    send_json(res, 201, user_json(user));
  }));

  server.Post("/api/session", open([ctx](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    const auto username = required_string(body, "username");
    const auto token = ctx.platform.accounts().authenticate(username, required_string(body, "password"));
    const auto user = ctx.platform.accounts().session_user(token);
    send_json(res, 200, json{{"token", token}, {"user", user_json(*user)}});
  }));

  server.Delete("/api/session",
                authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount&) {
                  ctx.platform.accounts().end_session(bearer_token(req));
                  res.status = 204;
                }));

  server.Get("/api/profile", authed(ctx, Role::viewer,
                                    [](const httplib::Request&, httplib::Response& res, const UserAccount& user) {
                                      send_json(res, 200, user_json(user));
                                    }));

  server.Post("/api/profile/apikeys",
              authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount& user) {
                const auto body = parse_body(req);
                const auto label = body.contains("label") && body["label"].is_string() ? body["label"].get<std::string>()
                                                                                        : std::string();
                const auto created = ctx.platform.accounts().create_api_key(user.user_id, label);
                auto out = key_json(created.key);
                out["token"] = created.raw_token;
                send_json(res, 201, out);
              }));

  server.Get("/api/profile/apikeys",
             authed(ctx, Role::viewer, [ctx](const httplib::Request&, httplib::Response& res, const UserAccount& user) {
               json keys = json::array();
               for (const auto& key : ctx.platform.accounts().list_api_keys(user.user_id)) keys.push_back(key_json(key));
               send_json(res, 200, json{{"keys", std::move(keys)}});
             }));

  server.Delete("/api/profile/apikeys/:key_id",
                authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount& user) {
                  ctx.platform.accounts().revoke_api_key(user.user_id, req.path_params.at("key_id"));
                  res.status = 204;
                }));

  server.Get("/api/profile/favorites",
             authed(ctx, Role::viewer, [ctx](const httplib::Request&, httplib::Response& res, const UserAccount& user) {
               json incidents = json::array();
               for (const auto& id : user.favorites) {
                 if (auto stored = ctx.platform.objects().get(id)) {
                   const auto& object = stored->object;
                   incidents.push_back(json{{"id", id}, {"name", object.name().value_or("")}});
                 }
               }
               send_json(res, 200, json{{"favorites", user.favorites}, {"incidents", std::move(incidents)}});
             }));

  server.Put("/api/profile/favorites",
             authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount& user) {
               const auto body = parse_body(req);
               const auto id = required_string(body, "id");
               ctx.platform.objects().get_incident_view(id);
               bool favorite;
               if (const auto it = body.find("favorite"); it != body.end() && it->is_boolean()) {
                 favorite = it->get<bool>();
                 ctx.platform.accounts().set_favorite(user.user_id, id, favorite);
               } else {
                 favorite = ctx.platform.accounts().toggle_favorite(user.user_id, id);
               }
               send_json(res, 200, json{{"id", id}, {"favorite", favorite}});
             }));
}

void register_incident_routes(httplib::Server& server, Context ctx) {
  server.Post("/api/incidents",
              authed(ctx, Role::reporter, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount& user) {
                const auto submission = incident::submission_from_json(parse_body(req), incident::SourceKind::form);
                const auto result = ctx.platform.submit_incident(submission, user.user_id);
                const auto bundle = stix::make_bundle(result.objects);
                send_json(res, 201,
                          json{{"intrusion_set_id", result.intrusion_set_id},
                               {"inserted", result.upsert.inserted},
                               {"updated", result.upsert.updated},
                               {"bundle", json::parse(stix::serialize_bundle(bundle))}});
              }));

  server.Post("/api/incidents/bulk",
              authed(ctx, Role::reporter, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount& user) {
                const auto upload = upload_from(req);
                ImportReport report;
                if (is_csv(upload)) {
                  report = ctx.platform.import_csv(upload.content, user.user_id);
                } else if (is_bundle(upload)) {
                  report = ctx.platform.import_bundle(upload.content, user.user_id);
                } else {
                  send_error(res, ApiError{400, "unsupported-media-type",
                                           "bulk upload expects text/csv or a STIX bundle as application/json",
                                           json{{"content_type", upload.content_type}}});
                  return;
                }
                send_json(res, 200, import_report_json(report));
              }));

  server.Get("/api/incidents",
             authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount&) {
               const auto page = query_count(req, "page", 1);
               const auto page_size = query_count(req, "page_size", 20);
               std::optional<std::string> filter;
               if (req.has_param("q") && !text::trim(req.get_param_value("q")).empty()) {
                 filter = std::string(text::trim(req.get_param_value("q")));
               }
               const auto result = ctx.platform.objects().list_incidents(page, page_size, filter);
               json rows = json::array();
               for (const auto& row : result.rows) rows.push_back(incident_row_json(row));
               send_json(res, 200,
                         json{{"rows", std::move(rows)},
                              {"total", result.total},
                              {"page", result.page},
                              {"page_size", result.page_size}});
             }));

  server.Get("/api/incidents/:id",
             authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount& user) {
               const auto& id = req.path_params.at("id");
               auto body = incident_view_json(ctx.platform.objects().get_incident_view(id));
               body["favorite"] = user.favorites.contains(id);
               send_json(res, 200, body);
             }));

  server.Get("/api/incidents/:id/bundle",
             authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount&) {
               res.status = 200;
               res.set_content(stix::serialize_bundle(ctx.platform.incident_bundle(req.path_params.at("id"))), kJson);
             }));

  server.Get("/api/incidents/:id/graph",
             authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount&) {
               send_json(res, 200, graph_json(ctx.platform.objects().get_incident_view(req.path_params.at("id"))));
             }));

  server.Get("/api/incidents/:id/report",
             authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount&) {
               const auto format = req.has_param("format") ? text::lower(req.get_param_value("format")) : "markup";
               if (format != "markup" && format != "markdown" && format != "md") {
                 send_error(res, ApiError{400, "unsupported-format",
                                          "only format=markup is produced; convert the markup document to PDF or "
                                          "Word with an external tool such as pandoc",
                                          json{{"format", format}, {"supported", {"markup"}}}});
                 return;
               }
               const auto view = ctx.platform.objects().get_incident_view(req.path_params.at("id"));
               res.status = 200;
               res.set_content(report_markup(view, ctx.platform.catalog()), "text/markdown; charset=utf-8");
             }));

  server.Get("/api/stats/dashboard",
             authed(ctx, Role::viewer, [ctx](const httplib::Request& req, httplib::Response& res, const UserAccount&) {
               send_json(res, 200, dashboard_json(ctx.platform.objects().dashboard_stats(query_count(req, "top_n", 5))));
             }));

  server.Get("/api/catalog/techniques",
             authed(ctx, Role::viewer, [ctx](const httplib::Request&, httplib::Response& res, const UserAccount&) {
               const auto& catalog = ctx.platform.catalog();
               json tactics = json::array();
               for (const auto& [phase, members] : catalog.list_by_tactic()) {
                 json techniques = json::array();
                 for (const auto* t : members) {
                   techniques.push_back(json{{"external_id", t->external_id}, {"name", t->display_name}, {"id", t->object.id()}});
                 }
                 tactics.push_back(json{{"phase", phase}, {"techniques", std::move(techniques)}});
               }
               send_json(res, 200,
                         json{{"version", catalog.version_label()}, {"count", catalog.size()}, {"tactics", std::move(tactics)}});
             }));

  server.Get("/api/templates/incidents.csv",
             authed(ctx, Role::viewer, [](const httplib::Request&, httplib::Response& res, const UserAccount&) {
               res.status = 200;
               res.set_content(incident::csv_header() + "\r\n", "text/csv; charset=utf-8");
             }));
}

}  // namespace

void register_backend_routes(httplib::Server& server, Platform& platform, const PlatformConfig& config) {
  const Context ctx{platform, config};
  register_account_routes(server, ctx);
  register_incident_routes(server, ctx);
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) send_error(res, ApiError{404, "not-found", "no such endpoint"});
  });
  if (!config.static_dir.empty() && !server.set_mount_point("/", config.static_dir.string())) {
    spdlog::warn("static_dir {} does not exist; web UI not served", config.static_dir.string());
  }
}

}  // namespace disinfox::http
