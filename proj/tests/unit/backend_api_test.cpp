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

#include "disinfox/synth.hpp"
#include "harness.hpp"

namespace disinfox::http {
namespace {

using nlohmann::json;
using store::Role;
using testing::bearer;
using testing::HttpResult;
using testing::Instance;
using testing::url_encode;

constexpr const char* kBuchaId = "intrusion-set--61bf528e-6022-52cc-b1c9-492f70840c49";

json bucha_json() { return incident::submission_to_json(synth::bucha_example()); }

class BackendApiTest : public ::testing::Test {
 protected:
  Instance instance;

  std::string admin() { return instance.admin_token(); }
  HttpResult submit(const json& body, const std::string& token) {
    return instance.api().post_json("/api/incidents", body, bearer(token));
  }
};

// ---- accounts ------------------------------------------------------------------

TEST_F(BackendApiTest, RegistrationLoginProfileLogout) {
  const json creds{{"username", "first"}, {"password", "first-password"}};
  auto created = instance.api().post_json("/api/users", creds);
  ASSERT_EQ(created.status, 201) << created.body;
  EXPECT_EQ(created.json().at("role"), "admin");
  EXPECT_FALSE(created.json().contains("password_digest"));

  EXPECT_EQ(instance.api().post_json("/api/users", creds).status, 409);
  auto second = instance.api().post_json("/api/users", json{{"username", "second"}, {"password", "second-password"}});
  EXPECT_EQ(second.json().at("role"), "reporter");
  auto escalate = instance.api().post_json(
      "/api/users", json{{"username", "third"}, {"password", "third-password"}, {"role", "admin"}});
  EXPECT_EQ(escalate.status, 403);

  auto bad_login = instance.api().post_json("/api/session", json{{"username", "first"}, {"password", "nope-nope"}});
  EXPECT_EQ(bad_login.status, 401);
  EXPECT_EQ(bad_login.json().at("code"), "bad-credentials");

  auto login = instance.api().post_json("/api/session", creds);
  ASSERT_EQ(login.status, 200);
  const auto token = login.json().at("token").get<std::string>();
  auto profile = instance.api().get("/api/profile", bearer(token));
  ASSERT_EQ(profile.status, 200);
  EXPECT_EQ(profile.json().at("username"), "first");

  EXPECT_EQ(instance.api().del("/api/session", bearer(token)).status, 204);
  auto after = instance.api().get("/api/profile", bearer(token));
  EXPECT_EQ(after.status, 401);
  EXPECT_EQ(after.json().at("code"), "invalid-session");
}

TEST_F(BackendApiTest, MalformedBodiesAreClientErrors) {
  auto res = instance.api().post("/api/users", "{oops", "application/json");
  EXPECT_EQ(res.status, 400);
  EXPECT_EQ(res.json().at("code"), "parse-error");
  res = instance.api().post_json("/api/users", json{{"username", "x"}});
  EXPECT_EQ(res.status, 422);
  EXPECT_EQ(res.json().at("details").at("field"), "password");
}

TEST_F(BackendApiTest, ApiKeyManagement) {
  const auto token = instance.user_token("viewer1", Role::viewer);
  auto created = instance.api().post_json("/api/profile/apikeys", json{{"label", "siem"}}, bearer(token));
  ASSERT_EQ(created.status, 201);
  const auto key_id = created.json().at("key_id").get<std::string>();
  EXPECT_TRUE(created.json().at("token").get<std::string>().starts_with("dfx_" + key_id));

  auto listed = instance.api().get("/api/profile/apikeys", bearer(token)).json().at("keys");
  ASSERT_EQ(listed.size(), 1u);
  EXPECT_FALSE(listed[0].contains("token"));
  EXPECT_FALSE(listed[0].contains("secret_digest"));

  EXPECT_EQ(instance.api().del("/api/profile/apikeys/" + key_id, bearer(admin())).status, 404);
  EXPECT_EQ(instance.api().del("/api/profile/apikeys/" + key_id, bearer(token)).status, 204);
  listed = instance.api().get("/api/profile/apikeys", bearer(token)).json().at("keys");
  EXPECT_TRUE(listed[0].at("revoked").get<bool>());
}

// ---- authorization matrix --------------------------------------------------------

struct Endpoint {
  std::string method;
  std::string path;
  Role minimum;
};

TEST_F(BackendApiTest, AuthorizationMatrix) {
  ASSERT_EQ(submit(bucha_json(), admin()).status, 201);
  const std::vector<Endpoint> endpoints = {
      {"GET", "/api/profile", Role::viewer},
      {"GET", "/api/profile/apikeys", Role::viewer},
      {"GET", "/api/profile/favorites", Role::viewer},
      {"GET", "/api/incidents", Role::viewer},
      {"GET", std::string("/api/incidents/") + kBuchaId, Role::viewer},
      {"GET", std::string("/api/incidents/") + kBuchaId + "/bundle", Role::viewer},
      {"GET", std::string("/api/incidents/") + kBuchaId + "/graph", Role::viewer},
      {"GET", std::string("/api/incidents/") + kBuchaId + "/report", Role::viewer},
      {"GET", "/api/stats/dashboard", Role::viewer},
      {"GET", "/api/catalog/techniques", Role::viewer},
      {"GET", "/api/templates/incidents.csv", Role::viewer},
      {"POST", "/api/incidents", Role::reporter},
      {"POST", "/api/incidents/bulk", Role::reporter},
  };
  const std::map<std::string, std::optional<Role>> callers = {
      {"anonymous", std::nullopt},
      {"viewer", Role::viewer},
      {"reporter", Role::reporter},
      {"admin", Role::admin},
  };
  std::map<std::string, std::string> tokens;
  tokens["viewer"] = instance.user_token("viewer1", Role::viewer);
  tokens["reporter"] = instance.user_token("reporter1", Role::reporter);
  tokens["admin"] = admin();
  const auto api_key = instance.api_key();

  auto call = [&](const Endpoint& e, const testing::HttpClient::Headers& headers) {
    if (e.method == "GET") return instance.api().get(e.path, headers);
    const auto body = e.path.ends_with("bulk") ? synth::to_csv({synth::bucha_example()}) : bucha_json().dump();
    return instance.api().post(e.path, body, e.path.ends_with("bulk") ? "text/csv" : "application/json", headers);
  };
  auto rank = [](Role r) { return static_cast<int>(r); };

  for (const auto& e : endpoints) {
    for (const auto& [name, role] : callers) {
      const auto headers = role ? bearer(tokens[name]) : testing::HttpClient::Headers{};
      const auto res = call(e, headers);
      if (!role) {
        EXPECT_EQ(res.status, 401) << e.method << " " << e.path << " as " << name;
        EXPECT_EQ(res.json().at("code"), "unauthenticated");
      } else if (rank(*role) < rank(e.minimum)) {
        EXPECT_EQ(res.status, 403) << e.method << " " << e.path << " as " << name;
        EXPECT_EQ(res.json().at("details").at("required_role"), store::to_string(e.minimum));
      } else {
        EXPECT_LT(res.status, 300) << e.method << " " << e.path << " as " << name << ": " << res.body;
      }
    }
    const auto with_key = call(e, bearer(api_key));
    EXPECT_EQ(with_key.status, 401) << e.path;
    EXPECT_EQ(with_key.json().at("code"), "api-key-not-accepted") << e.path;
  }
}

// ---- incidents -----------------------------------------------------------------------

TEST_F(BackendApiTest, SubmitReturnsStoredBundle) {
  auto res = submit(bucha_json(), admin());
  ASSERT_EQ(res.status, 201) << res.body;
  const auto body = res.json();
  EXPECT_EQ(body.at("intrusion_set_id"), kBuchaId);
  EXPECT_EQ(body.at("inserted"), 29);
  const auto types = testing::count_types(body.at("bundle"));
  EXPECT_EQ(types.at("relationship"), 14u);
  EXPECT_EQ(types.at("attack-pattern"), 12u);
  for (const auto& [id, modified] : testing::id_modified_list(body.at("bundle"))) {
    const auto stored = instance.platform().objects().get(id);
    ASSERT_TRUE(stored);
    EXPECT_EQ(modified, stored->modified.to_string());
  }
  // Same incident again replaces all of its objects.
  EXPECT_EQ(submit(bucha_json(), admin()).json().at("updated"), 29);
}

TEST_F(BackendApiTest, SubmitValidationErrors) {
  auto body = bucha_json();
  body["techniques"] = json::array({"T9999"});
  auto res = submit(body, admin());
  EXPECT_EQ(res.status, 422);
  EXPECT_EQ(res.json().at("code"), "unknown-technique");
  body = bucha_json();
  body["target_countries"] = json::array({"Atlantis"});
  EXPECT_EQ(submit(body, admin()).json().at("code"), "unknown-country");
  body = bucha_json();
  body.erase("first_seen");
  EXPECT_EQ(submit(body, admin()).status, 422);
  EXPECT_EQ(instance.platform().objects().size(), 0u);
}

TEST_F(BackendApiTest, IncidentReadEndpoints) {
  ASSERT_EQ(submit(bucha_json(), admin()).status, 201);
  const auto token = admin();
  const auto base = std::string("/api/incidents/") + kBuchaId;

  auto view = instance.api().get(base, bearer(token));
  ASSERT_EQ(view.status, 200);
  EXPECT_EQ(view.json().at("techniques").size(), 12u);
  EXPECT_FALSE(view.json().at("favorite").get<bool>());

  auto graph = instance.api().get(base + "/graph", bearer(token)).json();
  EXPECT_EQ(graph.at("nodes").size(), 15u);
  EXPECT_EQ(graph.at("edges").size(), 14u);

  auto bundle1 = instance.api().get(base + "/bundle", bearer(token));
  auto bundle2 = instance.api().get(base + "/bundle", bearer(token));
  EXPECT_EQ(bundle1.body, bundle2.body);
  EXPECT_EQ(bundle1.json().at("objects").size(), 29u);

  auto report = instance.api().get(base + "/report", bearer(token));
  ASSERT_EQ(report.status, 200);
  EXPECT_TRUE(report.content_type.starts_with("text/markdown"));
  EXPECT_TRUE(report.body.starts_with("# Bucha massacre at Ukraine\n"));
  EXPECT_NE(report.body.find("- Ukraine (UA)"), std::string::npos);
  EXPECT_NE(report.body.find("| T0049 | Flood Information Space | maximise-exposure |"), std::string::npos);
  auto pdf = instance.api().get(base + "/report?format=pdf", bearer(token));
  EXPECT_EQ(pdf.status, 400);
  EXPECT_EQ(pdf.json().at("code"), "unsupported-format");

  EXPECT_EQ(instance.api().get("/api/incidents/garbage", bearer(token)).status, 400);
  EXPECT_EQ(instance.api().get("/api/incidents/threat-actor--36e917d2-b1df-5ca3-b14c-a70565aaeb00", bearer(token)).status,
            400);
  EXPECT_EQ(
      instance.api().get("/api/incidents/intrusion-set--00000000-0000-4000-8000-000000000000", bearer(token)).status,
      404);
}

TEST_F(BackendApiTest, ListingAndDashboard) {
  const auto token = admin();
  ASSERT_EQ(submit(bucha_json(), token).status, 201);
  for (int i = 0; i < 4; ++i) {
    json body{{"name", "Incident " + std::to_string(i)}, {"first_seen", "2020-01-0" + std::to_string(i + 1)},
              {"threat_actors", json::array({"China"})}};
    ASSERT_EQ(submit(body, token).status, 201);
  }
  auto page = instance.api().get("/api/incidents?page=2&page_size=2", bearer(token)).json();
  EXPECT_EQ(page.at("total"), 5);
  ASSERT_EQ(page.at("rows").size(), 2u);
  EXPECT_EQ(page.at("rows")[0].at("name"), "Incident 2");
  auto search = instance.api().get("/api/incidents?q=" + url_encode("bucha MASSACRE"), bearer(token)).json();
  EXPECT_EQ(search.at("total"), 1);
  EXPECT_EQ(instance.api().get("/api/incidents?page=0", bearer(token)).status, 400);
  EXPECT_EQ(instance.api().get("/api/incidents?page_size=201", bearer(token)).status, 400);
  EXPECT_EQ(instance.api().get("/api/incidents?page=abc", bearer(token)).status, 400);

  auto stats = instance.api().get("/api/stats/dashboard?top_n=1", bearer(token)).json();
  ASSERT_EQ(stats.at("top_actors").size(), 1u);
  EXPECT_EQ(stats.at("top_actors")[0].at("name"), "China");
  EXPECT_EQ(stats.at("top_actors")[0].at("incident_count"), 4);
  EXPECT_EQ(stats.at("top_countries")[0].at("country_code"), "UA");
  EXPECT_EQ(stats.at("recent_incidents")[0].at("name"), "Bucha massacre at Ukraine");
}

TEST_F(BackendApiTest, Favorites) {
  const auto token = admin();
  ASSERT_EQ(submit(bucha_json(), token).status, 201);
  auto toggled = instance.api().put("/api/profile/favorites", json{{"id", kBuchaId}}.dump(), bearer(token));
  ASSERT_EQ(toggled.status, 200);
  EXPECT_TRUE(toggled.json().at("favorite").get<bool>());
  auto listed = instance.api().get("/api/profile/favorites", bearer(token)).json();
  EXPECT_EQ(listed.at("incidents")[0].at("name"), "Bucha massacre at Ukraine");
  EXPECT_TRUE(instance.api().get(std::string("/api/incidents/") + kBuchaId, bearer(token)).json().at("favorite"));
  auto explicit_off =
      instance.api().put("/api/profile/favorites", json{{"id", kBuchaId}, {"favorite", false}}.dump(), bearer(token));
  EXPECT_FALSE(explicit_off.json().at("favorite").get<bool>());
  auto missing = instance.api().put(
      "/api/profile/favorites", json{{"id", "intrusion-set--00000000-0000-4000-8000-000000000000"}}.dump(), bearer(token));
  EXPECT_EQ(missing.status, 404);
}

TEST_F(BackendApiTest, BulkCsvAndBundle) {
  const auto token = admin();
  std::string csv = synth::to_csv({synth::bucha_example()});
  csv += "Broken,,2020-13-01,,,\r\nUnknown,,2020-01-01,Atlantis,,\r\n";
  auto res = instance.api().post("/api/incidents/bulk", csv, "text/csv", bearer(token));
  ASSERT_EQ(res.status, 200) << res.body;
  auto report = res.json();
  EXPECT_EQ(report.at("accepted"), 1);
  ASSERT_EQ(report.at("rejected").size(), 2u);
  EXPECT_EQ(report.at("rejected")[0].at("row"), 3);
  EXPECT_EQ(report.at("rejected")[1].at("row"), 4);
  EXPECT_EQ(report.at("rejected")[1].at("code"), "unknown-country");

  auto bad_header = instance.api().post("/api/incidents/bulk", "name,oops\r\n", "text/csv", bearer(token));
  EXPECT_EQ(bad_header.status, 422);
  EXPECT_EQ(bad_header.json().at("code"), "schema-error");

  const auto exported = instance.api().get(std::string("/api/incidents/") + kBuchaId + "/bundle", bearer(token));
  auto imported = instance.api().post("/api/incidents/bulk", exported.body, "application/stix+json", bearer(token));
  ASSERT_EQ(imported.status, 200) << imported.body;
  EXPECT_EQ(imported.json().at("accepted"), 1);
  EXPECT_EQ(imported.json().at("updated"), 29);

  auto unsupported = instance.api().post("/api/incidents/bulk", "x", "application/xml", bearer(token));
  EXPECT_EQ(unsupported.status, 400);
  EXPECT_EQ(unsupported.json().at("code"), "unsupported-media-type");
  auto empty_bundle = instance.api().post(
      "/api/incidents/bulk", R"({"type":"bundle","id":"bundle--00000000-0000-4000-8000-000000000000","objects":[]})",
      "application/json", bearer(token));
  EXPECT_EQ(empty_bundle.json().at("code"), "empty-import");
}

TEST_F(BackendApiTest, CatalogAndTemplate) {
  const auto token = admin();
  auto catalog = instance.api().get("/api/catalog/techniques", bearer(token)).json();
  EXPECT_EQ(catalog.at("count"), 272);
  EXPECT_EQ(catalog.at("tactics").size(), 16u);
  EXPECT_EQ(catalog.at("tactics")[0].at("phase"), "plan-strategy");
  auto tmpl = instance.api().get("/api/templates/incidents.csv", bearer(token));
  EXPECT_EQ(tmpl.body, "name,description,first_seen,target_countries,threat_actors,techniques\r\n");
  EXPECT_TRUE(tmpl.content_type.starts_with("text/csv"));
  auto unknown = instance.api().get("/api/nope", bearer(token));
  EXPECT_EQ(unknown.status, 404);
  EXPECT_EQ(unknown.json().at("code"), "not-found");
}

}  // namespace
}  // namespace disinfox::http
