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
using testing::Instance;
using testing::raw_key;
using testing::url_encode;

std::string feed_path(const std::string& cursor) { return "/incidents?newer_than=" + url_encode(cursor); }

class PublicApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    key = instance.api_key();
    instance.platform().submit_incident(synth::bucha_example(), "tester");
  }
  Instance instance;
  std::string key;
};

TEST_F(PublicApiTest, ReturnsDeltaAsBundle) {
  auto res = instance.feed().get(feed_path("1970-01-01T00:00:00Z"), raw_key(key));
  ASSERT_EQ(res.status, 200) << res.body;
  const auto body = res.json();
  EXPECT_EQ(body.at("type"), "bundle");
  EXPECT_EQ(body.at("objects").size(), 29u);
  // Identical requests give identical documents.
  EXPECT_EQ(instance.feed().get(feed_path("1970-01-01T00:00:00Z"), raw_key(key)).body, res.body);

  std::string last;
  for (const auto& [id, modified] : testing::id_modified_list(body)) {
    EXPECT_LE(last, modified);
    last = modified;
  }
  auto after = instance.feed().get(feed_path(last), raw_key(key)).json();
  EXPECT_TRUE(after.at("objects").empty());
}

TEST_F(PublicApiTest, CursorAcceptsOffsetsAndShortFractions) {
  const auto newest = instance.platform().objects().objects_newer_than(Timestamp::epoch()).back().modified();
  ASSERT_TRUE(newest);
  const auto before = Timestamp::from_micros(newest->micros() - 1);
  // Same instant written with a +01:00 offset.
  const auto shifted = before.plus(std::chrono::hours(1)).to_string();
  const auto local = shifted.substr(0, shifted.size() - 1) + "+01:00";
  auto res = instance.feed().get(feed_path(local), raw_key(key));
  ASSERT_EQ(res.status, 200);
  auto plain = instance.feed().get(feed_path(before.to_string()), raw_key(key));
  EXPECT_EQ(res.json().at("objects"), plain.json().at("objects"));
  // A '+' that an intermediary decoded into a space.
  auto spaced = local;
  spaced[spaced.size() - 6] = ' ';
  auto unencoded = instance.feed().get(feed_path(spaced), raw_key(key));
  ASSERT_EQ(unencoded.status, 200) << unencoded.body;
  EXPECT_EQ(unencoded.json().at("objects"), plain.json().at("objects"));
}

TEST_F(PublicApiTest, KeyFailures) {
  auto expect_reason = [&](const testing::HttpClient::Headers& headers, const std::string& reason) {
    const auto res = instance.feed().get(feed_path("1970-01-01T00:00:00Z"), headers);
    EXPECT_EQ(res.status, 401) << reason;
    EXPECT_EQ(res.json().at("code"), "invalid-api-key");
    EXPECT_EQ(res.json().at("details").at("reason"), reason);
  };
  expect_reason({}, "missing");
  expect_reason(raw_key("not-a-key"), "malformed");
  expect_reason(testing::bearer(key), "malformed");
  expect_reason(raw_key("dfx_0123456789abcdef_" + std::string(64, 'a')), "unknown");

  const auto key_id = key.substr(4, 16);
  const auto admin = instance.admin_token();
  ASSERT_EQ(instance.api().del("/api/profile/apikeys/" + key_id, testing::bearer(admin)).status, 204);
  expect_reason(raw_key(key), "revoked");
  // A session token is not an API key.
  expect_reason(raw_key(admin), "malformed");
}

TEST_F(PublicApiTest, ParameterErrorsFollowAuthentication) {
  EXPECT_EQ(instance.feed().get("/incidents").status, 401);
  auto missing = instance.feed().get("/incidents", raw_key(key));
  EXPECT_EQ(missing.status, 400);
  EXPECT_EQ(missing.json().at("code"), "missing-parameter");
  for (const char* bad : {"yesterday", "2022-04-01", "2022-04-01T00:00:00", "2022-04-01T00:00:00.1234567Z"}) {
    auto res = instance.feed().get(feed_path(bad), raw_key(key));
    EXPECT_EQ(res.status, 400) << bad;
    EXPECT_EQ(res.json().at("code"), "bad-timestamp") << bad;
  }
}

TEST(PublicApiLimitTest, OversizedDeltaIsRefused) {
  Instance::Options options;
  options.max_feed_objects = 10;
  Instance instance(options);
  const auto key = instance.api_key();
  instance.platform().submit_incident(synth::bucha_example(), "tester");
  auto res = instance.feed().get(feed_path("1970-01-01T00:00:00Z"), raw_key(key));
  EXPECT_EQ(res.status, 413);
  EXPECT_EQ(res.json().at("details").at("object_count"), 29);
  const auto all = instance.platform().objects().objects_newer_than(Timestamp::epoch());
  const auto cursor = *all.back().modified();
  auto narrower = instance.feed().get(feed_path(cursor.to_string()), raw_key(key));
  EXPECT_EQ(narrower.status, 200);
}

TEST(PublicApiHealthTest, HealthNeedsNoKey) {
  Instance instance;
  auto res = instance.feed().get("/health");
  ASSERT_EQ(res.status, 200);
  EXPECT_EQ(res.json().at("status"), "ok");
  EXPECT_EQ(res.json().at("object_count"), 0);
  EXPECT_EQ(res.json().at("catalog_version"), testing::catalog().version_label());
  EXPECT_EQ(instance.feed().get("/api/incidents").status, 404);
}

}  // namespace
}  // namespace disinfox::http
