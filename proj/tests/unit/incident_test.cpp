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

#include <random>

#include "disinfox/error.hpp"
#include "disinfox/incident.hpp"
#include "disinfox/synth.hpp"
#include "harness.hpp"

namespace disinfox::incident {
namespace {

using namespace std::chrono;
using nlohmann::json;
using testing::catalog;

const Timestamp kAt = *Timestamp::parse("2024-05-01T10:00:00Z");

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::io;
}

TEST(SubmissionTest, NormalizationTrimsAndDedupes) {
  IncidentSubmission s;
  s.name = "  Bucha   massacre ";
  s.description = "  body \n";
  s.first_seen = year{2022} / April / 1;
  s.threat_actors = {"Russia", " russia ", "", "China"};
  s.target_countries = {"Ukraine", "ukraine"};
  s.technique_refs = {"T0002", "T0002", "  "};
  const auto n = normalized(s);
  EXPECT_EQ(n.name, "Bucha massacre");
  EXPECT_EQ(n.description, "body");
  EXPECT_EQ(n.threat_actors, (std::vector<std::string>{"Russia", "China"}));
  EXPECT_EQ(n.target_countries, std::vector<std::string>{"Ukraine"});
  EXPECT_EQ(n.technique_refs, std::vector<std::string>{"T0002"});

  s.name = "  ";
  EXPECT_EQ(code_of([&] { normalized(s); }), Errc::validation);
  s.name = "x";
  s.first_seen = year{2022} / February / 30;
  EXPECT_EQ(code_of([&] { normalized(s); }), Errc::validation);
}

TEST(SubmissionTest, JsonAcceptsListsOrSemicolonStrings) {
  const auto s = submission_from_json(json{{"name", "N"},
                                           {"first_seen", "2022-04-01"},
                                           {"target_countries", "Ukraine; Poland"},
                                           {"threat_actors", json::array({"Russia"})},
                                           {"techniques", json::array({"T0002"})}});
  EXPECT_EQ(s.target_countries, (std::vector<std::string>{"Ukraine", "Poland"}));
  EXPECT_EQ(s.threat_actors, std::vector<std::string>{"Russia"});
  EXPECT_EQ(s.first_seen, year{2022} / April / 1);
  const auto back = submission_from_json(submission_to_json(s));
  EXPECT_EQ(back, s);

  EXPECT_EQ(code_of([] { submission_from_json(json::array()); }), Errc::validation);
  EXPECT_EQ(code_of([] { submission_from_json(json{{"name", "N"}}); }), Errc::validation);
  EXPECT_EQ(code_of([] { submission_from_json(json{{"name", "N"}, {"first_seen", "01/04/2022"}}); }),
            Errc::validation);
  EXPECT_EQ(code_of([] {
              submission_from_json(json{{"name", "N"}, {"first_seen", "2022-04-01"}, {"threat_actors", json{{"a", 1}}}});
            }),
            Errc::validation);
  EXPECT_EQ(code_of([] {
              submission_from_json(json{{"name", "N"}, {"first_seen", "2022-04-01"}, {"techniques", json::array({1})}});
            }),
            Errc::validation);
}

TEST(GraphTest, BuchaGraphShape) {
  const auto graph = build_incident_graph(synth::bucha_example(), catalog(), kAt);
  EXPECT_EQ(graph.intrusion_set.id(), "intrusion-set--61bf528e-6022-52cc-b1c9-492f70840c49");
  EXPECT_EQ(graph.actors.size(), 1u);
  EXPECT_EQ(graph.locations.size(), 1u);
  EXPECT_EQ(graph.techniques.size(), 12u);
  EXPECT_EQ(graph.sdo_count(), 15u);
  EXPECT_EQ(graph.sro_count(), 14u);
  const auto bundle = graph_to_bundle(graph);
  EXPECT_EQ(bundle.objects.size(), 29u);
  EXPECT_TRUE(stix::validate_bundle(bundle).empty());
  // Technique objects are the catalog's own objects, unchanged.
  EXPECT_EQ(graph.techniques[0], catalog().find_by_external_id("T0002")->object);
}

TEST(GraphTest, ResolvesNamesAndDedupesByCode) {
  IncidentSubmission s;
  s.name = "N";
  s.first_seen = year{2020} / 1 / 1;
  s.technique_refs = {"T0049", "Flood Information Space", "t0049"};
  s.target_countries = {"UA", "Ukraine", "United States"};
  const auto graph = build_incident_graph(s, catalog(), kAt);
  EXPECT_EQ(graph.techniques.size(), 1u);
  ASSERT_EQ(graph.locations.size(), 2u);
  EXPECT_EQ(graph.locations[0].json().at("name"), "Ukraine");
  EXPECT_EQ(graph.locations[1].json().at("country"), "US");
  EXPECT_EQ(graph.relationships.size(), 3u);
}

TEST(GraphTest, UnknownReferencesAreRejected) {
  IncidentSubmission s;
  s.name = "N";
  s.first_seen = year{2020} / 1 / 1;
  s.technique_refs = {"T9999"};
  s.target_countries = {"Atlantis"};
  try {
    build_incident_graph(s, catalog(), kAt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_technique);
    EXPECT_EQ(e.details().at("unresolved"), json::array({"T9999"}));
    EXPECT_EQ(e.details().at("unknown_countries"), json::array({"Atlantis"}));
  }
  s.technique_refs.clear();
  EXPECT_EQ(code_of([&] { build_incident_graph(s, catalog(), kAt); }), Errc::unknown_country);
}

TEST(GraphTest, RandomGraphsCountsFollowInputs) {
  std::mt19937_64 rng(11);
  for (std::size_t i = 0; i < 200; ++i) {
    const auto s = synth::random_submission(rng, catalog(), i);
    const auto graph = build_incident_graph(s, catalog(), kAt);
    const auto a = s.threat_actors.size(), c = s.target_countries.size(), t = s.technique_refs.size();
    ASSERT_EQ(graph.sdo_count(), 1 + a + c + t);
    ASSERT_EQ(graph.sro_count(), a + c + t);
    ASSERT_TRUE(stix::validate_bundle(graph_to_bundle(graph)).empty());
  }
}

// ---- CSV --------------------------------------------------------------------

const std::string kHeader = "name,description,first_seen,target_countries,threat_actors,techniques\r\n";

TEST(CsvTest, ParsesTemplateRowsWithLineNumbers) {
  const std::string csv = kHeader +
                          "Alpha,\"multi\nline, quoted \"\"text\"\"\",2022-04-01,Ukraine;Poland,Russia,T0002;T0049\r\n"
                          "\r\n"
                          "Beta,,2021-01-02,,,\r\n"
                          "Gamma,,not-a-date,,,\r\n"
                          "Delta,,2021-01-02,,\r\n"
                          "   ,,2021-01-02,,,\r\n";
  const auto rows = parse_csv_submissions(csv);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].row, 2u);
  const auto& alpha = std::get<IncidentSubmission>(rows[0].result);
  EXPECT_EQ(alpha.description, "multi\nline, quoted \"text\"");
  EXPECT_EQ(alpha.target_countries, (std::vector<std::string>{"Ukraine", "Poland"}));
  EXPECT_EQ(alpha.technique_refs, (std::vector<std::string>{"T0002", "T0049"}));
  EXPECT_EQ(alpha.source_kind, SourceKind::csv);
  EXPECT_EQ(rows[1].row, 5u);
  EXPECT_TRUE(std::holds_alternative<IncidentSubmission>(rows[1].result));
  EXPECT_EQ(rows[2].row, 6u);
  EXPECT_EQ(std::get<RowError>(rows[2].result).code, "validation-error");
  EXPECT_EQ(rows[3].row, 7u);
  EXPECT_TRUE(std::holds_alternative<RowError>(rows[3].result));
  EXPECT_EQ(rows[4].row, 8u);
  EXPECT_TRUE(std::holds_alternative<RowError>(rows[4].result));
}

TEST(CsvTest, HeaderMayBeReorderedButMustMatchTemplate) {
  const auto rows = parse_csv_submissions(
      "\xEF\xBB\xBF" "Techniques,Name,First_Seen,description,threat_actors,target_countries\nT0002,X,2020-02-02,,,\n");
  ASSERT_EQ(rows.size(), 1u);
  const auto& s = std::get<IncidentSubmission>(rows[0].result);
  EXPECT_EQ(s.name, "X");
  EXPECT_EQ(s.technique_refs, std::vector<std::string>{"T0002"});

  try {
    parse_csv_submissions("name,description,first_seen,target_countries,threat_actors,extra\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema_error);
    EXPECT_EQ(e.details().at("missing"), json::array({"techniques"}));
    EXPECT_EQ(e.details().at("unexpected"), json::array({"extra"}));
  }
  EXPECT_EQ(code_of([] { parse_csv_submissions(""); }), Errc::schema_error);
  EXPECT_EQ(code_of([] { parse_csv_submissions(kHeader + "A,\xC3\x28,2020-01-01,,,\n"); }), Errc::encoding);
}

TEST(CsvTest, UnterminatedQuoteIsRowError) {
  const auto rows = parse_csv_submissions(kHeader + "A,\"open,2020-01-01,,,\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(std::get<RowError>(rows[0].result).code, "parse-error");
}

TEST(CsvTest, WriterRoundTripsThroughReader) {
  std::mt19937_64 rng(5);
  std::vector<IncidentSubmission> subs;
  for (std::size_t i = 0; i < 100; ++i) {
    auto s = normalized(synth::random_submission(rng, catalog(), i, {}, true));
    s.source_kind = SourceKind::csv;
    subs.push_back(s);
  }
  subs[3].description = "quote \" comma , newline\n end";
  const auto rows = parse_csv_submissions(synth::to_csv(subs));
  ASSERT_EQ(rows.size(), subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    ASSERT_TRUE(std::holds_alternative<IncidentSubmission>(rows[i].result)) << i;
    EXPECT_EQ(std::get<IncidentSubmission>(rows[i].result), subs[i]) << i;
  }
}

TEST(CsvTest, TemplateHeaderIsStable) {
  EXPECT_EQ(csv_header(), "name,description,first_seen,target_countries,threat_actors,techniques");
}

// ---- bundle import -------------------------------------------------------------

TEST(BundleImportTest, RecoversSubmissionFromGraph) {
  const auto original = normalized(synth::bucha_example());
  const auto bundle = graph_to_bundle(build_incident_graph(original, catalog(), kAt));
  const auto parsed = parse_bundle_import(bundle);
  ASSERT_EQ(parsed.incidents.size(), 1u);
  EXPECT_TRUE(parsed.rejected.empty());
  EXPECT_TRUE(parsed.unreachable.empty());
  const auto& s = parsed.incidents[0].submission;
  EXPECT_EQ(s.name, original.name);
  EXPECT_EQ(s.description, original.description);
  EXPECT_EQ(s.first_seen, original.first_seen);
  EXPECT_EQ(s.threat_actors, original.threat_actors);
  EXPECT_EQ(s.target_countries, original.target_countries);
  EXPECT_EQ(std::set<std::string>(s.technique_refs.begin(), s.technique_refs.end()),
            std::set<std::string>(original.technique_refs.begin(), original.technique_refs.end()));
  EXPECT_EQ(s.source_kind, SourceKind::bundle_import);
}

TEST(BundleImportTest, FallsBackToCreatedAndReportsStragglers) {
  auto iset = json{{"type", "intrusion-set"},
                   {"id", "intrusion-set--00000000-0000-4000-8000-000000000001"},
                   {"name", "No first seen"},
                   {"created", "2019-06-07T08:00:00Z"}};
  auto bare = json{{"type", "intrusion-set"}, {"id", "intrusion-set--00000000-0000-4000-8000-000000000002"},
                   {"name", "Dateless"}};
  auto stray = json{{"type", "threat-actor"}, {"id", "threat-actor--00000000-0000-4000-8000-000000000003"},
                    {"name", "Nobody"}};
  const auto bundle = stix::parse_bundle(
      json{{"type", "bundle"}, {"id", "bundle--00000000-0000-4000-8000-000000000000"},
           {"objects", json::array({iset, bare, stray})}}
          .dump());
  const auto parsed = parse_bundle_import(bundle);
  ASSERT_EQ(parsed.incidents.size(), 1u);
  EXPECT_EQ(parsed.incidents[0].submission.first_seen, year{2019} / June / 7);
  ASSERT_EQ(parsed.rejected.size(), 1u);
  EXPECT_EQ(parsed.rejected[0].row, 1u);
  EXPECT_EQ(parsed.unreachable, std::vector<std::string>{"threat-actor--00000000-0000-4000-8000-000000000003"});

  const auto empty = stix::parse_bundle(json{{"type", "bundle"}, {"id", "bundle--x"}, {"objects", {stray}}}.dump());
  EXPECT_EQ(code_of([&] { parse_bundle_import(empty); }), Errc::empty_import);
}

}  // namespace
}  // namespace disinfox::incident
