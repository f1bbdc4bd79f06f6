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

#include "disinfox/synth.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <string_view>

#include "disinfox/countries.hpp"

namespace disinfox::synth {

using incident::IncidentSubmission;

namespace {

constexpr std::array<std::string_view, 20> kActors = {
    "Russia",          "China",           "Iran",
    "North Korea",     "Belarus",         "Internet Research Agency",
    "Ghostwriter",     "Doppelganger",    "Secondary Infektion",
    "Spamouflage",     "Storm-1516",      "Pravda Network",
    "Endless Mayfly",  "Wagner Group",    "Portal Kombat",
    "Falsos Amigos",   "Cyber Front Z",   "News Front",
    "Strategic Culture Foundation", "Unattributed network"};

constexpr std::array<std::string_view, 16> kThemes = {
    "Forged ministry letter",    "Fabricated NATO memo",     "Deepfake broadcast",
    "Bioweapon lab rumour",      "Election fraud claims",    "Refugee crime hoax",
    "Staged atrocity narrative", "Vaccine sabotage story",   "Energy blackout panic",
    "Cloned news outlet",        "Grain deal smear",         "Sanctions backlash myth",
    "Fake fact-check campaign",  "Hijacked influencer posts", "Spoofed embassy statement",
    "Manufactured protest footage"};

constexpr std::array<std::string_view, 8> kSentences = {
    "Coordinated accounts amplified the claim within hours of publication.",
    "The content imitated the visual identity of a reputable outlet, including its logo and bylines.",
    "Fact-checkers traced the earliest copies to a cluster of newly created channels.",
    "Several \"independent experts\" quoted in the pieces could not be found in any public record.",
    "The narrative was translated into at least four languages, and reposted by state-affiliated media.",
    "Paid advertisements pushed the story to audiences in the targeted regions.",
    "Comment sections were flooded with near-identical messages, some posted seconds apart.",
    "Platform takedowns followed, but mirrors reappeared on smaller networks.",
};

std::vector<std::size_t> pick_indices(std::mt19937_64& rng, std::size_t pool_size, std::size_t count) {
  std::vector<std::size_t> indices(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) indices[i] = i;
  std::shuffle(indices.begin(), indices.end(), rng);
  indices.resize(std::min(count, pool_size));
  return indices;
}

template <typename Pool>
std::vector<std::string> pick(std::mt19937_64& rng, const Pool& pool, std::size_t count) {
  std::vector<std::string> out;
  for (const auto i : pick_indices(rng, pool.size(), count)) out.emplace_back(pool[i]);
  return out;
}

std::size_t up_to(std::mt19937_64& rng, std::size_t max) {
  return std::uniform_int_distribution<std::size_t>(0, max)(rng);
}

}  // namespace

IncidentSubmission bucha_example() {
  IncidentSubmission s;
  s.name = "Bucha massacre at Ukraine";
  s.description =
      "After Russian forces withdrew from Bucha, evidence of mass killings of civilians emerged. Russian officials "
      "and state media denied responsibility and claimed the scenes were staged by Ukraine, spreading the claim "
      "through official channels, proxy outlets and coordinated social media accounts.";
  s.first_seen = std::chrono::year{2022} / std::chrono::April / 1;
  s.target_countries = {"Ukraine"};
  s.threat_actors = {"Russia"};
  s.technique_refs = {"T0002", "T0075.001", "T0023", "T0003",    "T0110",     "T0114",
                      "T0111.001", "T0104.001", "T0049", "T0118", "T0129.006", "T0066"};
  s.source_kind = incident::SourceKind::form;
  return s;
}

IncidentSubmission random_submission(std::mt19937_64& rng, const disarm::Catalog& catalog, std::size_t serial,
                                     Limits limits, bool allow_names) {
  IncidentSubmission s;
  s.name = std::string(kThemes[up_to(rng, kThemes.size() - 1)]) + " #" + std::to_string(serial);

  const auto sentences = up_to(rng, 6);
  for (std::size_t i = 0; i < sentences; ++i) {
    if (!s.description.empty()) s.description += ' ';
    s.description += kSentences[up_to(rng, kSentences.size() - 1)];
  }

  const auto day_offset = std::uniform_int_distribution<int>(0, 4017)(rng);
  s.first_seen = std::chrono::year_month_day{std::chrono::sys_days{std::chrono::year{2014} / 1 / 1} +
                                             std::chrono::days{day_offset}};

  s.threat_actors = pick(rng, kActors, up_to(rng, limits.max_actors));

  const auto countries = all_countries();
  std::vector<std::string_view> country_names;
  for (const auto& c : countries) country_names.push_back(c.name);
  s.target_countries = pick(rng, country_names, up_to(rng, limits.max_countries));

  const auto& techniques = catalog.techniques();
  for (const auto index : pick_indices(rng, techniques.size(), up_to(rng, limits.max_techniques))) {
    const auto& technique = techniques[index];
    const bool by_name = allow_names && std::bernoulli_distribution(0.25)(rng);
    s.technique_refs.push_back(by_name ? technique.display_name : technique.external_id);
  }
  s.source_kind = incident::SourceKind::form;
  return s;
}

std::vector<IncidentSubmission> fixture_incidents(const disarm::Catalog& catalog, std::size_t count,
                                                  std::uint64_t seed) {
  std::vector<IncidentSubmission> out;
  if (count == 0) return out;
  out.push_back(bucha_example());
  out.back().source_kind = incident::SourceKind::csv;
  std::mt19937_64 rng(seed);
  for (std::size_t serial = 1; out.size() < count; ++serial) {
    auto s = random_submission(rng, catalog, serial, Limits{3, 3, 8}, true);
    // Most incidents in the dataset carry at least one attribution.
    if (s.threat_actors.empty() && std::bernoulli_distribution(0.7)(rng)) s.threat_actors.push_back("Russia");
    s.source_kind = incident::SourceKind::csv;
    out.push_back(std::move(s));
  }
  return out;
}

std::string to_csv(const std::vector<IncidentSubmission>& submissions) {
  std::string out = incident::csv_header() + "\r\n";
  for (const auto& s : submissions) out += incident::to_csv_row(s) + "\r\n";
  return out;
}

}  // namespace disinfox::synth
