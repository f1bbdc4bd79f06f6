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

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "disinfox/disarm.hpp"
#include "disinfox/incident.hpp"

namespace disinfox::synth {

struct Limits {
  std::size_t max_actors = 5;
  std::size_t max_countries = 5;
  std::size_t max_techniques = 15;
};

/// The worked example: Russia against Ukraine, first seen 2022-04-01,
/// twelve DISARM techniques.
incident::IncidentSubmission bucha_example();

/// A plausible incident drawn from fixed pools: distinct actors,
/// distinct countries and distinct catalog techniques (referenced by
/// code, or by name when `allow_names` is set). `serial` makes the name
/// unique.
incident::IncidentSubmission random_submission(std::mt19937_64& rng, const disarm::Catalog& catalog,
                                               std::size_t serial, Limits limits = {}, bool allow_names = false);

/// The bundled dataset: the worked example followed by `count - 1`
/// generated incidents, fully determined by `seed`.
std::vector<incident::IncidentSubmission> fixture_incidents(const disarm::Catalog& catalog, std::size_t count,
                                                            std::uint64_t seed);

/// Header plus one row per submission, CRLF line endings.
std::string to_csv(const std::vector<incident::IncidentSubmission>& submissions);

}  // namespace disinfox::synth
