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

// disinfox-fixture: writes the synthetic incident dataset as template CSV.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "disinfox/error.hpp"
#include "disinfox/synth.hpp"

int main(int argc, char** argv) {
  using namespace disinfox;

  CLI::App app{"Generate the synthetic incident CSV fixture"};
  app.option_defaults()->always_capture_default();
  std::filesystem::path catalog_path = DISINFOX_DEFAULT_CATALOG;
  std::size_t count = 118;
  std::uint64_t seed = 20220401;
  std::filesystem::path out_path;
  app.add_option("--catalog", catalog_path, "DISARM STIX bundle");
  app.add_option("--count", count, "number of incidents")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--out", out_path, "output file (stdout when omitted)");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto catalog = disarm::Catalog::load_file(catalog_path);
    const auto csv = synth::to_csv(synth::fixture_incidents(catalog, count, seed));
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
      out << csv;
      if (!out) throw Error(Errc::io, "cannot write " + out_path.string());
    }
  } catch (const Error& e) {
    std::cerr << "disinfox-fixture: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
