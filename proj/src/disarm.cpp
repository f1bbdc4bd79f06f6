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

#include "disinfox/disarm.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "disinfox/error.hpp"
#include "disinfox/text.hpp"

namespace disinfox::disarm {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string> phases_of(const stix::StixObject& object) {
  std::vector<std::string> phases;
  const auto& props = object.json();
  const auto it = props.find("kill_chain_phases");
  if (it == props.end() || !it->is_array()) return phases;
  for (const auto& phase : *it) {
    if (!phase.is_object()) continue;
    const auto name = phase.find("phase_name");
    if (name == phase.end() || !name->is_string()) continue;
    auto value = name->get<std::string>();
    if (std::find(phases.begin(), phases.end(), value) == phases.end()) phases.push_back(std::move(value));
  }
  return phases;
}

}  // namespace

bool is_technique_code(std::string_view code) {
  if (code.size() < 2 || code.front() != 'T') return false;
  code.remove_prefix(1);
  const auto dot = code.find('.');
  if (dot == std::string_view::npos) return all_digits(code);
  return all_digits(code.substr(0, dot)) && all_digits(code.substr(dot + 1));
}

std::optional<std::string> disarm_external_id(const stix::StixObject& object) {
  const auto& props = object.json();
  const auto refs = props.find("external_references");
  if (refs == props.end() || !refs->is_array()) return std::nullopt;
  for (const auto& ref : *refs) {
    if (!ref.is_object()) continue;
    const auto source = ref.find("source_name");
    const auto id = ref.find("external_id");
    if (source == ref.end() || id == ref.end() || !source->is_string() || !id->is_string()) continue;
    if (!text::iequals(source->get<std::string>(), "DISARM")) continue;
    auto code = text::upper(text::trim(id->get<std::string>()));
    if (is_technique_code(code)) return code;
  }
  return std::nullopt;
}

Catalog Catalog::load(std::string_view bundle_bytes, Timestamp loaded_at) {
  const auto bundle = stix::parse_bundle(bundle_bytes);

  Catalog catalog;
  catalog.loaded_at_ = loaded_at;
  if (const auto label = bundle.extra.find("x_disarm_version");
      label != bundle.extra.end() && label->is_string()) {
    catalog.version_label_ = label->get<std::string>();
  } else {
    catalog.version_label_ = "sha256:" + crypto::sha256_hex(bundle_bytes).substr(0, 12);
  }

  for (const auto& object : bundle.objects) {
    if (object.kind() != stix::ObjectType::attack_pattern) continue;
    auto code = disarm_external_id(object);
    if (!code) {
      ++catalog.report_.skipped_without_id;
      continue;
    }
    if (catalog.by_external_id_.count(*code) > 0) {
      catalog.report_.duplicate_ids.push_back(*code);
      continue;
    }
    auto name = text::squash(object.name().value_or(""));
    if (name.empty()) {
      ++catalog.report_.skipped_without_id;
      continue;
    }
    const auto key = text::normalize_key(name);
    if (const auto it = catalog.by_name_.find(key); it != catalog.by_name_.end()) {
      catalog.report_.name_collisions.push_back(name + ": kept " + catalog.techniques_[it->second].external_id +
                                                ", dropped " + *code);
      continue;
    }
    Technique technique{object, *code, name, phases_of(object)};
    for (const auto& phase : technique.tactic_phases) {
      if (std::find(catalog.phase_order_.begin(), catalog.phase_order_.end(), phase) == catalog.phase_order_.end()) {
        catalog.phase_order_.push_back(phase);
      }
    }
    const auto index = catalog.techniques_.size();
    catalog.by_external_id_.emplace(*code, index);
    catalog.by_name_.emplace(key, index);
    catalog.techniques_.push_back(std::move(technique));
  }

  catalog.report_.indexed = catalog.techniques_.size();
  if (catalog.techniques_.empty()) {
    throw Error(Errc::empty_catalog, "no DISARM attack-patterns found in catalog bundle");
  }
  return catalog;
}

Catalog Catalog::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open catalog file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

const Technique* Catalog::find_by_external_id(std::string_view code) const {
  const auto canonical = text::upper(text::trim(code));
  const auto it = by_external_id_.find(canonical);
  return it == by_external_id_.end() ? nullptr : &techniques_[it->second];
}

const Technique* Catalog::find_by_name(std::string_view name) const {
  const auto it = by_name_.find(text::normalize_key(name));
  return it == by_name_.end() ? nullptr : &techniques_[it->second];
}

const Technique* Catalog::resolve(std::string_view ref) const {
  if (const auto* t = find_by_external_id(ref)) return t;
  return find_by_name(ref);
}

Catalog::TacticGroups Catalog::list_by_tactic() const {
  TacticGroups groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& phase : phase_order_) {
    slot.emplace(phase, groups.size());
    groups.emplace_back(phase, std::vector<const Technique*>{});
  }
  std::vector<const Technique*> unphased;
  for (const auto& technique : techniques_) {
    if (technique.tactic_phases.empty()) unphased.push_back(&technique);
    for (const auto& phase : technique.tactic_phases) groups[slot.at(phase)].second.push_back(&technique);
  }
  if (!unphased.empty()) groups.emplace_back(std::string(kUnphased), std::move(unphased));
  for (auto& [phase, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const Technique* a, const Technique* b) { return a->external_id < b->external_id; });
  }
  return groups;
}

}  // namespace disinfox::disarm
