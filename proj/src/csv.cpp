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

#include <algorithm>
#include <optional>

#include "disinfox/error.hpp"
#include "disinfox/incident.hpp"
#include "disinfox/text.hpp"

namespace disinfox::incident {

namespace {

struct Record {
  std::size_t line;
  std::vector<std::string> fields;
  bool unterminated = false;
};

// RFC 4180 reader: comma separated, double-quote escaping, CRLF or LF.
class RecordReader {
 public:
  explicit RecordReader(std::string_view data) : data_(data) {}

  std::optional<Record> next() {
    if (pos_ >= data_.size()) return std::nullopt;
    Record rec{line_, {}, false};
    std::string field;
    bool quoted = false;
    bool field_started = false;
    while (pos_ < data_.size()) {
      const char c = data_[pos_++];
      if (quoted) {
        if (c == '"') {
          if (pos_ < data_.size() && data_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == '"' && !field_started) {
        quoted = true;
        field_started = true;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        field_started = false;
      } else if (c == '\r' && pos_ < data_.size() && data_[pos_] == '\n') {
        // handled by the '\n' branch on the next iteration
      } else if (c == '\n') {
        ++line_;
        rec.fields.push_back(std::move(field));
        return rec;
      } else {
        field.push_back(c);
        field_started = true;
      }
    }
    rec.unterminated = quoted;
    rec.fields.push_back(std::move(field));
    return rec;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool is_blank(const Record& rec) {
  return std::all_of(rec.fields.begin(), rec.fields.end(),
                     [](const std::string& f) { return text::trim(f).empty(); });
}

std::vector<std::string> list_cell(std::string_view cell) {
  std::vector<std::string> out;
  for (auto& part : text::split(cell, ';')) {
    if (!text::trim(part).empty()) out.push_back(std::move(part));
  }
  return out;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& values, char sep) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out.push_back(sep);
    out += v;
  }
  return out;
}

}  // namespace

std::vector<CsvRow> parse_csv_submissions(std::string_view bytes) {
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  if (!text::is_valid_utf8(bytes)) throw Error(Errc::encoding, "CSV file is not valid UTF-8");

  RecordReader reader(bytes);
  std::optional<Record> header;
  while ((header = reader.next()) && is_blank(*header)) {
  }
  if (!header) {
    throw Error(Errc::schema_error, "CSV file is empty; expected header: " + csv_header(),
                nlohmann::json{{"missing", kCsvColumns}, {"unexpected", nlohmann::json::array()}});
  }

  // column position of each template field
  std::array<std::size_t, kCsvColumns.size()> position{};
  std::vector<std::string> missing, unexpected, seen;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    const auto name = text::lower(text::trim(header->fields[i]));
    const auto it = std::find(kCsvColumns.begin(), kCsvColumns.end(), name);
    if (it == kCsvColumns.end() || std::find(seen.begin(), seen.end(), name) != seen.end()) {
      unexpected.push_back(std::string(text::trim(header->fields[i])));
      continue;
    }
    seen.push_back(name);
    position[static_cast<std::size_t>(it - kCsvColumns.begin())] = i;
  }
  for (auto column : kCsvColumns) {
    if (std::find(seen.begin(), seen.end(), column) == seen.end()) missing.emplace_back(column);
  }
  if (!missing.empty() || !unexpected.empty()) {
    throw Error(Errc::schema_error,
                "CSV header does not match template (missing: " + join(missing, ',') +
                    "; unexpected: " + join(unexpected, ',') + ")",
                nlohmann::json{{"missing", missing}, {"unexpected", unexpected}});
  }
  const auto width = header->fields.size();

  std::vector<CsvRow> rows;
  while (auto rec = reader.next()) {
    if (is_blank(*rec)) continue;
    const auto row = rec->line;
    auto fail = [&](Errc code, std::string reason) {
      rows.push_back(CsvRow{row, RowError{row, std::string(to_string(code)), std::move(reason)}});
    };
    if (rec->unterminated) {
      fail(Errc::parse_error, "unterminated quoted field");
      continue;
    }
    if (rec->fields.size() != width) {
      fail(Errc::validation, "expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(rec->fields.size()));
      continue;
    }
    auto cell = [&](std::size_t column) -> const std::string& { return rec->fields[position[column]]; };

    const auto date_text = text::trim(cell(2));
    const auto date = parse_date(date_text);
    if (!date) {
      fail(Errc::validation, "first_seen '" + std::string(date_text) + "' is not a YYYY-MM-DD date");
      continue;
    }
    IncidentSubmission s;
    s.name = cell(0);
    s.description = cell(1);
    s.first_seen = *date;
    s.target_countries = list_cell(cell(3));
    s.threat_actors = list_cell(cell(4));
    s.technique_refs = list_cell(cell(5));
    s.source_kind = SourceKind::csv;
    try {
      rows.push_back(CsvRow{row, normalized(std::move(s))});
    } catch (const Error& e) {
      fail(e.code(), e.what());
    }
  }
  return rows;
}

std::string csv_header() {
  std::string out;
  for (auto column : kCsvColumns) {
    if (!out.empty()) out.push_back(',');
    out += column;
  }
  return out;
}

std::string to_csv_row(const IncidentSubmission& s) {
  return quote(s.name) + "," + quote(s.description) + "," + format_date(s.first_seen) + "," +
         quote(join(s.target_countries, ';')) + "," + quote(join(s.threat_actors, ';')) + "," +
         quote(join(s.technique_refs, ';'));
}

}  // namespace disinfox::incident
