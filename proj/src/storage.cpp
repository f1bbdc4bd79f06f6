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

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "disinfox/error.hpp"
#include "disinfox/store.hpp"

namespace disinfox::store {

using nlohmann::json;

namespace {

class MemoryBackend final : public StorageBackend {
 public:
  std::vector<StoredObject> load_objects() override { return {}; }
  void append_batch(std::span<const StoredObject>) override {}
  AccountsState load_accounts() override { return {}; }
  void save_accounts(const AccountsState&) override {}
};

json to_json(const StoredObject& s) {
  return json{{"object", s.object.json()}, {"stored_at", s.stored_at.to_string()}, {"uploader", s.uploader}};
}

StoredObject stored_from_json(const json& j) {
  auto object = stix::StixObject::from_json(j.at("object"));
  const auto modified = object.modified();
  const auto stored_at = Timestamp::parse(j.at("stored_at").get<std::string>());
  if (!modified || !stored_at) throw Error(Errc::io, "journal entry " + object.id() + " has bad timestamps");
  return StoredObject{std::move(object), *modified, *stored_at, j.at("uploader").get<std::string>()};
}

json to_json(const UserAccount& u) {
  return json{{"user_id", u.user_id},
              {"username", u.username},
              {"password_digest", u.password_digest},
              {"role", to_string(u.role)},
              {"favorites", u.favorites},
              {"created_at", u.created_at.to_string()}};
}

json to_json(const ApiKey& k) {
  return json{{"key_id", k.key_id},
              {"owner", k.owner},
              {"secret_digest", k.secret_digest},
              {"label", k.label},
              {"created_at", k.created_at.to_string()},
              {"revoked", k.revoked}};
}

Timestamp timestamp_field(const json& j, const char* key) {
  return Timestamp::parse(j.at(key).get<std::string>()).value_or(Timestamp::epoch());
}

void write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const auto n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(Errc::io, std::string("write failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

// Replaces `path` with `content` via a synced temporary file and rename.
void replace_file(const std::filesystem::path& path, std::string_view content) {
  const auto tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) throw Error(Errc::io, "cannot write " + tmp + ": " + std::strerror(errno));
  try {
    write_all(fd, content);
    if (::fsync(fd) != 0) throw Error(Errc::io, "fsync failed for " + tmp);
  } catch (...) {
    ::close(fd);
    std::filesystem::remove(tmp);
    throw;
  }
  ::close(fd);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io, "rename to " + path.string() + " failed: " + ec.message());
}

class FileBackend final : public StorageBackend {
 public:
  explicit FileBackend(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(Errc::io, "cannot create data directory " + dir_.string() + ": " + ec.message());
  }

  std::vector<StoredObject> load_objects() override {
    const auto path = journal_path();
    std::vector<StoredObject> objects;
    if (!std::filesystem::exists(path)) return objects;

    std::ifstream in(path, std::ios::binary);
    std::string line;
    std::size_t good_bytes = 0;
    std::size_t batches = 0;
    bool torn = false;
    while (std::getline(in, line)) {
      const bool complete = !in.eof();
      json doc;
      try {
        doc = json::parse(line);
      } catch (const json::parse_error&) {
        if (!complete || in.peek() == std::char_traits<char>::eof()) {
          torn = true;
          break;
        }
        throw Error(Errc::io, "corrupt journal record in " + path.string());
      }
      if (!complete) {
        torn = true;
        break;
      }
      for (const auto& entry : doc.at("batch")) objects.push_back(stored_from_json(entry));
      good_bytes += line.size() + 1;
      ++batches;
    }
    in.close();
    if (torn) std::filesystem::resize_file(path, good_bytes);
    if (batches > 1 || torn) compact(objects);
    return objects;
  }

  void append_batch(std::span<const StoredObject> batch) override {
    if (batch.empty()) return;
    json entries = json::array();
    for (const auto& s : batch) entries.push_back(to_json(s));
    std::string line = json{{"batch", std::move(entries)}}.dump(-1, ' ', false, json::error_handler_t::replace);
    line.push_back('\n');

    const auto path = journal_path();
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0600);
    if (fd < 0) throw Error(Errc::io, "cannot open journal " + path.string() + ": " + std::strerror(errno));
    const auto before = ::lseek(fd, 0, SEEK_END);
    try {
      write_all(fd, line);
      if (::fsync(fd) != 0) throw Error(Errc::io, "fsync failed for journal");
    } catch (...) {
      if (before >= 0 && ::ftruncate(fd, before) != 0) {
        // the torn tail is discarded on next open
      }
      ::close(fd);
      throw;
    }
    ::close(fd);
  }

  AccountsState load_accounts() override {
    AccountsState state;
    const auto path = dir_ / "accounts.json";
    if (!std::filesystem::exists(path)) return state;
    std::ifstream in(path, std::ios::binary);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(Errc::io, "corrupt accounts file: " + std::string(e.what()));
    }
    for (const auto& u : doc.value("users", json::array())) {
      UserAccount user;
      user.user_id = u.at("user_id").get<std::string>();
      user.username = u.at("username").get<std::string>();
      user.password_digest = u.at("password_digest").get<std::string>();
      user.role = parse_role(u.at("role").get<std::string>()).value_or(Role::viewer);
      user.favorites = u.value("favorites", std::set<std::string>{});
      user.created_at = timestamp_field(u, "created_at");
      state.users.push_back(std::move(user));
    }
    for (const auto& k : doc.value("keys", json::array())) {
      ApiKey key;
      key.key_id = k.at("key_id").get<std::string>();
      key.owner = k.at("owner").get<std::string>();
      key.secret_digest = k.at("secret_digest").get<std::string>();
      key.label = k.value("label", "");
      key.created_at = timestamp_field(k, "created_at");
      key.revoked = k.value("revoked", false);
      state.keys.push_back(std::move(key));
    }
    return state;
  }

  void save_accounts(const AccountsState& state) override {
    json users = json::array();
    for (const auto& u : state.users) users.push_back(to_json(u));
    json keys = json::array();
    for (const auto& k : state.keys) keys.push_back(to_json(k));
    replace_file(dir_ / "accounts.json", json{{"users", users}, {"keys", keys}}.dump(2));
  }

 private:
  std::filesystem::path journal_path() const { return dir_ / "objects.jsonl"; }

  void compact(const std::vector<StoredObject>& loaded) {
    // Later entries supersede earlier ones for the same id.
    std::unordered_map<std::string, std::size_t> last;
    for (std::size_t i = 0; i < loaded.size(); ++i) last[loaded[i].object.id()] = i;
    json entries = json::array();
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      if (last[loaded[i].object.id()] == i) entries.push_back(to_json(loaded[i]));
    }
    std::string content;
    if (!entries.empty()) {
      content = json{{"batch", std::move(entries)}}.dump(-1, ' ', false, json::error_handler_t::replace);
      content.push_back('\n');
    }
    replace_file(journal_path(), content);
  }

  std::filesystem::path dir_;
};

}  // namespace

std::shared_ptr<StorageBackend> make_memory_backend() { return std::make_shared<MemoryBackend>(); }

std::shared_ptr<StorageBackend> make_file_backend(const std::filesystem::path& dir) {
  return std::make_shared<FileBackend>(dir);
}

}  // namespace disinfox::store
