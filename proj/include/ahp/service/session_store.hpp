#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace ahp::service {

/// Durable key-value storage of session snapshots (id -> JSON text).
class SessionStore {
 public:
  virtual ~SessionStore() = default;
  virtual void save(const std::string& id, const std::string& snapshot) = 0;
  virtual std::map<std::string, std::string> load_all() = 0;
};

/// Keeps snapshots in memory only; for tests and throwaway servers.
class MemorySessionStore final : public SessionStore {
 public:
  void save(const std::string& id, const std::string& snapshot) override;
  std::map<std::string, std::string> load_all() override;

 private:
  std::mutex mutex_;
  std::map<std::string, std::string> snapshots_;
};

/// SQLite file with a single `sessions(id, snapshot)` table. Each save is
/// one committed upsert, so a restart sees the last accepted mutation.
class SqliteSessionStore final : public SessionStore {
 public:
  explicit SqliteSessionStore(const std::filesystem::path& path);
  ~SqliteSessionStore() override;

  SqliteSessionStore(const SqliteSessionStore&) = delete;
  SqliteSessionStore& operator=(const SqliteSessionStore&) = delete;

  void save(const std::string& id, const std::string& snapshot) override;
  std::map<std::string, std::string> load_all() override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ahp::service
