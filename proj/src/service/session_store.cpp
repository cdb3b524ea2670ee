#include "ahp/service/session_store.hpp"

#include <stdexcept>

#include <sqlite3.h>

namespace ahp::service {

void MemorySessionStore::save(const std::string& id, const std::string& snapshot) {
  std::lock_guard lock(mutex_);
  snapshots_[id] = snapshot;
}

std::map<std::string, std::string> MemorySessionStore::load_all() {
  std::lock_guard lock(mutex_);
  return snapshots_;
}

namespace {

struct DbClose {
  void operator()(sqlite3* db) const { sqlite3_close(db); }
};
struct StmtFinalize {
  void operator()(sqlite3_stmt* stmt) const { sqlite3_finalize(stmt); }
};
using Statement = std::unique_ptr<sqlite3_stmt, StmtFinalize>;

[[noreturn]] void sql_fail(sqlite3* db, const std::string& what) {
  throw std::runtime_error("session store: " + what + ": " + sqlite3_errmsg(db));
}

}  // namespace

struct SqliteSessionStore::Impl {
  std::unique_ptr<sqlite3, DbClose> db;
  std::mutex mutex;

  Statement prepare(const char* sql) {
    sqlite3_stmt* stmt = nullptr;
    if (sqlite3_prepare_v2(db.get(), sql, -1, &stmt, nullptr) != SQLITE_OK)
      sql_fail(db.get(), "prepare");
    return Statement(stmt);
  }
};

SqliteSessionStore::SqliteSessionStore(const std::filesystem::path& path)
    : impl_(std::make_unique<Impl>()) {
  sqlite3* raw = nullptr;
  const int rc = sqlite3_open_v2(path.string().c_str(), &raw,
                                 SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE, nullptr);
  impl_->db.reset(raw);
  if (rc != SQLITE_OK) sql_fail(raw, "open " + path.string());
  char* err = nullptr;
  if (sqlite3_exec(raw,
                   "PRAGMA journal_mode=WAL;"
                   "CREATE TABLE IF NOT EXISTS sessions ("
                   "  id TEXT PRIMARY KEY,"
                   "  snapshot TEXT NOT NULL)",
                   nullptr, nullptr, &err) != SQLITE_OK) {
    std::string message = err ? err : "unknown error";
    sqlite3_free(err);
    throw std::runtime_error("session store: schema: " + message);
  }
}

SqliteSessionStore::~SqliteSessionStore() = default;

void SqliteSessionStore::save(const std::string& id, const std::string& snapshot) {
  std::lock_guard lock(impl_->mutex);
  auto stmt = impl_->prepare(
      "INSERT INTO sessions(id, snapshot) VALUES(?1, ?2) "
      "ON CONFLICT(id) DO UPDATE SET snapshot = excluded.snapshot");
  sqlite3_bind_text(stmt.get(), 1, id.c_str(), static_cast<int>(id.size()), SQLITE_TRANSIENT);
  sqlite3_bind_text(stmt.get(), 2, snapshot.c_str(), static_cast<int>(snapshot.size()),
                    SQLITE_TRANSIENT);
  if (sqlite3_step(stmt.get()) != SQLITE_DONE) sql_fail(impl_->db.get(), "save");
}

std::map<std::string, std::string> SqliteSessionStore::load_all() {
  std::lock_guard lock(impl_->mutex);
  auto stmt = impl_->prepare("SELECT id, snapshot FROM sessions");
  std::map<std::string, std::string> out;
  int rc;
  while ((rc = sqlite3_step(stmt.get())) == SQLITE_ROW) {
    auto text = [&](int col) {
      const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt.get(), col));
      return std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt.get(), col)));
    };
    out[text(0)] = text(1);
  }
  if (rc != SQLITE_DONE) sql_fail(impl_->db.get(), "load");
  return out;
}

}  // namespace ahp::service
