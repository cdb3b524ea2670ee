#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "ahp/io/report.hpp"
#include "ahp/service/session.hpp"
#include "ahp/service/session_store.hpp"

namespace ahp::service {

/// Owns all sessions. Mutations of one session are serialized by a
/// per-session mutex and committed copy-then-swap after the snapshot is
/// stored; different sessions proceed in parallel.
class SessionManager {
 public:
  explicit SessionManager(std::unique_ptr<SessionStore> store,
                          RiTable ri_table = RiTable::standard());

  std::string create(io::ProjectDocument project);

  nlohmann::json state(const std::string& id) const;
  JudgmentFeedback submit(const std::string& id, const std::string& expert,
                          const std::string& node_id, std::size_t i, std::size_t j, double value,
                          std::optional<std::uint64_t> expected_revision = std::nullopt);
  /// Returns a copy of the freshly cached evaluation.
  CachedEvaluation evaluate(const std::string& id, AggregationMethod method);
  CompositeWeightTable what_if(const std::string& id, const std::string& node_id,
                               double new_local_weight) const;
  std::string report(const std::string& id, io::ReportFormat format, int precision = 4) const;

  std::size_t size() const;

 private:
  struct Slot {
    explicit Slot(ElicitationSession s) : session(std::move(s)) {}
    mutable std::mutex mutex;
    ElicitationSession session;
  };

  std::shared_ptr<Slot> slot(const std::string& id) const;
  std::string new_id() const;

  std::unique_ptr<SessionStore> store_;
  RiTable ri_table_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

}  // namespace ahp::service
