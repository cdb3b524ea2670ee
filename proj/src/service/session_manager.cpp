#include "ahp/service/session_manager.hpp"

#include <cstdio>
#include <random>

namespace ahp::service {

SessionManager::SessionManager(std::unique_ptr<SessionStore> store, RiTable ri_table)
    : store_(std::move(store)), ri_table_(std::move(ri_table)) {
  for (const auto& [id, text] : store_->load_all()) {
    auto session = ElicitationSession::restore(nlohmann::json::parse(text), ri_table_);
    sessions_.emplace(id, std::make_shared<Slot>(std::move(session)));
  }
}

std::string SessionManager::new_id() const {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

std::string SessionManager::create(io::ProjectDocument project) {
  std::unique_lock lock(map_mutex_);
  std::string id;
  do {
    id = new_id();
  } while (sessions_.contains(id));
  ElicitationSession session(id, std::move(project), ri_table_);
  store_->save(id, session.snapshot().dump());
  sessions_.emplace(id, std::make_shared<Slot>(std::move(session)));
  return id;
}

std::shared_ptr<SessionManager::Slot> SessionManager::slot(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end())
    throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'").with_subject(id);
  return it->second;
}

nlohmann::json SessionManager::state(const std::string& id) const {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session.state();
}

JudgmentFeedback SessionManager::submit(const std::string& id, const std::string& expert,
                                        const std::string& node_id, std::size_t i,
                                        std::size_t j, double value,
                                        std::optional<std::uint64_t> expected_revision) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  ElicitationSession next = s->session;
  auto feedback = next.submit(expert, node_id, i, j, value, expected_revision);
  store_->save(id, next.snapshot().dump());
  s->session = std::move(next);
  return feedback;
}

CachedEvaluation SessionManager::evaluate(const std::string& id, AggregationMethod method) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  ElicitationSession next = s->session;
  CachedEvaluation result = next.aggregate_and_evaluate(method);
  store_->save(id, next.snapshot().dump());
  s->session = std::move(next);
  return result;
}

CompositeWeightTable SessionManager::what_if(const std::string& id, const std::string& node_id,
                                             double new_local_weight) const {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session.what_if(node_id, new_local_weight);
}

std::string SessionManager::report(const std::string& id, io::ReportFormat format,
                                   int precision) const {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return io::export_report(s->session.current_evaluation().result, format, precision);
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(map_mutex_);
  return sessions_.size();
}

}  // namespace ahp::service
