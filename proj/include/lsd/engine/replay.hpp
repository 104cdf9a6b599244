#pragma once

#include <vector>

#include "lsd/engine/engine.hpp"

namespace lsd::engine {

// Re-applies a recorded trace to a freshly loaded query. Throws
// std::runtime_error when an event does not fit the replayed state.
class Replayer {
 public:
  Replayer(const core::Program& program, const core::Query& query, Options options = {});

  void apply(const Event& event);
  void apply_all(const std::vector<Event>& events);
  const Engine& engine() const { return engine_; }

 private:
  Engine engine_;
  std::vector<Engine::Mark> before_;  // indexed by step
};

}  // namespace lsd::engine
