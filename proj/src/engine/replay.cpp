#include "lsd/engine/replay.hpp"

namespace lsd::engine {

Replayer::Replayer(const core::Program& program, const core::Query& query, Options options)
    : engine_(program, query, options) {}

void Replayer::apply(const Event& event) {
  if (event.kind == "snapshot") return;
  if (event.step != engine_.step_count() + 1) {
    throw std::runtime_error("trace step " + std::to_string(event.step) + " out of sequence");
  }
  before_.resize(event.step + 1);
  before_[event.step] = engine_.mark();
  const auto& p = event.payload;
  auto cell = [&](const char* key) { return p.at(key).get<CellId>(); };
  Event produced;
  if (event.kind == "replace") {
    produced = engine_.apply({Rule::Kind::replace, cell("cell"), 0, 0, p.at("case").get<std::size_t>()});
  } else if (event.kind == "merge") {
    produced = engine_.apply({Rule::Kind::merge, cell("kept"), cell("removed")});
  } else if (event.kind == "delete") {
    produced = engine_.apply({Rule::Kind::remove, cell("cell")});
  } else if (event.kind == "bond") {
    produced = engine_.apply({Rule::Kind::bond, 0, 0, p.at("bond").get<BondId>()});
  } else if (event.kind == "success") {
    produced = engine_.apply({Rule::Kind::finish});
  } else if (event.kind == "negation_exit" && p.at("holds").get<bool>()) {
    produced = engine_.apply({Rule::Kind::drop, cell("cell")});
  } else if (event.kind == "backtrack") {
    if (!p.at("exhausted").get<bool>()) {
      auto from = p.at("undone_from").get<std::size_t>();
      if (from >= before_.size()) throw std::runtime_error("backtrack to an unknown step");
      engine_.undo_to(before_[from]);
      engine_.skip_event(event.step, Status::running);
    } else {
      engine_.skip_event(event.step, Status::exhausted);
    }
    return;
  } else {
    // fail, negation_enter and a failing negation_exit leave the state alone.
    bool failed = event.kind == "fail" || event.kind == "negation_exit";
    engine_.skip_event(event.step, failed ? Status::failure : engine_.status());
    return;
  }
  if (produced.kind != event.kind) {
    throw std::runtime_error("replay of step " + std::to_string(event.step) + " produced '" +
                             produced.kind + "' instead of '" + event.kind + "'");
  }
}

void Replayer::apply_all(const std::vector<Event>& events) {
  for (const auto& e : events) apply(e);
}

}  // namespace lsd::engine
