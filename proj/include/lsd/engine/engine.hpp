#pragma once

#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lsd/anim/animation.hpp"
#include "lsd/core/instantiate.hpp"

namespace lsd::engine {

using core::BondId;
using core::CellId;

struct Event {
  std::size_t step = 0;
  std::string kind;  // replace merge delete bond fail backtrack negation_enter
                     // negation_exit success snapshot
  nlohmann::json payload;
};

nlohmann::json to_json(const Event& event);
Event event_from_json(const nlohmann::json& j);

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void emit(const Event& event) = 0;
};

class VectorSink : public TraceSink {
 public:
  void emit(const Event& event) override { events.push_back(event); }
  std::vector<Event> events;
};

enum class Status { running, success, failure, exhausted, budget_exceeded };
std::string to_string(Status status);

struct Options {
  solid::AnchorPolicy anchor = solid::AnchorPolicy::anchor_earlier;
  anim::Kind animation = anim::Kind::linear;
  std::size_t budget = 100000;
  std::size_t validate_samples = 32;
};

struct Rule {
  // drop removes a negated literal that holds.
  enum class Kind { merge, remove, bond, replace, negate, drop, finish } kind = Kind::finish;
  CellId a = 0;  // merge: kept cell; remove/replace/negate: the cell
  CellId b = 0;  // merge: removed cell
  BondId bond = 0;
  std::size_t case_index = 0;
};

struct SolidSummary {
  CellId cell = 0;
  solid::InstanceId instance = 0;
  std::vector<solid::Polygon> outline;
  std::vector<std::vector<solid::Point>> decorations;
  std::vector<std::string> families;  // one per primitive, in order
};

struct Solution {
  std::map<std::string, core::Term> bindings;
  std::vector<SolidSummary> solids;
};

struct ChoicePoint {
  CellId cell = 0;
  std::size_t next_case = 0;
  core::Specification::Mark spec_mark = 0;
  solid::SolidModel::RawMark solid_mark;
  std::size_t step = 0;  // step of the replacement this point precedes
  bool operator==(const ChoicePoint&) const = default;
};

class Engine {
 public:
  Engine(const core::Program& program, const core::Query& query, Options options = {});
  // Starts from an existing state (negation sub-executions, tests).
  Engine(const core::Program& program, core::Specification spec, solid::SolidModel model,
         Options options = {});

  void set_sink(TraceSink* sink) { sink_ = sink; }
  // Called with each executed two-operand bond and its animation plan.
  using FrameObserver = std::function<void(const Event&, const anim::FramePlan&)>;
  void set_frame_observer(FrameObserver observer) { frame_observer_ = std::move(observer); }
  Status status() const { return status_; }
  std::size_t step_count() const { return step_; }

  // Applies one rule (or one backtrack) and returns its event; nullopt once
  // the run has stopped (success or exhausted).
  std::optional<Event> step();
  // Runs until success, exhaustion or the budget; budget_exceeded leaves a
  // resumable state.
  Status run(std::optional<std::size_t> budget = std::nullopt);
  // After success: the next step backtracks into the next solution.
  void force_backtrack();
  std::vector<Solution> enumerate(std::size_t max_solutions);
  Solution solution() const;

  // Every rule applicable now; replacement is listed once per case.
  std::vector<Rule> applicable() const;
  // The scheduler's pick.
  std::optional<Rule> next_rule() const;
  // Applies a rule without recording a choice point.
  Event apply(const Rule& rule) { return apply_rule(rule, false); }

  struct Mark {
    core::Specification::Mark spec = 0;
    solid::SolidModel::RawMark solid;
    std::vector<ChoicePoint> choices;
    std::optional<std::pair<CellId, std::size_t>> forced;
    std::optional<std::pair<CellId, bool>> pending_negation;
    Status status = Status::running;
    std::size_t step = 0;
  };
  Mark mark() const;
  void undo_to(const Mark& mark);
  // Advances the step counter for an event that leaves the state alone.
  void skip_event(std::size_t step, Status status);

  const core::Program& program() const { return *program_; }
  const core::Specification& spec() const { return spec_; }
  const solid::SolidModel& model() const { return model_; }
  const std::vector<ChoicePoint>& choices() const { return choices_; }

  nlohmann::json snapshot() const;
  bool operator==(const Engine& other) const;

 private:
  Event emit(std::string kind, nlohmann::json payload);
  Event apply_rule(const Rule& rule, bool record_choice);
  Event backtrack();
  Event merge(const Rule& rule);
  Event remove(const Rule& rule);
  Event bond(const Rule& rule);
  Event replace(const Rule& rule, bool record_choice);
  Event negation_enter(const Rule& rule);
  Event negation_exit();
  Event finish();
  bool executable(BondId bond) const;

  const core::Program* program_;
  Options options_;
  core::Specification spec_;
  solid::SolidModel model_;
  std::vector<ChoicePoint> choices_;
  std::optional<std::pair<CellId, std::size_t>> forced_;
  std::optional<std::pair<CellId, bool>> pending_negation_;
  Status status_ = Status::running;
  std::size_t step_ = 0;
  TraceSink* sink_ = nullptr;
  FrameObserver frame_observer_;
};

// JSON helpers shared with the CLI.
nlohmann::json rational_json(const Rational& r);
nlohmann::json polygons_json(const std::vector<solid::Polygon>& polys);
nlohmann::json lines_json(const std::vector<std::vector<solid::Point>>& lines);

}  // namespace lsd::engine
