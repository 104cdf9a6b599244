#include "lsd/engine/engine.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace lsd::engine {

using nlohmann::json;
using core::EComponent;
using core::FunctionCell;
using core::IComponent;
using core::TerminalKind;

std::string to_string(Status status) {
  switch (status) {
    case Status::running: return "running";
    case Status::success: return "success";
    case Status::failure: return "failure";
    case Status::exhausted: return "exhausted";
    case Status::budget_exceeded: return "budget_exceeded";
  }
  return "unknown";
}

json rational_json(const Rational& r) { return lsd::to_string(r); }

json polygons_json(const std::vector<solid::Polygon>& polys) {
  json out = json::array();
  for (const auto& poly : polys) {
    json p = json::array();
    for (const auto& pt : poly) p.push_back({rational_json(pt.x), rational_json(pt.y)});
    out.push_back(std::move(p));
  }
  return out;
}

json lines_json(const std::vector<std::vector<solid::Point>>& lines) { return polygons_json(lines); }

namespace {

json rationals_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(rational_json(v));
  return out;
}

}  // namespace

json to_json(const Event& event) {
  return {{"step", event.step}, {"kind", event.kind}, {"payload", event.payload}};
}

Event event_from_json(const json& j) {
  return {j.at("step").get<std::size_t>(), j.at("kind").get<std::string>(), j.at("payload")};
}

Engine::Engine(const core::Program& program, const core::Query& query, Options options)
    : program_(&program), options_(options), model_(*program.registry) {
  core::load_query(spec_, model_, query);
}

Engine::Engine(const core::Program& program, core::Specification spec, solid::SolidModel model,
               Options options)
    : program_(&program), options_(options), spec_(std::move(spec)), model_(std::move(model)) {}

Event Engine::emit(std::string kind, json payload) {
  Event e{++step_, std::move(kind), std::move(payload)};
  if (sink_) sink_->emit(e);
  return e;
}

bool Engine::executable(BondId id) const {
  const auto& b = spec_.bond(id);
  if (!b.alive) return false;
  auto is_solid = [&](core::EdgeId e) {
    return std::holds_alternative<EComponent>(spec_.cell(spec_.edge(e).owner).body);
  };
  return is_solid(b.a) && is_solid(b.b);
}

std::vector<Rule> Engine::applicable() const {
  std::vector<Rule> out;
  std::unordered_map<core::NetId, std::vector<CellId>> by_root;
  for (CellId c = 0; c < spec_.cell_count(); ++c) {
    const auto& cell = spec_.cell(c);
    if (!cell.alive) continue;
    if (const auto* f = std::get_if<FunctionCell>(&cell.body)) {
      auto root = spec_.find(f->root);
      for (auto other : by_root[root]) out.push_back({Rule::Kind::merge, other, c});
      by_root[root].push_back(c);
      if (spec_.live_terminals(root) == 1) out.push_back({Rule::Kind::remove, c});
    }
  }
  for (BondId b = 0; b < spec_.bond_count(); ++b) {
    if (executable(b)) out.push_back({Rule::Kind::bond, 0, 0, b});
  }
  for (const auto& [prio, c] : spec_.agenda()) {
    const auto& comp = std::get<IComponent>(spec_.cell(c).body);
    if (comp.negated) {
      out.push_back({Rule::Kind::negate, c});
      continue;
    }
    auto cases = program_->designs[comp.design].cases.size();
    for (std::size_t k = 0; k < cases; ++k) out.push_back({Rule::Kind::replace, c, 0, 0, k});
  }
  return out;
}

std::optional<Rule> Engine::next_rule() const {
  // Merge: lowest pair of root-connected function cells.
  std::unordered_map<core::NetId, CellId> first;
  std::optional<Rule> removal;
  for (CellId c = 0; c < spec_.cell_count(); ++c) {
    const auto& cell = spec_.cell(c);
    if (!cell.alive) continue;
    const auto* f = std::get_if<FunctionCell>(&cell.body);
    if (!f) continue;
    auto root = spec_.find(f->root);
    auto [it, inserted] = first.emplace(root, c);
    if (!inserted) return Rule{Rule::Kind::merge, it->second, c};
    if (!removal && spec_.live_terminals(root) == 1) removal = Rule{Rule::Kind::remove, c};
  }
  if (removal) return removal;
  for (BondId b = 0; b < spec_.bond_count(); ++b) {
    if (executable(b)) return Rule{Rule::Kind::bond, 0, 0, b};
  }
  if (!spec_.agenda().empty()) {
    auto c = spec_.agenda().begin()->second;
    const auto& comp = std::get<IComponent>(spec_.cell(c).body);
    if (comp.negated) return Rule{Rule::Kind::negate, c};
    std::size_t k = forced_ && forced_->first == c ? forced_->second : 0;
    return Rule{Rule::Kind::replace, c, 0, 0, k};
  }
  return Rule{Rule::Kind::finish};
}

std::optional<Event> Engine::step() {
  switch (status_) {
    case Status::success:
    case Status::exhausted:
      return std::nullopt;
    case Status::failure:
      return backtrack();
    case Status::budget_exceeded:
      status_ = Status::running;
      break;
    case Status::running:
      break;
  }
  if (pending_negation_) return negation_exit();
  return apply_rule(*next_rule(), true);
}

Status Engine::run(std::optional<std::size_t> budget) {
  std::size_t limit = budget.value_or(options_.budget);
  for (std::size_t n = 0; n < limit; ++n) {
    if (status_ == Status::success || status_ == Status::exhausted) return status_;
    step();
    if (status_ == Status::budget_exceeded) return status_;
  }
  if (status_ == Status::success || status_ == Status::exhausted) return status_;
  return Status::budget_exceeded;
}

void Engine::force_backtrack() {
  if (status_ == Status::success) status_ = Status::failure;
}

std::vector<Solution> Engine::enumerate(std::size_t max_solutions) {
  std::vector<Solution> out;
  while (out.size() < max_solutions) {
    auto s = run();
    if (s != Status::success) break;
    out.push_back(solution());
    if (out.size() == max_solutions) break;
    force_backtrack();
  }
  return out;
}

Solution Engine::solution() const {
  Solution s;
  s.bindings = core::bindings(spec_);
  for (CellId c = 0; c < spec_.cell_count(); ++c) {
    const auto& cell = spec_.cell(c);
    if (!cell.alive) continue;
    if (const auto* e = std::get_if<EComponent>(&cell.body)) {
      SolidSummary summary{c, e->instance, model_.outline(e->instance),
                           model_.decorations(e->instance), {}};
      auto values = model_.values(e->instance);
      for (const auto& leaf : solid::leaves(*model_.instance(e->instance).shape, values)) {
        summary.families.push_back(leaf.family->name);
      }
      s.solids.push_back(std::move(summary));
    }
  }
  return s;
}

Event Engine::apply_rule(const Rule& rule, bool record_choice) {
  switch (rule.kind) {
    case Rule::Kind::merge: return merge(rule);
    case Rule::Kind::remove: return remove(rule);
    case Rule::Kind::bond: return bond(rule);
    case Rule::Kind::replace: return replace(rule, record_choice);
    case Rule::Kind::negate: return negation_enter(rule);
    case Rule::Kind::drop: {
      auto name = std::get<IComponent>(spec_.cell(rule.a).body).signature.name;
      spec_.remove_cell(rule.a);
      return emit("negation_exit", {{"cell", rule.a}, {"design", name}, {"holds", true}});
    }
    case Rule::Kind::finish: return finish();
  }
  throw std::logic_error("unknown rule");
}

Event Engine::backtrack() {
  if (choices_.empty()) {
    status_ = Status::exhausted;
    return emit("backtrack", {{"exhausted", true}, {"undone_from", nullptr}, {"undone_to", step_}});
  }
  auto cp = choices_.back();
  choices_.pop_back();
  spec_.undo(cp.spec_mark);
  model_.restore(cp.solid_mark);
  forced_ = {cp.cell, cp.next_case};
  pending_negation_.reset();
  status_ = Status::running;
  const auto& comp = std::get<IComponent>(spec_.cell(cp.cell).body);
  return emit("backtrack", {{"exhausted", false},
                            {"undone_from", cp.step},
                            {"undone_to", step_},
                            {"cell", cp.cell},
                            {"design", comp.signature.name},
                            {"next_case", cp.next_case}});
}

Event Engine::merge(const Rule& rule) {
  auto a = std::get<FunctionCell>(spec_.cell(rule.a).body);
  auto b = std::get<FunctionCell>(spec_.cell(rule.b).body);
  if (a.name != b.name || a.args.size() != b.args.size()) {
    status_ = Status::failure;
    return emit("fail", {{"reason", "clash"},
                         {"cells", {rule.a, rule.b}},
                         {"names", {a.name, b.name}},
                         {"arities", {a.args.size(), b.args.size()}}});
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) spec_.connect(a.args[i], b.args[i]);
  spec_.remove_cell(rule.b);
  return emit("merge", {{"kept", rule.a}, {"removed", rule.b}, {"name", a.name}, {"arity", a.args.size()}});
}

Event Engine::remove(const Rule& rule) {
  auto name = std::get<FunctionCell>(spec_.cell(rule.a).body).name;
  spec_.remove_cell(rule.a);
  return emit("delete", {{"cell", rule.a}, {"name", name}});
}

Event Engine::bond(const Rule& rule) {
  auto b = spec_.bond(rule.bond);
  auto edge_a = spec_.edge(b.a);
  auto edge_b = spec_.edge(b.b);
  auto ca = edge_a.owner;
  auto cb = edge_b.owner;
  auto ia = std::get<EComponent>(spec_.cell(ca).body).instance;
  auto ib = std::get<EComponent>(spec_.cell(cb).body).instance;

  solid::OperationResult result;
  std::vector<solid::InstanceId> operands;
  std::vector<std::string> names{edge_a.name, edge_b.name};
  if (ca == cb) {
    operands = {ia};
    result = model_.close_edges(ia, edge_a.name, edge_b.name);
  } else {
    operands = {ia, ib};
    result = model_.apply_operation(solid::bonding2d(), operands, names, options_.anchor);
  }
  if (result.status != solid::OperationResult::Status::ok) {
    status_ = Status::failure;
    return emit("fail", {{"reason", "bond"}, {"bond", rule.bond}, {"message", result.message}});
  }

  auto instance = *result.instance;
  auto cell = spec_.add_ecomponent(instance);
  spec_.remove_bond(rule.bond);
  spec_.kill_edge(b.a);
  spec_.kill_edge(b.b);
  if (ca == cb) {
    for (auto e : spec_.edges_of(ca)) spec_.set_edge_owner(e, cell, spec_.edge(e).name);
    spec_.remove_cell(ca);
  } else {
    for (auto e : spec_.edges_of(ca)) spec_.set_edge_owner(e, cell, "0." + spec_.edge(e).name);
    for (auto e : spec_.edges_of(cb)) spec_.set_edge_owner(e, cell, "1." + spec_.edge(e).name);
    spec_.remove_cell(ca);
    spec_.remove_cell(cb);
  }

  json payload = {{"bond", rule.bond},
                  {"cells", {ca, cb}},
                  {"edges", names},
                  {"result", cell},
                  {"instance", instance},
                  {"operands", operands},
                  {"x", rationals_json(result.before)},
                  {"y", rationals_json(result.after)},
                  {"outline", polygons_json(model_.outline(instance))}};
  std::optional<anim::FramePlan> plan;
  if (ca != cb) {
    plan = anim::plan_from_result(model_, solid::bonding2d(), operands, names, result,
                                  options_.animation);
    payload["animation"] = options_.animation == anim::Kind::linear ? "linear" : "snap";
    payload["animation_valid"] = anim::validate(*plan, options_.validate_samples).ok;
  }
  auto event = emit("bond", std::move(payload));
  if (plan && frame_observer_) frame_observer_(event, *plan);
  return event;
}

Event Engine::replace(const Rule& rule, bool record_choice) {
  auto comp = std::get<IComponent>(spec_.cell(rule.a).body);
  const auto& design = program_->designs[comp.design];
  if (forced_ && forced_->first == rule.a) forced_.reset();
  if (rule.case_index >= design.cases.size()) {
    status_ = Status::failure;
    return emit("fail", {{"reason", "no case"}, {"cell", rule.a}, {"design", comp.signature.name}});
  }
  if (record_choice && rule.case_index + 1 < design.cases.size()) {
    choices_.push_back({rule.a, rule.case_index + 1, spec_.mark(), model_.raw_mark(), step_ + 1});
  }
  auto inst = core::replace(spec_, model_, *program_, rule.a, rule.case_index);
  return emit("replace", {{"cell", rule.a},
                          {"design", comp.signature.name},
                          {"case", rule.case_index},
                          {"cases", design.cases.size()},
                          {"functions", inst.functions},
                          {"icomponents", inst.icomponents},
                          {"ecomponents", inst.ecomponents},
                          {"bonds", inst.bonds}});
}

Event Engine::negation_enter(const Rule& rule) {
  auto comp = std::get<IComponent>(spec_.cell(rule.a).body);

  // Connected subgraph of function cells reachable from the literal's nets.
  std::set<core::NetId> nets;
  std::vector<core::NetId> frontier;
  for (std::size_t k = 0; k < comp.ports.size(); ++k) {
    if (comp.signature.kinds[k] == TerminalKind::simple) frontier.push_back(spec_.find(comp.ports[k]));
  }
  std::set<CellId> cells;
  while (!frontier.empty()) {
    auto n = frontier.back();
    frontier.pop_back();
    if (!nets.insert(n).second) continue;
    for (CellId c = 0; c < spec_.cell_count(); ++c) {
      const auto& cell = spec_.cell(c);
      const auto* f = std::get_if<FunctionCell>(&cell.body);
      if (!cell.alive || !f || cells.contains(c)) continue;
      bool touches = spec_.find(f->root) == n;
      for (auto a : f->args) touches = touches || spec_.find(a) == n;
      if (!touches) continue;
      cells.insert(c);
      frontier.push_back(spec_.find(f->root));
      for (auto a : f->args) frontier.push_back(spec_.find(a));
    }
  }
  std::size_t unbound = 0;
  for (auto n : nets) {
    bool rooted = false;
    for (auto c : cells) rooted = rooted || spec_.find(std::get<FunctionCell>(spec_.cell(c).body).root) == n;
    if (!rooted) ++unbound;
  }

  core::Specification sub = spec_;
  for (BondId b = 0; b < sub.bond_count(); ++b) {
    if (sub.bond(b).alive) sub.remove_bond(b);
  }
  for (CellId c = 0; c < sub.cell_count(); ++c) {
    if (sub.cell(c).alive && !cells.contains(c)) sub.remove_cell(c);
  }
  IComponent positive = comp;
  positive.negated = false;
  positive.priority = sub.reserve_priorities(1);
  std::vector<core::EdgeId> fresh_edges;
  auto id = static_cast<CellId>(sub.cell_count());
  for (std::size_t k = 0; k < positive.ports.size(); ++k) {
    if (positive.signature.kinds[k] == TerminalKind::edge) positive.ports[k] = sub.add_edge(id, "port" + std::to_string(k));
  }
  sub.add_icomponent(std::move(positive));

  Engine inner(*program_, std::move(sub), solid::SolidModel(model_.registry()), options_);
  auto outcome = inner.run();
  if (outcome == Status::budget_exceeded) {
    status_ = Status::budget_exceeded;
    return Event{step_, "negation_enter", {{"cell", rule.a}, {"budget_exceeded", true}}};
  }
  bool holds = outcome != Status::success;
  pending_negation_ = {rule.a, holds};
  return emit("negation_enter", {{"cell", rule.a},
                                 {"design", comp.signature.name},
                                 {"floundering", unbound > 0},
                                 {"unbound_nets", unbound},
                                 {"sub_steps", inner.step_count()}});
}

Event Engine::negation_exit() {
  auto [cell, holds] = *pending_negation_;
  pending_negation_.reset();
  if (holds) return apply_rule({Rule::Kind::drop, cell}, false);
  auto name = std::get<IComponent>(spec_.cell(cell).body).signature.name;
  status_ = Status::failure;
  return emit("negation_exit", {{"cell", cell}, {"design", name}, {"holds", holds}});
}

Event Engine::finish() {
  std::vector<CellId> solids;
  std::size_t functions = 0, literals = 0, bonds = 0;
  for (CellId c = 0; c < spec_.cell_count(); ++c) {
    const auto& cell = spec_.cell(c);
    if (!cell.alive) continue;
    if (std::holds_alternative<EComponent>(cell.body)) {
      solids.push_back(c);
    } else if (std::holds_alternative<FunctionCell>(cell.body)) {
      ++functions;
    } else {
      ++literals;
    }
  }
  for (BondId b = 0; b < spec_.bond_count(); ++b) bonds += spec_.bond(b).alive ? 1 : 0;
  auto dead_end = [&](const std::string& why) {
    status_ = Status::failure;
    return emit("fail", {{"reason", "dead_end"},
                         {"detail", why},
                         {"functions", functions},
                         {"icomponents", literals},
                         {"bonds", bonds}});
  };
  if (functions || literals || bonds) return dead_end("residual cells or bonds");
  auto mark = model_.raw_mark();
  for (auto c : solids) {
    if (!model_.ground_free_variables(std::get<EComponent>(spec_.cell(c).body).instance)) {
      model_.restore(mark);
      return dead_end("inequality violated when grounding");
    }
  }
  if (!model_.store().deferred().empty()) {
    model_.restore(mark);
    return dead_end("unproven inequality");
  }
  status_ = Status::success;
  json solid_list = json::array();
  for (auto c : solids) {
    auto inst = std::get<EComponent>(spec_.cell(c).body).instance;
    solid_list.push_back({{"cell", c},
                          {"instance", inst},
                          {"label", model_.instance(inst).label},
                          {"outline", polygons_json(model_.outline(inst))},
                          {"decorations", lines_json(model_.decorations(inst))}});
  }
  json binding_list = json::object();
  for (const auto& [name, term] : core::bindings(spec_)) binding_list[name] = core::to_string(term);
  return emit("success", {{"solids", solid_list}, {"bindings", binding_list}});
}

Engine::Mark Engine::mark() const {
  return {spec_.mark(), model_.raw_mark(), choices_, forced_, pending_negation_, status_, step_};
}

void Engine::skip_event(std::size_t step, Status status) {
  step_ = step;
  status_ = status;
}

void Engine::undo_to(const Mark& m) {
  spec_.undo(m.spec);
  model_.restore(m.solid);
  choices_ = m.choices;
  forced_ = m.forced;
  pending_negation_ = m.pending_negation;
  status_ = m.status;
  step_ = m.step;
}

json Engine::snapshot() const {
  json cells = json::array();
  for (CellId c = 0; c < spec_.cell_count(); ++c) {
    const auto& cell = spec_.cell(c);
    if (!cell.alive) continue;
    json j = {{"id", c}};
    if (const auto* f = std::get_if<FunctionCell>(&cell.body)) {
      j["kind"] = "function";
      j["name"] = f->name;
      j["root"] = spec_.find(f->root);
      json args = json::array();
      for (auto a : f->args) args.push_back(spec_.find(a));
      j["args"] = args;
    } else if (const auto* i = std::get_if<IComponent>(&cell.body)) {
      j["kind"] = "icomponent";
      j["design"] = i->signature.name;
      j["priority"] = i->priority;
      j["negated"] = i->negated;
      json ports = json::array();
      for (std::size_t k = 0; k < i->ports.size(); ++k) {
        if (i->signature.kinds[k] == TerminalKind::simple) {
          ports.push_back({{"net", spec_.find(i->ports[k])}});
        } else {
          ports.push_back({{"edge", i->ports[k]}});
        }
      }
      j["ports"] = ports;
    } else {
      auto inst = std::get<EComponent>(cell.body).instance;
      j["kind"] = "ecomponent";
      j["instance"] = inst;
      j["label"] = model_.instance(inst).label;
      j["outline"] = polygons_json(model_.outline(inst));
      j["decorations"] = lines_json(model_.decorations(inst));
      json edges = json::object();
      for (auto e : spec_.edges_of(c)) edges[spec_.edge(e).name] = e;
      j["edges"] = edges;
    }
    cells.push_back(std::move(j));
  }
  json bonds = json::array();
  for (BondId b = 0; b < spec_.bond_count(); ++b) {
    const auto& bond = spec_.bond(b);
    if (bond.alive) bonds.push_back({{"id", b}, {"a", bond.a}, {"b", bond.b}});
  }
  json binding_list = json::object();
  for (const auto& [name, term] : core::bindings(spec_)) binding_list[name] = core::to_string(term);
  return {{"status", to_string(status_)},
          {"step", step_},
          {"cells", cells},
          {"bonds", bonds},
          {"bindings", binding_list},
          {"choice_points", choices_.size()},
          {"hash", std::to_string(spec_.hash())}};
}

bool Engine::operator==(const Engine& o) const {
  return spec_ == o.spec_ && model_ == o.model_ && choices_ == o.choices_ && forced_ == o.forced_ &&
         pending_negation_ == o.pending_negation_ && status_ == o.status_ && step_ == o.step_;
}

}  // namespace lsd::engine
