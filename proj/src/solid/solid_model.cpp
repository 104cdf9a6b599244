#include "lsd/solid/solid_model.hpp"

#include <algorithm>
#include <set>

namespace lsd::solid {

bool SolidInstance::has_open_edge(std::string_view edge) const {
  return std::find(open_edges.begin(), open_edges.end(), edge) != open_edges.end();
}

bool SolidInstance::operator==(const SolidInstance& other) const {
  return id == other.id && same_shape(shape, other.shape) && params == other.params &&
         open_edges == other.open_edges && children == other.children &&
         min_leaf == other.min_leaf && label == other.label;
}

InstanceId SolidModel::add_instance(SolidInstance inst) {
  inst.id = instances_.size();
  instances_.push_back(std::move(inst));
  return instances_.back().id;
}

InstanceId SolidModel::create(const SolidFamily& family,
                              std::span<const std::optional<Rational>> args,
                              std::span<const std::optional<Rational>> hints) {
  if (args.size() != family.param_count()) {
    throw std::invalid_argument(family.name + " expects " + std::to_string(family.param_count()) +
                                " parameters");
  }
  SolidInstance inst;
  InstanceId id = instances_.size();
  inst.shape = make_leaf(family);
  inst.label = family.name;
  inst.min_leaf = id;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i]) {
      inst.params.emplace_back(*args[i]);
      continue;
    }
    const auto& spec = family.params[i];
    Rational hint = spec.hint;
    if (i < hints.size() && hints[i]) {
      hint = *hints[i];
    } else if (spec.role == ParamRole::position && i == 0) {
      // Spread unanchored parts along x so that pictures stay readable.
      hint += Rational(static_cast<long long>(id) * 4);
    }
    auto var = store_.add_variable(family.name + "#" + std::to_string(id) + "." + spec.name, hint);
    inst.params.push_back(ParamExpr::variable(var));
  }
  inst.open_edges = all_edge_names(*inst.shape);
  return add_instance(std::move(inst));
}

InstanceId SolidModel::create(std::string_view family,
                              std::span<const std::optional<Rational>> args,
                              std::span<const std::optional<Rational>> hints) {
  const auto* fam = registry_->find(family);
  if (!fam) throw std::invalid_argument("unknown solid family '" + std::string(family) + "'");
  return create(*fam, args, hints);
}

std::vector<VarId> SolidModel::free_vars_of(InstanceId id) const {
  std::set<VarId> vars;
  for (const auto& p : instance(id).params) {
    auto resolved = store_.resolve(p);
    for (const auto& [v, c] : resolved.terms()) vars.insert(v);
  }
  return {vars.begin(), vars.end()};
}

std::vector<ParamExpr> SolidModel::select(const Operation& op, std::size_t index, InstanceId id,
                                          const std::string& edge, OperationResult& result) const {
  const auto& inst = instance(id);
  try {
    if (op.selectors[index] == SelectorKind::centre) {
      auto c = centre_of(*inst.shape, inst.params);
      return {c.begin(), c.end()};
    }
    if (!inst.has_open_edge(edge)) {
      throw UnknownEdge(inst.label + " has no open edge '" + edge + "'");
    }
    auto e = edge_of(*inst.shape, inst.params, edge);
    return {e.begin(), e.end()};
  } catch (const std::invalid_argument& err) {
    result.status = OperationResult::Status::interface_error;
    result.message = err.what();
    return {};
  }
}

std::vector<Rational> SolidModel::values_of(std::span<const InstanceId> ids) const {
  std::vector<Rational> out;
  for (auto id : ids) {
    for (const auto& p : instance(id).params) out.push_back(store_.value(p));
  }
  return out;
}

OperationResult SolidModel::apply_operation(const Operation& op,
                                            std::span<const InstanceId> operands,
                                            std::span<const std::string> edges,
                                            AnchorPolicy policy) {
  OperationResult result;
  if (operands.size() != op.arity()) {
    result.status = OperationResult::Status::interface_error;
    result.message = op.name + " expects " + std::to_string(op.arity()) + " operands";
    return result;
  }
  SelectedValues selected;
  for (std::size_t i = 0; i < operands.size(); ++i) {
    std::string edge = i < edges.size() ? edges[i] : std::string();
    selected.push_back(select(op, i, operands[i], edge, result));
    if (result.status != OperationResult::Status::ok) return result;
  }
  result.before = values_of(operands);

  auto mark = raw_mark();
  std::vector<VarId> keep_free;
  if (policy != AnchorPolicy::midpoint && operands.size() == 2) {
    std::size_t anchored = 0;
    if (policy == AnchorPolicy::anchor_second) anchored = 1;
    if (policy == AnchorPolicy::anchor_earlier &&
        instance(operands[1]).min_leaf < instance(operands[0]).min_leaf) {
      anchored = 1;
    }
    keep_free = free_vars_of(operands[anchored]);
  }

  auto constraints = op.constraint(selected);
  if (policy == AnchorPolicy::midpoint) {
    for (const auto& c : constraints) {
      if (c.kind != LinearConstraint::Kind::equal) continue;
      auto l = store_.resolve(c.lhs);
      auto r = store_.resolve(c.rhs);
      if (l.terms().size() != 1 || r.terms().size() != 1 || l.constant() != 0 ||
          r.constant() != 0) {
        continue;
      }
      auto [lv, lc] = *l.terms().begin();
      auto [rv, rc] = *r.terms().begin();
      if (lc != 1 || rc != 1 || lv == rv) continue;
      Rational mid = (store_.variable(lv).hint + store_.variable(rv).hint) / 2;
      store_.set_hint(lv, mid);
      store_.set_hint(rv, mid);
    }
  }

  for (const auto& c : constraints) {
    auto verdict = c.kind == LinearConstraint::Kind::equal
                       ? store_.assert_equal(c.lhs, c.rhs, keep_free)
                       : store_.assert_leq(c.lhs, c.rhs);
    if (verdict == Consistency::inconsistent) {
      restore(mark);
      result.status = OperationResult::Status::inconsistent;
      result.message = op.name + " constraint not satisfiable";
      result.after = result.before;
      return result;
    }
  }

  SolidInstance composite;
  std::vector<Shape> shapes;
  composite.min_leaf = instance(operands[0]).min_leaf;
  for (std::size_t i = 0; i < operands.size(); ++i) {
    const auto& operand = instance(operands[i]);
    shapes.push_back(operand.shape);
    composite.params.insert(composite.params.end(), operand.params.begin(), operand.params.end());
    composite.children.push_back(operand.id);
    composite.min_leaf = std::min(composite.min_leaf, operand.min_leaf);
    std::string consumed = op.selectors[i] == SelectorKind::edge ? edges[i] : std::string();
    for (const auto& e : operand.open_edges) {
      if (e != consumed) composite.open_edges.push_back(std::to_string(i) + "." + e);
    }
  }
  composite.shape = make_composite(op.combinator, std::move(shapes));
  composite.label = op.name;

  std::vector<Rational> ground;
  bool all_ground = true;
  for (const auto& p : composite.params) {
    auto v = store_.ground_value(p);
    if (!v) {
      all_ground = false;
      break;
    }
    ground.push_back(*v);
  }
  if (all_ground && !solid::nonempty(*composite.shape, ground, registry_->space())) {
    restore(mark);
    result.status = OperationResult::Status::inconsistent;
    result.message = op.name + " result is empty";
    result.after = result.before;
    return result;
  }

  result.instance = add_instance(std::move(composite));
  result.after = values_of(operands);
  return result;
}

OperationResult SolidModel::close_edges(InstanceId id, const std::string& a,
                                        const std::string& b) {
  OperationResult result;
  const auto& inst = instance(id);
  if (a == b || !inst.has_open_edge(a) || !inst.has_open_edge(b)) {
    result.status = OperationResult::Status::interface_error;
    result.message = inst.label + " cannot bond '" + a + "' with '" + b + "'";
    return result;
  }
  auto ea = edge_of(*inst.shape, inst.params, a);
  auto eb = edge_of(*inst.shape, inst.params, b);
  std::array<InstanceId, 1> ids{id};
  result.before = values_of(ids);
  auto mark = raw_mark();
  auto constraints = bonding2d().constraint({{ea.begin(), ea.end()}, {eb.begin(), eb.end()}});
  for (const auto& c : constraints) {
    if (store_.assert_equal(c.lhs, c.rhs) == Consistency::inconsistent) {
      restore(mark);
      result.status = OperationResult::Status::inconsistent;
      result.message = "bond constraint not satisfiable";
      result.after = result.before;
      return result;
    }
  }
  SolidInstance closed = instance(id);
  std::erase(closed.open_edges, a);
  std::erase(closed.open_edges, b);
  closed.children = {id};
  result.instance = add_instance(std::move(closed));
  result.after = values_of(ids);
  return result;
}

std::array<ParamExpr, 4> SolidModel::edge(InstanceId id, std::string_view name) const {
  const auto& inst = instance(id);
  if (!inst.has_open_edge(name)) {
    throw UnknownEdge(inst.label + " has no open edge '" + std::string(name) + "'");
  }
  auto e = edge_of(*inst.shape, inst.params, name);
  for (auto& x : e) x = store_.resolve(x);
  return e;
}

std::vector<Rational> SolidModel::values(InstanceId id) const {
  std::array<InstanceId, 1> ids{id};
  return values_of(ids);
}

bool SolidModel::is_ground(InstanceId id) const {
  for (const auto& p : instance(id).params) {
    if (!store_.is_ground(p)) return false;
  }
  return true;
}

bool SolidModel::ground_free_variables(InstanceId id) {
  auto mark = store_.mark();
  for (auto var : free_vars_of(id)) {
    if (!store_.is_free(var)) continue;
    if (store_.assert_equal(ParamExpr::variable(var), store_.variable(var).hint) ==
        Consistency::inconsistent) {
      store_.rollback(mark);
      return false;
    }
  }
  return true;
}

namespace {

std::vector<Rational> require_ground(const ConstraintStore& store, const SolidInstance& inst) {
  std::vector<Rational> out;
  for (const auto& p : inst.params) {
    auto v = store.ground_value(p);
    if (!v) throw UnboundParameter(inst.label + " has unbound parameters");
    out.push_back(*v);
  }
  return out;
}

}  // namespace

bool SolidModel::membership(InstanceId id, const Point& point) const {
  const auto& inst = instance(id);
  return contains(*inst.shape, require_ground(store_, inst), point, registry_->space());
}

bool SolidModel::nonempty(InstanceId id) const {
  const auto& inst = instance(id);
  return solid::nonempty(*inst.shape, values(id), registry_->space());
}

std::vector<Polygon> SolidModel::outline(InstanceId id) const {
  return solid::outline(*instance(id).shape, values(id));
}

std::vector<std::vector<Point>> SolidModel::decorations(InstanceId id) const {
  return solid::decorations(*instance(id).shape, values(id));
}

void SolidModel::restore(const RawMark& mark) {
  if (mark.instances > instances_.size() || mark.store > store_.mark()) {
    throw std::logic_error("restore to a mark from the future");
  }
  store_.rollback(mark.store);
  instances_.resize(mark.instances);
}

SolidModel::Mark SolidModel::snapshot() {
  marks_.push_back(raw_mark());
  return marks_.size() - 1;
}

void SolidModel::rollback(Mark mark) {
  if (marks_.empty() || mark != marks_.size() - 1) {
    throw std::logic_error("rollback past a live inner mark");
  }
  restore(marks_.back());
  marks_.pop_back();
}

void SolidModel::commit(Mark mark) {
  if (marks_.empty() || mark != marks_.size() - 1) {
    throw std::logic_error("commit of a mark that is not innermost");
  }
  marks_.pop_back();
}

bool SolidModel::operator==(const SolidModel& other) const {
  return registry_ == other.registry_ && store_ == other.store_ && instances_ == other.instances_;
}

}  // namespace lsd::solid
