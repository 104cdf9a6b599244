#include <map>
#include <set>

#include "lsd/core/program.hpp"

namespace lsd::core {

const Design* Program::find_design(std::string_view name) const {
  auto i = design_index(name);
  return i ? &designs[*i] : nullptr;
}

std::optional<std::size_t> Program::design_index(std::string_view name) const {
  for (std::size_t i = 0; i < designs.size(); ++i) {
    if (designs[i].signature.name == name) return i;
  }
  return std::nullopt;
}

const Query* Program::find_query(std::string_view name) const {
  for (const auto& q : queries) {
    if (q.name == name) return &q;
  }
  return nullptr;
}

std::string Diagnostic::to_string() const {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

namespace {

class CaseBuilder {
 public:
  CaseBuilder(const Program& program, std::vector<Diagnostic>& diags)
      : program_(program), diags_(diags) {}

  void head(const std::vector<text::Param>& params) {
    for (const auto& p : params) {
      if (nets_.contains(p.name) || edges_.contains(p.name)) {
        error(p.pos, "duplicate parameter '" + p.name + "'");
      }
      if (p.kind == text::ParamKind::simple) {
        g_.head_kinds.push_back(TerminalKind::simple);
        g_.head.push_back(named_net(p.name));
      } else {
        auto e = named_edge(p.name, p.pos);
        ++owners_[e];
        g_.head_kinds.push_back(TerminalKind::edge);
        g_.head.push_back(e);
      }
    }
  }

  void body(const std::vector<text::Stmt>& stmts) {
    for (const auto& s : stmts) {
      std::visit([&](const auto& x) { lower(x, s.pos); }, s.value);
    }
  }

  CaseGraph finish() {
    for (std::size_t e = 0; e < g_.edge_count(); ++e) {
      const auto& name = g_.edge_names[e];
      if (owners_[e] == 0) error(edge_pos_[e], "dangling edge '" + name + "'");
      if (owners_[e] > 1) error(edge_pos_[e], "edge '" + name + "' is owned twice");
      if (bonded_[e] > 1) error(edge_pos_[e], "edge '" + name + "' is bonded twice");
    }
    return std::move(g_);
  }

  const std::vector<std::pair<text::Pos, std::size_t>>& negated_calls() const { return negated_; }

 private:
  void error(text::Pos pos, std::string message) { diags_.push_back({pos, std::move(message)}); }

  std::size_t fresh_net(std::string name = "") {
    g_.net_names.push_back(std::move(name));
    return g_.net_count() - 1;
  }

  std::size_t named_net(const std::string& name) {
    auto [it, inserted] = nets_.try_emplace(name, 0);
    if (inserted) it->second = fresh_net(name);
    return it->second;
  }

  std::size_t fresh_edge(std::string name, text::Pos pos) {
    g_.edge_names.push_back(std::move(name));
    owners_.push_back(0);
    bonded_.push_back(0);
    edge_pos_.push_back(pos);
    return g_.edge_count() - 1;
  }

  std::size_t named_edge(const std::string& name, text::Pos pos = {}) {
    auto [it, inserted] = edges_.try_emplace(name, 0);
    if (inserted) it->second = fresh_edge(name, pos);
    return it->second;
  }

  std::size_t use_net(const text::Var& v) {
    if (v.anonymous()) return fresh_net();
    if (edges_.contains(v.name)) {
      error(v.pos, "wire on edge '" + v.name + "'");
      return fresh_net();
    }
    return named_net(v.name);
  }

  std::size_t use_edge(const text::Var& v, bool in_bond) {
    if (v.anonymous()) return fresh_edge("_", v.pos);
    if (nets_.contains(v.name)) {
      error(v.pos, in_bond ? "bond requires edges: '" + v.name + "' is a simple terminal"
                           : "edge terminal given simple net '" + v.name + "'");
      return fresh_edge("_", v.pos);
    }
    return named_edge(v.name, v.pos);
  }

  std::size_t lower_arg(const text::Arg& arg) {
    if (const auto* v = std::get_if<text::Var>(&arg.value)) return use_net(*v);
    if (const auto* i = std::get_if<text::Int>(&arg.value)) {
      auto net = fresh_net();
      g_.funcs.push_back({i->text, net, {}});
      return net;
    }
    const auto& items = std::get<std::vector<text::Arg>>(arg.value);
    return lower_list(items, 0, arg);
  }

  std::size_t lower_list(const std::vector<text::Arg>& items, std::size_t i, const text::Arg& arg) {
    if (i == items.size()) {
      if (arg.tail) return use_net(*arg.tail);
      auto net = fresh_net();
      g_.funcs.push_back({text::kNil, net, {}});
      return net;
    }
    auto net = fresh_net();
    auto slot = g_.funcs.size();
    g_.funcs.push_back({text::kCons, net, {}});
    auto head = lower_arg(items[i]);
    auto tail = lower_list(items, i + 1, arg);
    g_.funcs[slot].args = {head, tail};
    return net;
  }

  void lower(const text::FuncStmt& f, text::Pos) {
    auto root = use_net(f.root);
    auto slot = g_.funcs.size();
    g_.funcs.push_back({f.name, root, {}});
    std::vector<std::size_t> args;
    for (const auto& a : f.args) args.push_back(lower_arg(a));
    g_.funcs[slot].args = std::move(args);
  }

  void lower(const text::CallStmt& c, text::Pos pos) {
    auto index = program_.design_index(c.design);
    if (!index) {
      error(pos, "unknown design '" + c.design + "'");
      return;
    }
    const auto& sig = program_.designs[*index].signature;
    if (sig.arity() != c.args.size()) {
      error(pos, c.design + " expects " + std::to_string(sig.arity()) + " arguments, got " +
                     std::to_string(c.args.size()));
      return;
    }
    CaseGraph::Call call{*index, sig, c.negated, {}};
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      const auto& a = c.args[i];
      if (sig.kinds[i] == TerminalKind::simple) {
        call.slots.push_back(lower_arg(a));
        continue;
      }
      const auto* v = std::get_if<text::Var>(&a.value);
      if (!v) {
        error(a.pos, "argument " + std::to_string(i + 1) + " of " + c.design + " must be an edge");
        call.slots.push_back(fresh_edge("_", a.pos));
        continue;
      }
      auto e = use_edge(*v, false);
      ++owners_[e];
      call.slots.push_back(e);
    }
    if (c.negated) negated_.push_back({pos, *index});
    g_.calls.push_back(std::move(call));
  }

  void lower(const text::SolidStmt& s, text::Pos pos) {
    const auto* fam = program_.registry->find(s.family);
    if (!fam) {
      error(pos, "unknown solid family '" + s.family + "'");
      return;
    }
    if (fam->param_count() != s.args.size()) {
      error(pos, s.family + " expects " + std::to_string(fam->param_count()) + " parameters");
      return;
    }
    CaseGraph::Solid solid{fam, {}, {}};
    for (const auto& a : s.args) {
      if (const auto* i = std::get_if<text::Int>(&a.value)) {
        solid.args.emplace_back(Rational(i->text));
      } else if (const auto* v = std::get_if<text::Var>(&a.value); v && v->anonymous()) {
        solid.args.emplace_back(std::nullopt);
      } else {
        error(a.pos, "solid parameters must be integers or '_'");
        solid.args.emplace_back(std::nullopt);
      }
    }
    std::set<std::string> bound;
    for (const auto& b : s.edges) {
      if (!fam->has_edge(b.edge)) {
        error(b.var.pos, s.family + " has no edge '" + b.edge + "'");
        continue;
      }
      if (!bound.insert(b.edge).second) {
        error(b.var.pos, "edge '" + b.edge + "' bound twice");
        continue;
      }
      auto e = use_edge(b.var, false);
      ++owners_[e];
      solid.edges.emplace_back(b.edge, e);
    }
    g_.solids.push_back(std::move(solid));
  }

  void lower(const text::BondStmt& b, text::Pos pos) {
    auto ea = use_edge(b.a, true);
    auto eb = use_edge(b.b, true);
    if (ea == eb) {
      error(pos, "bond connects '" + b.a.name + "' to itself");
      return;
    }
    ++bonded_[ea];
    ++bonded_[eb];
    g_.bonds.push_back({ea, eb});
  }

  const Program& program_;
  std::vector<Diagnostic>& diags_;
  CaseGraph g_;
  std::map<std::string, std::size_t> nets_;
  std::map<std::string, std::size_t> edges_;
  std::vector<int> owners_;
  std::vector<int> bonded_;
  std::vector<text::Pos> edge_pos_;
  std::vector<std::pair<text::Pos, std::size_t>> negated_;
};

}  // namespace

CompileResult compile(const text::Program& source, const solid::Registry& registry) {
  CompileResult out;
  auto& prog = out.program;
  auto& diags = out.diagnostics;
  prog.registry = &registry;

  for (const auto& d : source.designs) {
    if (prog.design_index(d.name)) {
      diags.push_back({d.pos, "duplicate design '" + d.name + "'"});
      continue;
    }
    Design design;
    design.signature.name = d.name;
    for (const auto& p : d.params) {
      design.signature.kinds.push_back(p.kind == text::ParamKind::edge ? TerminalKind::edge
                                                                        : TerminalKind::simple);
    }
    prog.designs.push_back(std::move(design));
  }

  std::vector<std::pair<text::Pos, std::size_t>> negated;
  std::vector<bool> has_solid(prog.designs.size(), false);
  std::vector<std::set<std::size_t>> callees(prog.designs.size());
  std::set<std::string> seen;
  for (const auto& d : source.designs) {
    if (!seen.insert(d.name).second) continue;
    auto index = *prog.design_index(d.name);
    for (const auto& c : d.cases) {
      CaseBuilder b(prog, diags);
      b.head(d.params);
      b.body(c.body);
      auto g = b.finish();
      if (!g.solids.empty()) has_solid[index] = true;
      for (const auto& call : g.calls) callees[index].insert(call.design);
      negated.insert(negated.end(), b.negated_calls().begin(), b.negated_calls().end());
      prog.designs[index].cases.push_back(std::move(g));
    }
  }
  for (const auto& q : source.queries) {
    if (prog.find_query(q.name)) diags.push_back({q.pos, "duplicate query '" + q.name + "'"});
    CaseBuilder b(prog, diags);
    b.body(q.body);
    auto g = b.finish();
    negated.insert(negated.end(), b.negated_calls().begin(), b.negated_calls().end());
    prog.queries.push_back({q.name, std::move(g)});
  }

  // A design is a definition iff no solid is reachable through calls.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < prog.designs.size(); ++i) {
      if (has_solid[i]) continue;
      for (auto callee : callees[i]) {
        if (has_solid[callee]) {
          has_solid[i] = true;
          changed = true;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < prog.designs.size(); ++i) prog.designs[i].is_definition = !has_solid[i];
  for (const auto& [pos, index] : negated) {
    if (!prog.designs[index].is_definition) {
      diags.push_back({pos, "negation restricted to definitions: '" +
                                prog.designs[index].signature.name + "' builds solids"});
    }
  }
  return out;
}

std::vector<Diagnostic> validate(const text::Program& source, const solid::Registry& registry) {
  return compile(source, registry).diagnostics;
}

}  // namespace lsd::core
