#include "lsd/core/instantiate.hpp"

#include <charconv>

namespace lsd::core {

Instantiation instantiate_case(Specification& spec, solid::SolidModel& model,
                               const CaseGraph& graph, const std::vector<NetId>& head_nets,
                               const std::vector<EdgeId>& head_edges) {
  Instantiation out;
  constexpr std::size_t none = static_cast<std::size_t>(-1);

  // Which local nets and edges are head terminals.
  std::vector<std::size_t> net_head(graph.net_count(), none);
  std::vector<std::size_t> edge_head(graph.edge_count(), none);
  std::size_t si = 0, ei = 0;
  for (std::size_t k = 0; k < graph.head.size(); ++k) {
    if (graph.head_kinds[k] == TerminalKind::simple) {
      net_head[graph.head[k]] = si++;
    } else {
      edge_head[graph.head[k]] = ei++;
    }
  }
  if (si != head_nets.size() || ei != head_edges.size()) {
    throw std::logic_error("head attachments do not match the case head");
  }

  std::vector<NetId> nets(graph.net_count());
  for (std::size_t i = 0; i < graph.net_count(); ++i) {
    nets[i] = net_head[i] != none ? head_nets[net_head[i]] : spec.add_net();
  }
  std::vector<EdgeId> edges(graph.edge_count(), 0);

  for (const auto& f : graph.funcs) {
    std::vector<NetId> args;
    for (auto a : f.args) args.push_back(nets[a]);
    out.functions.push_back(spec.add_function(f.name, nets[f.root], std::move(args)));
  }

  long long base = graph.calls.empty() ? 0 : spec.reserve_priorities(graph.calls.size());
  for (std::size_t c = 0; c < graph.calls.size(); ++c) {
    const auto& call = graph.calls[c];
    IComponent comp;
    comp.design = call.design;
    comp.signature = call.signature;
    comp.priority = base + static_cast<long long>(c);
    comp.negated = call.negated;
    auto id = static_cast<CellId>(spec.cell_count());
    for (std::size_t k = 0; k < call.slots.size(); ++k) {
      if (comp.signature.kinds[k] == TerminalKind::simple) {
        comp.ports.push_back(nets[call.slots[k]]);
      } else {
        auto e = spec.add_edge(id, "port" + std::to_string(k));
        edges[call.slots[k]] = e;
        comp.ports.push_back(e);
      }
    }
    out.icomponents.push_back(spec.add_icomponent(std::move(comp)));
  }

  for (const auto& s : graph.solids) {
    auto instance = model.create(*s.family, s.args);
    auto id = static_cast<CellId>(spec.cell_count());
    for (const auto& [name, local] : s.edges) edges[local] = spec.add_edge(id, name);
    out.ecomponents.push_back(spec.add_ecomponent(instance));
  }

  // Partners outside the replaced component, then detach its ports.
  std::vector<std::optional<EdgeId>> partner(head_edges.size());
  for (std::size_t k = 0; k < head_edges.size(); ++k) {
    partner[k] = spec.partner(head_edges[k]);
    if (auto b = spec.edge(head_edges[k]).bond) spec.remove_bond(*b);
  }
  auto resolve = [&](std::size_t local) -> std::optional<EdgeId> {
    if (edge_head[local] != none) return partner[edge_head[local]];
    return edges[local];
  };
  for (const auto& b : graph.bonds) {
    auto ea = resolve(b.a);
    auto eb = resolve(b.b);
    if (ea && eb) out.bonds.push_back(spec.add_bond(*ea, *eb));
  }
  return out;
}

Instantiation replace(Specification& spec, solid::SolidModel& model, const Program& program,
                      CellId icomponent, std::size_t case_index) {
  const auto& comp = std::get<IComponent>(spec.cell(icomponent).body);
  const auto& design = program.designs.at(comp.design);
  std::vector<NetId> head_nets;
  std::vector<EdgeId> head_edges;
  for (std::size_t k = 0; k < comp.ports.size(); ++k) {
    if (comp.signature.kinds[k] == TerminalKind::simple) {
      head_nets.push_back(comp.ports[k]);
    } else {
      head_edges.push_back(comp.ports[k]);
    }
  }
  auto out = instantiate_case(spec, model, design.cases.at(case_index), head_nets, head_edges);
  for (auto e : head_edges) spec.kill_edge(e);
  spec.remove_cell(icomponent);
  return out;
}

Instantiation load_query(Specification& spec, solid::SolidModel& model, const Query& query) {
  auto first_net = static_cast<NetId>(spec.net_count());
  auto out = instantiate_case(spec, model, query.body, {}, {});
  for (std::size_t i = 0; i < query.body.net_count(); ++i) {
    const auto& name = query.body.net_names[i];
    if (!name.empty()) spec.add_probe(first_net + static_cast<NetId>(i), name);
  }
  return out;
}

namespace {

bool is_list(const Term& t) {
  const Term* cur = &t;
  while (!cur->variable && cur->functor == text::kCons && cur->args.size() == 2) cur = &cur->args[1];
  return !cur->variable && cur->functor == text::kNil && cur->args.empty();
}

Term read_net(const Specification& spec, NetId net, int depth);

Term read_probe_at(const Specification& spec, ProbeId p, int depth) {
  const auto& probe = spec.probe(p);
  if (!probe.binding) return read_net(spec, probe.net, depth);
  Term t{probe.binding->first, {}, false};
  for (auto c : probe.binding->second) {
    t.args.push_back(depth > 64 ? Term{"...", {}, true} : read_probe_at(spec, c, depth + 1));
  }
  return t;
}

Term read_net(const Specification& spec, NetId net, int depth) {
  auto root = spec.find(net);
  for (CellId c = 0; c < spec.cell_count(); ++c) {
    const auto& cell = spec.cell(c);
    const auto* f = std::get_if<FunctionCell>(&cell.body);
    if (!cell.alive || !f || spec.find(f->root) != root) continue;
    Term t{f->name, {}, false};
    for (auto a : f->args) {
      t.args.push_back(depth > 64 ? Term{"...", {}, true} : read_net(spec, a, depth + 1));
    }
    return t;
  }
  for (ProbeId p = 0; p < spec.probe_count(); ++p) {
    if (spec.probe(p).binding && spec.find(spec.probe(p).net) == root) return read_probe_at(spec, p, depth + 1);
  }
  for (ProbeId p = 0; p < spec.probe_count(); ++p) {
    const auto& probe = spec.probe(p);
    if (!probe.name.empty() && spec.find(probe.net) == root) return {probe.name, {}, true};
  }
  return {"_" + std::to_string(root), {}, true};
}

}  // namespace

Term read_probe(const Specification& spec, ProbeId probe) { return read_probe_at(spec, probe, 0); }

std::map<std::string, Term> bindings(const Specification& spec) {
  std::map<std::string, Term> out;
  for (ProbeId p = 0; p < spec.probe_count(); ++p) {
    const auto& probe = spec.probe(p);
    if (!probe.name.empty()) out.emplace(probe.name, read_probe(spec, p));
  }
  return out;
}

std::string to_string(const Term& term) {
  if (term.variable) return term.functor;
  if (is_list(term)) {
    std::string out = "[";
    const Term* cur = &term;
    bool first = true;
    while (cur->functor == text::kCons) {
      if (!first) out += ", ";
      first = false;
      out += to_string(cur->args[0]);
      cur = &cur->args[1];
    }
    return out + "]";
  }
  if (term.functor == text::kCons && term.args.size() == 2) {
    // Partial list with an open tail.
    std::string out = "[" + to_string(term.args[0]);
    const Term* cur = &term.args[1];
    while (!cur->variable && cur->functor == text::kCons && cur->args.size() == 2) {
      out += ", " + to_string(cur->args[0]);
      cur = &cur->args[1];
    }
    if (!cur->variable && cur->functor == text::kNil) return out + "]";
    return out + " | " + to_string(*cur) + "]";
  }
  if (term.args.empty()) return term.functor;
  std::string out = term.functor + "(";
  for (std::size_t i = 0; i < term.args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(term.args[i]);
  }
  return out + ")";
}

std::optional<std::vector<int>> as_int_list(const Term& term) {
  std::vector<int> out;
  const Term* cur = &term;
  while (!cur->variable && cur->functor == text::kCons && cur->args.size() == 2) {
    const auto& head = cur->args[0];
    if (head.variable || !head.args.empty()) return std::nullopt;
    int v = 0;
    auto [ptr, ec] = std::from_chars(head.functor.data(), head.functor.data() + head.functor.size(), v);
    if (ec != std::errc() || ptr != head.functor.data() + head.functor.size()) return std::nullopt;
    out.push_back(v);
    cur = &cur->args[1];
  }
  if (cur->variable || cur->functor != text::kNil) return std::nullopt;
  return out;
}

}  // namespace lsd::core
