#include "lsd/core/specification.hpp"

#include <map>
#include <sstream>

namespace lsd::core {

NetId Specification::add_net() {
  auto id = static_cast<NetId>(parent_.size());
  parent_.push_back(id);
  size_.push_back(1);
  live_.push_back(0);
  trail_.push_back({Op::add_net});
  return id;
}

NetId Specification::find(NetId net) const {
  while (parent_.at(net) != net) net = parent_[net];
  return net;
}

bool Specification::connect(NetId a, NetId b) {
  auto ra = find(a);
  auto rb = find(b);
  if (ra == rb) return false;
  if (size_[ra] < size_[rb] || (size_[ra] == size_[rb] && rb < ra)) std::swap(ra, rb);
  parent_[rb] = ra;
  size_[ra] += size_[rb];
  live_[ra] += live_[rb];
  trail_.push_back({Op::connect, rb, ra});
  return true;
}

void Specification::count_terminals(const Cell& c, int delta) {
  auto bump = [&](NetId n) { live_[find(n)] += delta; };
  if (const auto* f = std::get_if<FunctionCell>(&c.body)) {
    bump(f->root);
    for (auto a : f->args) bump(a);
  } else if (const auto* i = std::get_if<IComponent>(&c.body)) {
    for (std::size_t k = 0; k < i->ports.size(); ++k) {
      if (i->signature.kinds[k] == TerminalKind::simple) bump(i->ports[k]);
    }
  }
}

CellId Specification::add_function(std::string name, NetId root, std::vector<NetId> args) {
  auto id = static_cast<CellId>(cells_.size());
  cells_.push_back({FunctionCell{std::move(name), root, std::move(args)}});
  count_terminals(cells_.back(), +1);
  trail_.push_back({Op::add_cell, id});
  return id;
}

CellId Specification::add_icomponent(IComponent comp) {
  auto id = static_cast<CellId>(cells_.size());
  agenda_.insert({comp.priority, id});
  cells_.push_back({std::move(comp)});
  count_terminals(cells_.back(), +1);
  trail_.push_back({Op::add_cell, id});
  return id;
}

CellId Specification::add_ecomponent(solid::InstanceId instance) {
  auto id = static_cast<CellId>(cells_.size());
  cells_.push_back({EComponent{instance}});
  trail_.push_back({Op::add_cell, id});
  return id;
}

void Specification::bind_probes_for(const FunctionCell& f) {
  auto root = find(f.root);
  std::optional<std::vector<ProbeId>> children;
  for (ProbeId p = 0; p < probes_.size(); ++p) {
    if (probes_[p].binding || find(probes_[p].net) != root) continue;
    if (!children) {
      children.emplace();
      for (auto a : f.args) children->push_back(add_probe(a, ""));
    }
    probes_[p].binding.emplace(f.name, *children);
    trail_.push_back({Op::bind_probe, p});
  }
}

void Specification::remove_cell(CellId id) {
  auto& c = cells_.at(id);
  if (!c.alive) throw std::logic_error("cell " + std::to_string(id) + " already removed");
  if (const auto* f = std::get_if<FunctionCell>(&c.body)) bind_probes_for(*f);
  auto& cell = cells_[id];
  cell.alive = false;
  count_terminals(cell, -1);
  if (const auto* i = std::get_if<IComponent>(&cell.body)) agenda_.erase({i->priority, id});
  trail_.push_back({Op::remove_cell, id});
}

EdgeId Specification::add_edge(CellId owner, std::string name) {
  auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({owner, std::move(name)});
  trail_.push_back({Op::add_edge, id});
  return id;
}

void Specification::kill_edge(EdgeId edge) {
  auto& e = edges_.at(edge);
  if (e.bond) throw std::logic_error("killing a bonded edge");
  e.alive = false;
  trail_.push_back({Op::kill_edge, edge});
}

void Specification::set_edge_owner(EdgeId edge, CellId owner, std::string name) {
  auto& e = edges_.at(edge);
  trail_.push_back({Op::set_owner, edge, 0, e.owner, e.name});
  e.owner = owner;
  e.name = std::move(name);
}

std::vector<EdgeId> Specification::edges_of(CellId owner) const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (edges_[e].alive && edges_[e].owner == owner) out.push_back(e);
  }
  return out;
}

BondId Specification::add_bond(EdgeId a, EdgeId b) {
  if (edges_.at(a).bond || edges_.at(b).bond || a == b) {
    throw std::logic_error("an edge participates in at most one bond");
  }
  auto id = static_cast<BondId>(bonds_.size());
  bonds_.push_back({a, b});
  edges_[a].bond = id;
  edges_[b].bond = id;
  trail_.push_back({Op::add_bond, id});
  return id;
}

void Specification::remove_bond(BondId id) {
  auto& b = bonds_.at(id);
  b.alive = false;
  edges_[b.a].bond.reset();
  edges_[b.b].bond.reset();
  trail_.push_back({Op::remove_bond, id});
}

std::optional<EdgeId> Specification::partner(EdgeId edge) const {
  const auto& e = edges_.at(edge);
  if (!e.bond) return std::nullopt;
  const auto& b = bonds_[*e.bond];
  return b.a == edge ? b.b : b.a;
}

ProbeId Specification::add_probe(NetId net, std::string name) {
  auto id = static_cast<ProbeId>(probes_.size());
  probes_.push_back({net, std::move(name)});
  trail_.push_back({Op::add_probe, id});
  return id;
}

long long Specification::reserve_priorities(std::size_t n) {
  trail_.push_back({Op::set_low, 0, 0, low_priority_});
  low_priority_ -= static_cast<long long>(n);
  return low_priority_;
}

void Specification::undo(Mark mark) {
  if (mark > trail_.size()) throw std::logic_error("specification mark is in the future");
  while (trail_.size() > mark) {
    Entry e = std::move(trail_.back());
    trail_.pop_back();
    switch (e.op) {
      case Op::add_net:
        parent_.pop_back();
        size_.pop_back();
        live_.pop_back();
        break;
      case Op::connect:
        parent_[e.a] = e.a;
        size_[e.b] -= size_[e.a];
        live_[e.b] -= live_[e.a];
        break;
      case Op::add_cell: {
        auto& c = cells_.back();
        if (c.alive) {
          count_terminals(c, -1);
          if (const auto* i = std::get_if<IComponent>(&c.body)) agenda_.erase({i->priority, e.a});
        }
        cells_.pop_back();
        break;
      }
      case Op::remove_cell: {
        auto& c = cells_[e.a];
        c.alive = true;
        count_terminals(c, +1);
        if (const auto* i = std::get_if<IComponent>(&c.body)) agenda_.insert({i->priority, e.a});
        break;
      }
      case Op::add_edge:
        edges_.pop_back();
        break;
      case Op::kill_edge:
        edges_[e.a].alive = true;
        break;
      case Op::set_owner:
        edges_[e.a].owner = static_cast<CellId>(e.old);
        edges_[e.a].name = std::move(e.old_name);
        break;
      case Op::add_bond: {
        const auto& b = bonds_.back();
        edges_[b.a].bond.reset();
        edges_[b.b].bond.reset();
        bonds_.pop_back();
        break;
      }
      case Op::remove_bond: {
        auto& b = bonds_[e.a];
        b.alive = true;
        edges_[b.a].bond = e.a;
        edges_[b.b].bond = e.a;
        break;
      }
      case Op::add_probe:
        probes_.pop_back();
        break;
      case Op::bind_probe:
        probes_[e.a].binding.reset();
        break;
      case Op::set_low:
        low_priority_ = e.old;
        break;
    }
  }
}

std::vector<std::string> Specification::audit() const {
  std::vector<std::string> problems;
  auto bad = [&](std::string s) { problems.push_back(std::move(s)); };
  std::vector<std::uint32_t> live(parent_.size(), 0), size(parent_.size(), 0);
  for (NetId n = 0; n < parent_.size(); ++n) {
    NetId r = n;
    for (std::size_t steps = 0; parent_[r] != r; ++steps) {
      if (steps > parent_.size()) {
        bad("net " + std::to_string(n) + " has a parent cycle");
        return problems;
      }
      r = parent_[r];
    }
    ++size[r];
  }
  std::set<long long> priorities;
  std::set<std::pair<long long, CellId>> agenda;
  for (CellId id = 0; id < cells_.size(); ++id) {
    const auto& c = cells_[id];
    if (!c.alive) continue;
    auto check = [&](NetId n) {
      if (n >= parent_.size()) {
        bad("cell " + std::to_string(id) + " refers to unknown net");
        return;
      }
      ++live[find(n)];
    };
    if (const auto* f = std::get_if<FunctionCell>(&c.body)) {
      check(f->root);
      for (auto a : f->args) check(a);
    } else if (const auto* i = std::get_if<IComponent>(&c.body)) {
      if (!priorities.insert(i->priority).second) bad("duplicate priority");
      agenda.insert({i->priority, id});
      for (std::size_t k = 0; k < i->ports.size(); ++k) {
        if (i->signature.kinds[k] == TerminalKind::simple) {
          check(i->ports[k]);
        } else if (i->ports[k] >= edges_.size() || !edges_[i->ports[k]].alive ||
                   edges_[i->ports[k]].owner != id) {
          bad("i-component " + std::to_string(id) + " has a stale edge port");
        }
      }
    }
  }
  if (agenda != agenda_) bad("agenda does not match live i-components");
  for (NetId n = 0; n < parent_.size(); ++n) {
    if (parent_[n] != n) continue;
    if (live[n] != live_[n]) bad("terminal count of net " + std::to_string(n) + " is stale");
    if (size[n] != size_[n]) bad("size of net " + std::to_string(n) + " is stale");
  }
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (!edge.alive) continue;
    if (edge.owner >= cells_.size() || !cells_[edge.owner].alive) {
      bad("edge " + std::to_string(e) + " has no live owner");
    }
    if (edge.bond && (!bonds_[*edge.bond].alive ||
                      (bonds_[*edge.bond].a != e && bonds_[*edge.bond].b != e))) {
      bad("edge " + std::to_string(e) + " points to a foreign bond");
    }
  }
  for (BondId b = 0; b < bonds_.size(); ++b) {
    const auto& bond = bonds_[b];
    if (!bond.alive) continue;
    for (auto e : {bond.a, bond.b}) {
      if (!edges_[e].alive || edges_[e].bond != b) bad("bond " + std::to_string(b) + " is dangling");
    }
  }
  return problems;
}

std::string Specification::canonical_dump() const {
  std::ostringstream os;
  for (CellId id = 0; id < cells_.size(); ++id) {
    const auto& c = cells_[id];
    if (!c.alive) continue;
    os << "cell " << id << ' ';
    if (const auto* f = std::get_if<FunctionCell>(&c.body)) {
      os << "func " << f->name << " root " << find(f->root) << " args";
      for (auto a : f->args) os << ' ' << find(a);
    } else if (const auto* i = std::get_if<IComponent>(&c.body)) {
      os << (i->negated ? "not " : "") << "call " << i->signature.name << " prio " << i->priority
         << " ports";
      for (std::size_t k = 0; k < i->ports.size(); ++k) {
        os << ' ' << (i->signature.kinds[k] == TerminalKind::simple ? find(i->ports[k]) : i->ports[k]);
      }
    } else {
      os << "solid " << std::get<EComponent>(c.body).instance;
    }
    os << '\n';
  }
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (edges_[e].alive) os << "edge " << e << " owner " << edges_[e].owner << ' ' << edges_[e].name << '\n';
  }
  for (BondId b = 0; b < bonds_.size(); ++b) {
    if (bonds_[b].alive) os << "bond " << b << ' ' << bonds_[b].a << ' ' << bonds_[b].b << '\n';
  }
  for (ProbeId p = 0; p < probes_.size(); ++p) {
    os << "probe " << p << ' ' << probes_[p].name << " net " << find(probes_[p].net);
    if (probes_[p].binding) {
      os << " = " << probes_[p].binding->first;
      for (auto c : probes_[p].binding->second) os << ' ' << c;
    }
    os << '\n';
  }
  return os.str();
}

std::uint64_t Specification::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool Specification::operator==(const Specification& o) const {
  return parent_ == o.parent_ && size_ == o.size_ && live_ == o.live_ && cells_ == o.cells_ &&
         edges_ == o.edges_ && bonds_ == o.bonds_ && probes_ == o.probes_ &&
         agenda_ == o.agenda_ && low_priority_ == o.low_priority_;
}

}  // namespace lsd::core
