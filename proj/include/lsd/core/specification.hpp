#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lsd/core/program.hpp"
#include "lsd/solid/solid_model.hpp"

namespace lsd::core {

using NetId = std::uint32_t;
using CellId = std::uint32_t;
using EdgeId = std::uint32_t;
using BondId = std::uint32_t;
using ProbeId = std::uint32_t;

struct FunctionCell {
  std::string name;
  NetId root = 0;
  std::vector<NetId> args;
  bool operator==(const FunctionCell&) const = default;
};

struct IComponent {
  std::size_t design = 0;
  Signature signature;
  std::vector<std::uint32_t> ports;  // NetId or EdgeId by signature kind
  long long priority = 0;
  bool negated = false;
  bool operator==(const IComponent&) const = default;
};

struct EComponent {
  solid::InstanceId instance = 0;
  bool operator==(const EComponent&) const = default;
};

struct Cell {
  std::variant<FunctionCell, IComponent, EComponent> body;
  bool alive = true;
  bool operator==(const Cell&) const = default;
};

// An edge terminal: a port of an i-component or an open edge of an
// e-component (name = the solid's edge name).
struct Edge {
  CellId owner = 0;
  std::string name{};
  std::optional<BondId> bond{};
  bool alive = true;
  bool operator==(const Edge&) const = default;
};

struct Bond {
  EdgeId a = 0;
  EdgeId b = 0;
  bool alive = true;
  bool operator==(const Bond&) const = default;
};

// Observer of a query variable. Probes do not count as terminals; when a
// function cell determining the probe's net is deleted the probe records
// the functor and grows child probes on the argument nets.
struct Probe {
  NetId net = 0;
  std::string name{};
  std::optional<std::pair<std::string, std::vector<ProbeId>>> binding{};
  bool operator==(const Probe&) const = default;
};

class Specification {
 public:
  using Mark = std::size_t;

  NetId add_net();
  NetId find(NetId net) const;
  // Returns false if already in one net (no trail entry).
  bool connect(NetId a, NetId b);
  std::size_t net_count() const { return parent_.size(); }
  // Terminals of live cells in the net (probes excluded).
  std::size_t live_terminals(NetId net) const { return live_[find(net)]; }

  CellId add_function(std::string name, NetId root, std::vector<NetId> args);
  // Priority is assigned by the caller.
  CellId add_icomponent(IComponent comp);
  CellId add_ecomponent(solid::InstanceId instance);
  void remove_cell(CellId cell);
  const Cell& cell(CellId id) const { return cells_.at(id); }
  std::size_t cell_count() const { return cells_.size(); }

  EdgeId add_edge(CellId owner, std::string name);
  void kill_edge(EdgeId edge);
  void set_edge_owner(EdgeId edge, CellId owner, std::string name);
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  std::size_t edge_count() const { return edges_.size(); }
  // Live edges owned by a cell, in id order.
  std::vector<EdgeId> edges_of(CellId owner) const;

  BondId add_bond(EdgeId a, EdgeId b);
  void remove_bond(BondId bond);
  const Bond& bond(BondId id) const { return bonds_.at(id); }
  std::size_t bond_count() const { return bonds_.size(); }
  std::optional<EdgeId> partner(EdgeId edge) const;

  ProbeId add_probe(NetId net, std::string name);
  const Probe& probe(ProbeId id) const { return probes_.at(id); }
  std::size_t probe_count() const { return probes_.size(); }

  // Agenda of live i-components ordered by (priority, id).
  const std::set<std::pair<long long, CellId>>& agenda() const { return agenda_; }
  // Reserves n consecutive priorities below every existing one.
  long long reserve_priorities(std::size_t n);

  Mark mark() const { return trail_.size(); }
  void undo(Mark mark);

  // Referential integrity and partition checks; returns problems found.
  std::vector<std::string> audit() const;
  // Deterministic text form of the live structure.
  std::string canonical_dump() const;
  std::uint64_t hash() const;

  bool operator==(const Specification& other) const;

 private:
  enum class Op : std::uint8_t {
    add_net, connect, add_cell, remove_cell, add_edge, kill_edge, set_owner, add_bond,
    remove_bond, add_probe, bind_probe, set_low
  };
  struct Entry {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    long long old = 0;
    std::string old_name{};
  };

  void count_terminals(const Cell& c, int delta);
  void bind_probes_for(const FunctionCell& f);

  std::vector<NetId> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> live_;
  std::vector<Cell> cells_;
  std::vector<Edge> edges_;
  std::vector<Bond> bonds_;
  std::vector<Probe> probes_;
  std::set<std::pair<long long, CellId>> agenda_;
  long long low_priority_ = 0;
  std::vector<Entry> trail_;
};

}  // namespace lsd::core
