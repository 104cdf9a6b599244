#pragma once

#include <map>
#include <string>
#include <vector>

#include "lsd/core/specification.hpp"

namespace lsd::core {

struct Instantiation {
  std::vector<CellId> functions;
  std::vector<CellId> icomponents;
  std::vector<CellId> ecomponents;
  std::vector<BondId> bonds;
};

// Rename-apart copy of a case. Head simple terminals are wired to
// `head_nets`; bonds to head edges are spliced onto the partners of
// `head_edges` (dropped when a side is unbonded).
Instantiation instantiate_case(Specification& spec, solid::SolidModel& model,
                               const CaseGraph& graph, const std::vector<NetId>& head_nets,
                               const std::vector<EdgeId>& head_edges);

// Replaces a live, non-negated i-component by one of its design's cases.
Instantiation replace(Specification& spec, solid::SolidModel& model, const Program& program,
                      CellId icomponent, std::size_t case_index);

// Loads a query body and attaches a probe to every named net.
Instantiation load_query(Specification& spec, solid::SolidModel& model, const Query& query);

struct Term {
  std::string functor;  // variable name when `variable`
  std::vector<Term> args;
  bool variable = false;
  bool operator==(const Term&) const = default;
};

// Lists print with bracket sugar.
std::string to_string(const Term& term);
Term read_probe(const Specification& spec, ProbeId probe);
// Bindings of the named (query) probes.
std::map<std::string, Term> bindings(const Specification& spec);

// Decodes [a, b, ...] of integers; nullopt when not a ground integer list.
std::optional<std::vector<int>> as_int_list(const Term& term);

}  // namespace lsd::core
