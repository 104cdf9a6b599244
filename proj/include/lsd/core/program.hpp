#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsd/solid/family.hpp"
#include "lsd/text/ast.hpp"

namespace lsd::core {

enum class TerminalKind { simple, edge };

struct Signature {
  std::string name;
  std::vector<TerminalKind> kinds;
  std::size_t arity() const { return kinds.size(); }
  bool operator==(const Signature&) const = default;
};

// One case body (or query body) with case-local numbering of nets and edges.
struct CaseGraph {
  struct Func {
    std::string name;
    std::size_t root = 0;
    std::vector<std::size_t> args;
  };
  struct Call {
    std::size_t design = 0;
    Signature signature;
    bool negated = false;
    std::vector<std::size_t> slots;  // local net or local edge, by signature kind
  };
  struct Solid {
    const solid::SolidFamily* family = nullptr;
    std::vector<std::optional<Rational>> args;
    std::vector<std::pair<std::string, std::size_t>> edges;  // open edge -> local edge
  };
  struct Bond {
    std::size_t a = 0;
    std::size_t b = 0;
  };

  std::vector<std::string> net_names;   // "" for anonymous and literal nets
  std::vector<std::string> edge_names;
  std::vector<Func> funcs;
  std::vector<Call> calls;
  std::vector<Solid> solids;
  std::vector<Bond> bonds;
  // Head terminal i refers to a local net or local edge per signature kind.
  std::vector<std::size_t> head;
  std::vector<TerminalKind> head_kinds;

  std::size_t net_count() const { return net_names.size(); }
  std::size_t edge_count() const { return edge_names.size(); }
};

struct Design {
  Signature signature;
  std::vector<CaseGraph> cases;
  bool is_definition = true;
};

struct Query {
  std::string name;
  CaseGraph body;
};

struct Program {
  const solid::Registry* registry = nullptr;
  std::vector<Design> designs;
  std::vector<Query> queries;

  const Design* find_design(std::string_view name) const;
  std::optional<std::size_t> design_index(std::string_view name) const;
  const Query* find_query(std::string_view name) const;
};

struct Diagnostic {
  text::Pos pos;
  std::string message;
  std::string to_string() const;
};

struct CompileResult {
  Program program;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

CompileResult compile(const text::Program& source,
                      const solid::Registry& registry = solid::desk_registry());

// Structural checks of a parsed program; empty when it compiles.
std::vector<Diagnostic> validate(const text::Program& source,
                                 const solid::Registry& registry = solid::desk_registry());

}  // namespace lsd::core
