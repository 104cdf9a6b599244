#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lsd::text {

// Source position; ignored by structural equality.
struct Pos {
  int line = 0;
  int column = 0;
  bool operator==(const Pos&) const { return true; }
};

struct Var {
  std::string name;  // "_" is anonymous
  Pos pos;
  bool anonymous() const { return name == "_"; }
  bool operator==(const Var&) const = default;
};

struct Int {
  std::string text;
  Pos pos;
  bool operator==(const Int&) const = default;
};

struct Arg {
  std::variant<Var, Int, std::vector<Arg>> value;  // vector = list items
  std::optional<Var> tail;                         // only for lists
  Pos pos;
  bool is_list() const { return std::holds_alternative<std::vector<Arg>>(value); }
  bool operator==(const Arg&) const = default;
};

struct FuncStmt {
  std::string name;  // NAME, decimal text or "•"
  std::vector<Arg> args;
  Var root;
  bool operator==(const FuncStmt&) const = default;
};

struct CallStmt {
  bool negated = false;
  std::string design;
  std::vector<Arg> args;
  bool operator==(const CallStmt&) const = default;
};

struct EdgeBind {
  std::string edge;
  Var var;
  bool operator==(const EdgeBind&) const = default;
};

struct SolidStmt {
  std::string family;
  std::vector<Arg> args;
  std::vector<EdgeBind> edges;
  bool operator==(const SolidStmt&) const = default;
};

struct BondStmt {
  Var a;
  Var b;
  bool operator==(const BondStmt&) const = default;
};

struct Stmt {
  std::variant<FuncStmt, CallStmt, SolidStmt, BondStmt> value;
  Pos pos;
  bool operator==(const Stmt&) const = default;
};

struct Case {
  std::vector<Stmt> body;
  Pos pos;
  bool operator==(const Case&) const = default;
};

enum class ParamKind { simple, edge };

struct Param {
  std::string name;
  ParamKind kind = ParamKind::simple;
  Pos pos;
  bool operator==(const Param&) const = default;
};

struct Design {
  std::string name;
  std::vector<Param> params;
  std::vector<Case> cases;
  Pos pos;
  bool operator==(const Design&) const = default;
};

struct Query {
  std::string name;
  std::vector<Stmt> body;
  Pos pos;
  bool operator==(const Query&) const = default;
};

struct Program {
  std::vector<Design> designs;
  std::vector<Query> queries;
  bool operator==(const Program&) const = default;
};

inline constexpr const char* kCons = "\xE2\x80\xA2";  // •
inline constexpr const char* kNil = "nil";

}  // namespace lsd::text
