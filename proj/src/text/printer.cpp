#include "lsd/text/parser.hpp"

namespace lsd::text {

namespace {

std::string join_args(const std::vector<Arg>& args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out += ", ";
    out += print_arg(a);
  }
  return out;
}

std::string print_stmt(const Stmt& stmt) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FuncStmt>) {
          return s.name + "(" + join_args(s.args) + ") -> " + s.root.name + ";";
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          return std::string(s.negated ? "not " : "") + "call " + s.design + "(" +
                 join_args(s.args) + ");";
        } else if constexpr (std::is_same_v<T, SolidStmt>) {
          std::string out = "solid " + s.family + "(" + join_args(s.args) + ") {";
          for (const auto& e : s.edges) out += " " + e.edge + ": " + e.var.name;
          return out + (s.edges.empty() ? "};" : " };");
        } else {
          return "bond " + s.a.name + ", " + s.b.name + ";";
        }
      },
      stmt.value);
}

void print_body(std::string& out, const std::vector<Stmt>& body, const std::string& indent) {
  for (const auto& s : body) out += indent + print_stmt(s) + "\n";
}

}  // namespace

std::string print_arg(const Arg& arg) {
  if (const auto* v = std::get_if<Var>(&arg.value)) return v->name;
  if (const auto* i = std::get_if<Int>(&arg.value)) return i->text;
  const auto& items = std::get<std::vector<Arg>>(arg.value);
  std::string out = "[" + join_args(items);
  if (arg.tail) out += " | " + arg.tail->name;
  return out + "]";
}

std::string print(const Program& program) {
  std::string out;
  auto separate = [&] {
    if (!out.empty()) out += "\n";
  };
  for (const auto& d : program.designs) {
    separate();
    out += "design " + d.name + "(";
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      if (i) out += ", ";
      out += d.params[i].name + ": " + (d.params[i].kind == ParamKind::edge ? "edge" : "simple");
    }
    out += ") {";
    bool all_empty = true;
    for (const auto& c : d.cases) all_empty = all_empty && c.body.empty();
    if (all_empty) {
      for (std::size_t i = 0; i < d.cases.size(); ++i) out += " case { }";
      out += " }\n";
      continue;
    }
    out += "\n";
    for (const auto& c : d.cases) {
      if (c.body.empty()) {
        out += "  case { }\n";
        continue;
      }
      out += "  case {\n";
      print_body(out, c.body, "    ");
      out += "  }\n";
    }
    out += "}\n";
  }
  for (const auto& q : program.queries) {
    separate();
    out += "query " + q.name + " {\n";
    print_body(out, q.body, "  ");
    out += "}\n";
  }
  return out;
}

}  // namespace lsd::text
