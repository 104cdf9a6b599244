#include <doctest.h>

#include <filesystem>
#include <random>

#include "lsd/core/program.hpp"
#include "lsd/text/parser.hpp"

using namespace lsd;
using namespace lsd::text;

namespace {

std::string name(std::mt19937& rng, bool upper) {
  static const char* names[] = {"a", "b", "Tail", "x-y", "Q2", "item", "R"};
  std::string n = names[rng() % 7];
  if (upper) n[0] = static_cast<char>(std::toupper(n[0]));
  return n;
}

Var var(std::mt19937& rng) { return {rng() % 5 == 0 ? "_" : name(rng, rng() % 2), {}}; }

Arg arg(std::mt19937& rng, int depth) {
  auto pick = rng() % 4;
  if (pick == 0) return Arg{Int{std::to_string(rng() % 20), {}}, std::nullopt, {}};
  if (pick == 1 && depth > 0) {
    std::vector<Arg> items;
    std::size_t n = rng() % 3;
    for (std::size_t i = 0; i < n; ++i) items.push_back(arg(rng, depth - 1));
    std::optional<Var> tail;
    if (n > 0 && rng() % 2) tail = var(rng);
    return Arg{items, tail, {}};
  }
  return Arg{var(rng), std::nullopt, {}};
}

std::vector<Arg> args(std::mt19937& rng) {
  std::vector<Arg> out;
  std::size_t n = rng() % 4;
  for (std::size_t i = 0; i < n; ++i) out.push_back(arg(rng, 2));
  return out;
}

Stmt stmt(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0: {
      static const char* fn[] = {"f", "nil", "7", kCons, "eq"};
      return {FuncStmt{fn[rng() % 5], args(rng), var(rng)}, {}};
    }
    case 1:
      return {CallStmt{rng() % 3 == 0, name(rng, true), args(rng)}, {}};
    case 2: {
      SolidStmt s{name(rng, true), args(rng), {}};
      std::size_t n = rng() % 3;
      for (std::size_t i = 0; i < n; ++i) s.edges.push_back({name(rng, false), var(rng)});
      return {s, {}};
    }
    default:
      return {BondStmt{var(rng), var(rng)}, {}};
  }
}

Program random_program(std::mt19937& rng) {
  Program p;
  std::size_t designs = rng() % 3;
  for (std::size_t d = 0; d < designs; ++d) {
    Design design{name(rng, true) + std::to_string(d), {}, {}, {}};
    std::size_t params = rng() % 3;
    for (std::size_t i = 0; i < params; ++i) {
      design.params.push_back({name(rng, true), rng() % 2 ? ParamKind::edge : ParamKind::simple, {}});
    }
    std::size_t cases = 1 + rng() % 2;
    for (std::size_t c = 0; c < cases; ++c) {
      Case cs;
      std::size_t n = rng() % 4;
      for (std::size_t i = 0; i < n; ++i) cs.body.push_back(stmt(rng));
      design.cases.push_back(cs);
    }
    p.designs.push_back(design);
  }
  std::size_t queries = rng() % 2;
  for (std::size_t q = 0; q < queries; ++q) {
    Query query{"q" + std::to_string(q), {}, {}};
    std::size_t n = rng() % 4;
    for (std::size_t i = 0; i < n; ++i) query.body.push_back(stmt(rng));
    p.queries.push_back(query);
  }
  return p;
}

std::string diagnostics_of(const std::string& source) {
  auto diags = core::validate(parse(source));
  std::string out;
  for (const auto& d : diags) out += d.message + "\n";
  return out;
}

}  // namespace

TEST_CASE("list sugar") {
  auto p = parse("query q { f([1, 2 | T], []) -> X; }");
  const auto& f = std::get<FuncStmt>(p.queries[0].body[0].value);
  REQUIRE(f.args.size() == 2);
  CHECK(f.args[0].is_list());
  CHECK(f.args[0].tail->name == "T");
  CHECK(print_arg(f.args[0]) == "[1, 2 | T]");
  CHECK(print_arg(f.args[1]) == "[]");
}

TEST_CASE("lists lower to cons chains") {
  auto compiled = core::compile(parse("query q { f([1, 2]) -> X; }"));
  REQUIRE(compiled.ok());
  const auto& body = compiled.program.queries[0].body;
  std::multiset<std::string> names;
  for (const auto& f : body.funcs) names.insert(f.name);
  CHECK(names == std::multiset<std::string>{"f", kCons, kCons, "1", "2", "nil"});
}

TEST_CASE("minimal forms print canonically") {
  CHECK(print(parse("")) == "");
  CHECK(print(parse("design D() { case { } }")) == "design D() { case { } }\n");
}

TEST_CASE("corpus round trips") {
  for (const auto& entry : std::filesystem::directory_iterator(LSD_CORPUS_DIR)) {
    if (entry.path().extension() != ".lsd") continue;
    CAPTURE(entry.path().string());
    auto p = parse_file(entry.path().string());
    CHECK(parse(print(p)) == p);
    CHECK(print(parse(print(p))) == print(p));
    CHECK(core::validate(p).empty());
  }
}

TEST_CASE("random programs round trip") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto p = random_program(rng);
    auto text = print(p);
    CAPTURE(text);
    CHECK(parse(text) == p);
  }
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("design D() {\n  case { f( -> X; }\n}");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.pos().line == 2);
    CHECK(std::string(e.what()).starts_with("2:"));
  }
  CHECK_THROWS_AS(parse("query q { bond a b; }"), SyntaxError);
  CHECK_THROWS_AS(parse("design D(X: wire) { case { } }"), SyntaxError);
  CHECK_NOTHROW(parse("query q {\r\n  call Key([1]);\r\n}\r\n"));
}

TEST_CASE("validation diagnostics") {
  CHECK(diagnostics_of("query q { call Nope(X); }").find("unknown design") != std::string::npos);
  CHECK(diagnostics_of("query q { solid Gear(_) { }; }").find("unknown solid family") !=
        std::string::npos);
  CHECK(diagnostics_of("design D(A: simple) { case { } } query q { call D(X, Y); }")
            .find("expects 1 arguments") != std::string::npos);
  CHECK(diagnostics_of("query q { solid Handle(_) { right: h }; f(h) -> X; }")
            .find("wire on edge") != std::string::npos);
  CHECK(diagnostics_of("query q { f() -> X; f() -> Y; bond X, Y; }").find("bond requires edges") !=
        std::string::npos);
  CHECK(diagnostics_of("query q { solid Handle(_) { right: h }; bond h, k; }")
            .find("dangling edge") != std::string::npos);
  CHECK(diagnostics_of("query q { solid Handle(X) { }; }").find("integers or '_'") !=
        std::string::npos);
  CHECK(diagnostics_of("query q { solid Handle(_) { top: t }; }").find("has no edge") !=
        std::string::npos);
  CHECK(diagnostics_of("design D() { case { } } design D() { case { } }").find("duplicate design") !=
        std::string::npos);
  CHECK(diagnostics_of("design K() { case { solid Handle(_) { }; } } query q { not call K(); }")
            .find("negation restricted to definitions") != std::string::npos);
  CHECK(diagnostics_of("design K() { case { solid Handle(_) { }; } } query q { call K(); }").empty());
}
