#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "lsd/core/program.hpp"
#include "lsd/engine/engine.hpp"
#include "lsd/engine/replay.hpp"
#include "lsd/masterkey/masterkey.hpp"
#include "lsd/solid/family.hpp"
#include "lsd/text/parser.hpp"

using namespace lsd;
using engine::Engine;
using engine::Status;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(LSD_CORPUS_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

core::Program load(const std::string& name) {
  auto result = core::compile(text::parse(slurp(name)));
  for (const auto& d : result.diagnostics) MESSAGE(d.to_string());
  REQUIRE(result.ok());
  return std::move(result.program);
}

std::vector<int> ints(const core::Term& t) {
  auto v = core::as_int_list(t);
  REQUIRE(v);
  return *v;
}

masterkey::BittingArray array_of(const core::Term& t) {
  masterkey::BittingArray out;
  const core::Term* cur = &t;
  while (cur->functor == "•") {
    auto row = ints(cur->args.at(0));
    out.emplace_back(row.begin(), row.end());
    cur = &cur->args.at(1);
  }
  REQUIRE(cur->functor == "nil");
  return out;
}

Status run_query(const core::Program& program, const std::string& query) {
  Engine e(program, *program.find_query(query));
  return e.run();
}

}  // namespace

TEST_CASE("key4 builds a key") {
  auto program = load("key.lsd");
  Engine e(program, *program.find_query("key4"));
  engine::VectorSink sink;
  e.set_sink(&sink);
  REQUIRE(e.run() == Status::success);
  std::vector<std::string> head;
  for (std::size_t i = 0; i < 8; ++i) head.push_back(sink.events.at(i).kind);
  CHECK(head == std::vector<std::string>{"replace", "replace", "merge", "delete", "replace",
                                         "merge", "delete", "bond"});
  CHECK(sink.events[0].payload["design"] == "Key");
  CHECK(sink.events[1].payload["design"] == "Partial-Key");
  CHECK(sink.events[4].payload["design"] == "Bit");
  CHECK(sink.events.back().kind == "success");

  auto sol = e.solution();
  REQUIRE(sol.solids.size() == 1);
  const auto& model = e.model();
  auto id = sol.solids[0].instance;
  auto values = model.values(id);
  auto parts = solid::leaves(*model.instance(id).shape, values);
  REQUIRE(parts.size() == 10);
  CHECK(parts[0].family->name == "Handle");
  CHECK(parts[9].family->name == "Tip");
  Rational hx = parts[0].values[0];
  std::vector<int> bitting{1, 2, 1, 2};
  int bit = 0;
  for (const auto& leaf : parts) {
    if (leaf.family->name != "Bit") continue;
    Rational cx = hx + 5 + 3 * bit;
    CHECK(leaf.values[0] + 1 == cx);
    Rational h = bitting[bit];
    CHECK(leaf.values[1] == h);
    CHECK(model.membership(id, {cx, h}));
    CHECK_FALSE(model.membership(id, {cx, h + Rational(1, 1000)}));
    ++bit;
  }
  CHECK(bit == 4);
}

TEST_CASE("wrong bit case order fails then recovers") {
  auto program = load("key.lsd");
  auto reference = Engine(program, *program.find_query("key4"));
  REQUIRE(reference.run() == Status::success);

  auto swapped = program;
  auto& cases = swapped.designs[*swapped.design_index("Bit")].cases;
  std::reverse(cases.begin(), cases.end());
  Engine e(swapped, *swapped.find_query("key4"));
  engine::VectorSink sink;
  e.set_sink(&sink);
  REQUIRE(e.run() == Status::success);
  auto fail = std::find_if(sink.events.begin(), sink.events.end(),
                           [](const auto& ev) { return ev.kind == "fail"; });
  REQUIRE(fail != sink.events.end());
  CHECK(fail->payload["reason"] == "clash");
  std::set<std::string> names{fail->payload["names"][0], fail->payload["names"][1]};
  CHECK(names == std::set<std::string>{"1", "2"});
  CHECK((fail + 1)->kind == "backtrack");
  CHECK(e.solution().solids.size() == 1);
  CHECK(e.solution().solids[0].outline == reference.solution().solids[0].outline);
  CHECK(e.model().values(e.solution().solids[0].instance) ==
        reference.model().values(reference.solution().solids[0].instance));
}

TEST_CASE("two unbound bits enumerate four keys") {
  auto program = load("key.lsd");
  Engine e(program, *program.find_query("key2free"));
  auto sols = e.enumerate(100);
  REQUIRE(sols.size() == 4);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& s : sols) {
    CHECK(s.solids.size() == 1);
    seen.insert({core::to_string(s.bindings.at("X")), core::to_string(s.bindings.at("Y"))});
  }
  CHECK(seen == std::set<std::pair<std::string, std::string>>{
                    {"1", "1"}, {"1", "2"}, {"2", "1"}, {"2", "2"}});
  CHECK(e.status() == Status::exhausted);
  Engine none(program, *program.find_query("key2free"));
  CHECK(none.enumerate(0).empty());
}

TEST_CASE("unbound key grows by length") {
  auto program = load("key_gen.lsd");
  Engine e(program, *program.find_query("keyfree"));
  auto sols = e.enumerate(7);
  REQUIRE(sols.size() == 7);
  std::vector<std::size_t> lengths;
  std::set<std::vector<int>> keys;
  for (const auto& s : sols) {
    auto key = ints(s.bindings.at("L"));
    lengths.push_back(key.size());
    keys.insert(key);
  }
  CHECK(lengths == std::vector<std::size_t>{0, 1, 1, 2, 2, 2, 2});
  CHECK(keys.size() == 7);
  // The empty key is a handle and a tip.
  CHECK(sols[0].solids[0].outline.size() == 2);
}

TEST_CASE("logic queries") {
  auto program = load("logic.lsd");
  {
    Engine e(program, *program.find_query("member_present"));
    REQUIRE(e.run() == Status::success);
    CHECK(e.solution().solids.empty());
    for (core::CellId c = 0; c < e.spec().cell_count(); ++c) CHECK_FALSE(e.spec().cell(c).alive);
  }
  CHECK(run_query(program, "member_absent") == Status::exhausted);
  CHECK(run_query(program, "not_member_empty") == Status::success);
  CHECK(run_query(program, "not_member_present") == Status::exhausted);
  CHECK(run_query(program, "open_lock1") == Status::success);
  CHECK(run_query(program, "not_open_lock2") == Status::success);
  Engine e(program, *program.find_query("member_enum"));
  auto sols = e.enumerate(10);
  REQUIRE(sols.size() == 2);
  CHECK(core::to_string(sols[0].bindings.at("X")) == "1");
  CHECK(core::to_string(sols[1].bindings.at("X")) == "2");
}

TEST_CASE("negation reports floundering") {
  auto source = std::string(R"(
design Member(X: simple, L: simple) {
  case { •(X, _) -> L; }
  case { •(_, T) -> L; call Member(X, T); }
}
query q { not call Member(Y, [1]); }
)");
  auto result = core::compile(text::parse(source));
  REQUIRE(result.ok());
  Engine e(result.program, result.program.queries[0]);
  engine::VectorSink sink;
  e.set_sink(&sink);
  CHECK(e.run() == Status::exhausted);
  auto enter = std::find_if(sink.events.begin(), sink.events.end(),
                            [](const auto& ev) { return ev.kind == "negation_enter"; });
  REQUIRE(enter != sink.events.end());
  CHECK(enter->payload["floundering"] == true);
}

TEST_CASE("locks build") {
  auto program = load("lock.lsd");
  for (const char* q : {"lock1", "lock2", "lock_null"}) {
    Engine e(program, *program.find_query(q));
    CAPTURE(q);
    REQUIRE(e.run() == Status::success);
    CHECK(e.solution().solids.size() == 1);
  }
  Engine e(program, *program.find_query("lock1"));
  e.run();
  auto id = e.solution().solids[0].instance;
  auto values = e.model().values(id);
  auto parts = solid::leaves(*e.model().instance(id).shape, values);
  REQUIRE(parts.size() == 6);
  CHECK(parts[0].family->name == "LockFront");
  CHECK(parts[1].family->name == "MasterChamber");
  CHECK(parts[2].family->name == "PinChamber");
  CHECK(parts[2].values[1] == 2);
  CHECK(parts[3].values[1] == 1);
  CHECK(parts[5].family->name == "LockBack");
}

TEST_CASE("masterkey query matches the oracle") {
  auto program = load("masterkey_query.lsd");
  Engine e(program, *program.find_query("masterkey"));
  auto sols = e.enumerate(1000);
  const masterkey::KeyLockMatrix table{{1, 1}, {1, 0}, {0, 1}};
  std::set<std::vector<masterkey::BittingVector>> engine_keys;
  for (const auto& s : sols) {
    CHECK(s.solids.size() == 5);
    masterkey::Implementation impl{
        {ints(s.bindings.at("M")), ints(s.bindings.at("K1")), ints(s.bindings.at("K2"))},
        {array_of(s.bindings.at("A1")), array_of(s.bindings.at("A2"))}};
    CHECK(masterkey::check_implementation(impl, table));
    engine_keys.insert(impl.vectors);
  }
  CHECK(engine_keys.size() == sols.size());
  std::set<std::vector<masterkey::BittingVector>> oracle_keys;
  for (const auto& impl :
       masterkey::enumerate_solutions(table, {{2, 2, 2, 2}}, {1, 2, 1, 2}, 100000)) {
    oracle_keys.insert(impl.vectors);
  }
  CHECK(engine_keys == oracle_keys);
  MESSAGE(sols.size(), " solutions");
}

TEST_CASE("trace replay reproduces the final state") {
  auto check = [](const core::Program& program, const std::string& query, std::size_t solutions) {
    Engine e(program, *program.find_query(query));
    engine::VectorSink sink;
    e.set_sink(&sink);
    e.enumerate(solutions);
    engine::Replayer r(program, *program.find_query(query));
    r.apply_all(sink.events);
    CHECK(r.engine().spec().hash() == e.spec().hash());
    CHECK(r.engine().spec() == e.spec());
    CHECK(r.engine().model() == e.model());
  };
  auto key = load("key.lsd");
  check(key, "key4", 1);
  check(key, "key2free", 3);
  auto logic = load("logic.lsd");
  check(logic, "not_open_lock2", 1);
  check(logic, "member_absent", 1);
  auto master = load("masterkey_query.lsd");
  check(master, "masterkey", 2);
}

TEST_CASE("identical runs give identical traces") {
  auto program = load("key.lsd");
  auto trace = [&] {
    Engine e(program, *program.find_query("key2free"));
    engine::VectorSink sink;
    e.set_sink(&sink);
    e.enumerate(4);
    std::string out;
    for (const auto& ev : sink.events) out += engine::to_json(ev).dump() + "\n";
    return out;
  };
  CHECK(trace() == trace());
}

TEST_CASE("mark, random rules, undo restores the state") {
  std::vector<std::pair<core::Program, std::string>> cases;
  cases.emplace_back(load("key.lsd"), "key4");
  cases.emplace_back(load("key.lsd"), "key2free");
  cases.emplace_back(load("lock.lsd"), "lock1");
  cases.emplace_back(load("logic.lsd"), "member_present");
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& [program, query] = cases[trial % cases.size()];
    Engine e(program, *program.find_query(query));
    std::size_t warmup = rng() % 40;
    for (std::size_t i = 0; i < warmup && e.step(); ++i) {
    }
    if (e.status() != Status::running) continue;
    Engine copy = e;
    auto m = e.mark();
    std::size_t k = 1 + rng() % 12;
    for (std::size_t i = 0; i < k && e.status() == Status::running; ++i) {
      auto rules = e.applicable();
      if (rules.empty()) break;
      e.apply(rules[rng() % rules.size()]);
    }
    e.undo_to(m);
    CHECK(e == copy);
    CHECK(e.spec().audit().empty());
  }
}
