#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "lsd/core/program.hpp"
#include "lsd/engine/engine.hpp"
#include "support/oracles.hpp"

using namespace lsd;
using engine::Engine;
using engine::Rule;
using namespace lsd::oracle;

namespace {

bool simplify(Engine& e) {
  while (e.status() == engine::Status::running) {
    auto rule = e.next_rule();
    if (!rule || (rule->kind != Rule::Kind::merge && rule->kind != Rule::Kind::remove)) break;
    e.apply(*rule);
  }
  return e.status() == engine::Status::running;
}

core::Program empty_program() {
  core::Program p;
  p.registry = &solid::desk_registry();
  return p;
}

}  // namespace

TEST_CASE("simplify agrees with a reference unifier") {
  std::mt19937 rng(99);
  auto program = empty_program();
  int successes = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int vars = 1 + static_cast<int>(rng() % 4);
    T a = random_term(rng, 4, vars), b = random_term(rng, 4, vars);

    Unifier ref;
    int na = ref.node(a), nb = ref.node(b);
    bool ref_ok = ref.unify(na, nb);

    Encoded enc;
    auto root = encode(enc, a);
    encode(enc, b, root);
    Engine e(program, enc.spec, solid::SolidModel(solid::desk_registry()));
    bool ok = simplify(e);
    CHECK(ok == ref_ok);
    if (!ok || !ref_ok) continue;
    ++successes;
    for (auto [v, net] : enc.vars) {
      for (auto [w, net2] : enc.vars) {
        bool same_ref = ref.find(ref.var_node(v)) == ref.find(ref.var_node(w));
        CHECK((e.spec().find(net) == e.spec().find(net2)) == same_ref);
      }
    }
  }
  CHECK(successes > 50);
}

TEST_CASE("simplify is confluent on small specifications") {
  std::mt19937 rng(5);
  auto program = empty_program();
  for (int trial = 0; trial < 150; ++trial) {
    T a = random_term(rng, 2, 2), b = random_term(rng, 2, 2);
    Encoded enc;
    auto root = encode(enc, a);
    encode(enc, b, root);
    std::size_t cells = enc.spec.cell_count();
    if (cells > 6) continue;

    std::set<std::string> outcomes;
    std::function<void(Engine&)> explore = [&](Engine& e) {
      std::vector<Rule> rules;
      for (const auto& r : e.applicable()) {
        if (r.kind == Rule::Kind::merge || r.kind == Rule::Kind::remove) rules.push_back(r);
      }
      if (e.status() != engine::Status::running) {
        outcomes.insert("failure");
        return;
      }
      if (rules.empty()) {
        std::string dump;
        for (auto [v, net] : enc.vars)
          for (auto [w, net2] : enc.vars)
            dump += e.spec().find(net) == e.spec().find(net2) ? '1' : '0';
        std::multiset<std::string> live;
        for (core::CellId c = 0; c < e.spec().cell_count(); ++c) {
          if (e.spec().cell(c).alive) live.insert(std::get<core::FunctionCell>(e.spec().cell(c).body).name);
        }
        for (const auto& n : live) dump += "," + n;
        outcomes.insert(dump);
        return;
      }
      for (const auto& r : rules) {
        auto m = e.mark();
        e.apply(r);
        explore(e);
        e.undo_to(m);
      }
    };
    Engine e(program, enc.spec, solid::SolidModel(solid::desk_registry()));
    explore(e);
    CHECK(outcomes.size() == 1);
  }
}
