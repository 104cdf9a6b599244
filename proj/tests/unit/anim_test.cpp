#include <doctest.h>

#include <random>

#include "lsd/anim/animation.hpp"

using lsd::Rational;
using namespace lsd::anim;
using namespace lsd::solid;

namespace {

using Args = std::vector<std::optional<Rational>>;

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> num(-1000, 1000);
  std::uniform_int_distribution<long long> den(1, 97);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("interpolants hit both boundaries") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> x, y;
    for (int i = 0; i < 5; ++i) {
      x.push_back(random_rational(rng));
      y.push_back(random_rational(rng));
    }
    Rational ts = random_rational(rng);
    Rational te = ts + Rational(1 + trial % 4, 3);
    for (auto a : {linear_animation(5, ts, te), snap_animation(5, ts, te)}) {
      CHECK(a.evaluate(x, y, ts) == x);
      CHECK(a.evaluate(x, y, te) == y);
    }
  }
}

TEST_CASE("snap evaluates the quoted formula") {
  auto a = snap_animation(1, 0, 1);
  std::vector<Rational> x{0}, y{1};
  CHECK(a.evaluate(x, y, Rational(1, 2))[0] == Rational(3, 8));
  auto l = linear_animation(1, 0, 1);
  CHECK(l.evaluate(x, y, Rational(1, 2))[0] == Rational(1, 2));
  CHECK_THROWS_AS(linear_animation(1, 1, 1), std::invalid_argument);
}

TEST_CASE("midpoint plan moves both squares to meet halfway") {
  SolidModel m;
  Args s1{Rational(0), Rational(0), Rational(0), Rational(2)};
  Args s2{Rational(6), Rational(3), Rational(6), Rational(1)};
  std::vector<std::optional<Rational>> none(4);
  Args free(4);
  auto a = m.create("Square", free, s1);
  auto b = m.create("Square", free, s2);
  std::vector<InstanceId> ops{a, b};
  std::vector<std::string> edges{"e", "e"};
  auto plan = plan_bond_animation(m, bonding2d(), ops, edges, AnchorPolicy::midpoint);
  std::vector<Rational> x{0, 0, 0, 2, 6, 3, 6, 1};
  CHECK(plan.x == x);
  std::vector<Rational> mid{(x[0] + x[6]) / 2, (x[1] + x[7]) / 2, (x[2] + x[4]) / 2, (x[3] + x[5]) / 2};
  std::vector<Rational> expected{mid[0], mid[1], mid[2], mid[3], mid[2], mid[3], mid[0], mid[1]};
  CHECK(plan.y == expected);
  CHECK(validate(plan, 32).ok);
  // The model itself is untouched by planning.
  CHECK(m.values(a) == std::vector<Rational>{0, 0, 0, 2});
}

TEST_CASE("anchor_first keeps the first square") {
  SolidModel m;
  Args free(4);
  Args s1{Rational(0), Rational(0), Rational(0), Rational(2)};
  Args s2{Rational(6), Rational(3), Rational(6), Rational(1)};
  std::vector<InstanceId> ops{m.create("Square", free, s1), m.create("Square", free, s2)};
  std::vector<std::string> edges{"e", "e"};
  auto plan = plan_bond_animation(m, bonding2d(), ops, edges, AnchorPolicy::anchor_first);
  std::vector<Rational> expected{0, 0, 0, 2, 0, 2, 0, 0};
  CHECK(plan.y == expected);
  auto second = plan_bond_animation(m, bonding2d(), ops, edges, AnchorPolicy::anchor_second);
  std::vector<Rational> expected2{6, 1, 6, 3, 6, 3, 6, 1};
  CHECK(second.y == expected2);
}

TEST_CASE("validate catches a square collapsing mid-flight") {
  SolidModel m;
  Args s1{Rational(0), Rational(0), Rational(0), Rational(2)};
  Args s2{Rational(2), Rational(0), Rational(2), Rational(2)};
  std::vector<InstanceId> ops{m.create("Square", s1), m.create("Square", s2)};
  FramePlan plan;
  plan.animation = linear_animation(8);
  plan.operation = &bonding2d();
  plan.operands = ops;
  for (auto id : ops) plan.shapes.push_back(m.instance(id).shape);
  plan.edges = {"e", "e"};
  // Second square flips orientation, passing through zero area at t = 1/2.
  plan.x = {0, 0, 0, 2, 2, 0, 2, 2};
  plan.y = {0, 0, 0, 2, 0, 2, 0, 0};
  plan.y[4] = 0;
  auto v = validate(plan, 33);
  CHECK_FALSE(v.ok);
  CHECK(v.operand == 1);
}

TEST_CASE("reverse is an exact time reversal") {
  SolidModel m;
  Args free(4);
  Args s1{Rational(0), Rational(0), Rational(0), Rational(2)};
  Args s2{Rational(6), Rational(3), Rational(6), Rational(1)};
  std::vector<InstanceId> ops{m.create("Square", free, s1), m.create("Square", free, s2)};
  std::vector<std::string> edges{"e", "e"};
  auto plan = plan_bond_animation(m, bonding2d(), ops, edges, AnchorPolicy::midpoint, Kind::snap);
  CHECK(reverse(reverse(plan)) == plan);
  auto fwd = render_frames(plan, 9, {});
  auto back = render_frames(reverse(plan), 9, {});
  REQUIRE(fwd.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(back[i] == fwd[8 - i]);
}
