#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsd/solid/constraint_store.hpp"
#include "lsd/solid/family.hpp"
#include "lsd/solid/operation.hpp"
#include "lsd/solid/shape.hpp"

namespace lsd::solid {

using InstanceId = std::size_t;

struct SolidInstance {
  InstanceId id = 0;
  Shape shape;
  std::vector<ParamExpr> params;
  std::vector<std::string> open_edges;
  std::vector<InstanceId> children;
  InstanceId min_leaf = 0;  // oldest primitive inside; drives default anchoring
  std::string label;

  bool has_open_edge(std::string_view edge) const;
  bool operator==(const SolidInstance& other) const;
};

enum class AnchorPolicy { anchor_earlier, anchor_first, anchor_second, midpoint };

struct OperationResult {
  enum class Status { ok, interface_error, inconsistent } status = Status::ok;
  std::optional<InstanceId> instance;
  std::string message;
  std::vector<Rational> before;  // operand parameters before the constraint
  std::vector<Rational> after;   // and after, free variables at their hints
};

struct UnboundParameter : std::domain_error {
  using std::domain_error::domain_error;
};

// Instance table plus constraint store. Instances are immutable once
// created; operations append composites that refer to their operands.
class SolidModel {
 public:
  struct RawMark {
    ConstraintStore::Mark store = 0;
    std::size_t instances = 0;
    bool operator==(const RawMark&) const = default;
  };
  using Mark = std::size_t;  // depth in the snapshot stack

  explicit SolidModel(const Registry& registry = desk_registry()) : registry_(&registry) {}

  const Registry& registry() const { return *registry_; }
  const ConstraintStore& store() const { return store_; }
  ConstraintStore& store() { return store_; }

  // Fixed arguments are constants, absent ones become fresh variables.
  // `hints` overrides the family's default hint per parameter.
  InstanceId create(const SolidFamily& family, std::span<const std::optional<Rational>> args,
                    std::span<const std::optional<Rational>> hints = {});
  InstanceId create(std::string_view family, std::span<const std::optional<Rational>> args,
                    std::span<const std::optional<Rational>> hints = {});

  const SolidInstance& instance(InstanceId id) const { return instances_.at(id); }
  std::size_t instance_count() const { return instances_.size(); }

  OperationResult apply_operation(const Operation& op, std::span<const InstanceId> operands,
                                  std::span<const std::string> edges,
                                  AnchorPolicy policy = AnchorPolicy::anchor_earlier);

  // Bonds two open edges of the same instance.
  OperationResult close_edges(InstanceId id, const std::string& a, const std::string& b);

  std::array<ParamExpr, 4> edge(InstanceId id, std::string_view edge) const;

  // Free variables take their hints.
  std::vector<Rational> values(InstanceId id) const;
  bool is_ground(InstanceId id) const;
  // Fixes each free variable of the instance at its hint.
  // false when that contradicts a deferred inequality (the store is then
  // left as it was).
  bool ground_free_variables(InstanceId id);

  // Throws UnboundParameter unless every parameter is ground.
  bool membership(InstanceId id, const Point& point) const;
  bool nonempty(InstanceId id) const;
  std::vector<Polygon> outline(InstanceId id) const;
  std::vector<std::vector<Point>> decorations(InstanceId id) const;

  RawMark raw_mark() const { return {store_.mark(), instances_.size()}; }
  void restore(const RawMark& mark);

  Mark snapshot();
  // LIFO: rolling back or committing anything but the innermost live mark
  // throws std::logic_error.
  void rollback(Mark mark);
  void commit(Mark mark);
  std::size_t live_marks() const { return marks_.size(); }

  // Deep state comparison (store and instance table; marks excluded).
  bool operator==(const SolidModel& other) const;

 private:
  std::vector<VarId> free_vars_of(InstanceId id) const;
  std::vector<ParamExpr> select(const Operation& op, std::size_t index, InstanceId id,
                                const std::string& edge, OperationResult& result) const;
  std::vector<Rational> values_of(std::span<const InstanceId> ids) const;
  InstanceId add_instance(SolidInstance inst);

  const Registry* registry_;
  ConstraintStore store_;
  std::vector<SolidInstance> instances_;
  std::vector<RawMark> marks_;
};

}  // namespace lsd::solid
