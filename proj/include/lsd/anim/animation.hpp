#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lsd/solid/solid_model.hpp"

namespace lsd::anim {

using lsd::Rational;

enum class Kind { linear, snap };

// An n-ary animation over [t_start, t_end].
struct Animation {
  Kind kind = Kind::linear;
  std::size_t n = 0;
  Rational t_start{0};
  Rational t_end{1};

  std::vector<Rational> evaluate(const std::vector<Rational>& x, const std::vector<Rational>& y,
                                 const Rational& t) const;
  bool operator==(const Animation&) const = default;
};

// Both throw std::invalid_argument unless ts < te.
Animation linear_animation(std::size_t n, Rational ts = 0, Rational te = 1);
Animation snap_animation(std::size_t n, Rational ts = 0, Rational te = 1);

struct FramePlan {
  Animation animation;
  const solid::Operation* operation = nullptr;
  std::vector<solid::InstanceId> operands;
  std::vector<solid::Shape> shapes;  // one per operand
  std::vector<std::string> edges;    // selector argument per operand
  std::vector<Rational> x;
  std::vector<Rational> y;
  std::size_t sample_count = 32;
  bool reversed = false;

  bool operator==(const FramePlan&) const = default;
};

// Builds the plan from a completed application; x and y come from the
// operation result.
FramePlan plan_from_result(const solid::SolidModel& model, const solid::Operation& op,
                           std::span<const solid::InstanceId> operands,
                           std::span<const std::string> edges,
                           const solid::OperationResult& result, Kind kind = Kind::linear);

// Applies the operation to a copy of the model. Throws std::runtime_error
// when the constraint has no solution under the policy.
FramePlan plan_bond_animation(const solid::SolidModel& model, const solid::Operation& op,
                              std::span<const solid::InstanceId> operands,
                              std::span<const std::string> edges, solid::AnchorPolicy policy,
                              Kind kind = Kind::linear);

Rational frame_time(const FramePlan& plan, std::size_t index, std::size_t count);
std::vector<Rational> params_at(const FramePlan& plan, const Rational& t);
std::vector<Rational> operand_params(const FramePlan& plan, const std::vector<Rational>& all,
                                     std::size_t operand);

struct Validation {
  bool ok = true;
  Rational t{0};
  std::size_t operand = 0;
  std::string message;
};

Validation validate(const FramePlan& plan, std::size_t samples = 32);

FramePlan reverse(const FramePlan& plan);

struct Canvas {
  int width = 640;
  int height = 320;
  Rational scale{20};     // pixels per unit
  Rational origin_x{-2};  // design coordinates at the top-left corner
  Rational origin_y{-6};
};

std::string svg_document(const std::vector<solid::Polygon>& polygons,
                         const std::vector<std::vector<solid::Point>>& lines, const Canvas& canvas);

std::vector<std::string> render_frames(const FramePlan& plan, std::size_t count,
                                       const Canvas& canvas);

// frame-0000.svg, frame-0001.svg, ...
void write_frames(const std::filesystem::path& dir, const std::vector<std::string>& frames);

}  // namespace lsd::anim
