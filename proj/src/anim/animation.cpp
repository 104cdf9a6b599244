#include "lsd/anim/animation.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lsd::anim {

std::vector<Rational> Animation::evaluate(const std::vector<Rational>& x,
                                          const std::vector<Rational>& y, const Rational& t) const {
  if (x.size() != n || y.size() != n) throw std::invalid_argument("animation arity mismatch");
  Rational s = t - t_start;
  Rational span = t_end - t_start;
  Rational factor = kind == Kind::linear ? s / span : s * (s + 1) / (span * (span + 1));
  std::vector<Rational> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(x[i] + factor * (y[i] - x[i]));
  return out;
}

namespace {

Animation make(Kind kind, std::size_t n, Rational ts, Rational te) {
  if (!(ts < te)) throw std::invalid_argument("animation interval requires t_start < t_end");
  return Animation{kind, n, std::move(ts), std::move(te)};
}

}  // namespace

Animation linear_animation(std::size_t n, Rational ts, Rational te) {
  return make(Kind::linear, n, std::move(ts), std::move(te));
}

Animation snap_animation(std::size_t n, Rational ts, Rational te) {
  return make(Kind::snap, n, std::move(ts), std::move(te));
}

FramePlan plan_from_result(const solid::SolidModel& model, const solid::Operation& op,
                           std::span<const solid::InstanceId> operands,
                           std::span<const std::string> edges,
                           const solid::OperationResult& result, Kind kind) {
  FramePlan plan;
  plan.animation = make(kind, result.before.size(), 0, 1);
  plan.operation = &op;
  plan.operands.assign(operands.begin(), operands.end());
  for (auto id : operands) plan.shapes.push_back(model.instance(id).shape);
  plan.edges.assign(edges.begin(), edges.end());
  plan.x = result.before;
  plan.y = result.after;
  return plan;
}

FramePlan plan_bond_animation(const solid::SolidModel& model, const solid::Operation& op,
                              std::span<const solid::InstanceId> operands,
                              std::span<const std::string> edges, solid::AnchorPolicy policy,
                              Kind kind) {
  solid::SolidModel scratch = model;
  auto result = scratch.apply_operation(op, operands, edges, policy);
  if (result.status != solid::OperationResult::Status::ok) {
    throw std::runtime_error("cannot plan " + op.name + ": " + result.message);
  }
  return plan_from_result(model, op, operands, edges, result, kind);
}

Rational frame_time(const FramePlan& plan, std::size_t index, std::size_t count) {
  const auto& a = plan.animation;
  if (count < 2) return a.t_start;
  return a.t_start + (a.t_end - a.t_start) * Rational(static_cast<long long>(index)) /
                         Rational(static_cast<long long>(count - 1));
}

std::vector<Rational> params_at(const FramePlan& plan, const Rational& t) {
  const auto& a = plan.animation;
  if (plan.reversed) return a.evaluate(plan.y, plan.x, a.t_start + a.t_end - t);
  return a.evaluate(plan.x, plan.y, t);
}

std::vector<Rational> operand_params(const FramePlan& plan, const std::vector<Rational>& all,
                                     std::size_t operand) {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < operand; ++i) offset += plan.shapes[i]->param_count;
  auto first = all.begin() + static_cast<std::ptrdiff_t>(offset);
  return {first, first + static_cast<std::ptrdiff_t>(plan.shapes[operand]->param_count)};
}

namespace {

bool terminal_satisfies(const FramePlan& plan, const std::vector<Rational>& terminal) {
  if (!plan.operation || plan.shapes.size() != plan.operation->arity()) return true;
  solid::SelectedValues selected;
  for (std::size_t i = 0; i < plan.shapes.size(); ++i) {
    auto values = operand_params(plan, terminal, i);
    std::vector<solid::ParamExpr> exprs(values.begin(), values.end());
    if (plan.operation->selectors[i] == solid::SelectorKind::centre) {
      auto c = solid::centre_of(*plan.shapes[i], exprs);
      selected.emplace_back(c.begin(), c.end());
    } else {
      auto e = solid::edge_of(*plan.shapes[i], exprs, plan.edges.at(i));
      selected.emplace_back(e.begin(), e.end());
    }
  }
  for (const auto& c : plan.operation->constraint(selected)) {
    const auto& l = c.lhs.constant();
    const auto& r = c.rhs.constant();
    if (c.kind == solid::LinearConstraint::Kind::equal ? l != r : l > r) return false;
  }
  return true;
}

}  // namespace

Validation validate(const FramePlan& plan, std::size_t samples) {
  Validation out;
  const auto& a = plan.animation;
  auto terminal = params_at(plan, a.t_end);
  if (!terminal_satisfies(plan, terminal)) {
    return {false, a.t_end, 0, "terminal parameters violate the operation constraint"};
  }
  solid::DesignSpace space;
  for (std::size_t s = 0; s < std::max<std::size_t>(samples, 2); ++s) {
    Rational t = frame_time(plan, s, std::max<std::size_t>(samples, 2));
    auto all = params_at(plan, t);
    for (std::size_t i = 0; i < plan.shapes.size(); ++i) {
      if (!solid::nonempty(*plan.shapes[i], operand_params(plan, all, i), space)) {
        return {false, t, i, "operand " + std::to_string(i) + " is empty"};
      }
    }
  }
  return out;
}

FramePlan reverse(const FramePlan& plan) {
  FramePlan out = plan;
  std::swap(out.x, out.y);
  out.reversed = !plan.reversed;
  return out;
}

namespace {

std::string px(const Rational& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", to_double(v));
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string points(const std::vector<solid::Point>& pts, const Canvas& canvas) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ' ';
    out += px((p.x - canvas.origin_x) * canvas.scale) + "," + px((p.y - canvas.origin_y) * canvas.scale);
  }
  return out;
}

}  // namespace

std::string svg_document(const std::vector<solid::Polygon>& polygons,
                         const std::vector<std::vector<solid::Point>>& lines, const Canvas& canvas) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << canvas.width
     << "\" height=\"" << canvas.height << "\">\n";
  for (const auto& poly : polygons) {
    os << "  <polygon points=\"" << points(poly, canvas)
       << "\" fill=\"#c8c8c8\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
  for (const auto& line : lines) {
    os << "  <polyline points=\"" << points(line, canvas)
       << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::string> render_frames(const FramePlan& plan, std::size_t count,
                                       const Canvas& canvas) {
  std::vector<std::string> frames;
  for (std::size_t f = 0; f < count; ++f) {
    auto all = params_at(plan, frame_time(plan, f, count));
    std::vector<solid::Polygon> polys;
    std::vector<std::vector<solid::Point>> lines;
    for (std::size_t i = 0; i < plan.shapes.size(); ++i) {
      auto values = operand_params(plan, all, i);
      for (auto& p : solid::outline(*plan.shapes[i], values)) polys.push_back(std::move(p));
      for (auto& l : solid::decorations(*plan.shapes[i], values)) lines.push_back(std::move(l));
    }
    frames.push_back(svg_document(polys, lines, canvas));
  }
  return frames;
}

void write_frames(const std::filesystem::path& dir, const std::vector<std::string>& frames) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame-%04zu.svg", i);
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << frames[i];
  }
}

}  // namespace lsd::anim
