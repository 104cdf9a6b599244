#include <sstream>

#include "lsd/cli/cli.hpp"
#include "lsd/text/parser.hpp"

namespace lsd::cli {

core::Program load_program(const std::vector<std::string>& paths) {
  if (paths.empty()) throw UsageError("no program given");
  text::Program merged;
  for (const auto& path : paths) {
    text::Program part;
    try {
      part = text::parse_file(path);
    } catch (const text::SyntaxError& e) {
      throw UsageError(path + ":" + e.what());
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    for (auto& d : part.designs) merged.designs.push_back(std::move(d));
    for (auto& q : part.queries) merged.queries.push_back(std::move(q));
  }
  auto result = core::compile(merged);
  if (!result.ok()) {
    std::ostringstream msg;
    for (std::size_t i = 0; i < result.diagnostics.size(); ++i) {
      msg << (i ? "\n" : "") << result.diagnostics[i].to_string();
    }
    throw UsageError(msg.str());
  }
  return std::move(result.program);
}

const core::Query& select_query(const core::Program& program, const std::string& name) {
  if (name.empty()) {
    if (program.queries.size() == 1) return program.queries.front();
    throw UsageError("program has " + std::to_string(program.queries.size()) +
                     " queries; pick one with --query");
  }
  const auto* q = program.find_query(name);
  if (!q) throw UsageError("no query named '" + name + "'");
  return *q;
}

engine::Options engine_options(const RunConfig& config) {
  engine::Options o;
  o.budget = config.step_budget;
  o.validate_samples = config.samples;
  if (config.animation == "linear") {
    o.animation = anim::Kind::linear;
  } else if (config.animation == "snap") {
    o.animation = anim::Kind::snap;
  } else {
    throw UsageError("unknown animation '" + config.animation + "'");
  }
  using solid::AnchorPolicy;
  if (config.anchor == "earlier") {
    o.anchor = AnchorPolicy::anchor_earlier;
  } else if (config.anchor == "first") {
    o.anchor = AnchorPolicy::anchor_first;
  } else if (config.anchor == "second") {
    o.anchor = AnchorPolicy::anchor_second;
  } else if (config.anchor == "midpoint") {
    o.anchor = AnchorPolicy::midpoint;
  } else {
    throw UsageError("unknown anchoring '" + config.anchor + "'");
  }
  return o;
}

}  // namespace lsd::cli
