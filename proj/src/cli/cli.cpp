#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lsd/cli/cli.hpp"
#include "lsd/masterkey/masterkey.hpp"
#include "lsd/text/parser.hpp"

namespace lsd::cli {

namespace {

using nlohmann::json;

class FileSink : public engine::TraceSink {
 public:
  explicit FileSink(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write trace '" + path + "'");
  }
  void emit(const engine::Event& event) override {
    out_ << engine::to_json(event).dump() << '\n';
    if (!out_) throw std::runtime_error("trace write failed");
  }

 private:
  std::ofstream out_;
};

std::string leaf_names(const engine::Engine& e, solid::InstanceId id) {
  const auto& model = e.model();
  auto values = model.values(id);
  std::string out;
  for (const auto& leaf : solid::leaves(*model.instance(id).shape, values)) {
    out += (out.empty() ? "" : " ") + leaf.family->name;
  }
  return out;
}

json solution_json(const engine::Engine& e, const engine::Solution& s) {
  json bindings = json::object();
  for (const auto& [name, term] : s.bindings) bindings[name] = core::to_string(term);
  json solids = json::array();
  for (const auto& solid : s.solids) {
    solids.push_back({{"cell", solid.cell},
                      {"instance", solid.instance},
                      {"parts", leaf_names(e, solid.instance)},
                      {"outline", engine::polygons_json(solid.outline)}});
  }
  return {{"bindings", bindings}, {"solids", solids}};
}

void print_solution(std::ostream& out, const engine::Engine& e, const engine::Solution& s,
                    std::size_t index, bool as_json) {
  if (as_json) {
    auto j = solution_json(e, s);
    j["solution"] = index;
    out << j.dump() << '\n';
    return;
  }
  out << "solution " << index << '\n';
  for (const auto& [name, term] : s.bindings) out << "  " << name << " = " << core::to_string(term) << '\n';
  for (const auto& solid : s.solids) {
    out << "  solid #" << solid.instance << " (cell " << solid.cell << "): "
        << leaf_names(e, solid.instance) << '\n';
  }
  if (s.solids.empty()) out << "  no solids\n";
}

int exit_for(engine::Status status) {
  switch (status) {
    case engine::Status::success:
      return kOk;
    case engine::Status::budget_exceeded:
      return kBudget;
    default:
      return kNoSolution;
  }
}

void attach_frames(engine::Engine& e, const RunConfig& config) {
  if (config.frames_dir.empty()) return;
  std::filesystem::create_directories(config.frames_dir);
  auto dir = std::filesystem::path(config.frames_dir);
  auto count = config.samples;
  e.set_frame_observer([dir, count](const engine::Event& ev, const anim::FramePlan& plan) {
    char name[32];
    std::snprintf(name, sizeof name, "step-%05zu", ev.step);
    anim::write_frames(dir / name, anim::render_frames(plan, count, anim::Canvas{}));
  });
}

int execute(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  auto program = load_program(config.programs);
  const auto& query = select_query(program, config.query);
  auto options = engine_options(config);

  if (config.mode == "serve") {
    Session session(program, query, options, config.step_budget);
    if (config.port == 0) {
      serve_streams(session, in, out);
      return kOk;
    }
    return serve_tcp(session, config.port, config.once, err);
  }

  engine::Engine e(program, query, options);
  std::unique_ptr<FileSink> sink;
  if (!config.trace_path.empty()) {
    sink = std::make_unique<FileSink>(config.trace_path);
    e.set_sink(sink.get());
  }
  attach_frames(e, config);

  if (config.mode == "step") {
    engine::VectorSink echo;
    struct Tee : engine::TraceSink {
      engine::TraceSink* a;
      engine::TraceSink* b;
      void emit(const engine::Event& ev) override {
        if (a) a->emit(ev);
        b->emit(ev);
      }
    } tee;
    tee.a = sink.get();
    tee.b = &echo;
    e.set_sink(&tee);
    out << "commands: <enter>/s step, r run, b backtrack, q quit\n";
    std::string line;
    while (std::getline(in, line)) {
      if (line == "q") break;
      if (line == "r") {
        e.run();
      } else if (line == "b") {
        e.force_backtrack();
        e.step();
      } else {
        e.step();
      }
      for (const auto& ev : echo.events) out << engine::to_json(ev).dump() << '\n';
      echo.events.clear();
      out << "[" << engine::to_string(e.status()) << "]\n";
      if (e.status() == engine::Status::exhausted) break;
    }
    if (e.status() == engine::Status::success) print_solution(out, e, e.solution(), 1, config.json);
    return exit_for(e.status());
  }

  if (config.mode == "enumerate") {
    std::size_t found = 0;
    engine::Status status = engine::Status::running;
    while (found < config.max_solutions) {
      status = e.run();
      if (status != engine::Status::success) break;
      print_solution(out, e, e.solution(), ++found, config.json);
      if (found < config.max_solutions) e.force_backtrack();
    }
    if (!config.json) out << found << " solution(s), " << e.step_count() << " steps\n";
    if (status == engine::Status::budget_exceeded) return kBudget;
    return found > 0 ? kOk : kNoSolution;
  }

  auto status = e.run();
  if (!config.json) out << engine::to_string(status) << " after " << e.step_count() << " steps\n";
  if (status == engine::Status::success) print_solution(out, e, e.solution(), 1, config.json);
  return exit_for(status);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return in;
}

int masterkey_check(const std::string& matrix_path, const std::string& impl_path,
                    std::ostream& out) {
  auto mf = open_input(matrix_path);
  auto inf = open_input(impl_path);
  masterkey::MatrixFile matrix;
  masterkey::Implementation impl;
  try {
    matrix = masterkey::read_matrix(mf);
    impl = masterkey::read_implementation(inf);
  } catch (const masterkey::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& v : impl.vectors) {
    if (v.size() != matrix.system.k()) throw UsageError("key chamber count differs from the system");
  }
  for (const auto& a : impl.arrays) {
    if (a.size() != matrix.system.k()) throw UsageError("lock chamber count differs from the system");
  }
  bool ok;
  try {
    ok = masterkey::check_implementation(impl, matrix.x);
  } catch (const masterkey::DimensionError& e) {
    throw UsageError(e.what());
  }
  out << (ok ? "implementation matches the key-lock matrix\n"
             : "implementation does not match the key-lock matrix\n");
  return ok ? kOk : kNoSolution;
}

int masterkey_solve(const std::string& matrix_path, std::size_t limit, std::ostream& out) {
  auto mf = open_input(matrix_path);
  masterkey::MatrixFile matrix;
  try {
    matrix = masterkey::read_matrix(mf);
  } catch (const masterkey::ParseError& e) {
    throw UsageError(e.what());
  }
  std::vector<masterkey::Implementation> all;
  try {
    all = masterkey::enumerate_solutions(matrix.x, matrix.system, matrix.master, limit);
  } catch (const masterkey::DimensionError& e) {
    throw UsageError(e.what());
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i) out << '\n';
    masterkey::write_implementation(out, all[i]);
  }
  return all.empty() ? kNoSolution : kOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Run and inspect LSD design programs", "lsd"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_run_options = [&config](CLI::App* sub) {
    sub->add_option("programs", config.programs, ".lsd files, read as one program")->required();
    sub->add_option("-q,--query", config.query, "query name (optional when there is only one)");
    sub->add_option("--budget", config.step_budget, "step budget")->capture_default_str();
    sub->add_option("--trace", config.trace_path, "write the JSON-lines trace here");
    sub->add_option("--frames", config.frames_dir, "write SVG frames of each bond here");
    sub->add_option("--samples", config.samples, "frames per bond and validation samples")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--animation", config.animation, "linear or snap")
        ->check(CLI::IsMember({"linear", "snap"}))
        ->capture_default_str();
    sub->add_option("--anchor", config.anchor, "earlier, first, second or midpoint")
        ->check(CLI::IsMember({"earlier", "first", "second", "midpoint"}))
        ->capture_default_str();
    sub->add_flag("--json", config.json, "print solutions as JSON lines");
  };

  auto* run = app.add_subcommand("run", "run a query to its first solution");
  add_run_options(run);
  auto* enumerate = app.add_subcommand("enumerate", "list solutions by forced backtracking");
  add_run_options(enumerate);
  enumerate->add_option("-n,--max", config.max_solutions, "solution limit")->capture_default_str();
  auto* step = app.add_subcommand("step", "single-step a query from standard input");
  add_run_options(step);
  auto* serve = app.add_subcommand("serve", "serve the stepper protocol");
  add_run_options(serve);
  serve->add_option("--port", config.port, "TCP port on 127.0.0.1; 0 uses standard streams")
      ->capture_default_str();
  serve->add_flag("--once", config.once, "exit after the first client disconnects");

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "parse and validate programs");
  check->add_option("programs", check_files)->required();
  std::string fmt_file;
  auto* fmt = app.add_subcommand("fmt", "print a program in canonical form");
  fmt->add_option("program", fmt_file)->required();

  std::string matrix_path, impl_path;
  auto* mk_check = app.add_subcommand("masterkey-check", "check an implementation against a matrix");
  mk_check->add_option("matrix", matrix_path)->required();
  mk_check->add_option("implementation", impl_path)->required();
  std::size_t solve_limit = 1;
  auto* mk_solve = app.add_subcommand("masterkey-solve", "solve a key-lock matrix natively");
  mk_solve->add_option("matrix", matrix_path)->required();
  mk_solve->add_option("-n,--max", solve_limit, "number of implementations")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "lsd: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (check->parsed()) {
      load_program(check_files);
      out << "ok\n";
      return kOk;
    }
    if (fmt->parsed()) {
      try {
        out << text::print(text::parse_file(fmt_file));
      } catch (const std::exception& e) {
        throw UsageError(fmt_file + ":" + e.what());
      }
      return kOk;
    }
    if (mk_check->parsed()) return masterkey_check(matrix_path, impl_path, out);
    if (mk_solve->parsed()) return masterkey_solve(matrix_path, solve_limit, out);
    for (auto* sub : {run, enumerate, step, serve}) {
      if (sub->parsed()) config.mode = sub->get_name();
    }
    return execute(config, in, out, err);
  } catch (const UsageError& e) {
    err << "lsd: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "lsd: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace lsd::cli
