#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsd/core/program.hpp"
#include "lsd/engine/engine.hpp"

namespace lsd::cli {

enum ExitCode : int { kOk = 0, kNoSolution = 1, kUsage = 2, kBudget = 3 };

struct RunConfig {
  std::vector<std::string> programs;
  std::string query;
  std::string mode = "run";  // run enumerate step serve
  std::size_t max_solutions = 10;
  std::size_t step_budget = 100000;
  std::string trace_path;
  std::string frames_dir;
  std::size_t samples = 32;
  std::string animation = "linear";
  std::string anchor = "earlier";
  int port = 0;  // serve: 0 means standard streams
  bool once = false;
  bool json = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses and compiles every file into one program; throws UsageError with the
// rendered diagnostics.
core::Program load_program(const std::vector<std::string>& paths);
const core::Query& select_query(const core::Program& program, const std::string& name);
engine::Options engine_options(const RunConfig& config);

// One stepper session: a request line in, response lines out.
class Session {
 public:
  Session(const core::Program& program, const core::Query& query, engine::Options options,
          std::size_t budget);
  std::vector<nlohmann::json> handle(const std::string& line);
  const engine::Engine& engine() const { return *engine_; }

 private:
  nlohmann::json ack() const;
  const core::Program* program_;
  const core::Query* query_;
  engine::Options options_;
  std::size_t budget_;
  std::unique_ptr<engine::Engine> engine_;
  engine::VectorSink sink_;
};

// Line-delimited JSON over the given streams until end of input.
void serve_streams(Session& session, std::istream& in, std::ostream& out);
// Accepts one client at a time on 127.0.0.1:port.
int serve_tcp(Session& session, int port, bool once, std::ostream& log);

int main(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
         std::ostream& err);

}  // namespace lsd::cli
