#include <boost/asio.hpp>
#include <istream>
#include <ostream>

#include "lsd/cli/cli.hpp"

namespace lsd::cli {

using nlohmann::json;

Session::Session(const core::Program& program, const core::Query& query, engine::Options options,
                 std::size_t budget)
    : program_(&program), query_(&query), options_(options), budget_(budget) {
  engine_ = std::make_unique<engine::Engine>(*program_, *query_, options_);
  engine_->set_sink(&sink_);
}

json Session::ack() const {
  return {{"ok", true}, {"status", engine::to_string(engine_->status())},
          {"step", engine_->step_count()}};
}

std::vector<json> Session::handle(const std::string& line) {
  json request;
  try {
    request = json::parse(line);
  } catch (const json::parse_error& e) {
    return {{{"error", std::string("malformed request: ") + e.what()}}};
  }
  if (!request.is_object() || !request.contains("cmd") || !request["cmd"].is_string()) {
    return {{{"error", "request needs a string \"cmd\""}}};
  }
  auto cmd = request["cmd"].get<std::string>();
  sink_.events.clear();
  std::vector<json> out;
  if (cmd == "step") {
    engine_->step();
  } else if (cmd == "run") {
    engine_->run(budget_);
  } else if (cmd == "backtrack") {
    // After success this forces the search on to the next solution.
    if (engine_->status() == engine::Status::success) engine_->force_backtrack();
    if (engine_->status() == engine::Status::failure) {
      engine_->step();
    } else {
      return {{{"error", "nothing to backtrack over in state " +
                             engine::to_string(engine_->status())}}};
    }
  } else if (cmd == "reset") {
    engine_ = std::make_unique<engine::Engine>(*program_, *query_, options_);
    engine_->set_sink(&sink_);
  } else if (cmd == "state") {
    out.push_back(engine::to_json({engine_->step_count(), "snapshot", engine_->snapshot()}));
  } else {
    return {{{"error", "unknown cmd '" + cmd + "'"}}};
  }
  std::vector<json> events;
  for (const auto& ev : sink_.events) events.push_back(engine::to_json(ev));
  sink_.events.clear();
  events.insert(events.end(), out.begin(), out.end());
  events.push_back(ack());
  return events;
}

void serve_streams(Session& session, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    for (const auto& j : session.handle(line)) out << j.dump() << '\n';
    out.flush();
  }
}

int serve_tcp(Session& session, int port, bool once, std::ostream& log) {
  namespace asio = boost::asio;
  using asio::ip::tcp;
  asio::io_context io;
  tcp::acceptor acceptor(io, tcp::endpoint(asio::ip::make_address("127.0.0.1"),
                                           static_cast<unsigned short>(port)));
  log << "listening on 127.0.0.1:" << acceptor.local_endpoint().port() << std::endl;
  do {
    tcp::iostream stream;
    acceptor.accept(stream.socket());
    serve_streams(session, stream, stream);
  } while (!once);
  return kOk;
}

}  // namespace lsd::cli
