#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsd/cli/cli.hpp"
#include "lsd/engine/replay.hpp"

using namespace lsd;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result lsd_run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::main(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return std::string(LSD_CORPUS_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "lsd-cli-test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '{') out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

}  // namespace

TEST_CASE("exit codes") {
  auto ok = lsd_run({"run", corpus("key.lsd"), "--query", "key4"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("Handle Leveller Bit") != std::string::npos);
  CHECK(lsd_run({"run", corpus("logic.lsd"), "--query", "member_absent"}).code == 1);
  CHECK(lsd_run({"run", "missing.lsd"}).code == 2);
  CHECK(lsd_run({"run", corpus("key.lsd")}).code == 2);  // two queries, none chosen
  CHECK(lsd_run({"run", corpus("key.lsd"), "-q", "key4", "--budget", "5"}).code == 3);
  CHECK(lsd_run({"frobnicate"}).code == 2);
  CHECK(lsd_run({"check", corpus("masterkey_query.lsd")}).code == 0);
}

TEST_CASE("bad programs are usage errors") {
  auto path = scratch("bad.lsd");
  std::ofstream(path) << "query q { call Missing(X); }\n";
  auto r = lsd_run({"check", path.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown design") != std::string::npos);
  std::ofstream(path) << "query q { call (X); }\n";
  CHECK(lsd_run({"run", path.string()}).code == 2);
}

TEST_CASE("fmt prints canonical text") {
  auto r = lsd_run({"fmt", corpus("logic.lsd")});
  CHECK(r.code == 0);
  auto path = scratch("fmt.lsd");
  std::ofstream(path) << r.out;
  CHECK(lsd_run({"fmt", path.string()}).out == r.out);
}

TEST_CASE("trace file replays to the live state") {
  auto path = scratch("key4.jsonl");
  CHECK(lsd_run({"run", corpus("key.lsd"), "-q", "key4", "--trace", path.string()}).code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto lines = json_lines(ss.str());
  REQUIRE(!lines.empty());
  CHECK(lines[0]["kind"] == "replace");
  CHECK(lines[0]["payload"]["design"] == "Key");
  for (const auto& l : lines) {
    CHECK(l.contains("step"));
    CHECK(l.contains("kind"));
    CHECK(l["payload"].is_object());
  }
  auto program = cli::load_program({corpus("key.lsd")});
  const auto& query = *program.find_query("key4");
  engine::Replayer replay(program, query);
  for (const auto& l : lines) replay.apply(engine::event_from_json(l));
  engine::Engine live(program, query);
  live.run();
  CHECK(replay.engine().spec().hash() == live.spec().hash());

  auto again = scratch("key4b.jsonl");
  lsd_run({"run", corpus("key.lsd"), "-q", "key4", "--trace", again.string()});
  std::ifstream a(path), b(again);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("backtrack events list the undone steps") {
  auto path = scratch("enum.jsonl");
  lsd_run({"enumerate", corpus("key.lsd"), "-q", "key2free", "--trace", path.string()});
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  int backtracks = 0;
  for (const auto& l : json_lines(ss.str())) {
    if (l["kind"] != "backtrack") continue;
    ++backtracks;
    CHECK(l["payload"].contains("undone_to"));
    if (!l["payload"]["exhausted"].get<bool>()) {
      CHECK(l["payload"]["undone_from"].get<std::size_t>() <= l["payload"]["undone_to"].get<std::size_t>());
    }
  }
  CHECK(backtracks >= 3);
}

TEST_CASE("frames are written for each bond") {
  auto dir = scratch("frames");
  fs::remove_all(dir);
  CHECK(lsd_run({"run", corpus("key.lsd"), "-q", "key4", "--frames", dir.string(), "--samples",
                 "4"})
            .code == 0);
  std::size_t steps = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    ++steps;
    CHECK(fs::exists(entry.path() / "frame-0000.svg"));
    CHECK(fs::exists(entry.path() / "frame-0003.svg"));
  }
  CHECK(steps == 9);
}

TEST_CASE("enumerate lists solutions") {
  auto r = lsd_run({"enumerate", corpus("key.lsd"), "-q", "key2free", "--json"});
  CHECK(r.code == 0);
  auto lines = json_lines(r.out);
  CHECK(lines.size() == 4);
  CHECK(lsd_run({"enumerate", corpus("logic.lsd"), "-q", "member_absent"}).code == 1);
}

TEST_CASE("masterkey files") {
  auto matrix = corpus("masterkey/office.matrix");
  auto impl = corpus("masterkey/office.impl");
  CHECK(lsd_run({"masterkey-check", matrix, impl}).code == 0);

  auto corrupted = scratch("corrupt.impl");
  std::ofstream(corrupted) << "3 2 4\n1 2 1 2\n2 2 1 2\n1 2 2 2\n1,2 2 1 2\n1 2 1 2\n";
  CHECK(lsd_run({"masterkey-check", matrix, corrupted.string()}).code == 1);

  auto short_k = scratch("short.impl");
  std::ofstream(short_k) << "3 2 3\n1 2 1\n2 2 1\n1 2 2\n1,2 2 1\n1 2 1,2\n";
  CHECK(lsd_run({"masterkey-check", matrix, short_k.string()}).code == 2);
  CHECK(lsd_run({"masterkey-check", matrix, "nope.impl"}).code == 2);

  auto solved = lsd_run({"masterkey-solve", matrix});
  CHECK(solved.code == 0);
  auto solved_path = scratch("solved.impl");
  std::ofstream(solved_path) << solved.out;
  CHECK(lsd_run({"masterkey-check", matrix, solved_path.string()}).code == 0);
}

TEST_CASE("stepper session") {
  auto program = cli::load_program({corpus("key.lsd")});
  cli::Session s(program, *program.find_query("key2free"), {}, 100000);

  auto first = s.handle(R"({"cmd":"step"})");
  REQUIRE(first.size() == 2);
  CHECK(first[0]["kind"] == "replace");
  CHECK(first[1]["status"] == "running");

  auto err = s.handle("not json");
  REQUIRE(err.size() == 1);
  CHECK(err[0].contains("error"));
  CHECK(s.handle(R"({"cmd":"fly"})")[0].contains("error"));
  CHECK(s.handle(R"({"nope":1})")[0].contains("error"));

  auto run = s.handle(R"({"cmd":"run"})");
  CHECK(run.back()["status"] == "success");
  CHECK(run[run.size() - 2]["kind"] == "success");
  std::set<std::string> keys;
  auto key_of = [&] { return core::to_string(s.engine().solution().bindings.at("X")) +
                             core::to_string(s.engine().solution().bindings.at("Y")); };
  keys.insert(key_of());
  for (int i = 0; i < 3; ++i) {
    auto bt = s.handle(R"({"cmd":"backtrack"})");
    CHECK(bt[0]["kind"] == "backtrack");
    CHECK(s.handle(R"({"cmd":"run"})").back()["status"] == "success");
    keys.insert(key_of());
  }
  CHECK(keys.size() == 4);
  s.handle(R"({"cmd":"backtrack"})");
  CHECK(s.handle(R"({"cmd":"run"})").back()["status"] == "exhausted");

  auto state = s.handle(R"({"cmd":"state"})");
  CHECK(state[0]["kind"] == "snapshot");

  s.handle(R"({"cmd":"reset"})");
  auto fresh = cli::Session(program, *program.find_query("key2free"), {}, 100000);
  CHECK(s.handle(R"({"cmd":"state"})")[0] == fresh.handle(R"({"cmd":"state"})")[0]);
  CHECK(s.engine() == fresh.engine());
}

TEST_CASE("serve over standard streams") {
  auto r = lsd_run({"serve", corpus("key.lsd"), "-q", "key4"},
                   "{\"cmd\":\"run\"}\n{\"cmd\":\"bogus\"}\n{\"cmd\":\"state\"}\n");
  CHECK(r.code == 0);
  auto lines = json_lines(r.out);
  bool success = false;
  for (const auto& l : lines) {
    if (l.value("kind", "") == "success") {
      success = true;
      CHECK(l["payload"]["solids"].size() == 1);
    }
  }
  CHECK(success);
  bool error = false;
  for (const auto& l : lines) error = error || l.contains("error");
  CHECK(error);
  CHECK(lines.back()["ok"] == true);
}
