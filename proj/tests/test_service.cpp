#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "coda/cli.hpp"
#include "coda/service.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

using namespace coda;
using nlohmann::json;

namespace {

struct Cli {
  int code;
  std::string out, err;
};

Cli cli(std::vector<std::string> args, const std::string &input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string new_session(Service &s) {
  Response r = s.handle("POST", "/sessions", "");
  REQUIRE(r.status == 200);
  return json::parse(r.body)["session_id"];
}

json eval(Service &s, const std::string &id, const std::string &src, int budget = 10, int *status = nullptr) {
  Response r = s.handle("POST", "/evaluate",
                        json{{"session_id", id}, {"source", src}, {"budget", budget}, {"trace", true}}.dump());
  if (status)
    *status = r.status;
  return json::parse(r.body);
}

std::string joined(const json &steps) {
  std::string s;
  for (const auto &line : steps)
    s += line.get<std::string>() + "\n";
  return s;
}

} // namespace

TEST_CASE("cli eval and step") {
  Cli r = cli({"eval", "first 2 : a b c d"});
  CHECK(r.code == 0);
  CHECK(r.out == "a b\n");
  CHECK(cli({"eval", "sum n : 3 5"}).out == "(n:8)\n");
  Cli s = cli({"step", "nat : 0", "--budget", "3"});
  CHECK(s.out == "({nat : 0}:)\n(({nat}:):({0}:))\n0 (nat:1)\n0 1 (nat:2)\n");
  Cli j = cli({"eval", "last : nat : 0", "--budget", "20", "--json"});
  const json out = json::parse(j.out);
  CHECK(out["logic"] == "Undecided");
  CHECK(out["undecidable_hint"] == true);
  CHECK(out["status"] == "Budget");
}

TEST_CASE("cli usage errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"eval", "x", "--no-such-flag"}).code == 2);
  CHECK(cli({"eval", "x", "--budget", "lots"}).code == 2);
  CHECK(cli({"demo", "nonexistent"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli diagnostics exit 1") {
  Cli r = cli({"eval", "def pass : x"});
  CHECK(r.code == 1);
  CHECK(r.err.find("AxiomViolation") != std::string::npos);
  CHECK(cli({"eval", "x", "--context", "/nonexistent/file"}).code == 1);
}

TEST_CASE("cli check, demo and search") {
  CHECK(cli({"check", "space", "sum n"}).code == 0);
  Cli bad = cli({"check", "space", "aps not"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(cli({"check", "morphism", "ap {sum n : B B}", "sum n", "sum n"}).code == 0);
  CHECK(cli({"check", "antispace", "sum z", "neg z", "--signed"}).code == 0);
  CHECK(cli({"check", "law", "idempotent", "type n"}).code == 0);

  Cli y = cli({"demo", "yablo", "--budget", "20", "--json"});
  CHECK(y.code == 0);
  CHECK(json::parse(y.out)["logic"] == "Undecided");

  const auto dir = std::filesystem::temp_directory_path();
  const auto pos = dir / "coda_pos.txt", neg = dir / "coda_neg.txt";
  {
    std::ofstream p(pos), n(neg);
    for (int k = 1; k <= 5; ++k) {
      for (int i = 0; i < 2 * k; ++i)
        p << (i ? " " : "") << "(:)";
      p << "\n";
      for (int i = 0; i < 2 * k - 1; ++i)
        n << (i ? " " : "") << "(:)";
      n << "\n";
    }
  }
  Cli s = cli({"search", "--pos", pos.string(), "--neg", neg.string(), "--vocab", "aps,not,rev"});
  CHECK(s.code == 0);
  CHECK(s.out.find("aps not\t") != std::string::npos);
}

TEST_CASE("context files carry definitions between runs") {
  const auto file = std::filesystem::temp_directory_path() / "coda_ctx.txt";
  Cli r = cli({"repl"}, "def twice : {B B}\n:save " + file.string() + "\n");
  CHECK(r.out.find("saved 1") != std::string::npos);
  CHECK(cli({"eval", "twice : q", "--context", file.string()}).out == "q q\n");
}

TEST_CASE("repl") {
  Cli r = cli({"repl"}, "first 2 : a b c d\ndef pass : x\nlet k : a b\nk?\n:step\nrev : 1 2\n");
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string l;
  std::getline(lines, l);
  CHECK(l == "a b");
  CHECK(r.out.find("AxiomViolation: ") != std::string::npos);
  CHECK(r.out.find("\na b\n") != std::string::npos);
  CHECK(r.out.find("step mode on\n({rev : 1 2}:)\n") != std::string::npos);
  CHECK(r.out.substr(r.out.size() - 4) == "2 1\n");

  std::mt19937_64 rng(8);
  std::string noise;
  for (int i = 0; i < 200; ++i)
    noise += coda::testing::random_bytes(rng, 30) + "\n";
  CHECK(cli({"repl"}, noise).code == 0);
}

TEST_CASE("api evaluate matches cli step byte for byte") {
  Service s(ServiceConfig{});
  const std::string id = new_session(s);
  for (const char *src : {"first 2 : a b c d", "nat : 0", "sum n : 3 5", "x?", "ap {rev : B} : a b", "<\x01>"}) {
    for (int budget : {0, 3, 10}) {
      const json r = eval(s, id, src, budget);
      Cli c = cli({"step", src, "--budget", std::to_string(budget)});
      CHECK_MESSAGE(joined(r["steps"]) == c.out, src);
    }
  }
  const json r = eval(s, id, "first 2 : a b c d");
  for (const char *key : {"steps", "status", "logic", "undecidable_hint", "session_id", "source", "budget"})
    CHECK(r.contains(key));
  CHECK(r["status"] == "Fixed");
  CHECK(r["logic"] == "False");
}

TEST_CASE("api errors") {
  Service s(ServiceConfig{});
  CHECK(s.handle("POST", "/evaluate", R"({"session_id":"nope","source":"x"})").status == 404);
  CHECK(s.handle("POST", "/evaluate", "{not json").status == 400);
  CHECK(s.handle("POST", "/evaluate", "[1,2]").status == 400);
  const std::string id = new_session(s);
  CHECK(s.handle("POST", "/evaluate", json{{"session_id", id}, {"source", 5}}.dump()).status == 400);
  CHECK(s.handle("POST", "/evaluate", json{{"session_id", id}, {"source", "x"}, {"budget", -1}}.dump()).status == 400);
  CHECK(s.handle("GET", "/nowhere", "").status == 404);
  CHECK(s.handle("GET", "/sessions/nope/definitions", "").status == 404);

  int status = 0;
  eval(s, id, "def twice : {B B}", 10, &status);
  CHECK(status == 200);
  const json clash = eval(s, id, "def twice : {B}", 10, &status);
  CHECK(status == 409);
  CHECK(clash["error"]["kind"] == "AxiomViolation");
  // The session survives and keeps the first definition.
  CHECK(eval(s, id, "twice : z")["steps"].back() == "z z");

  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    Response r = s.handle("POST", "/evaluate", coda::testing::random_bytes(rng, 40));
    CHECK(r.status >= 400);
    json j = json::parse(r.body);
    CHECK(j.contains("error"));
  }
  CHECK(s.handle("GET", "/health", "").status == 200);
}

TEST_CASE("definitions, demos and search over the api") {
  Service s(ServiceConfig{});
  const std::string id = new_session(s);
  eval(s, id, "def twice : {B B}");
  const json defs = json::parse(s.handle("GET", "/sessions/" + id + "/definitions", "").body);
  CHECK(defs["user"].size() == 1);
  CHECK(defs["user"][0]["name"] == "twice");
  CHECK(defs["definitions"].size() > 40);
  Response ctx = s.handle("GET", "/sessions/" + id + "/context", "");
  CHECK(ctx.body.find("twice") != std::string::npos);

  const json d = json::parse(s.handle("POST", "/demo", R"({"name":"godel","depth":2})").body);
  CHECK(d["facts"]["nesting"] == "2");
  CHECK(s.handle("POST", "/demo", R"({"name":"bogus"})").status == 404);

  const json hits = json::parse(
      s.handle("POST", "/search",
               R"j({"positives":["(:) (:)","(:) (:) (:) (:)"],"negatives":["(:)","(:) (:) (:)"],"vocabulary":["aps","not"]})j")
          .body);
  bool found = false;
  for (const auto &h : hits["hits"])
    found = found || h["source"] == "aps not";
  CHECK(found);
  CHECK(s.handle("POST", "/search", R"j({"positives":["(:)"],"negatives":["()"],"vocabulary":[]})j").status == 400);
}

TEST_CASE("sessions are isolated under concurrency") {
  Service s(ServiceConfig{});
  constexpr int kSessions = 8;
  std::vector<std::string> ids;
  for (int i = 0; i < kSessions; ++i)
    ids.push_back(new_session(s));
  std::vector<std::string> results(kSessions);
  std::vector<int> statuses(kSessions);
  std::vector<std::thread> threads;
  for (int i = 0; i < kSessions; ++i) {
    threads.emplace_back([&, i] {
      // Every session defines the same name with its own body.
      const json def = eval(s, ids[i], "let v : s" + std::to_string(i), 10, &statuses[i]);
      for (int k = 0; k < 20; ++k)
        eval(s, ids[i], "sum n : 1 2 3");
      results[i] = eval(s, ids[i], "v?")["steps"].back();
    });
  }
  for (auto &t : threads)
    t.join();
  for (int i = 0; i < kSessions; ++i) {
    CHECK(statuses[i] == 200);
    CHECK(results[i] == "s" + std::to_string(i));
  }
  // A fresh session never sees them.
  const std::string fresh = new_session(s);
  CHECK(eval(s, fresh, "v?")["steps"].back() == "(?:v)");
}

TEST_CASE("idle sessions are evicted") {
  ServiceConfig cfg;
  cfg.idle_timeout = std::chrono::seconds(0);
  Service s(cfg);
  const std::string first = new_session(s);
  std::this_thread::sleep_for(std::chrono::milliseconds(5));
  // Creating a session sweeps idle ones first.
  new_session(s);
  CHECK(s.session_count() == 1);
  CHECK(s.handle("POST", "/evaluate", json{{"session_id", first}, {"source", "x"}}.dump()).status == 404);
  std::this_thread::sleep_for(std::chrono::milliseconds(5));
  CHECK(s.evict_idle() == 1);
  CHECK(s.session_count() == 0);
}
