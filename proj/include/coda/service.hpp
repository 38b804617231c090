#pragma once

// Session-holding JSON service. `Service::handle` is transport-free so it
// can be driven directly; `serve` puts it behind an HTTP listener.
//
//   POST /sessions                      -> {session_id}
//   POST /evaluate   {session_id, source, budget?, trace?}
//                                       -> {steps, status, logic, undecidable_hint, ...}
//   GET  /sessions/<id>/definitions     -> {definitions: [...]}
//   GET  /sessions/<id>/context         -> context records (text)
//   POST /demo       {name, budget?, depth?, alphabet?, max_len?, inject_self?}
//   POST /search     {positives, negatives, vocabulary?, max_terms?, budget?}
//   GET  /health

#include "coda/builtins.hpp"
#include "coda/context.hpp"
#include "coda/eval.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>

namespace coda {

/// The evaluation payload shared by the CLI `--json` output and the service.
nlohmann::json trace_json(const std::string &source, std::size_t budget, const EvalTrace &trace, bool full_trace);

/// Messages of the top-level (error:<msg>) items that def and let leave
/// behind when the one axiom would be broken.
std::vector<std::string> error_messages(const Data &d);

struct ServiceConfig {
  std::size_t default_budget = 10;
  std::size_t max_budget = 100000;
  std::chrono::seconds idle_timeout{3600};
  std::size_t max_sessions = 4096;
  Context base = standard_context(); ///< starting context for new sessions
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class Service {
public:
  explicit Service(ServiceConfig cfg);

  Response handle(const std::string &method, const std::string &path, const std::string &body);

  /// Drops sessions idle longer than the configured timeout.
  std::size_t evict_idle();
  std::size_t session_count() const;

private:
  struct Session {
    std::mutex mu;
    Context ctx;
    std::vector<std::pair<std::string, EvalTrace>> history;
    std::chrono::steady_clock::time_point last_used;
  };

  std::shared_ptr<Session> find(const std::string &id);
  Response create_session();
  Response evaluate(const nlohmann::json &req);
  Response definitions(const std::string &id);
  Response context_records(const std::string &id);
  Response demo(const nlohmann::json &req);
  Response search(const nlohmann::json &req);

  ServiceConfig cfg_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_;
};

/// Blocks serving HTTP on host:port. Returns false if the port cannot be bound.
bool serve(Service &service, const std::string &host, int port);

} // namespace coda
