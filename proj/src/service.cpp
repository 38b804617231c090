#include "coda/service.hpp"

#include "coda/builtins.hpp"
#include "coda/demos.hpp"
#include "coda/language.hpp"
#include "coda/spaces.hpp"

#include "httplib.h"

#include <algorithm>
#include <sstream>

namespace coda {

using nlohmann::json;

namespace {

Response error_response(int status, const std::string &kind, const std::string &message) {
  json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  return {status, j.dump()};
}

Response ok(const json &j) { return {200, j.dump()}; }

std::string_view kind_name(RuleKind k) {
  switch (k) {
  case RuleKind::Identity: return "identity";
  case RuleKind::Native: return "native";
  default: return "compiled";
  }
}

std::vector<std::string> split_path(const std::string &path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : path.substr(0, path.find('?'))) {
    if (ch == '/') {
      if (!cur.empty())
        parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty())
    parts.push_back(std::move(cur));
  return parts;
}

std::size_t get_size(const json &req, const char *key, std::size_t fallback) {
  if (!req.contains(key) || req[key].is_null())
    return fallback;
  if (!req[key].is_number_unsigned() && !(req[key].is_number_integer() && req[key].get<long long>() >= 0))
    throw std::invalid_argument(std::string(key) + " must be a non-negative integer");
  return req[key].get<std::size_t>();
}

std::string get_string(const json &req, const char *key, const std::string &fallback = {}) {
  if (!req.contains(key) || req[key].is_null())
    return fallback;
  if (!req[key].is_string())
    throw std::invalid_argument(std::string(key) + " must be a string");
  return req[key].get<std::string>();
}

std::vector<Data> samples(const json &req, const char *key) {
  std::vector<Data> out;
  if (!req.contains(key) || !req[key].is_array())
    throw std::invalid_argument(std::string(key) + " must be an array of rendered data");
  for (const auto &s : req[key]) {
    if (!s.is_string())
      throw std::invalid_argument(std::string(key) + " must be an array of rendered data");
    out.push_back(read_literal(s.get<std::string>()));
  }
  return out;
}

} // namespace

// Top-level (error:<msg>) items left behind by def and let.
std::vector<std::string> error_messages(const Data &d) {
  static const Coda tag = byte_atom("error");
  std::vector<std::string> out;
  for (const auto &c : d) {
    if (c.left().size() == 1 && c.left()[0] == tag) {
      auto msg = decode_bytes(c.right());
      out.push_back(msg ? *msg : render(c.right()));
    }
  }
  return out;
}

json trace_json(const std::string &source, std::size_t budget, const EvalTrace &trace, bool full_trace) {
  json j;
  j["source"] = source;
  j["budget"] = budget;
  std::vector<std::string> steps;
  if (full_trace) {
    for (const auto &d : trace.steps)
      steps.push_back(render(d));
  } else {
    steps.push_back(render(trace.final()));
  }
  j["steps"] = steps;
  j["final"] = render(trace.final());
  j["step_count"] = trace.steps.size() - 1;
  j["status"] = std::string(to_string(trace.status));
  j["logic"] = std::string(to_string(trace.logic));
  j["undecidable_hint"] = trace.undecidable_hint;
  j["diagnostics"] = diagnostics(source);
  return j;
}

Service::Service(ServiceConfig cfg) : cfg_(std::move(cfg)), rng_(std::random_device{}()) {}

std::size_t Service::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::size_t Service::evict_idle() {
  const auto now = std::chrono::steady_clock::now();
  std::lock_guard lock(mu_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    // A session in use holds its own mutex; leave it alone.
    std::unique_lock busy(it->second->mu, std::try_to_lock);
    if (busy.owns_lock() && now - it->second->last_used > cfg_.idle_timeout) {
      busy.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::shared_ptr<Service::Session> Service::find(const std::string &id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Response Service::handle(const std::string &method, const std::string &path, const std::string &body) {
  const auto parts = split_path(path);
  try {
    json req = json::object();
    if (method == "POST" && !body.empty()) {
      req = json::parse(body, nullptr, false);
      if (req.is_discarded())
        return error_response(400, "MalformedRequest", "body is not valid JSON");
      if (!req.is_object())
        return error_response(400, "MalformedRequest", "body must be a JSON object");
    }

    if (method == "GET" && parts == std::vector<std::string>{"health"})
      return ok({{"ok", true}, {"sessions", session_count()}});
    if (method == "GET" && parts == std::vector<std::string>{"demos"})
      return ok({{"demos", demo_names()}});
    if (method == "POST" && parts == std::vector<std::string>{"sessions"})
      return create_session();
    if (method == "POST" && parts == std::vector<std::string>{"evaluate"})
      return evaluate(req);
    if (method == "POST" && parts == std::vector<std::string>{"demo"})
      return demo(req);
    if (method == "POST" && parts == std::vector<std::string>{"search"})
      return search(req);
    if (method == "GET" && parts.size() == 3 && parts[0] == "sessions" && parts[2] == "definitions")
      return definitions(parts[1]);
    if (method == "GET" && parts.size() == 3 && parts[0] == "sessions" && parts[2] == "context")
      return context_records(parts[1]);
    if (method == "DELETE" && parts.size() == 2 && parts[0] == "sessions") {
      std::lock_guard lock(mu_);
      if (!sessions_.erase(parts[1]))
        return error_response(404, "UnknownSession", "no session " + parts[1]);
      return ok({{"deleted", parts[1]}});
    }
    return error_response(404, "NotFound", method + " " + path);
  } catch (const AxiomViolation &e) {
    return error_response(409, "AxiomViolation", e.what());
  } catch (const InvalidDomain &e) {
    return error_response(409, "InvalidDomain", e.what());
  } catch (const ParseError &e) {
    return error_response(400, "ParseError", e.what());
  } catch (const json::exception &e) {
    return error_response(400, "MalformedRequest", e.what());
  } catch (const std::invalid_argument &e) {
    return error_response(400, "MalformedRequest", e.what());
  } catch (const std::exception &e) {
    return error_response(500, "InternalError", e.what());
  }
}

Response Service::create_session() {
  evict_idle();
  auto s = std::make_shared<Session>();
  s->ctx = cfg_.base;
  s->last_used = std::chrono::steady_clock::now();
  std::string id;
  {
    std::lock_guard lock(mu_);
    if (sessions_.size() >= cfg_.max_sessions)
      return error_response(503, "TooManySessions", "session limit reached");
    do {
      std::ostringstream out;
      out << std::hex << rng_();
      id = out.str();
    } while (sessions_.count(id));
    sessions_.emplace(id, s);
  }
  return ok({{"session_id", id}});
}

Response Service::evaluate(const json &req) {
  const std::string id = get_string(req, "session_id", get_string(req, "session"));
  if (!req.contains("source") || !req["source"].is_string())
    return error_response(400, "MalformedRequest", "source must be a string");
  const std::string source = req["source"].get<std::string>();
  const std::size_t budget = get_size(req, "budget", cfg_.default_budget);
  if (budget > cfg_.max_budget)
    return error_response(400, "MalformedRequest", "budget exceeds " + std::to_string(cfg_.max_budget));
  bool full = true;
  if (req.contains("trace")) {
    if (!req["trace"].is_boolean())
      return error_response(400, "MalformedRequest", "trace must be a boolean");
    full = req["trace"].get<bool>();
  }

  auto s = find(id);
  if (!s)
    return error_response(404, "UnknownSession", "no session " + id);

  std::lock_guard lock(s->mu);
  s->last_used = std::chrono::steady_clock::now();
  EvalOptions o;
  o.budget = budget;
  EvalTrace t = coda::evaluate(s->ctx, compile(source), o);
  json j = trace_json(source, budget, t, full);
  j["session_id"] = id;
  // Definitions made before the budget ran out still stick; the session is
  // left exactly as the evaluation left it.
  s->ctx = t.context;
  const auto errors = error_messages(t.final());
  s->history.emplace_back(source, std::move(t));
  if (!errors.empty()) {
    j["error"] = {{"kind", "AxiomViolation"}, {"message", errors.front()}, {"all", errors}};
    return {409, j.dump()};
  }
  return ok(j);
}

Response Service::definitions(const std::string &id) {
  auto s = find(id);
  if (!s)
    return error_response(404, "UnknownSession", "no session " + id);
  std::lock_guard lock(s->mu);
  s->last_used = std::chrono::steady_clock::now();
  json defs = json::array();
  for (const Definition *d : s->ctx.definitions()) {
    json e;
    e["name"] = d->name;
    e["kind"] = std::string(kind_name(d->kind));
    e["domain"] = render(d->domain);
    e["family"] = d->family;
    if (d->kind == RuleKind::Compiled)
      e["body"] = render(d->body);
    defs.push_back(std::move(e));
  }
  json user = json::array();
  for (const auto &r : s->ctx.user_records())
    user.push_back({{"kind", r.kind == UserRecord::Kind::Def ? "def" : "let"},
                    {"name", r.name},
                    {"body", render(r.body)}});
  return ok({{"session_id", id}, {"definitions", defs}, {"user", user}});
}

Response Service::context_records(const std::string &id) {
  auto s = find(id);
  if (!s)
    return error_response(404, "UnknownSession", "no session " + id);
  std::lock_guard lock(s->mu);
  s->last_used = std::chrono::steady_clock::now();
  std::ostringstream out;
  write_records(out, s->ctx);
  return {200, out.str(), "text/plain"};
}

Response Service::demo(const json &req) {
  const std::string name = get_string(req, "name");
  const auto names = demo_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    return error_response(404, "UnknownDemo", "no demo named '" + name + "'");
  DemoOptions o;
  o.budget = get_size(req, "budget", 0);
  o.depth = get_size(req, "depth", o.depth);
  o.max_len = get_size(req, "max_len", o.max_len);
  o.alphabet = get_string(req, "alphabet");
  if (req.contains("inject_self") && req["inject_self"].is_boolean())
    o.inject_self = req["inject_self"].get<bool>();
  if (o.budget > cfg_.max_budget || o.depth > 1000)
    return error_response(400, "MalformedRequest", "demo size too large");
  return {200, run_demo(name, o).json()};
}

Response Service::search(const json &req) {
  const auto pos = samples(req, "positives");
  const auto neg = samples(req, "negatives");
  std::vector<std::string> vocab;
  if (req.contains("vocabulary")) {
    if (!req["vocabulary"].is_array())
      return error_response(400, "MalformedRequest", "vocabulary must be an array of names");
    for (const auto &v : req["vocabulary"])
      vocab.push_back(v.get<std::string>());
  } else {
    vocab = builtin_names();
  }
  SearchConfig cfg;
  cfg.max_terms = get_size(req, "max_terms", cfg.max_terms);
  cfg.budget = get_size(req, "budget", cfg.budget);
  cfg.random_candidates = get_size(req, "random", 0);
  cfg.seed = get_size(req, "seed", 1);
  if (cfg.max_terms > 3 || cfg.budget > cfg_.max_budget)
    return error_response(400, "MalformedRequest", "search size too large");
  SearchReport r;
  try {
    r = search_classifier(cfg_.base, pos, neg, vocab, cfg);
  } catch (const EmptyVocabulary &e) {
    return error_response(400, "EmptyVocabulary", e.what());
  }
  json hits = json::array();
  for (const auto &h : r.hits)
    hits.push_back({{"source", h.source},
                    {"positives", std::string(to_string(h.positives))},
                    {"negatives", std::string(to_string(h.negatives))}});
  return ok({{"hits", hits}, {"tried", r.tried}});
}

bool serve(Service &service, const std::string &host, int port) {
  httplib::Server svr;
  auto forward = [&service](const httplib::Request &req, httplib::Response &res) {
    Response r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body, r.content_type);
  };
  svr.Get(".*", forward);
  svr.Post(".*", forward);
  svr.Delete(".*", forward);
  svr.Options(".*", [](const httplib::Request &, httplib::Response &res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  return svr.listen(host, port);
}

} // namespace coda
