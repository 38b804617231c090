#include "coda/demos.hpp"

#include "coda/builtins.hpp"
#include "coda/language.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace coda {

namespace {

constexpr std::string_view kConsistency = "ap {xor (coda:B) : (not:coda:B)} : allByteSequences :";

Context define(const Context &ctx, std::string_view source) {
  EvalOptions o;
  o.budget = 16;
  o.probe = false;
  EvalTrace t = evaluate(ctx, compile(source), o);
  if (t.status != EvalStatus::Fixed || t.logic != LogicValue::True)
    throw std::runtime_error("demo setup failed: " + std::string(source) + " -> " + render(t.final()));
  return t.context;
}

EvalTrace run(const Context &ctx, std::string_view source, std::size_t budget, bool probe = true) {
  EvalOptions o;
  o.budget = budget;
  o.probe = probe;
  return evaluate(ctx, compile(source), o);
}

Verdict verdict_of(const EvalTrace &t) {
  switch (t.logic) {
  case LogicValue::True: return Verdict::TrueData;
  case LogicValue::False: return Verdict::FalseData;
  default: return t.undecidable_hint ? Verdict::UndecidableHint : Verdict::Undecided;
  }
}

bool undecided_throughout(const EvalTrace &t) {
  return std::all_of(t.steps.begin(), t.steps.end(),
                     [&](const Data &d) { return classify(d, t.context) == LogicValue::Undecided; });
}

DemoReport report_for(std::string name, std::string source, EvalTrace trace) {
  DemoReport r;
  r.name = std::move(name);
  r.source = std::move(source);
  r.verdict = verdict_of(trace);
  r.undecided_throughout = undecided_throughout(trace);
  const auto &steps = trace.steps;
  for (std::size_t i = 0; i < steps.size() && i < 3; ++i)
    r.narrative.push_back(render(steps[i]));
  if (steps.size() > 3)
    r.narrative.push_back(render(steps.back()));
  r.facts["steps"] = std::to_string(steps.size() - 1);
  r.facts["status"] = std::string(to_string(trace.status));
  r.facts["logic"] = std::string(to_string(trace.logic));
  r.trace = std::move(trace);
  return r;
}

const Coda &generator_atom() {
  static const Coda c = byte_atom("allByteSequences");
  return c;
}

// Sequences enumerated so far minus those still waiting on their verdict.
// The last top-level item carries the generator; everything before it is a
// pending xor.
std::size_t resolved_count(const Data &d) {
  if (d.empty())
    return 0;
  const Coda &tail = d.back();
  std::optional<std::size_t> emitted;
  std::size_t waiting = d.size() - 1;
  for (const auto &item : tail.right()) {
    if (!item.left().empty() && item.left()[0] == generator_atom()) {
      if (item.left().size() == 1)
        emitted = 0;
      else if (auto k = natural_of(item.left()[1]))
        emitted = static_cast<std::size_t>(*k);
    } else {
      ++waiting;
    }
  }
  if (!emitted || *emitted < waiting)
    return 0;
  return *emitted - waiting;
}

} // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::TrueData: return "TrueData";
  case Verdict::FalseData: return "FalseData";
  case Verdict::Undecided: return "Undecided";
  case Verdict::UndecidableHint: return "UndecidableHint";
  default: return "NotSelfIncluding";
  }
}

std::string DemoReport::text() const {
  std::ostringstream out;
  out << "demo: " << name << '\n';
  out << "source: " << source << '\n';
  out << "verdict: " << to_string(verdict) << '\n';
  for (const auto &[k, v] : facts)
    out << k << ": " << v << '\n';
  for (const auto &line : narrative)
    out << "  " << line << '\n';
  return out.str();
}

std::string DemoReport::json() const {
  nlohmann::json j;
  j["demo"] = name;
  j["source"] = source;
  j["verdict"] = std::string(to_string(verdict));
  j["status"] = std::string(to_string(trace.status));
  j["logic"] = std::string(to_string(trace.logic));
  j["undecidable_hint"] = trace.undecidable_hint;
  j["undecided_throughout"] = undecided_throughout;
  j["facts"] = facts;
  j["narrative"] = narrative;
  std::vector<std::string> steps;
  for (const auto &d : trace.steps)
    steps.push_back(render(d));
  j["steps"] = steps;
  return j.dump();
}

DemoReport consistency_demo(std::size_t budget, const std::string &alphabet, bool inject_self) {
  EnumerationConfig cfg;
  cfg.alphabet = alphabet;
  if (inject_self)
    cfg.injected.emplace_back(kConsistency);
  const Context ctx = standard_context().with_enumeration(cfg);
  EvalTrace t = run(ctx, kConsistency, budget, false);

  bool atoms_seen = false;
  bool monotone = true;
  std::size_t last = 0;
  for (const auto &d : t.steps) {
    atoms_seen = atoms_seen || classify(d, ctx) == LogicValue::False;
    std::size_t now = resolved_count(d);
    monotone = monotone && now >= last;
    last = std::max(last, now);
  }
  DemoReport r = report_for("consistency", std::string(kConsistency), std::move(t));
  r.facts["alphabet"] = alphabet;
  r.facts["top_level_atoms_seen"] = atoms_seen ? "yes" : "no";
  r.facts["pending_tail"] = r.trace.final().empty() ? "no" : "yes";
  r.facts["resolved"] = std::to_string(resolved_count(r.trace.final()));
  r.facts["resolved_monotone"] = monotone ? "yes" : "no";
  r.facts["self_injected"] = inject_self ? "yes" : "no";
  return r;
}

std::string godel_expected(std::size_t depth) {
  std::string s;
  for (std::size_t i = 0; i < depth; ++i)
    s += "(not:";
  s += "(({not}:):({G?}:))";
  s.append(depth, ')');
  return s;
}

DemoReport godel_demo(std::size_t depth) {
  const Context ctx = define(standard_context(), "let G : not : G?");
  // Each unfolding takes three steps: lookup, colon split, then the two
  // halves compile while `not` waits.
  const std::size_t budget = 3 * depth + 3;
  EvalTrace t = run(ctx, "G?", budget);
  const std::string expected = godel_expected(depth);
  std::optional<std::size_t> matched;
  for (std::size_t i = 0; i < t.steps.size() && !matched; ++i)
    if (render(t.steps[i]) == expected)
      matched = i;
  DemoReport r = report_for("godel", "let G : not : G?\nG?", std::move(t));
  r.facts["depth"] = std::to_string(depth);
  r.facts["matched_step"] = matched ? std::to_string(*matched) : "none";
  std::size_t nesting = 0;
  if (matched) {
    const std::string line = render(r.trace.steps[*matched]);
    for (std::size_t pos = 0; (pos = line.find("(not:", pos)) != std::string::npos; ++pos)
      ++nesting;
  }
  r.facts["nesting"] = std::to_string(nesting);
  return r;
}

std::string berry_oracle(std::size_t max_len, const std::string &alphabet) {
  std::set<unsigned long long> seen;
  std::vector<std::string> frontier{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto &s : frontier)
      for (char ch : alphabet)
        next.push_back(s + ch);
    for (const auto &s : next) {
      bool digits = std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
      if (digits && s.size() < 19) {
        unsigned long long v = std::stoull(s);
        if (v > 0)
          seen.insert(v);
      }
    }
    frontier = std::move(next);
  }
  unsigned long long candidate = 1;
  while (seen.count(candidate))
    ++candidate;
  return std::to_string(candidate);
}

DemoReport berry_demo(std::size_t max_len, const std::string &alphabet, std::size_t budget) {
  const std::string source = "berry:posint:coda:bytes:" + std::to_string(max_len);
  const bool self_including = source.size() <= max_len;
  EnumerationConfig cfg;
  cfg.alphabet = alphabet;
  if (self_including)
    cfg.injected.push_back(source);
  if (budget == 0) {
    // Enough steps to drain the enumeration when it is finite and small.
    std::size_t total = 1, layer = 1;
    for (std::size_t len = 1; len <= max_len && total < 4096; ++len) {
      layer *= std::max<std::size_t>(alphabet.size(), 1);
      total += layer;
    }
    budget = self_including ? 40 : std::min<std::size_t>(total, 4096) + 24;
  }
  const Context ctx = standard_context().with_enumeration(cfg);
  EvalTrace t = run(ctx, source, budget);

  bool integer_seen = false;
  for (const auto &d : t.steps)
    for (const auto &c : d)
      if (auto v = natural_of(c); v && *v > 0)
        integer_seen = true;

  DemoReport r = report_for("berry", source, std::move(t));
  r.facts["alphabet"] = alphabet;
  r.facts["max_len"] = std::to_string(max_len);
  r.facts["self_including"] = self_including ? "yes" : "no";
  r.facts["integer_seen"] = integer_seen ? "yes" : "no";
  if (!self_including) {
    r.verdict = Verdict::NotSelfIncluding;
    r.facts["result"] = render(r.trace.final());
  }
  return r;
}

DemoReport berry_control() {
  EvalTrace t = run(standard_context(), "berry : 1 2 3", 10);
  return report_for("berry-control", "berry : 1 2 3", std::move(t));
}

DemoReport curry_demo(std::size_t depth) {
  const std::string let = "let Curry's_sentence : imply Curry's_sentence? : Germany_borders_China?";
  const Context ctx = define(standard_context(), let);
  EvalTrace t = run(ctx, "Curry's_sentence?", depth);
  DemoReport r = report_for("curry", let + "\nCurry's_sentence?", std::move(t));
  r.facts["depth"] = std::to_string(depth);
  return r;
}

std::vector<DemoReport> curry_controls() {
  std::vector<DemoReport> out;
  for (const char *src : {"imply () : ()", "imply () : a"})
    out.push_back(report_for("curry-control", src, run(standard_context(), src, 10)));
  return out;
}

DemoReport yablo_demo(std::size_t depth) {
  const std::string def = "def Yablo : {ap not : Yablo : skip 1 : nat : B}";
  const Context ctx = define(standard_context(), def);
  EvalTrace t = run(ctx, "Yablo : 1", depth);
  DemoReport r = report_for("yablo", def + "\nYablo : 1", std::move(t));
  r.facts["depth"] = std::to_string(depth);
  return r;
}

std::vector<std::string> demo_names() { return {"consistency", "godel", "berry", "curry", "yablo"}; }

DemoReport run_demo(const std::string &name, const DemoOptions &opts) {
  if (name == "consistency")
    return consistency_demo(opts.budget ? opts.budget : 10, opts.alphabet.empty() ? "ab:" : opts.alphabet,
                            opts.inject_self);
  if (name == "godel")
    return godel_demo(opts.depth ? opts.depth : 9);
  if (name == "berry")
    return berry_demo(opts.max_len, opts.alphabet.empty() ? "12" : opts.alphabet, opts.budget);
  if (name == "curry")
    return curry_demo(opts.budget ? opts.budget : 10);
  if (name == "yablo")
    return yablo_demo(opts.budget ? opts.budget : 20);
  throw std::invalid_argument("unknown demo: " + name);
}

} // namespace coda
