#include "coda/eval.hpp"

#include <unordered_map>
#include <unordered_set>

namespace coda {

namespace {

class Pass {
public:
  explicit Pass(RuleEnv &env) : env_(env), ctx_(env.context()), skip_inert_(ctx_.has_bootstrap()) {}

  Data data(const Data &d) {
    Data out;
    out.reserve(d.size());
    for (const auto &c : d)
      out.append(coda(c));
    return out;
  }

private:
  Data coda(const Coda &c) {
    if (skip_inert_ && c.bootstrap_inert())
      return Data{c};
    if (auto it = memo_.find(c.id()); it != memo_.end())
      return it->second;

    const std::size_t effects_before = env_.effects();
    Data left = data(c.left());
    Data right = data(c.right());
    Coda cur = (left == c.left() && right == c.right()) ? c : pair(std::move(left), std::move(right));
    auto image = ctx_.lookup(cur, env_);
    Data out = image ? std::move(*image) : Data{cur};
    // A subtree whose rules extended the context is not reused: repeating
    // it must repeat the attempt (and report the axiom conflict).
    if (env_.effects() == effects_before)
      memo_.emplace(c.id(), out);
    return out;
  }

  RuleEnv &env_;
  const Context &ctx_;
  bool skip_inert_;
  // Keys are node addresses of codas reachable from the input, which stays
  // alive for the whole pass.
  std::unordered_map<const void *, Data> memo_;
};

} // namespace

std::string_view to_string(EvalStatus s) {
  switch (s) {
  case EvalStatus::Fixed: return "Fixed";
  case EvalStatus::Cyclic: return "Cyclic";
  default: return "Budget";
  }
}

Data step(const Data &a, RuleEnv &env) { return Pass(env).data(a); }

Data step(const Context &ctx, const Data &a) {
  RuleEnv env(ctx);
  return step(a, env);
}

namespace {

EvalTrace run(const Context &ctx, const Data &a, std::size_t budget) {
  EvalTrace t;
  t.context = ctx;
  t.steps.push_back(a);
  std::unordered_set<Data, DataHash> seen{a};
  t.status = EvalStatus::Budget;
  for (std::size_t i = 0; i < budget; ++i) {
    RuleEnv env(t.context);
    Data next = step(t.steps.back(), env);
    const bool changed_context = env.effects() > 0;
    if (changed_context)
      t.context = env.working();
    if (!changed_context && next == t.steps.back()) {
      t.status = EvalStatus::Fixed;
      break;
    }
    t.steps.push_back(next);
    if (!changed_context && !seen.insert(next).second) {
      t.status = EvalStatus::Cyclic;
      break;
    }
    if (changed_context)
      seen.insert(next);
  }
  t.logic = classify(t.steps.back(), t.context);
  return t;
}

} // namespace

EvalTrace evaluate(const Context &ctx, const Data &a, EvalOptions opts) {
  EvalTrace t = run(ctx, a, opts.budget);
  t.undecidable_hint = undecidable_hint(t, opts.probe ? 2 * opts.budget : 0);
  return t;
}

bool undecidable_hint(const EvalTrace &trace, std::size_t probe_depth) {
  if (trace.logic != LogicValue::Undecided)
    return false;
  if (trace.status != EvalStatus::Budget)
    return true;
  const std::size_t done = trace.steps.size() - 1;
  if (probe_depth <= done)
    return false;
  EvalTrace deeper = run(trace.context, trace.final(), probe_depth - done);
  return deeper.logic == LogicValue::Undecided;
}

std::string render_trace(const EvalTrace &trace) {
  std::string out;
  for (const auto &d : trace.steps) {
    out += render(d);
    out += '\n';
  }
  return out;
}

} // namespace coda
