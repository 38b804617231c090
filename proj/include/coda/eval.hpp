#pragma once

// Evaluation: repeat one simultaneous bottom-up rewrite pass until the data
// stops changing, repeats an earlier snapshot, or the step budget runs out.

#include "coda/context.hpp"
#include "coda/core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace coda {

enum class EvalStatus { Fixed, Cyclic, Budget };
std::string_view to_string(EvalStatus s);

struct EvalOptions {
  std::size_t budget = 10;
  /// Run a second evaluation to twice the budget before setting the
  /// undecidable hint on a budget-limited undecided trace.
  bool probe = true;
};

struct EvalTrace {
  std::vector<Data> steps; ///< A0 .. An
  EvalStatus status = EvalStatus::Budget;
  LogicValue logic = LogicValue::Undecided;
  bool undecidable_hint = false;
  /// The context after the last step, including any def/let effects.
  Context context;

  const Data &final() const { return steps.back(); }
};

/// One pass: every coda is visited once, children before parents, and the
/// parent's rule is applied to the parent rebuilt from its rewritten
/// children. Images are not revisited in the same pass.
/// Definitions made by rules during the pass land in env.working().
Data step(const Data &a, RuleEnv &env);
/// Convenience overload that discards definition effects.
Data step(const Context &ctx, const Data &a);

EvalTrace evaluate(const Context &ctx, const Data &a, EvalOptions opts = {});
inline EvalTrace evaluate(const Context &ctx, const Data &a, std::size_t budget) {
  EvalOptions o;
  o.budget = budget;
  return evaluate(ctx, a, o);
}

/// Heuristic only: an undecided trace that is stuck, cycles, or stays
/// undecided under a deeper probe.
bool undecidable_hint(const EvalTrace &trace, std::size_t probe_depth);

/// One rendered step per line, newline-terminated. The CLI `step` command
/// and the service produce exactly this text.
std::string render_trace(const EvalTrace &trace);

} // namespace coda
