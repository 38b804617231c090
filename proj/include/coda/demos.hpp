#pragma once

// Scripted runs of the consistency expression and the four paradoxes.
// Each demo owns a private context and reports a verdict that can be
// checked mechanically.

#include "coda/context.hpp"
#include "coda/eval.hpp"

#include <map>
#include <string>
#include <vector>

namespace coda {

enum class Verdict { TrueData, FalseData, Undecided, UndecidableHint, NotSelfIncluding };
std::string_view to_string(Verdict v);

struct DemoReport {
  std::string name;
  std::string source;
  EvalTrace trace;
  Verdict verdict = Verdict::Undecided;
  /// Rendered key steps.
  std::vector<std::string> narrative;
  /// Demo-specific measurements, e.g. "nesting" for the Godel demo.
  std::map<std::string, std::string> facts;
  /// Every step classified Undecided.
  bool undecided_throughout = false;

  std::string text() const;
  std::string json() const;
};

struct DemoOptions {
  std::size_t budget = 0;     ///< 0 picks a per-demo default
  std::size_t depth = 9;      ///< Godel nesting
  std::string alphabet;       ///< empty picks a per-demo default
  std::size_t max_len = 26;   ///< Berry length bound
  bool inject_self = false;   ///< consistency: enumerate the expression's own text first
};

/// ap {xor (coda:B) : (not:coda:B)} : allByteSequences :
DemoReport consistency_demo(std::size_t budget, const std::string &alphabet = "ab:", bool inject_self = false);
/// let G : not : G? then G?, evaluated until `depth` nots surround the
/// unexpanded body.
DemoReport godel_demo(std::size_t depth);
/// berry:posint:coda:bytes:<max_len>. When the text fits the bound it is
/// enumerated first, so it re-enters its own input.
DemoReport berry_demo(std::size_t max_len, const std::string &alphabet = "12", std::size_t budget = 0);
DemoReport curry_demo(std::size_t depth);
DemoReport yablo_demo(std::size_t depth);

/// berry : 1 2 3
DemoReport berry_control();
/// imply () : () and imply () : a
std::vector<DemoReport> curry_controls();

/// The Godel line after `depth` unfoldings.
std::string godel_expected(std::size_t depth);

/// Smallest positive integer missing from the decimal strings of length at
/// most max_len over alphabet (brute force, for small bounds).
std::string berry_oracle(std::size_t max_len, const std::string &alphabet);

/// consistency, godel, berry, curry or yablo. Throws std::invalid_argument.
DemoReport run_demo(const std::string &name, const DemoOptions &opts);
std::vector<std::string> demo_names();

} // namespace coda
