#pragma once

#include "coda/builtins.hpp"
#include "coda/eval.hpp"
#include "coda/language.hpp"

#include <random>
#include <string>

namespace coda::testing {

inline const Context &stdctx() {
  static const Context ctx = standard_context();
  return ctx;
}

inline EvalTrace run(const std::string &src, std::size_t budget = 10, const Context &ctx = stdctx()) {
  return evaluate(ctx, compile(src), budget);
}

inline std::string eval_str(const std::string &src, std::size_t budget = 10, const Context &ctx = stdctx()) {
  return render(run(src, budget, ctx).final());
}

inline std::string random_bytes(std::mt19937_64 &rng, std::size_t max_len, bool printable = false) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> any(0, 255), print(0x20, 0x7e);
  std::string s(len(rng), '\0');
  for (auto &ch : s)
    ch = static_cast<char>(printable ? print(rng) : any(rng));
  return s;
}

// Random pure data built from () and pairing only.
inline Data random_tree(std::mt19937_64 &rng, int depth) {
  std::uniform_int_distribution<int> width(0, depth > 0 ? 3 : 0);
  Data out;
  for (int i = 0, n = width(rng); i < n; ++i)
    out.push_back(pair(random_tree(rng, depth - 1), random_tree(rng, depth - 1)));
  return out;
}

} // namespace coda::testing
