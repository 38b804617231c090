#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "coda/spaces.hpp"

#include <algorithm>
#include <set>

using namespace coda;
using coda::testing::eval_str;
using coda::testing::run;
using coda::testing::stdctx;

namespace {

LogicValue logic_of(const std::string &src, std::size_t budget = 20) { return run(src, budget).logic; }

// Truth values written as source: true is (), false is an atom, undecided
// is an unreducible coda.
const char *as_source(int v) { return v == 0 ? "()" : v == 1 ? "a" : "(foo:bar)"; }

} // namespace

TEST_CASE("the logic examples classify as printed") {
  for (const char *s : {"()", "(pass:)", "null : a b c", "(and:)", "(or a:)", "(xor : a)"})
    CHECK_MESSAGE(logic_of(s) == LogicValue::True, s);
  for (const char *s : {"a b c", "first 3 : a b (foo:bar)", "(and a:b)", "(or a:b)"})
    CHECK_MESSAGE(logic_of(s) == LogicValue::False, s);
  for (const char *s : {"foo:bar", "pass:foo:bar", "last:a b (foo:bar)"})
    CHECK_MESSAGE(logic_of(s) == LogicValue::Undecided, s);
}

TEST_CASE("binary truth tables, with undecided inputs blocking") {
  struct Op {
    const char *name;
    bool (*f)(bool, bool);
  };
  const Op ops[] = {{"and", [](bool a, bool b) { return a && b; }},
                    {"or", [](bool a, bool b) { return a || b; }},
                    {"xor", [](bool a, bool b) { return a != b; }},
                    {"imply", [](bool a, bool b) { return !a || b; }}};
  for (const auto &op : ops) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const std::string src = std::string(op.name) + " " + as_source(a) + " : " + as_source(b);
        const EvalTrace t = run(src, 10);
        if (a == 2 || b == 2) {
          CHECK_MESSAGE(t.logic == LogicValue::Undecided, src);
        } else {
          const bool want = op.f(a == 0, b == 0);
          CHECK_MESSAGE(render(t.final()) == (want ? "()" : "(:)"), src);
        }
      }
    }
  }
  CHECK(eval_str("not : ()") == "(:)");
  CHECK(eval_str("not : a") == "()");
  CHECK(logic_of("not : (foo:bar)") == LogicValue::Undecided);
  CHECK(eval_str("bool : ()") == "()");
  CHECK(eval_str("bool : a b") == "(:)");
  CHECK(logic_of("bool : (foo:bar)") == LogicValue::Undecided);
}

TEST_CASE("parity of unit sequences") {
  for (std::size_t k = 0; k <= 12; ++k) {
    const Data in = unit_sequence(k);
    const EvalTrace t = evaluate(stdctx(), apply_source("aps not", in), 64);
    CHECK(t.status == EvalStatus::Fixed);
    CHECK_MESSAGE((t.logic == LogicValue::True) == (k % 2 == 0), "k = " << k);
    CHECK(t.logic != LogicValue::Undecided);
  }
}

TEST_CASE("arithmetic on naturals") {
  CHECK(eval_str("sum n : 3 5") == "(n:8)");
  CHECK(eval_str("prod n : 5 3") == "(n:15)");
  CHECK(eval_str("sort n : 5 3") == "(n:3) (n:5)");
  CHECK(eval_str("sum n :") == "(n:0)");
  CHECK(eval_str("prod n :") == "(n:1)");
  CHECK(eval_str("sum n : 12345678901234567890 1") == "(n:12345678901234567891)");
  CHECK(eval_str("max n : 3 9 2") == "(n:9)");
  CHECK(eval_str("min n : 3 9 2") == "(n:2)");
  CHECK(eval_str("type n : 3 x 4") == "(n:3) (n:4)");
  CHECK(eval_str("count : a b c") == "(n:3)");
  CHECK(eval_str("sum n : (sum n : 1 2) 4") == "(n:7)");
  // Waits for an unresolved operand instead of guessing.
  CHECK(logic_of("sum n : 3 (foo:bar)") == LogicValue::Undecided);
}

TEST_CASE("sequence operations") {
  CHECK(eval_str("first 2 : a b c d") == "a b");
  CHECK(eval_str("last : a b c") == "c");
  CHECK(eval_str("rev : a b c") == "c b a");
  CHECK(eval_str("skip 1 : a b c") == "b c");
  CHECK(eval_str("nth 2 : a b c") == "b");
  CHECK(eval_str("pass : a b") == "a b");
  CHECK(eval_str("null : a b") == "()");
  CHECK(eval_str("dup : a") == "a a");
  CHECK(eval_str("ap {rev : B} : a b") == "a b");
  CHECK(eval_str("ap {dup : B} : a b") == "a a b b");
  CHECK(eval_str("if x y : ()") == "x y");
  CHECK(eval_str("if x y : (:)") == "()");
  CHECK(logic_of("if x : (foo:bar)") == LogicValue::Undecided);
  CHECK(eval_str("= () : a") == "(:)");
  CHECK(logic_of("= (foo:bar) : (baz:qux)") == LogicValue::Undecided);
}

TEST_CASE("nat streams its prefix") {
  const EvalTrace t = run("nat : 0", 30);
  CHECK(t.status == EvalStatus::Budget);
  const Data &last = t.final();
  REQUIRE(last.size() >= 10);
  for (std::size_t i = 0; i + 1 < last.size(); ++i)
    CHECK(natural_of(last[i]) == Natural(i));
  CHECK(render(last.back()).rfind("(nat:", 0) == 0);
  // The prefix only grows from one step to the next.
  for (std::size_t s = 1; s < t.steps.size(); ++s) {
    const Data &prev = t.steps[s - 1], &cur = t.steps[s];
    if (prev.size() > 1)
      CHECK(cur.slice(0, prev.size() - 1) == prev.slice(0, prev.size() - 1));
  }
}

TEST_CASE("def and let") {
  auto t = run("def twice : {B B}");
  CHECK(t.logic == LogicValue::True);
  CHECK(eval_str("twice : x", 10, t.context) == "x x");
  auto again = run("def twice : {B}", 10, t.context);
  CHECK(render(again.final()).rfind("(error:", 0) == 0);
  CHECK(eval_str("twice : y", 10, again.context) == "y y");
  CHECK(render(run("def pass : x").final()).rfind("(error:", 0) == 0);

  auto l = run("let k : a b");
  CHECK(eval_str("k?", 10, l.context) == "a b");
  CHECK(render(run("let k : c", 10, l.context).final()).rfind("(error:", 0) == 0);
}

TEST_CASE("number encodings") {
  CHECK(natural_of(byte_atom("42")) == Natural(42));
  CHECK(natural_of(byte_atom("007")) == Natural(7));
  CHECK(natural_of(natural_coda(Natural(5))) == Natural(5));
  CHECK_FALSE(natural_of(byte_atom("4a")).has_value());
  CHECK(render(natural_coda(Natural(8))) == "(n:8)");
  CHECK(render(decimal_atom(Natural(8))) == "8");
}

TEST_CASE("builtin vocabulary") {
  const auto names = builtin_names();
  for (const char *n : {"aps", "not", "sum", "first", "def", "let", "=", "?", "nat", "berry"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  // One name per domain.
  std::set<std::string> unique(names.begin(), names.end());
  CHECK(unique.size() == names.size());
}

TEST_CASE("enumeration order") {
  EnumerationConfig cfg;
  cfg.alphabet = "ab";
  std::vector<std::string> want = {"", "a", "b", "aa", "ab", "ba", "bb", "aaa"};
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(enumerate_sequence(cfg, i) == want[i]);
  cfg.injected = {"ab"};
  CHECK(enumerate_sequence(cfg, 0) == std::string("ab"));
  CHECK(enumerate_sequence(cfg, 1) == std::string(""));
  CHECK(enumerate_sequence(cfg, 5) == std::string("ba"));
  cfg.alphabet.clear();
  cfg.injected.clear();
  CHECK(enumerate_sequence(cfg, 0) == std::string(""));
  CHECK_FALSE(enumerate_sequence(cfg, 1).has_value());
}

TEST_CASE("signed group is opt-in") {
  const Context z = install_signed_group(stdctx());
  CHECK(eval_str("sum z : (z:3) (z:-5)", 10, z) == "(z:-2)");
  CHECK(eval_str("neg z : (z:3)", 10, z) == "(z:-3)");
  CHECK(logic_of("sum z : (z:3)") == LogicValue::Undecided);
}
