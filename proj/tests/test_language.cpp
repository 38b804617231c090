#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "coda/spaces.hpp"

#include <chrono>

using namespace coda;
using coda::testing::eval_str;
using coda::testing::stdctx;

TEST_CASE("source compiles to a single code-atom coda") {
  CHECK(compile("a b") == Data{pair(Data{code_atom("a b")}, {})});
  CHECK(render(compile("first 2 : a b c d")) == "({first 2 : a b c d}:)");
  CHECK(apply_source("rev", Data{byte_atom("x")}) ==
        Data{pair(Data{code_atom("rev : B")}, Data{byte_atom("x")})});
}

TEST_CASE("colon splits at the top level and binds to the right") {
  CHECK(eval_str("x : y") == "(x:y)");
  CHECK(eval_str("a b : c d") == "(a b:c d)");
  CHECK(eval_str("a : b : c") == "(a:(b:c))");
  CHECK(eval_str("(a : b) c") == "(a:b) c");
  CHECK(eval_str("x:") == "(x:)");
  CHECK(eval_str(":x") == "(:x)");
  CHECK(eval_str(":") == "(:)");
}

TEST_CASE("single-token forms") {
  CHECK(eval_str("") == "()");
  CHECK(eval_str("()") == "()");
  CHECK(eval_str("(:)") == "(:)");
  CHECK(eval_str("{a b}") == "{a b}");
  CHECK(eval_str("<a b>") == "<a b>");
  CHECK(eval_str("x?") == "(?:x)");
  CHECK(eval_str("a*b : c") == "(a:(b:c))");
  CHECK(eval_str("rev*rev : a b c") == "a b c");
  CHECK(eval_str("hello") == "hello");
  CHECK(eval_str("   spaced   out  ") == "spaced out");
}

TEST_CASE("equality sugar and the A/B placeholders outside definitions") {
  CHECK(eval_str("= a : a") == "()");
  CHECK(eval_str("= a : b") == "(:)");
  CHECK(eval_str("A") == "()");
  CHECK(eval_str("B") == "()");
}

TEST_CASE("let quotes its body and ? reads it back") {
  auto t = coda::testing::run("let k : rev : a b");
  CHECK(render(t.final()) == "()");
  CHECK(eval_str("k?", 10, t.context) == "b a");
}

TEST_CASE("every byte string is a program") {
  std::mt19937_64 rng(2024);
  const char alphabet[] = "(){}<>=*?:/ abAB12n";
  std::uniform_int_distribution<int> pick(0, sizeof(alphabet) - 2);
  std::uniform_int_distribution<int> mode(0, 1);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    if (mode(rng)) {
      s = coda::testing::random_bytes(rng, 24);
    } else {
      std::uniform_int_distribution<std::size_t> len(0, 24);
      for (std::size_t k = 0, n = len(rng); k < n; ++k)
        s.push_back(alphabet[pick(rng)]);
    }
    EvalTrace t;
    REQUIRE_NOTHROW(t = evaluate(stdctx(), compile(s), 10));
    CHECK(t.steps.size() <= 11);
    CHECK_NOTHROW(render(t.final()));
    CHECK_NOTHROW(diagnostics(s));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("10000 random programs in " << secs << " s");
}

TEST_CASE("read_literal inverts render") {
  std::mt19937_64 rng(99);
  SampleConfig cfg;
  cfg.max_depth = 3;
  cfg.alphabet = "ab=?<>{} :()";
  for (int i = 0; i < 2000; ++i) {
    Data d = coda::random_data(rng, cfg);
    if (i % 3 == 0)
      d.push_back(code_atom(coda::testing::random_bytes(rng, 6, true)));
    if (i % 5 == 0)
      d.push_back(byte_atom(coda::testing::random_bytes(rng, 6)));
    Data back;
    REQUIRE_NOTHROW(back = read_literal(render(d)));
    CHECK(back == d);
  }
  CHECK(read_literal("(n:8)") == Data{pair(Data{byte_atom("n")}, Data{byte_atom("8")})});
  CHECK(read_literal("()").empty());
  CHECK_THROWS_AS(read_literal("(a:b"), ParseError);
  CHECK_THROWS_AS(read_literal("a:b"), ParseError);
}

TEST_CASE("diagnostics are advisory") {
  CHECK(diagnostics("a b").empty());
  CHECK_NOTHROW(diagnostics("(((("));
}
