#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace coda;
using coda::testing::random_tree;

TEST_CASE("concatenation is a monoid with () as identity") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Data a = random_tree(rng, 3), b = random_tree(rng, 3), c = random_tree(rng, 3);
    CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
    CHECK(concat(Data{}, a) == a);
    CHECK(concat(a, Data{}) == a);
    CHECK(concat(a, b).size() == a.size() + b.size());
  }
}

TEST_CASE("pairing is injective") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Data a = random_tree(rng, 2), b = random_tree(rng, 2), c = random_tree(rng, 2), d = random_tree(rng, 2);
    bool same = pair(a, b) == pair(c, d);
    CHECK(same == (a == c && b == d));
  }
}

TEST_CASE("equality is an equivalence and matches rebuilding") {
  std::mt19937_64 rng(13);
  std::vector<Data> pool;
  for (int i = 0; i < 60; ++i)
    pool.push_back(random_tree(rng, 2));
  for (const auto &x : pool) {
    CHECK(x == x);
    for (const auto &y : pool) {
      CHECK((x == y) == (y == x));
      CHECK((x == y) == (render(x) == render(y)));
      for (const auto &z : pool)
        if (x == y && y == z)
          CHECK(x == z);
    }
  }
}

TEST_CASE("interning shares structurally identical codas") {
  Coda a = pair(Data{unit()}, Data{unit(), unit()});
  Coda b = pair(Data{pair({}, {})}, Data{pair({}, {}), pair({}, {})});
  CHECK(a == b);
  CHECK(a.id() == b.id());
  CHECK(unit() == pair({}, {}));
  CHECK(bit0() == pair(Data{unit()}, {}));
  CHECK(bit1() == pair(Data{unit()}, Data{unit()}));
}

TEST_CASE("byte atoms") {
  Coda h = byte_atom("h");
  // 1-bit marker, then 8 bits of 'h' = 0x68 = 01101000
  REQUIRE(h.left().size() == 9);
  CHECK(h.left()[0] == bit1());
  const bool bits[] = {false, true, true, false, true, false, false, false};
  for (int i = 0; i < 8; ++i)
    CHECK(h.left()[i + 1] == (bits[i] ? bit1() : bit0()));
  CHECK(h.right().empty());
  CHECK(h.bytes() == std::optional<std::string_view>("h"));
  CHECK(decode_bytes(encode_bytes("hello")) == std::optional<std::string>("hello"));
  CHECK(byte_atom("") != byte_atom("a"));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    std::string s = coda::testing::random_bytes(rng, 12);
    CHECK(decode_bytes(encode_bytes(s)) == std::optional<std::string>(s));
  }
}

TEST_CASE("code atoms sit under the language marker") {
  Coda c = code_atom("a b");
  CHECK(c.left() == Data{lang_mark()});
  CHECK(c.right() == encode_bytes("a b"));
  CHECK(c.code() == std::optional<std::string_view>("a b"));
  CHECK(domain_of(c) == Data{lang_mark()});
}

TEST_CASE("rendering") {
  CHECK(render(Data{}) == "()");
  CHECK(render(unit()) == "(:)");
  CHECK(render(Data{unit(), unit()}) == "(:) (:)");
  CHECK(render(byte_atom("abc")) == "abc");
  CHECK(render(byte_atom("a b")) == "<a b>");
  CHECK(render(byte_atom("")) == "<>");
  CHECK(render(byte_atom("=")) == "=");
  CHECK(render(code_atom("x : y")) == "{x : y}");
  CHECK(render(pair(encode_bytes("n"), encode_bytes("8"))) == "(n:8)");
  CHECK(render(pair({}, Data{byte_atom("a"), byte_atom("b")})) == "(:a b)");
}

TEST_CASE("slices and sizes") {
  Data d{byte_atom("a"), byte_atom("b"), byte_atom("c")};
  CHECK(d.slice(1) == Data{byte_atom("b"), byte_atom("c")});
  CHECK(d.slice(0, 0).empty());
  CHECK(tree_size(Data{unit()}) == 1);
  CHECK(tree_size(Data{bit1()}) == 3);
}

TEST_CASE("bootstrap inertness") {
  CHECK(unit().bootstrap_inert());
  CHECK(bit0().bootstrap_inert());
  CHECK(byte_atom("xy").bootstrap_inert());
  CHECK_FALSE(pair(Data{byte_atom("first")}, Data{}).bootstrap_inert());
}
