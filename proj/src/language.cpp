#include "coda/language.hpp"

namespace coda {

namespace {

constexpr std::string_view kWhitespace = " \t\n\r\v\f";

bool is_space(char c) { return kWhitespace.find(c) != std::string_view::npos; }

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(kWhitespace);
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(kWhitespace);
  return s.substr(b, e - b + 1);
}

struct GroupEnd {
  std::size_t end; ///< one past the group
  bool closed;
};

// Groups are (...), {...} and <...>. Parentheses may nest any group; braces
// only count braces; angle literals end at the first '>'. An unclosed group
// runs to the end of the text.
GroupEnd skip_group(std::string_view t, std::size_t i) {
  const char open = t[i];
  if (open == '<') {
    auto close = t.find('>', i + 1);
    if (close == std::string_view::npos)
      return {t.size(), false};
    return {close + 1, true};
  }
  if (open == '{') {
    int depth = 0;
    for (std::size_t j = i; j < t.size(); ++j) {
      if (t[j] == '{')
        ++depth;
      else if (t[j] == '}' && --depth == 0)
        return {j + 1, true};
    }
    return {t.size(), false};
  }
  std::size_t j = i + 1;
  while (j < t.size()) {
    const char c = t[j];
    if (c == ')')
      return {j + 1, true};
    if (c == '(' || c == '{' || c == '<')
      j = skip_group(t, j).end;
    else
      ++j;
  }
  return {t.size(), false};
}

bool opens_group(char c) { return c == '(' || c == '{' || c == '<'; }

std::size_t find_top_level(std::string_view t, char target) {
  for (std::size_t i = 0; i < t.size();) {
    if (t[i] == target)
      return i;
    if (opens_group(t[i]))
      i = skip_group(t, i).end;
    else
      ++i;
  }
  return std::string_view::npos;
}

std::vector<std::string_view> split_tokens(std::string_view t) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < t.size()) {
    while (i < t.size() && is_space(t[i]))
      ++i;
    if (i == t.size())
      break;
    std::size_t start = i;
    while (i < t.size() && !is_space(t[i]))
      i = opens_group(t[i]) ? skip_group(t, i).end : i + 1;
    tokens.push_back(t.substr(start, i - start));
  }
  return tokens;
}

const Coda &eq_atom() {
  static const Coda c = byte_atom("=");
  return c;
}
const Coda &query_atom() {
  static const Coda c = byte_atom("?");
  return c;
}

class Compiler {
public:
  Compiler(const Data &arg, const Data &input) : arg_(arg), input_(input) {}

  Data run(std::string_view text) const {
    const std::string_view t = trim(text);
    if (t.empty())
      return {};

    if (auto colon = find_top_level(t, ':'); colon != std::string_view::npos)
      return pairing(trim(t.substr(0, colon)), trim(t.substr(colon + 1)));

    auto tokens = split_tokens(t);
    if (tokens.size() > 1) {
      Data out;
      out.reserve(tokens.size());
      for (auto tok : tokens)
        out.push_back(sub(tok));
      return out;
    }
    return token(t);
  }

private:
  // ({s} A : B)
  Coda sub(std::string_view s) const { return pair(concat(Data{code_atom(s)}, arg_), input_); }
  Data side(std::string_view s) const {
    s = trim(s);
    if (s.empty())
      return {};
    return Data{sub(s)};
  }

  Data pairing(std::string_view left, std::string_view right) const {
    const auto left_tokens = split_tokens(left);
    // `let NAME : body` keeps the body as source so the binding is the
    // unevaluated program.
    if (left_tokens.size() == 2 && left_tokens[0] == "let")
      return Data{pair(side(left), Data{code_atom(right)})};

    if (left_tokens.size() == 1 && find_top_level(left, '=') == std::string_view::npos) {
      if (auto star = find_top_level(left, '*'); star != std::string_view::npos) {
        // P*Q : R  ->  P : (Q : R)
        std::string rest(left.substr(star + 1));
        rest += ':';
        rest += right;
        return Data{pair(side(left.substr(0, star)), side(rest))};
      }
    }
    return Data{pair(side(left), side(right))};
  }

  Data token(std::string_view t) const {
    if (t == "=")
      return Data{eq_atom()};
    if (t == "?")
      return Data{query_atom()};
    if (auto eq = find_top_level(t, '='); eq != std::string_view::npos) {
      Data lhs{eq_atom()};
      lhs.append(side(t.substr(0, eq)));
      return Data{pair(std::move(lhs), side(t.substr(eq + 1)))};
    }
    if (auto star = find_top_level(t, '*'); star != std::string_view::npos) {
      std::string rest(t.substr(star + 1));
      rest += ':';
      return Data{pair(side(t.substr(0, star)), side(rest))};
    }
    if (t.back() == '?' && find_top_level(t, '?') == t.size() - 1)
      return Data{pair(Data{query_atom()}, side(t.substr(0, t.size() - 1)))};

    if (opens_group(t[0])) {
      auto [end, closed] = skip_group(t, 0);
      if (end == t.size()) {
        std::string_view inner = t.substr(1, t.size() - 1 - (closed ? 1 : 0));
        switch (t[0]) {
        case '(':
          return side(inner);
        case '{':
          return Data{code_atom(inner)};
        default:
          return encode_bytes(inner);
        }
      }
    }
    if (t == "A")
      return arg_;
    if (t == "B")
      return input_;
    return encode_bytes(t);
  }

  const Data &arg_;
  const Data &input_;
};

} // namespace

Data compile(std::string_view source) { return Data{pair(Data{code_atom(source)}, {})}; }

Data apply_source(std::string_view src, const Data &input) {
  std::string text(src);
  text += " : B";
  return Data{pair(Data{code_atom(text)}, input)};
}

std::optional<Data> language_rule(const Coda &c) {
  if (c.left().empty())
    return std::nullopt;
  auto text = c.left()[0].code();
  if (!text)
    return std::nullopt;
  const Data arg = c.left().slice(1);
  return Compiler(arg, c.right()).run(*text);
}

Definition code_atom_definition() { return identity_definition(Data{lang_mark()}, "{}"); }

Definition language_definition() {
  Definition d;
  d.domain = Data{lang_mark()};
  d.name = "{...}";
  d.kind = RuleKind::Native;
  d.family = true;
  d.rule = [](const Coda &c, RuleEnv &) { return language_rule(c); };
  return d;
}

std::vector<std::string> diagnostics(std::string_view source) {
  std::vector<std::string> out;
  if (source.find('/') != std::string_view::npos)
    out.emplace_back("'/' is reserved and currently treated as an ordinary character");
  return out;
}

namespace {

class LiteralReader {
public:
  explicit LiteralReader(std::string_view text) : t_(text) {}

  Data parse() {
    skip_ws();
    if (t_.substr(pos_) == "()")
      return {};
    Data d = sequence();
    skip_ws();
    if (pos_ != t_.size())
      fail("unexpected character");
    return d;
  }

private:
  [[noreturn]] void fail(const std::string &what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < t_.size() && is_space(t_[pos_]))
      ++pos_;
  }

  bool at_delimiter() const {
    return pos_ == t_.size() || is_space(t_[pos_]) || t_[pos_] == ':' || t_[pos_] == ')';
  }

  Data sequence() {
    Data out;
    for (;;) {
      skip_ws();
      if (pos_ == t_.size() || t_[pos_] == ':' || t_[pos_] == ')')
        return out;
      item(out);
    }
  }

  void item(Data &out) {
    const char c = t_[pos_];
    if (c == '(') {
      ++pos_;
      skip_ws();
      if (pos_ < t_.size() && t_[pos_] == ')') {
        ++pos_;
        return;
      }
      Data left = sequence();
      if (pos_ == t_.size() || t_[pos_] != ':')
        fail("expected ':'");
      ++pos_;
      Data right = sequence();
      if (pos_ == t_.size() || t_[pos_] != ')')
        fail("expected ')'");
      ++pos_;
      out.push_back(pair(std::move(left), std::move(right)));
      return;
    }
    if (c == '{') {
      auto [end, closed] = skip_group(t_, pos_);
      if (!closed)
        fail("unterminated '{'");
      out.push_back(code_atom(t_.substr(pos_ + 1, end - pos_ - 2)));
      pos_ = end;
      return;
    }
    if (c == '<') {
      auto close = t_.find('>', pos_ + 1);
      if (close == std::string_view::npos)
        fail("unterminated '<'");
      out.push_back(byte_atom(t_.substr(pos_ + 1, close - pos_ - 1)));
      pos_ = close + 1;
      return;
    }
    if (c == '=' || c == '?') {
      ++pos_;
      if (!at_delimiter())
        fail("unexpected character after operator");
      out.push_back(byte_atom(std::string_view(&c, 1)));
      return;
    }
    const std::size_t start = pos_;
    while (pos_ < t_.size() && is_word_byte(static_cast<unsigned char>(t_[pos_])))
      ++pos_;
    if (pos_ == start)
      fail("unexpected character");
    out.push_back(byte_atom(t_.substr(start, pos_ - start)));
  }

  std::string_view t_;
  std::size_t pos_ = 0;
};

} // namespace

Data read_literal(std::string_view text) { return LiteralReader(text).parse(); }

} // namespace coda
