#include "coda/builtins.hpp"

#include "coda/language.hpp"

#include <algorithm>
#include <unordered_set>

namespace coda {

namespace {

using Integer = boost::multiprecision::cpp_int;
using Rule = std::optional<Data>;

const Coda &atom_n() {
  static const Coda c = byte_atom("n");
  return c;
}
const Coda &atom_z() {
  static const Coda c = byte_atom("z");
  return c;
}
const Coda &atom_error() {
  static const Coda c = byte_atom("error");
  return c;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<Integer> parse_signed(std::string_view s) {
  bool negative = !s.empty() && s[0] == '-';
  if (negative)
    s.remove_prefix(1);
  if (!all_digits(s))
    return std::nullopt;
  Integer v{std::string(s)};
  return negative ? Integer(-v) : v;
}

/// (tag:text) with a byte-atom text.
std::optional<std::string_view> tagged_text(const Coda &c, const Coda &tag) {
  if (c.left().size() != 1 || c.left()[0] != tag || c.right().size() != 1)
    return std::nullopt;
  return c.right()[0].bytes();
}

std::optional<Integer> signed_of(const Coda &c) {
  if (auto v = natural_of(c))
    return Integer(*v);
  if (auto s = c.bytes())
    return parse_signed(*s);
  if (auto s = tagged_text(c, atom_z()))
    return parse_signed(*s);
  return std::nullopt;
}

Coda signed_coda(const Integer &v) { return pair(Data{atom_z()}, Data{byte_atom(v.str())}); }

class Rules {
public:
  explicit Rules(Context ctx) : ctx_(std::move(ctx)) {}

  template <class F> void add(const char *name, F fn) {
    Definition d;
    d.domain = Data{byte_atom(name)};
    d.name = name;
    d.kind = RuleKind::Native;
    d.rule = std::move(fn);
    ctx_ = ctx_.extend(std::move(d));
    names_.emplace_back(name);
  }
  void identity(const char *name) { ctx_ = ctx_.extend(identity_definition(Data{byte_atom(name)}, name)); }

  Context take() { return std::move(ctx_); }
  const std::vector<std::string> &names() const { return names_; }

private:
  Context ctx_;
  std::vector<std::string> names_;
};

// Argument A and input B of (name A : B).
Data arg_of(const Coda &c) { return c.left().slice(1); }
Data head_of(const Coda &c) { return c.left(); }

bool is_atom(const RuleEnv &env, const Coda &c) { return env.context().is_atom(c); }

bool all_atoms(const RuleEnv &env, const Data &d) {
  return std::all_of(d.begin(), d.end(), [&](const Coda &c) { return is_atom(env, c); });
}

std::size_t leading_atoms(const RuleEnv &env, const Data &d) {
  std::size_t k = 0;
  while (k < d.size() && is_atom(env, d[k]))
    ++k;
  return k;
}

std::size_t trailing_atoms(const RuleEnv &env, const Data &d) {
  std::size_t k = 0;
  while (k < d.size() && is_atom(env, d[d.size() - 1 - k]))
    ++k;
  return k;
}

LogicValue logic(const RuleEnv &env, const Data &d) { return classify(d, env.context()); }

Data truth(bool v) { return v ? Data{} : Data{unit()}; }

/// Numeric argument: empty means `fallback`; otherwise exactly one natural.
std::optional<Natural> count_arg(const Data &a, std::optional<Natural> fallback) {
  if (a.empty())
    return fallback;
  if (a.size() != 1)
    return std::nullopt;
  return natural_of(a[0]);
}

std::size_t clamp_size(const Natural &n) {
  return n > Natural(SIZE_MAX / 2) ? SIZE_MAX / 2 : static_cast<std::size_t>(n);
}

/// Maps every atom of the input through f, wrapping pending items as
/// (head : p). A lone pending item waits.
template <class F> Rule distribute(const Coda &c, const RuleEnv &env, F f) {
  const Data &b = c.right();
  if (b.empty())
    return Data{};
  if (b.size() == 1 && !is_atom(env, b[0]))
    return std::nullopt;
  Data out;
  for (const auto &item : b) {
    if (is_atom(env, item))
      out.append(f(item));
    else
      out.push_back(pair(head_of(c), Data{item}));
  }
  return out;
}

template <class F> Rule binary_logic(const Coda &c, const RuleEnv &env, F op) {
  auto a = logic(env, arg_of(c));
  auto b = logic(env, c.right());
  if (a == LogicValue::Undecided || b == LogicValue::Undecided)
    return std::nullopt;
  return truth(op(a == LogicValue::True, b == LogicValue::True));
}

// `sum`, `prod` and friends take the number type as their argument.
enum class NumType { Natural, Signed };

std::optional<NumType> num_type(const Coda &c, const RuleEnv &env) {
  Data a = arg_of(c);
  if (a.size() != 1)
    return std::nullopt;
  if (a[0] == atom_n())
    return NumType::Natural;
  if (a[0] == atom_z() && env.context().has_domain(Data{atom_z()}))
    return NumType::Signed;
  return std::nullopt;
}

std::optional<Integer> number_of(NumType t, const Coda &c) {
  if (t == NumType::Natural) {
    if (auto v = natural_of(c))
      return Integer(*v);
    return std::nullopt;
  }
  return signed_of(c);
}

Coda number_coda(NumType t, const Integer &v) { return t == NumType::Natural ? natural_coda(v) : signed_coda(v); }

template <class F> Rule fold_numbers(const Coda &c, const RuleEnv &env, Integer neutral, F op) {
  auto t = num_type(c, env);
  if (!t || !all_atoms(env, c.right()))
    return std::nullopt;
  Integer acc = neutral;
  for (const auto &item : c.right())
    if (auto v = number_of(*t, item))
      acc = op(acc, *v);
  return Data{number_coda(*t, acc)};
}

std::vector<Integer> numbers_in(NumType t, const Data &d) {
  std::vector<Integer> out;
  for (const auto &item : d)
    if (auto v = number_of(t, item))
      out.push_back(*v);
  return out;
}

/// Keeps the representation of the input: a decimal atom stays a decimal
/// atom, (n:k) stays tagged.
Coda successor_like(const Coda &c, const Natural &v) { return c.bytes() ? decimal_atom(v) : natural_coda(v); }

Rule first_rule(const Coda &c, RuleEnv &env) {
  auto n = count_arg(arg_of(c), Natural(1));
  if (!n)
    return std::nullopt;
  const Data &b = c.right();
  std::size_t want = clamp_size(*n);
  if (want == 0)
    return Data{};
  std::size_t k = leading_atoms(env, b);
  if (k >= want)
    return b.slice(0, want);
  if (k == b.size())
    return b;
  if (k == 0)
    return std::nullopt;
  Data out = b.slice(0, k);
  Data head{c.left()[0], decimal_atom(Natural(want - k))};
  out.push_back(pair(std::move(head), b.slice(k)));
  return out;
}

Rule last_rule(const Coda &c, RuleEnv &env) {
  auto n = count_arg(arg_of(c), Natural(1));
  if (!n)
    return std::nullopt;
  const Data &b = c.right();
  std::size_t want = clamp_size(*n);
  if (want == 0)
    return Data{};
  std::size_t k = trailing_atoms(env, b);
  if (k >= want)
    return b.slice(b.size() - want);
  if (k == b.size())
    return b;
  if (k == 0)
    return std::nullopt;
  Data head{c.left()[0], decimal_atom(Natural(want - k))};
  Data out{pair(std::move(head), b.slice(0, b.size() - k))};
  out.append(b.slice(b.size() - k));
  return out;
}

Rule skip_rule(const Coda &c, RuleEnv &env) {
  auto n = count_arg(arg_of(c), Natural(1));
  if (!n)
    return std::nullopt;
  const Data &b = c.right();
  std::size_t drop = clamp_size(*n);
  if (drop == 0)
    return b;
  std::size_t k = leading_atoms(env, b);
  if (k >= drop)
    return b.slice(drop);
  if (k == b.size())
    return Data{};
  if (k == 0)
    return std::nullopt;
  Data head{c.left()[0], decimal_atom(Natural(drop - k))};
  return Data{pair(std::move(head), b.slice(k))};
}

Rule nth_rule(const Coda &c, RuleEnv &env) {
  auto n = count_arg(arg_of(c), Natural(1));
  if (!n || *n == 0)
    return std::nullopt;
  const Data &b = c.right();
  std::size_t idx = clamp_size(*n);
  std::size_t k = leading_atoms(env, b);
  if (k >= idx)
    return Data{b[idx - 1]};
  if (k == b.size())
    return Data{};
  return std::nullopt;
}

Rule rev_rule(const Coda &c, RuleEnv &env) {
  const Data &b = c.right();
  if (b.size() == 1 && !is_atom(env, b[0]))
    return std::nullopt;
  Data out;
  out.reserve(b.size());
  for (std::size_t i = b.size(); i-- > 0;) {
    if (is_atom(env, b[i]))
      out.push_back(b[i]);
    else
      out.push_back(pair(Data{c.left()[0]}, Data{b[i]}));
  }
  return out;
}

Rule aps_rule(const Coda &c, RuleEnv &env) {
  const Data &b = c.right();
  if (b.empty())
    return Data{};
  if (!all_atoms(env, b))
    return std::nullopt;
  const Data a = arg_of(c);
  Data acc{b.back()};
  for (std::size_t i = b.size() - 1; i-- > 0;) {
    Data left = a;
    left.push_back(b[i]);
    acc = Data{pair(std::move(left), std::move(acc))};
  }
  return acc;
}

Rule ap2_rule(const Coda &c, RuleEnv &env) {
  const Data a = arg_of(c);
  const Data &b = c.right();
  if (a.empty() || !all_atoms(env, a) || !all_atoms(env, b))
    return std::nullopt;
  Data out;
  const std::size_t n = std::min(a.size() - 1, b.size());
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(pair(Data{a[0], a[i + 1]}, Data{b[i]}));
  return out;
}

Rule equal_rule(const Coda &c, RuleEnv &env) {
  const Data a = arg_of(c);
  const Data &b = c.right();
  if (a == b)
    return Data{};
  auto la = logic(env, a), lb = logic(env, b);
  if ((la == LogicValue::True && lb == LogicValue::False) || (la == LogicValue::False && lb == LogicValue::True))
    return Data{unit()};
  if (env.context().is_ground(a) && env.context().is_ground(b))
    return Data{unit()};
  return std::nullopt;
}

/// The single atom naming a definition or binding; absent while pending.
/// `bad` is set when the argument can never be a name.
std::optional<Coda> name_arg(const Coda &c, const RuleEnv &env, bool &bad) {
  const Data a = arg_of(c);
  bad = false;
  if (!all_atoms(env, a))
    return std::nullopt;
  if (a.size() != 1) {
    bad = true;
    return std::nullopt;
  }
  return a[0];
}

std::string display_name(const Coda &name) {
  if (auto s = name.bytes())
    return std::string(*s);
  return render(name);
}

Rule def_rule(const Coda &c, RuleEnv &env) {
  bool bad = false;
  auto name = name_arg(c, env, bad);
  if (bad)
    return Data{error_datum("def needs exactly one name")};
  if (!name || !env.context().is_ground(c.right()))
    return std::nullopt;
  try {
    auto def = compiled_definition(*name, display_name(*name), c.right());
    env.working() = env.working()
                        .extend(std::move(def))
                        .with_record({UserRecord::Kind::Def, display_name(*name), c.right()});
  } catch (const std::exception &e) {
    return Data{error_datum(e.what())};
  }
  env.note_effect();
  return Data{};
}

Rule let_rule(const Coda &c, RuleEnv &env) {
  bool bad = false;
  auto name = name_arg(c, env, bad);
  if (bad)
    return Data{error_datum("let needs exactly one name")};
  if (!name)
    return std::nullopt;
  auto text = name->bytes();
  if (!text)
    return Data{error_datum("let needs a byte-string name")};
  Data value = c.right();
  if (value.size() == 1)
    if (auto src = value[0].code())
      value = compile(*src);
  try {
    env.working() = env.working()
                        .bind(std::string(*text), value)
                        .with_record({UserRecord::Kind::Let, std::string(*text), value});
  } catch (const std::exception &e) {
    return Data{error_datum(e.what())};
  }
  env.note_effect();
  return Data{};
}

Rule query_rule(const Coda &c, RuleEnv &env) {
  const Data &b = c.right();
  if (b.size() != 1)
    return std::nullopt;
  auto name = b[0].bytes();
  if (!name)
    return std::nullopt;
  if (const Data *value = env.context().binding(*name))
    return *value;
  return std::nullopt;
}

Rule nat_rule(const Coda &c, RuleEnv &env) {
  const Data &b = c.right();
  if (b.size() != 1 || !is_atom(env, b[0]))
    return std::nullopt;
  auto v = natural_of(b[0]);
  if (!v)
    return std::nullopt;
  return Data{b[0], pair(Data{c.left()[0]}, Data{successor_like(b[0], *v + 1)})};
}

Rule all_byte_sequences_rule(const Coda &c, RuleEnv &env) {
  auto k = count_arg(arg_of(c), Natural(0));
  if (!k)
    return std::nullopt;
  std::size_t index = clamp_size(*k);
  auto s = enumerate_sequence(env.context().enumeration(), index);
  if (!s)
    return Data{};
  Data out{byte_atom(*s)};
  out.push_back(pair(Data{c.left()[0], decimal_atom(Natural(index + 1))}, {}));
  return out;
}

// (bytes : N) starts at index 0; (bytes k : N) emits the k-th sequence if
// it is short enough. Length-lex order means the first too-long sequence
// past the injected ones ends the stream.
Rule bytes_rule(const Coda &c, RuleEnv &env) {
  auto k = count_arg(arg_of(c), Natural(0));
  const Data &b = c.right();
  if (!k || b.size() != 1 || !is_atom(env, b[0]))
    return std::nullopt;
  auto limit = natural_of(b[0]);
  if (!limit)
    return std::nullopt;
  const auto &cfg = env.context().enumeration();
  std::size_t index = clamp_size(*k);
  auto s = enumerate_sequence(cfg, index);
  if (!s)
    return Data{};
  Coda next = pair(Data{c.left()[0], decimal_atom(Natural(index + 1))}, b);
  if (Natural(s->size()) <= *limit)
    return Data{byte_atom(*s), next};
  if (index < cfg.injected.size())
    return Data{next};
  return Data{};
}

Rule berry_rule(const Coda &c, RuleEnv &env) {
  if (!env.context().is_ground(c.right()))
    return std::nullopt;
  std::vector<Natural> seen;
  for (const auto &item : c.right())
    if (auto v = natural_of(item); v && *v > 0)
      seen.push_back(*v);
  std::sort(seen.begin(), seen.end());
  Natural candidate = 1;
  for (const auto &v : seen) {
    if (v == candidate)
      ++candidate;
    else if (v > candidate)
      break;
  }
  return Data{decimal_atom(candidate)};
}

} // namespace

std::optional<Natural> natural_of(const Coda &c) {
  std::optional<std::string_view> text = c.bytes();
  if (!text)
    text = tagged_text(c, atom_n());
  if (!text || !all_digits(*text))
    return std::nullopt;
  return Natural(std::string(*text));
}

Coda natural_coda(const Natural &v) { return pair(Data{atom_n()}, Data{decimal_atom(v)}); }
Coda decimal_atom(const Natural &v) { return byte_atom(v.str()); }

Coda error_datum(std::string_view message) { return pair(Data{atom_error()}, Data{byte_atom(message)}); }

Definition compiled_definition(const Coda &name, std::string display, Data body) {
  Definition d;
  d.domain = Data{name};
  d.name = std::move(display);
  d.kind = RuleKind::Compiled;
  d.body = body;
  d.rule = [body](const Coda &c, RuleEnv &) -> Rule {
    const Data arg = c.left().slice(1);
    Data out;
    out.reserve(body.size());
    for (const auto &item : body) {
      if (auto src = item.code())
        out.push_back(pair(concat(Data{item}, arg), c.right()));
      else
        out.push_back(item);
    }
    return out;
  };
  return d;
}

std::optional<std::string> enumerate_sequence(const EnumerationConfig &cfg, std::size_t index) {
  std::vector<std::string> injected;
  std::unordered_set<std::string> skip;
  for (const auto &s : cfg.injected)
    if (skip.insert(s).second)
      injected.push_back(s);
  if (index < injected.size())
    return injected[index];
  std::size_t remaining = index - injected.size();

  std::string alphabet;
  std::unordered_set<char> used;
  for (char ch : cfg.alphabet)
    if (used.insert(ch).second)
      alphabet.push_back(ch);
  if (alphabet.empty())
    return remaining == 0 && !skip.count("") ? std::optional<std::string>("") : std::nullopt;

  // Walk length-lex order, skipping injected strings.
  const std::size_t base = alphabet.size();
  std::vector<std::size_t> digits; // current string as alphabet indices
  for (;;) {
    std::string s;
    for (auto d : digits)
      s.push_back(alphabet[d]);
    if (!skip.count(s)) {
      if (remaining == 0)
        return s;
      --remaining;
    }
    std::size_t i = digits.size();
    while (i > 0 && digits[i - 1] + 1 == base)
      digits[--i] = 0;
    if (i == 0)
      digits.insert(digits.begin(), 0);
    else
      ++digits[i - 1];
  }
}

Context install_builtins(const Context &ctx) {
  Context base = ctx;
  if (!base.has_bootstrap())
    base = base.extend(identity_definition({}, "()"))
               .extend(identity_definition(Data{unit()}, "(:)"))
               .extend(identity_definition(Data{bit0()}, "0-bit"))
               .extend(identity_definition(Data{bit1()}, "1-bit"));
  base = base.extend(code_atom_definition()).extend(language_definition());

  Rules r(base);

  r.add("pass", [](const Coda &c, RuleEnv &) -> Rule { return c.right(); });
  r.add("null", [](const Coda &, RuleEnv &) -> Rule { return Data{}; });
  r.add("rev", rev_rule);
  r.add("first", first_rule);
  r.add("last", last_rule);
  r.add("skip", skip_rule);
  r.add("nth", nth_rule);
  r.add("if", [](const Coda &c, RuleEnv &env) -> Rule {
    switch (logic(env, c.right())) {
    case LogicValue::True: return arg_of(c);
    case LogicValue::False: return Data{};
    default: return std::nullopt;
    }
  });
  r.add("ap", [](const Coda &c, RuleEnv &env) -> Rule {
    const Data a = arg_of(c);
    return distribute(c, env, [&](const Coda &b) { return Data{pair(a, Data{b})}; });
  });
  r.add("app", [](const Coda &c, RuleEnv &env) -> Rule {
    const Data a = arg_of(c);
    if (!all_atoms(env, a))
      return std::nullopt;
    Data out;
    for (const auto &f : a)
      out.push_back(pair(Data{f}, c.right()));
    return out;
  });
  r.add("ap2", ap2_rule);
  r.add("aps", aps_rule);
  r.add("apif", [](const Coda &c, RuleEnv &env) -> Rule {
    const Data a = arg_of(c);
    static const Coda if_atom = byte_atom("if");
    return distribute(c, env, [&](const Coda &b) { return Data{pair(Data{if_atom, b}, Data{pair(a, Data{b})})}; });
  });

  r.add("not", [](const Coda &c, RuleEnv &env) -> Rule {
    switch (logic(env, c.right())) {
    case LogicValue::True: return Data{unit()};
    case LogicValue::False: return Data{};
    default: return std::nullopt;
    }
  });
  r.add("and", [](const Coda &c, RuleEnv &env) { return binary_logic(c, env, [](bool a, bool b) { return a && b; }); });
  r.add("or", [](const Coda &c, RuleEnv &env) { return binary_logic(c, env, [](bool a, bool b) { return a || b; }); });
  r.add("xor", [](const Coda &c, RuleEnv &env) { return binary_logic(c, env, [](bool a, bool b) { return a != b; }); });
  r.add("imply", [](const Coda &c, RuleEnv &env) { return binary_logic(c, env, [](bool a, bool b) { return !a || b; }); });
  r.add("bool", [](const Coda &c, RuleEnv &env) -> Rule {
    switch (logic(env, c.right())) {
    case LogicValue::True: return Data{};
    case LogicValue::False: return Data{unit()};
    default: return std::nullopt;
    }
  });

  r.add("=", equal_rule);
  r.add("def", def_rule);
  r.add("let", let_rule);
  r.add("?", query_rule);

  r.add("nat", nat_rule);
  r.add("sum", [](const Coda &c, RuleEnv &env) {
    return fold_numbers(c, env, 0, [](const Integer &a, const Integer &b) { return a + b; });
  });
  r.add("prod", [](const Coda &c, RuleEnv &env) {
    return fold_numbers(c, env, 1, [](const Integer &a, const Integer &b) { return a * b; });
  });
  r.add("sort", [](const Coda &c, RuleEnv &env) -> Rule {
    auto t = num_type(c, env);
    if (!t || !all_atoms(env, c.right()))
      return std::nullopt;
    auto values = numbers_in(*t, c.right());
    std::sort(values.begin(), values.end());
    Data out;
    for (const auto &v : values)
      out.push_back(number_coda(*t, v));
    return out;
  });
  r.add("type", [](const Coda &c, RuleEnv &env) -> Rule {
    auto t = num_type(c, env);
    if (!t)
      return std::nullopt;
    return distribute(c, env, [&](const Coda &b) {
      auto v = number_of(*t, b);
      return v ? Data{number_coda(*t, *v)} : Data{};
    });
  });
  r.add("max", [](const Coda &c, RuleEnv &env) -> Rule {
    auto t = num_type(c, env);
    if (!t || !all_atoms(env, c.right()))
      return std::nullopt;
    auto values = numbers_in(*t, c.right());
    if (values.empty())
      return Data{};
    return Data{number_coda(*t, *std::max_element(values.begin(), values.end()))};
  });
  r.add("min", [](const Coda &c, RuleEnv &env) -> Rule {
    auto t = num_type(c, env);
    if (!t || !all_atoms(env, c.right()))
      return std::nullopt;
    auto values = numbers_in(*t, c.right());
    if (values.empty())
      return Data{};
    return Data{number_coda(*t, *std::min_element(values.begin(), values.end()))};
  });
  r.add("count", [](const Coda &c, RuleEnv &env) -> Rule {
    if (!all_atoms(env, c.right()))
      return std::nullopt;
    return Data{natural_coda(Natural(c.right().size()))};
  });
  r.add("dup", [](const Coda &c, RuleEnv &) -> Rule {
    auto n = count_arg(arg_of(c), Natural(2));
    if (!n)
      return std::nullopt;
    Data out;
    for (std::size_t i = 0, k = clamp_size(*n); i < k; ++i)
      out.append(c.right());
    return out;
  });
  r.add("left", [](const Coda &c, RuleEnv &env) -> Rule {
    if (!all_atoms(env, c.right()))
      return std::nullopt;
    Data out;
    for (const auto &item : c.right())
      out.append(item.left());
    return out;
  });
  r.add("right", [](const Coda &c, RuleEnv &env) -> Rule {
    if (!all_atoms(env, c.right()))
      return std::nullopt;
    Data out;
    for (const auto &item : c.right())
      out.append(item.right());
    return out;
  });

  r.add("coda", [](const Coda &c, RuleEnv &env) {
    return distribute(c, env, [](const Coda &b) {
      auto s = b.bytes();
      return s ? compile(*s) : Data{};
    });
  });
  r.add("allByteSequences", all_byte_sequences_rule);
  r.add("bytes", bytes_rule);
  r.add("posint", [](const Coda &c, RuleEnv &env) {
    return distribute(c, env, [](const Coda &b) {
      auto v = natural_of(b);
      return v && *v > 0 ? Data{b} : Data{};
    });
  });
  r.add("berry", berry_rule);

  r.identity("n");
  r.identity("error");
  return r.take();
}

Context standard_context() { return install_builtins(bootstrap()); }

std::vector<std::string> builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    const Context ctx = standard_context();
    for (const auto *d : ctx.definitions())
      if (d->kind == RuleKind::Native && !d->family && !d->domain.empty() && d->domain[0].bytes())
        out.push_back(d->name);
    return out;
  }();
  return names;
}

Context install_signed_group(const Context &ctx) {
  Context out = ctx.extend(identity_definition(Data{atom_z()}, "z"));
  Definition neg;
  neg.domain = Data{byte_atom("neg")};
  neg.name = "neg";
  neg.rule = [](const Coda &c, RuleEnv &env) -> Rule {
    auto t = num_type(c, env);
    if (t != NumType::Signed)
      return std::nullopt;
    return distribute(c, env, [](const Coda &b) {
      auto v = signed_of(b);
      return v ? Data{signed_coda(-*v)} : Data{};
    });
  };
  return out.extend(std::move(neg));
}

Context replay_records(const Context &ctx, const std::vector<RecordLine> &records) {
  Context out = ctx;
  for (const auto &r : records) {
    Data body = read_literal(r.body);
    if (r.kind == "def") {
      Data domain = read_literal(r.domain);
      if (domain.size() != 1)
        throw std::runtime_error("def record for '" + r.name + "' needs a single-coda domain");
      out = out.extend(compiled_definition(domain[0], r.name, body))
                .with_record({UserRecord::Kind::Def, r.name, body});
    } else {
      out = out.bind(r.name, body).with_record({UserRecord::Kind::Let, r.name, body});
    }
  }
  return out;
}

} // namespace coda
