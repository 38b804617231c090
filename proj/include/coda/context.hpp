#pragma once

// Contexts: persistent collections of definitions with pairwise disjoint
// domains. A context is a value; extending it returns a new context and
// leaves the original untouched.

#include "coda/core.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coda {

class Context;
class RuleEnv;

using RuleFn = std::function<std::optional<Data>(const Coda &, RuleEnv &)>;

enum class RuleKind {
  Identity, ///< (D A:B) -> (D A:B); makes every coda of the domain an atom
  Native,   ///< builtin rule
  Compiled, ///< made by `def`: body re-applied to the call-site argument and input
};

struct Definition {
  Data domain; ///< empty, or exactly one coda
  std::string name;
  RuleKind kind = RuleKind::Native;
  RuleFn rule;
  Data body; ///< Compiled rules only
  // A family definition covers every coda whose domain has `domain` as its
  // own domain. The language uses this to own all `{s}` code atoms at once.
  bool family = false;
};

Definition identity_definition(Data domain, std::string name);

class AxiomViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidDomain : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Printable ASCII, space through '~'.
std::string default_alphabet();

/// Knobs for the byte-sequence enumerators (`bytes`, `allByteSequences`).
struct EnumerationConfig {
  std::string alphabet = default_alphabet(); ///< in enumeration order
  std::vector<std::string> injected; ///< emitted before the length-lex sequence
};

/// A user-made definition or binding, as replayed from a context file.
struct UserRecord {
  enum class Kind { Def, Let } kind = Kind::Def;
  std::string name;
  Data body;
};

class Context {
public:
  Context();

  /// Throws AxiomViolation or InvalidDomain.
  Context extend(Definition d) const;
  /// Adds a `let` binding. Throws AxiomViolation if the name is bound.
  Context bind(std::string name, Data value) const;
  /// Records a user definition for serialization (does not change dispatch).
  Context with_record(UserRecord record) const;
  Context with_enumeration(EnumerationConfig cfg) const;

  /// The definition responsible for c, if any.
  const Definition *find(const Coda &c) const;
  /// One application of the context to a single coda. Absent when no rule
  /// applies. Identity definitions return the coda itself.
  std::optional<Data> lookup(const Coda &c) const;
  std::optional<Data> lookup(const Coda &c, RuleEnv &env) const;

  bool is_atom(const Coda &c) const;
  /// Every coda in the tree is an atom. Such data can never change again.
  bool is_ground(const Data &d) const;

  const Data *binding(std::string_view name) const;
  bool has_domain(const Data &domain) const;

  std::size_t size() const;
  /// Definitions in the order they were added.
  std::vector<const Definition *> definitions() const;
  const std::vector<UserRecord> &user_records() const;
  const EnumerationConfig &enumeration() const;

  /// The four bootstrap identities are present, so bootstrap-inert codas
  /// are fixed.
  bool has_bootstrap() const;

private:
  struct State;
  explicit Context(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

Context empty_context();

enum class LogicValue { True, False, Undecided };

/// True for empty data, False when some top-level item is an atom,
/// Undecided otherwise. Looks at the data as given; nothing is evaluated.
LogicValue classify(const Data &d, const Context &ctx);
std::string_view to_string(LogicValue v);

/// Identity definitions on (), (:), 0-bit and 1-bit.
Context bootstrap();

/// Per-step view for rules. Rules read `context()`; definition-making rules
/// extend `working()`, which the evaluator adopts after the step.
class RuleEnv {
public:
  explicit RuleEnv(const Context &ctx) : ctx_(ctx), working_(ctx) {}

  const Context &context() const { return ctx_; }
  Context &working() { return working_; }
  void note_effect() { ++effects_; }
  std::size_t effects() const { return effects_; }

private:
  const Context &ctx_;
  Context working_;
  std::size_t effects_ = 0;
};

// Line-oriented context records:
//   # coda context v1
//   def<TAB>name<TAB>domain<TAB>compiled<TAB>body
//   let<TAB>name<TAB>?<TAB>binding<TAB>body
// Fields are backslash-escaped (\t \n \r \\); data fields hold rendered data.
struct RecordLine {
  std::string kind;
  std::string name;
  std::string domain;
  std::string rule;
  std::string body;
};

void write_records(std::ostream &out, const Context &ctx);
/// Throws std::runtime_error on malformed lines.
std::vector<RecordLine> read_records(std::istream &in);

std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

} // namespace coda
