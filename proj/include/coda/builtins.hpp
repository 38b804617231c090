#pragma once

// The standard definition library. Every rule here only fires when its
// result can no longer be changed by rewriting inside its argument or
// input, so an answer, once produced, is final.

#include "coda/context.hpp"
#include "coda/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace coda {

using Natural = boost::multiprecision::cpp_int;

/// A decimal byte atom ("42") or (n:42). Any digit string is accepted;
/// leading zeros are dropped on output.
std::optional<Natural> natural_of(const Coda &c);
/// (n:digits) in canonical form.
Coda natural_coda(const Natural &v);
/// The decimal byte atom.
Coda decimal_atom(const Natural &v);

/// (error:<message>), an atom in the standard context.
Coda error_datum(std::string_view message);

/// Bootstrap identities, the language, and the builtins. Throws
/// AxiomViolation if any of them is already present.
Context install_builtins(const Context &ctx);

/// install_builtins(bootstrap()).
Context standard_context();

/// Names of the installed builtins in installation order (the language and
/// identity entries excluded).
std::vector<std::string> builtin_names();

/// The rule `def` installs for name : body.
Definition compiled_definition(const Coda &name, std::string display, Data body);

/// The i-th byte sequence produced by the enumerators under cfg: injected
/// strings first, then length-lexicographic order over the alphabet with
/// injected strings skipped. Absent past the end, which only exists for an
/// empty alphabet.
std::optional<std::string> enumerate_sequence(const EnumerationConfig &cfg, std::size_t index);

/// Signed integers (z:k) with `sum z` and `neg z`. A group whose anti-space
/// is `neg z`; kept out of the standard context, which has naturals only.
Context install_signed_group(const Context &ctx);

/// Rebuilds user definitions and bindings from serialized records.
/// Throws std::runtime_error (or ParseError) on bad records and
/// AxiomViolation on conflicts.
Context replay_records(const Context &ctx, const std::vector<RecordLine> &records);

} // namespace coda
