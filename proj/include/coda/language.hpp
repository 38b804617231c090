#pragma once

// The total-syntax language. Source text s is compiled to the data ({s}:),
// and a single family definition on code atoms rewrites ({s} A:B) one
// construct at a time, so compilation happens during ordinary evaluation.
// Every byte sequence is valid source.

#include "coda/context.hpp"
#include "coda/core.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coda {

/// ({s}:)
Data compile(std::string_view source);

/// ({src : B} : input), i.e. the operator written as `src` applied to input.
Data apply_source(std::string_view src, const Data &input);

/// One rewrite of a language coda ({s} A : B). Absent when c is not one.
std::optional<Data> language_rule(const Coda &c);

/// Identity on the code-atom marker: every {s} is an atom.
Definition code_atom_definition();
/// The family definition that owns all ({s} A:B) codas.
Definition language_definition();

/// Non-fatal remarks about source text (the language itself never rejects).
std::vector<std::string> diagnostics(std::string_view source);

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Strict reader for the output of render(). Throws ParseError.
Data read_literal(std::string_view text);

} // namespace coda
