#pragma once

// Sampled checks of the algebraic laws on operators (spaces, morphisms,
// anti-spaces, groups) and the enumerative classifier search.
//
// Operators are language source text such as "sum n" or "bool*(aps not)";
// applying operator S to data X means evaluating ({S : B} : X).

#include "coda/context.hpp"
#include "coda/core.hpp"
#include "coda/eval.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace coda {

struct SampleConfig {
  std::size_t count = 200;     ///< conclusive samples required to pass
  std::size_t max_depth = 2;   ///< nesting of generated codas
  std::size_t max_width = 4;   ///< items per generated sequence
  std::uint64_t seed = 1;
  std::size_t budget = 64;     ///< evaluation steps per side
  std::size_t max_attempts = 0; ///< 0 means 20 * count
  std::string alphabet = "ab"; ///< letters for generated byte atoms
};

/// Random data: sequences of (), (:), short byte atoms, decimal atoms,
/// (n:digit) and, below max_depth, nested codas.
Data random_data(std::mt19937_64 &rng, const SampleConfig &cfg, std::size_t depth = 0);

struct Counterexample {
  std::vector<Data> inputs; ///< X, then Y (and Z) when the law needs them
  EvalTrace lhs;
  EvalTrace rhs;
};

struct LawReport {
  std::string law;
  bool passed = false;
  std::optional<Counterexample> counterexample;
  std::size_t samples_run = 0;
  std::size_t conclusive = 0;
  std::size_t inconclusive = 0;
};

enum class UnaryLaw { Idempotent, Distributive, Abelian };

/// op : op : X = op : X, op : X Y = (op : X) (op : Y), op : X Y = op : Y X.
LawReport check_unary_law(const Context &ctx, const std::string &op, UnaryLaw law, const SampleConfig &cfg);
/// A : (A : X) (A : Y) = A : X Y
LawReport check_space(const Context &ctx, const std::string &a, const SampleConfig &cfg);
/// F : A : X = B : F : X
LawReport check_morphism(const Context &ctx, const std::string &f, const std::string &a, const std::string &b,
                         const SampleConfig &cfg);
/// A : (A:X) (B:X) = A : (B:X) (A:X) = (A:)
LawReport check_antispace(const Context &ctx, const std::string &a, const std::string &b, const SampleConfig &cfg);
/// Composition (G:X) x (G:Y) = G : (G:X) (G:Y) is associative with (G:) as identity.
LawReport check_group(const Context &ctx, const std::string &g, const SampleConfig &cfg);

/// Re-evaluates a reported counterexample and confirms the two sides are
/// still both fixed, ground and different.
bool recheck(const Context &ctx, const LawReport &report, const SampleConfig &cfg);

class EmptyVocabulary : public std::invalid_argument {
public:
  EmptyVocabulary() : std::invalid_argument("search vocabulary is empty") {}
};

struct SearchConfig {
  std::size_t max_terms = 2;
  std::size_t budget = 10;
  /// Also try this many random candidate sources (juxtapositions and `*`
  /// compositions of vocabulary names).
  std::size_t random_candidates = 0;
  std::uint64_t seed = 1;
};

struct SearchHit {
  std::string source;      ///< e.g. "aps not"
  LogicValue positives;    ///< the value every positive sample takes
  LogicValue negatives;
};

struct SearchReport {
  std::vector<SearchHit> hits;
  std::size_t tried = 0;
};

/// Candidates A such that classify(evaluate(A : x)) is one decided value on
/// every positive x and the other on every negative. Enumerated by term
/// count, then vocabulary order; random candidates follow.
SearchReport search_classifier(const Context &ctx, const std::vector<Data> &positives,
                               const std::vector<Data> &negatives, const std::vector<std::string> &vocabulary,
                               const SearchConfig &cfg);

/// n copies of (:).
Data unit_sequence(std::size_t n);

} // namespace coda
