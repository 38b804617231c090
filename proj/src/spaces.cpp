#include "coda/spaces.hpp"

#include "coda/builtins.hpp"
#include "coda/language.hpp"

#include <functional>

namespace coda {

namespace {

struct Equation {
  Data lhs;
  Data rhs;
};

using Builder = std::function<std::vector<Equation>(const std::vector<Data> &)>;

enum class Verdict { Agree, Differ, Inconclusive };

EvalTrace run(const Context &ctx, const Data &d, std::size_t budget) {
  EvalOptions o;
  o.budget = budget;
  o.probe = false;
  return evaluate(ctx, d, o);
}

// Two sides agree when both stop and are identical. They differ only when
// both stop and are ground, so no later definition can reconcile them.
Verdict compare(const EvalTrace &l, const EvalTrace &r, const Context &ctx) {
  if (l.status != EvalStatus::Fixed || r.status != EvalStatus::Fixed)
    return Verdict::Inconclusive;
  if (l.final() == r.final())
    return Verdict::Agree;
  if (ctx.is_ground(l.final()) && ctx.is_ground(r.final()))
    return Verdict::Differ;
  return Verdict::Inconclusive;
}

Data ap(const std::string &op, const Data &x) { return apply_source(op, x); }

LawReport run_law(const Context &ctx, std::string name, std::size_t arity, const Builder &build,
                  const SampleConfig &cfg) {
  LawReport report;
  report.law = std::move(name);
  std::mt19937_64 rng(cfg.seed);
  const std::size_t cap = cfg.max_attempts ? cfg.max_attempts : 20 * std::max<std::size_t>(cfg.count, 1);
  while (report.conclusive < cfg.count && report.samples_run < cap) {
    std::vector<Data> inputs;
    for (std::size_t i = 0; i < arity; ++i)
      inputs.push_back(random_data(rng, cfg));
    ++report.samples_run;
    bool conclusive = true;
    for (const auto &eq : build(inputs)) {
      EvalTrace l = run(ctx, eq.lhs, cfg.budget);
      EvalTrace r = run(ctx, eq.rhs, cfg.budget);
      Verdict v = compare(l, r, ctx);
      if (v == Verdict::Differ) {
        report.counterexample = Counterexample{inputs, std::move(l), std::move(r)};
        ++report.conclusive;
        report.passed = false;
        return report;
      }
      if (v == Verdict::Inconclusive) {
        conclusive = false;
        break;
      }
    }
    if (conclusive)
      ++report.conclusive;
    else
      ++report.inconclusive;
  }
  report.passed = report.conclusive >= cfg.count;
  return report;
}

std::string law_name(UnaryLaw law) {
  switch (law) {
  case UnaryLaw::Idempotent: return "idempotent";
  case UnaryLaw::Distributive: return "distributive";
  default: return "abelian";
  }
}

} // namespace

Data random_data(std::mt19937_64 &rng, const SampleConfig &cfg, std::size_t depth) {
  std::uniform_int_distribution<std::size_t> width(0, cfg.max_width);
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> digit(0, 9);
  std::uniform_real_distribution<double> nest(0.0, 1.0);
  const std::string alphabet = cfg.alphabet.empty() ? std::string("a") : cfg.alphabet;
  std::uniform_int_distribution<std::size_t> letter(0, alphabet.size() - 1);

  Data out;
  const std::size_t n = width(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (depth < cfg.max_depth && nest(rng) < 0.15) {
      Data l = random_data(rng, cfg, depth + 1);
      Data r = random_data(rng, cfg, depth + 1);
      out.push_back(pair(std::move(l), std::move(r)));
      continue;
    }
    switch (kind(rng)) {
    case 0: // () adds nothing
      break;
    case 1:
      out.push_back(unit());
      break;
    case 2: {
      std::string s(1, alphabet[letter(rng)]);
      if (nest(rng) < 0.3)
        s.push_back(alphabet[letter(rng)]);
      out.push_back(byte_atom(s));
      break;
    }
    case 3:
      out.push_back(decimal_atom(Natural(digit(rng))));
      break;
    default:
      out.push_back(natural_coda(Natural(digit(rng))));
    }
  }
  return out;
}

LawReport check_unary_law(const Context &ctx, const std::string &op, UnaryLaw law, const SampleConfig &cfg) {
  switch (law) {
  case UnaryLaw::Idempotent:
    return run_law(ctx, law_name(law) + "(" + op + ")", 1,
                   [&](const std::vector<Data> &in) {
                     return std::vector<Equation>{{ap(op, ap(op, in[0])), ap(op, in[0])}};
                   },
                   cfg);
  case UnaryLaw::Distributive:
    return run_law(ctx, law_name(law) + "(" + op + ")", 2,
                   [&](const std::vector<Data> &in) {
                     return std::vector<Equation>{
                         {ap(op, concat(in[0], in[1])), concat(ap(op, in[0]), ap(op, in[1]))}};
                   },
                   cfg);
  default:
    return run_law(ctx, law_name(law) + "(" + op + ")", 2,
                   [&](const std::vector<Data> &in) {
                     return std::vector<Equation>{{ap(op, concat(in[0], in[1])), ap(op, concat(in[1], in[0]))}};
                   },
                   cfg);
  }
}

LawReport check_space(const Context &ctx, const std::string &a, const SampleConfig &cfg) {
  return run_law(ctx, "space(" + a + ")", 2,
                 [&](const std::vector<Data> &in) {
                   return std::vector<Equation>{
                       {ap(a, concat(ap(a, in[0]), ap(a, in[1]))), ap(a, concat(in[0], in[1]))}};
                 },
                 cfg);
}

LawReport check_morphism(const Context &ctx, const std::string &f, const std::string &a, const std::string &b,
                         const SampleConfig &cfg) {
  return run_law(ctx, "morphism(" + f + " : " + a + " -> " + b + ")", 1,
                 [&](const std::vector<Data> &in) {
                   return std::vector<Equation>{{ap(f, ap(a, in[0])), ap(b, ap(f, in[0]))}};
                 },
                 cfg);
}

LawReport check_antispace(const Context &ctx, const std::string &a, const std::string &b, const SampleConfig &cfg) {
  return run_law(ctx, "antispace(" + a + ", " + b + ")", 1,
                 [&](const std::vector<Data> &in) {
                   const Data neutral = ap(a, {});
                   return std::vector<Equation>{{ap(a, concat(ap(a, in[0]), ap(b, in[0]))), neutral},
                                                {ap(a, concat(ap(b, in[0]), ap(a, in[0]))), neutral}};
                 },
                 cfg);
}

LawReport check_group(const Context &ctx, const std::string &g, const SampleConfig &cfg) {
  return run_law(ctx, "group(" + g + ")", 3,
                 [&](const std::vector<Data> &in) {
                   auto times = [&](const Data &p, const Data &q) { return ap(g, concat(p, q)); };
                   const Data x = ap(g, in[0]), y = ap(g, in[1]), z = ap(g, in[2]);
                   const Data e = ap(g, {});
                   return std::vector<Equation>{{times(times(x, y), z), times(x, times(y, z))},
                                                {times(e, x), x},
                                                {times(x, e), x}};
                 },
                 cfg);
}

bool recheck(const Context &ctx, const LawReport &report, const SampleConfig &cfg) {
  if (!report.counterexample)
    return false;
  const auto &ce = *report.counterexample;
  EvalTrace l = run(ctx, ce.lhs.steps.front(), cfg.budget);
  EvalTrace r = run(ctx, ce.rhs.steps.front(), cfg.budget);
  return compare(l, r, ctx) == Verdict::Differ;
}

Data unit_sequence(std::size_t n) {
  Data out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(unit());
  return out;
}

namespace {

class Classifier {
public:
  Classifier(const Context &ctx, const std::vector<Data> &pos, const std::vector<Data> &neg, std::size_t budget)
      : ctx_(ctx), pos_(pos), neg_(neg), budget_(budget) {}

  /// `apply` builds the data for candidate applied to x.
  template <class F> std::optional<SearchHit> test(const std::string &source, F apply) const {
    auto p = uniform(pos_, apply);
    if (!p)
      return std::nullopt;
    auto n = uniform(neg_, apply);
    if (!n || *n == *p)
      return std::nullopt;
    return SearchHit{source, *p, *n};
  }

private:
  template <class F> std::optional<LogicValue> uniform(const std::vector<Data> &xs, F apply) const {
    std::optional<LogicValue> value;
    for (const auto &x : xs) {
      LogicValue v = run(ctx_, apply(x), budget_).logic;
      if (v == LogicValue::Undecided || (value && *value != v))
        return std::nullopt;
      value = v;
    }
    return value;
  }

  const Context &ctx_;
  const std::vector<Data> &pos_;
  const std::vector<Data> &neg_;
  std::size_t budget_;
};

} // namespace

SearchReport search_classifier(const Context &ctx, const std::vector<Data> &positives,
                               const std::vector<Data> &negatives, const std::vector<std::string> &vocabulary,
                               const SearchConfig &cfg) {
  if (vocabulary.empty())
    throw EmptyVocabulary();
  if (positives.empty() || negatives.empty())
    throw std::invalid_argument("search needs positive and negative samples");

  std::vector<Coda> atoms;
  for (const auto &v : vocabulary)
    atoms.push_back(byte_atom(v));

  SearchReport report;
  Classifier classifier(ctx, positives, negatives, cfg.budget);

  std::vector<std::size_t> idx;
  for (std::size_t terms = 1; terms <= cfg.max_terms; ++terms) {
    idx.assign(terms, 0);
    for (;;) {
      Data candidate;
      std::string source;
      for (auto i : idx) {
        candidate.push_back(atoms[i]);
        if (!source.empty())
          source += ' ';
        source += vocabulary[i];
      }
      ++report.tried;
      auto hit = classifier.test(source, [&](const Data &x) { return Data{pair(candidate, x)}; });
      if (hit)
        report.hits.push_back(std::move(*hit));

      std::size_t k = terms;
      while (k > 0 && idx[k - 1] + 1 == vocabulary.size())
        idx[--k] = 0;
      if (k == 0)
        break;
      ++idx[k - 1];
    }
  }

  if (cfg.random_candidates > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> word(0, vocabulary.size() - 1);
    std::uniform_int_distribution<std::size_t> len(1, std::max<std::size_t>(cfg.max_terms, 1) + 1);
    std::bernoulli_distribution compose(0.3);
    auto phrase = [&] {
      std::string s;
      for (std::size_t i = 0, n = len(rng); i < n; ++i) {
        if (!s.empty())
          s += ' ';
        s += vocabulary[word(rng)];
      }
      return s;
    };
    for (std::size_t i = 0; i < cfg.random_candidates; ++i) {
      std::string source = phrase();
      if (compose(rng))
        source = "(" + phrase() + ")*(" + source + ")";
      ++report.tried;
      auto hit = classifier.test(source, [&](const Data &x) { return apply_source(source, x); });
      if (hit)
        report.hits.push_back(std::move(*hit));
    }
  }
  return report;
}

} // namespace coda
