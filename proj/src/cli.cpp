#include "coda/cli.hpp"

#include "coda/builtins.hpp"
#include "coda/demos.hpp"
#include "coda/eval.hpp"
#include "coda/language.hpp"
#include "coda/service.hpp"
#include "coda/spaces.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

namespace coda {

namespace {

struct Common {
  std::size_t budget = 10;
  std::uint64_t seed = 1;
  std::string alphabet;
  std::string context_file;
  bool json = false;
  bool signed_group = false;
};

void add_common(CLI::App *cmd, Common &c, bool with_budget = true) {
  if (with_budget)
    cmd->add_option("--budget", c.budget, "maximum evaluation steps")->capture_default_str();
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd->add_option("--alphabet", c.alphabet, "enumeration alphabet for bytes/allByteSequences");
  cmd->add_option("--context", c.context_file, "replay definitions from a context file");
  cmd->add_flag("--json", c.json, "machine-readable output");
  cmd->add_flag("--signed", c.signed_group, "also install the signed integers (sum z, neg z)");
}

class Diagnostic : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw Diagnostic("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Context build_context(const Common &c) {
  Context ctx = standard_context();
  if (c.signed_group)
    ctx = install_signed_group(ctx);
  if (!c.alphabet.empty()) {
    EnumerationConfig e = ctx.enumeration();
    e.alphabet = c.alphabet;
    ctx = ctx.with_enumeration(e);
  }
  if (!c.context_file.empty()) {
    std::ifstream f(c.context_file);
    if (!f)
      throw Diagnostic("cannot read " + c.context_file);
    try {
      ctx = replay_records(ctx, read_records(f));
    } catch (const std::exception &e) {
      throw Diagnostic(c.context_file + ": " + e.what());
    }
  }
  return ctx;
}

std::vector<Data> read_samples(const std::string &path) {
  std::istringstream in(slurp(path));
  std::vector<Data> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    try {
      out.push_back(read_literal(line));
    } catch (const ParseError &e) {
      throw Diagnostic(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void print_errors(const Data &d, std::ostream &out) {
  for (const auto &m : error_messages(d))
    out << "AxiomViolation: " << m << '\n';
}

nlohmann::json law_json(const LawReport &r) {
  nlohmann::json j;
  j["law"] = r.law;
  j["passed"] = r.passed;
  j["samples_run"] = r.samples_run;
  j["conclusive"] = r.conclusive;
  j["inconclusive"] = r.inconclusive;
  if (r.counterexample) {
    std::vector<std::string> inputs;
    for (const auto &d : r.counterexample->inputs)
      inputs.push_back(render(d));
    j["counterexample"] = {{"inputs", inputs},
                           {"lhs", render(r.counterexample->lhs.final())},
                           {"rhs", render(r.counterexample->rhs.final())}};
  }
  return j;
}

void print_law(const LawReport &r, std::ostream &out) {
  out << r.law << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.conclusive << " conclusive, "
      << r.inconclusive << " inconclusive, " << r.samples_run << " samples)\n";
  if (r.counterexample) {
    const char *names[] = {"X", "Y", "Z"};
    for (std::size_t i = 0; i < r.counterexample->inputs.size() && i < 3; ++i)
      out << "  " << names[i] << " = " << render(r.counterexample->inputs[i]) << '\n';
    out << "  lhs -> " << render(r.counterexample->lhs.final()) << '\n';
    out << "  rhs -> " << render(r.counterexample->rhs.final()) << '\n';
  } else if (!r.passed) {
    out << "  not enough conclusive samples\n";
  }
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  std::size_t i = s.find_first_not_of(" \t");
  return i == std::string::npos ? std::string() : s.substr(i);
}

} // namespace

int repl_loop(Context ctx, std::size_t budget, std::istream &in, std::ostream &out, bool interactive) {
  bool step_mode = false;
  std::string line;
  for (;;) {
    if (interactive)
      out << "coda> " << std::flush;
    if (!std::getline(in, line))
      break;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    const std::string cmd = trim(line);
    if (cmd.empty())
      continue;
    if (cmd[0] == ':') {
      std::istringstream words(cmd.substr(1));
      std::string word, arg;
      words >> word >> arg;
      if (word == "quit" || word == "q") {
        break;
      } else if (word == "step") {
        step_mode = !step_mode;
        out << "step mode " << (step_mode ? "on" : "off") << '\n';
      } else if (word == "budget") {
        try {
          budget = std::stoul(arg);
          out << "budget " << budget << '\n';
        } catch (const std::exception &) {
          out << "usage: :budget N\n";
        }
      } else if (word == "defs") {
        for (const auto &r : ctx.user_records())
          out << (r.kind == UserRecord::Kind::Def ? "def " : "let ") << r.name << " : " << render(r.body) << '\n';
      } else if (word == "save") {
        std::ofstream f(arg);
        if (!f) {
          out << "cannot write " << arg << '\n';
        } else {
          write_records(f, ctx);
          out << "saved " << ctx.user_records().size() << " definitions\n";
        }
      } else {
        out << "commands: :step :budget N :defs :save FILE :quit\n";
      }
      continue;
    }
    EvalOptions o;
    o.budget = budget;
    EvalTrace t = evaluate(ctx, compile(line), o);
    ctx = t.context;
    if (step_mode)
      out << render_trace(t);
    else
      out << render(t.final()) << '\n';
    print_errors(t.final(), out);
    out << std::flush;
  }
  return 0;
}

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
  CLI::App app{"coda: a pure-data rewriting kernel", "coda"};
  app.require_subcommand(1);

  Common common;
  std::string expr, expr_file;

  auto *eval_cmd = app.add_subcommand("eval", "evaluate an expression and print the final data");
  eval_cmd->add_option("expr", expr, "source text");
  eval_cmd->add_option("-f,--file", expr_file, "read the source from a file");
  add_common(eval_cmd, common);

  auto *step_cmd = app.add_subcommand("step", "print every step of the evaluation");
  step_cmd->add_option("expr", expr, "source text");
  step_cmd->add_option("-f,--file", expr_file, "read the source from a file");
  add_common(step_cmd, common);

  SampleConfig sample;
  std::size_t check_budget = sample.budget;
  std::vector<std::string> check_args;
  std::string law_kind;
  auto *check_cmd = app.add_subcommand("check", "sampled law checks on operators");
  check_cmd->require_subcommand(1);
  auto add_check = [&](const std::string &name, const std::string &help, std::size_t nargs) {
    auto *c = check_cmd->add_subcommand(name, help);
    c->add_option("operators", check_args, "operator source text")->required()->expected(static_cast<int>(nargs));
    c->add_option("--count", sample.count, "conclusive samples required")->capture_default_str();
    c->add_option("--budget", check_budget, "steps per side")->capture_default_str();
    add_common(c, common, false);
    return c;
  };
  auto *check_space_cmd = add_check("space", "A : (A:X) (A:Y) = A : X Y", 1);
  auto *check_morph_cmd = add_check("morphism", "F : A : X = B : F : X (args: F A B)", 3);
  auto *check_anti_cmd = add_check("antispace", "A : (A:X) (B:X) = (A:) (args: A B)", 2);
  auto *check_group_cmd = add_check("group", "composition through G is a group", 1);
  auto *check_law_cmd = check_cmd->add_subcommand("law", "idempotent, distributive or abelian");
  check_law_cmd->add_option("law", law_kind)->required()->check(CLI::IsMember({"idempotent", "distributive", "abelian"}));
  check_law_cmd->add_option("operator", check_args)->required()->expected(1);
  check_law_cmd->add_option("--count", sample.count)->capture_default_str();
  check_law_cmd->add_option("--budget", check_budget)->capture_default_str();
  add_common(check_law_cmd, common, false);

  std::string pos_file, neg_file, vocab;
  SearchConfig search_cfg;
  auto *search_cmd = app.add_subcommand("search", "find classifiers separating two sample files");
  search_cmd->add_option("--pos", pos_file, "positive samples, one rendered datum per line")->required();
  search_cmd->add_option("--neg", neg_file, "negative samples")->required();
  search_cmd->add_option("--vocab", vocab, "comma-separated names (default: all builtins)");
  search_cmd->add_option("--max-terms", search_cfg.max_terms)->capture_default_str();
  search_cmd->add_option("--random", search_cfg.random_candidates, "extra random candidates")->capture_default_str();
  add_common(search_cmd, common);

  std::string demo_name;
  DemoOptions demo_opts;
  auto *demo_cmd = app.add_subcommand("demo", "run a scripted demo");
  demo_cmd->add_option("name", demo_name)->required()->check(CLI::IsMember(demo_names()));
  demo_cmd->add_option("--budget", demo_opts.budget, "steps (0 picks the demo default)");
  demo_cmd->add_option("--depth", demo_opts.depth, "Godel nesting")->capture_default_str();
  demo_cmd->add_option("--max-len", demo_opts.max_len, "Berry length bound")->capture_default_str();
  demo_cmd->add_flag("--inject-self", demo_opts.inject_self, "consistency: enumerate its own text first");
  add_common(demo_cmd, common, false);

  std::string host = "127.0.0.1";
  int port = 8080;
  auto *serve_cmd = app.add_subcommand("serve", "run the HTTP session service");
  serve_cmd->add_option("--port", port)->capture_default_str();
  serve_cmd->add_option("--host", host)->capture_default_str();
  add_common(serve_cmd, common);

  bool start_in_step = false;
  auto *repl_cmd = app.add_subcommand("repl", "read-eval-print loop on stdin");
  repl_cmd->add_flag("--step", start_in_step, "print full traces");
  add_common(repl_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*eval_cmd || *step_cmd) {
      if (!expr_file.empty())
        expr = slurp(expr_file);
      else if (eval_cmd->count("expr") == 0 && step_cmd->count("expr") == 0) {
        err << "an expression or --file is required\n" << app.help();
        return 2;
      }
      const Context ctx = build_context(common);
      EvalOptions o;
      o.budget = common.budget;
      const EvalTrace t = evaluate(ctx, compile(expr), o);
      const bool full = static_cast<bool>(*step_cmd);
      if (common.json)
        out << trace_json(expr, common.budget, t, full).dump() << '\n';
      else if (full)
        out << render_trace(t);
      else
        out << render(t.final()) << '\n';
      const auto errors = error_messages(t.final());
      for (const auto &m : errors)
        err << "AxiomViolation: " << m << '\n';
      return errors.empty() ? 0 : 1;
    }

    if (*check_cmd) {
      const Context ctx = build_context(common);
      sample.seed = common.seed;
      sample.budget = check_budget;
      if (!common.alphabet.empty())
        sample.alphabet = common.alphabet;
      LawReport r;
      if (*check_space_cmd)
        r = check_space(ctx, check_args[0], sample);
      else if (*check_morph_cmd)
        r = check_morphism(ctx, check_args[0], check_args[1], check_args[2], sample);
      else if (*check_anti_cmd)
        r = check_antispace(ctx, check_args[0], check_args[1], sample);
      else if (*check_group_cmd)
        r = check_group(ctx, check_args[0], sample);
      else {
        UnaryLaw law = law_kind == "idempotent"     ? UnaryLaw::Idempotent
                       : law_kind == "distributive" ? UnaryLaw::Distributive
                                                    : UnaryLaw::Abelian;
        r = check_unary_law(ctx, check_args[0], law, sample);
      }
      if (common.json)
        out << law_json(r).dump() << '\n';
      else
        print_law(r, out);
      return r.passed ? 0 : 1;
    }

    if (*search_cmd) {
      const Context ctx = build_context(common);
      std::vector<std::string> names;
      if (vocab.empty()) {
        names = builtin_names();
      } else {
        std::stringstream s(vocab);
        for (std::string w; std::getline(s, w, ',');)
          if (!trim(w).empty())
            names.push_back(trim(w));
      }
      search_cfg.budget = common.budget;
      search_cfg.seed = common.seed;
      const SearchReport r = search_classifier(ctx, read_samples(pos_file), read_samples(neg_file), names, search_cfg);
      if (common.json) {
        nlohmann::json hits = nlohmann::json::array();
        for (const auto &h : r.hits)
          hits.push_back({{"source", h.source},
                          {"positives", std::string(to_string(h.positives))},
                          {"negatives", std::string(to_string(h.negatives))}});
        out << nlohmann::json{{"hits", hits}, {"tried", r.tried}}.dump() << '\n';
      } else {
        for (const auto &h : r.hits)
          out << h.source << "\t" << to_string(h.positives) << "/" << to_string(h.negatives) << '\n';
        out << r.hits.size() << " of " << r.tried << " candidates accepted\n";
      }
      return 0;
    }

    if (*demo_cmd) {
      demo_opts.alphabet = common.alphabet;
      const DemoReport r = run_demo(demo_name, demo_opts);
      out << (common.json ? r.json() + "\n" : r.text());
      return 0;
    }

    if (*serve_cmd) {
      ServiceConfig cfg;
      cfg.base = build_context(common);
      cfg.default_budget = common.budget;
      Service service(std::move(cfg));
      err << "listening on " << host << ":" << port << '\n';
      if (!serve(service, host, port)) {
        err << "cannot listen on " << host << ":" << port << '\n';
        return 1;
      }
      return 0;
    }

    if (*repl_cmd) {
      std::istream &src = in;
      const bool tty = &in == &std::cin && ::isatty(0);
      return repl_loop(build_context(common), common.budget, src, out, tty);
    }
  } catch (const Diagnostic &e) {
    err << e.what() << '\n';
    return 1;
  } catch (const EmptyVocabulary &e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

} // namespace coda
