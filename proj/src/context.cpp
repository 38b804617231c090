#include "coda/context.hpp"

#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace coda {

struct Context::State {
  std::vector<std::shared_ptr<const Definition>> ordered;
  std::unordered_map<Data, std::shared_ptr<const Definition>, DataHash> exact;
  std::unordered_map<Data, std::shared_ptr<const Definition>, DataHash> families;
  std::unordered_map<std::string, Data> bindings;
  std::vector<UserRecord> records;
  EnumerationConfig enumeration;
  bool bootstrapped = false;
};

namespace {

std::string describe_domain(const Data &domain) { return domain.empty() ? "()" : render(domain); }

bool is_identity_at(const std::unordered_map<Data, std::shared_ptr<const Definition>, DataHash> &exact,
                    const Data &key) {
  auto it = exact.find(key);
  return it != exact.end() && it->second->kind == RuleKind::Identity;
}

} // namespace

std::string default_alphabet() {
  std::string s;
  for (char c = 0x20; c < 0x7f; ++c)
    s.push_back(c);
  return s;
}

Definition identity_definition(Data domain, std::string name) {
  Definition d;
  d.domain = std::move(domain);
  d.name = std::move(name);
  d.kind = RuleKind::Identity;
  return d;
}

Context::Context() : state_(std::make_shared<State>()) {}

Context empty_context() { return Context(); }

Context Context::extend(Definition d) const {
  if (d.domain.size() > 1)
    throw InvalidDomain("domain must be empty or a single coda: " + render(d.domain));
  if (!d.domain.empty() && !is_atom(d.domain[0]))
    throw InvalidDomain("domain is not invariant: " + render(d.domain));
  if (d.family && d.domain.empty())
    throw InvalidDomain("family domain must be a single coda");
  if (d.domain.empty() && d.kind != RuleKind::Identity && state_->bootstrapped)
    throw AxiomViolation("domain () is reserved for the bootstrap identity");
  if ((d.kind == RuleKind::Native || d.kind == RuleKind::Compiled) && !d.rule)
    throw std::invalid_argument("definition '" + d.name + "' has no rule");

  const State &s = *state_;
  if (d.family) {
    if (s.families.count(d.domain))
      throw AxiomViolation("domain family already defined: " + describe_domain(d.domain));
    for (const auto &[key, def] : s.exact)
      if (!key.empty() && domain_of(key[0]) == d.domain)
        throw AxiomViolation("domain family overlaps definition '" + def->name + "'");
  } else {
    if (auto it = s.exact.find(d.domain); it != s.exact.end())
      throw AxiomViolation("domain already defined: " + describe_domain(d.domain) + " ('" + it->second->name + "')");
    if (!d.domain.empty())
      if (auto it = s.families.find(domain_of(d.domain[0])); it != s.families.end())
        throw AxiomViolation("domain belongs to family '" + it->second->name + "'");
  }

  auto next = std::make_shared<State>(s);
  auto def = std::make_shared<const Definition>(std::move(d));
  next->ordered.push_back(def);
  if (def->family)
    next->families.emplace(def->domain, def);
  else
    next->exact.emplace(def->domain, def);
  next->bootstrapped = is_identity_at(next->exact, Data{}) && is_identity_at(next->exact, Data{unit()}) &&
                       is_identity_at(next->exact, Data{bit0()}) && is_identity_at(next->exact, Data{bit1()});
  return Context(std::move(next));
}

Context Context::bind(std::string name, Data value) const {
  if (state_->bindings.count(name))
    throw AxiomViolation("binding already defined: " + name);
  auto next = std::make_shared<State>(*state_);
  next->bindings.emplace(std::move(name), std::move(value));
  return Context(std::move(next));
}

Context Context::with_record(UserRecord record) const {
  auto next = std::make_shared<State>(*state_);
  next->records.push_back(std::move(record));
  return Context(std::move(next));
}

Context Context::with_enumeration(EnumerationConfig cfg) const {
  auto next = std::make_shared<State>(*state_);
  next->enumeration = std::move(cfg);
  return Context(std::move(next));
}

const Definition *Context::find(const Coda &c) const {
  const State &s = *state_;
  Data dom = domain_of(c);
  if (auto it = s.exact.find(dom); it != s.exact.end())
    return it->second.get();
  if (!dom.empty() && !s.families.empty())
    if (auto it = s.families.find(domain_of(dom[0])); it != s.families.end())
      return it->second.get();
  return nullptr;
}

std::optional<Data> Context::lookup(const Coda &c, RuleEnv &env) const {
  const Definition *d = find(c);
  if (!d)
    return std::nullopt;
  if (d->kind == RuleKind::Identity)
    return Data{c};
  return d->rule(c, env);
}

std::optional<Data> Context::lookup(const Coda &c) const {
  RuleEnv env(*this);
  return lookup(c, env);
}

bool Context::is_atom(const Coda &c) const {
  if (c.bootstrap_inert() && state_->bootstrapped)
    return true;
  const Definition *d = find(c);
  return d && d->kind == RuleKind::Identity;
}

bool Context::is_ground(const Data &d) const {
  std::unordered_set<const void *> seen;
  std::vector<const Data *> stack{&d};
  while (!stack.empty()) {
    const Data *cur = stack.back();
    stack.pop_back();
    for (const auto &c : *cur) {
      if (c.bootstrap_inert() && state_->bootstrapped)
        continue;
      if (!seen.insert(c.id()).second)
        continue;
      if (!is_atom(c))
        return false;
      stack.push_back(&c.left());
      stack.push_back(&c.right());
    }
  }
  return true;
}

const Data *Context::binding(std::string_view name) const {
  auto it = state_->bindings.find(std::string(name));
  return it == state_->bindings.end() ? nullptr : &it->second;
}

bool Context::has_domain(const Data &domain) const { return state_->exact.count(domain) > 0; }

std::size_t Context::size() const { return state_->ordered.size(); }

std::vector<const Definition *> Context::definitions() const {
  std::vector<const Definition *> out;
  out.reserve(state_->ordered.size());
  for (const auto &d : state_->ordered)
    out.push_back(d.get());
  return out;
}

const std::vector<UserRecord> &Context::user_records() const { return state_->records; }
const EnumerationConfig &Context::enumeration() const { return state_->enumeration; }
bool Context::has_bootstrap() const { return state_->bootstrapped; }

LogicValue classify(const Data &d, const Context &ctx) {
  if (d.empty())
    return LogicValue::True;
  for (const auto &c : d)
    if (ctx.is_atom(c))
      return LogicValue::False;
  return LogicValue::Undecided;
}

std::string_view to_string(LogicValue v) {
  switch (v) {
  case LogicValue::True: return "True";
  case LogicValue::False: return "False";
  default: return "Undecided";
  }
}

Context bootstrap() {
  return empty_context()
      .extend(identity_definition({}, "()"))
      .extend(identity_definition(Data{unit()}, "(:)"))
      .extend(identity_definition(Data{bit0()}, "0-bit"))
      .extend(identity_definition(Data{bit1()}, "1-bit"));
}

std::string escape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
    case '\\': out += "\\\\"; break;
    case '\t': out += "\\t"; break;
    case '\n': out += "\\n"; break;
    case '\r': out += "\\r"; break;
    default: out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
    case 't': out += '\t'; break;
    case 'n': out += '\n'; break;
    case 'r': out += '\r'; break;
    case '\\': out += '\\'; break;
    default: throw std::runtime_error("bad escape in context record");
    }
  }
  return out;
}

void write_records(std::ostream &out, const Context &ctx) {
  out << "# coda context v1\n";
  for (const auto &r : ctx.user_records()) {
    if (r.kind == UserRecord::Kind::Def)
      out << "def\t" << escape_field(r.name) << '\t' << escape_field(render(encode_bytes(r.name)))
          << "\tcompiled\t" << escape_field(render(r.body)) << '\n';
    else
      out << "let\t" << escape_field(r.name) << "\t?\tbinding\t" << escape_field(render(r.body)) << '\n';
  }
}

std::vector<RecordLine> read_records(std::istream &in) {
  std::vector<RecordLine> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      fields.push_back(unescape_field(std::string_view(line).substr(start, tab - start)));
      if (tab == std::string::npos)
        break;
      start = tab + 1;
    }
    if (fields.size() != 5 || (fields[0] != "def" && fields[0] != "let"))
      throw std::runtime_error("malformed context record at line " + std::to_string(lineno));
    out.push_back({fields[0], fields[1], fields[2], fields[3], fields[4]});
  }
  return out;
}

} // namespace coda
