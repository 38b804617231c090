#include "coda/core.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

namespace coda {

enum class NodeKind : std::uint8_t { Plain, Bytes, Code };

struct Coda::Node : std::enable_shared_from_this<Coda::Node> {
  Data left;
  Data right;
  std::size_t hash = 0;
  bool inert = false;
  NodeKind kind = NodeKind::Plain;
  std::string text;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_items(std::span<const Coda> items, std::size_t seed) noexcept {
  for (const auto &c : items)
    seed = mix(seed, std::hash<const void *>{}(c.id()));
  return seed;
}

using Node = Coda::Node;

struct NodeHash {
  std::size_t operator()(const Node *n) const noexcept { return n->hash; }
};
struct NodeEq {
  bool operator()(const Node *a, const Node *b) const noexcept {
    return a->left == b->left && a->right == b->right;
  }
};

struct Interner {
  std::mutex mu;
  std::unordered_set<const Node *, NodeHash, NodeEq> table;
};

Interner &interner() {
  // Never destroyed: nodes may outlive static destruction order.
  static auto *instance = new Interner;
  return *instance;
}

void release(Node *n) {
  {
    auto &in = interner();
    std::lock_guard lock(in.mu);
    auto it = in.table.find(n);
    if (it != in.table.end() && *it == n)
      in.table.erase(it);
  }
  delete n;
}

// Structural shape tests that do not depend on the singletons, so they can
// run while the singletons themselves are being interned.
bool is_unit_shape(const Coda &c) { return c.left().empty() && c.right().empty(); }
bool is_bit0_shape(const Coda &c) {
  return c.left().size() == 1 && is_unit_shape(c.left()[0]) && c.right().empty();
}
bool is_bit1_shape(const Coda &c) {
  return c.left().size() == 1 && is_unit_shape(c.left()[0]) && c.right().size() == 1 &&
         is_unit_shape(c.right()[0]);
}

void classify_node(Node &n) {
  const bool children_inert =
      std::all_of(n.left.begin(), n.left.end(), [](const Coda &c) { return c.bootstrap_inert(); }) &&
      std::all_of(n.right.begin(), n.right.end(), [](const Coda &c) { return c.bootstrap_inert(); });
  bool bootstrap_domain = n.left.empty();
  if (!bootstrap_domain) {
    const Coda &d = n.left[0];
    bootstrap_domain = is_unit_shape(d) || is_bit0_shape(d) || is_bit1_shape(d);
  }
  n.inert = children_inert && bootstrap_domain;

  if (!n.left.empty() && is_bit1_shape(n.left[0]) && n.right.empty() && (n.left.size() - 1) % 8 == 0) {
    std::string text;
    text.reserve((n.left.size() - 1) / 8);
    bool ok = true;
    unsigned char byte = 0;
    for (std::size_t i = 1; i < n.left.size() && ok; ++i) {
      const Coda &b = n.left[i];
      if (is_bit1_shape(b))
        byte = static_cast<unsigned char>((byte << 1) | 1);
      else if (is_bit0_shape(b))
        byte = static_cast<unsigned char>(byte << 1);
      else
        ok = false;
      if (i % 8 == 0) {
        text.push_back(static_cast<char>(byte));
        byte = 0;
      }
    }
    if (ok) {
      n.kind = NodeKind::Bytes;
      n.text = std::move(text);
    }
    return;
  }

  if (n.left.size() == 1 && n.right.size() == 1) {
    const Coda &m = n.left[0];
    if (m.left().size() == 1 && is_bit0_shape(m.left()[0]) && m.right().empty()) {
      if (auto s = n.right[0].bytes()) {
        n.kind = NodeKind::Code;
        n.text = std::string(*s);
      }
    }
  }
}

} // namespace

const Data &Coda::left() const { return node_->left; }
const Data &Coda::right() const { return node_->right; }
std::size_t Coda::hash() const noexcept { return node_->hash; }
bool Coda::bootstrap_inert() const noexcept { return node_->inert; }

std::optional<std::string_view> Coda::bytes() const {
  if (node_->kind == NodeKind::Bytes)
    return std::string_view(node_->text);
  return std::nullopt;
}

std::optional<std::string_view> Coda::code() const {
  if (node_->kind == NodeKind::Code)
    return std::string_view(node_->text);
  return std::nullopt;
}

Coda pair(Data left, Data right) {
  auto candidate = std::make_unique<Node>();
  candidate->hash = hash_items(right.items(), hash_items(left.items(), 0x51ed27) ^ 0xa5a5a5a5ULL);
  candidate->left = std::move(left);
  candidate->right = std::move(right);

  classify_node(*candidate);

  auto &in = interner();
  std::shared_ptr<const Node> result;
  {
    std::lock_guard lock(in.mu);
    auto it = in.table.find(candidate.get());
    if (it != in.table.end()) {
      result = (*it)->weak_from_this().lock();
      // An expired entry belongs to a node mid-destruction; its release()
      // checks identity before erasing, so replacing it here is safe.
      if (!result)
        in.table.erase(it);
    }
    if (!result) {
      Node *raw = candidate.release();
      std::shared_ptr<Node> owned(raw, &release);
      in.table.insert(raw);
      result = std::move(owned);
    }
  }
  return Coda(std::move(result));
}

Data Data::slice(std::size_t from, std::size_t to) const {
  if (from >= to || from >= items_.size())
    return {};
  to = std::min(to, items_.size());
  return Data(std::vector<Coda>(items_.begin() + static_cast<std::ptrdiff_t>(from),
                                items_.begin() + static_cast<std::ptrdiff_t>(to)));
}

std::size_t Data::hash() const noexcept { return hash_items(items_, 0x2545f491); }

Data concat(const Data &a, const Data &b) {
  Data out;
  out.reserve(a.size() + b.size());
  out.append(a);
  out.append(b);
  return out;
}

Data domain_of(const Coda &c) {
  if (c.left().empty())
    return {};
  return Data{c.left()[0]};
}

bool structural_equal(const Data &a, const Data &b) noexcept { return a == b; }

std::size_t tree_size(const Data &d, std::size_t limit) {
  std::size_t n = 0;
  std::vector<const Data *> stack{&d};
  while (!stack.empty() && n < limit) {
    const Data *cur = stack.back();
    stack.pop_back();
    for (const auto &c : *cur) {
      ++n;
      stack.push_back(&c.left());
      stack.push_back(&c.right());
    }
  }
  return n;
}

const Coda &unit() {
  static const Coda c = pair({}, {});
  return c;
}
const Coda &bit0() {
  static const Coda c = pair(Data{unit()}, {});
  return c;
}
const Coda &bit1() {
  static const Coda c = pair(Data{unit()}, Data{unit()});
  return c;
}
const Coda &lang_mark() {
  static const Coda c = pair(Data{bit0()}, {});
  return c;
}

Coda bit_sequence(std::span<const bool> bits) {
  Data left;
  left.reserve(bits.size() + 1);
  left.push_back(bit0());
  for (bool b : bits)
    left.push_back(b ? bit1() : bit0());
  return pair(std::move(left), {});
}

Coda byte_atom(std::string_view s) {
  Data left;
  left.reserve(8 * s.size() + 1);
  left.push_back(bit1());
  for (unsigned char ch : s)
    for (int bit = 7; bit >= 0; --bit)
      left.push_back(((ch >> bit) & 1) ? bit1() : bit0());
  return pair(std::move(left), {});
}

std::optional<std::string> decode_bytes(const Data &d) {
  if (d.size() != 1)
    return std::nullopt;
  if (auto s = d[0].bytes())
    return std::string(*s);
  return std::nullopt;
}

Coda code_atom(std::string_view source) { return pair(Data{lang_mark()}, Data{byte_atom(source)}); }

bool is_word_byte(unsigned char ch) noexcept {
  if (ch <= 0x20 || ch >= 0x7f)
    return false;
  switch (ch) {
  case '(': case ')': case ':': case '{': case '}': case '=': case '*':
  case '/': case '<': case '>': case '?':
    return false;
  default:
    return true;
  }
}

namespace {

bool printable(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x20 && u < 0x7f;
  });
}

bool balanced_braces(std::string_view s) {
  int depth = 0;
  for (char c : s) {
    if (c == '{')
      ++depth;
    else if (c == '}' && --depth < 0)
      return false;
  }
  return depth == 0;
}

void render_into(std::string &out, const Data &d);

void render_into(std::string &out, const Coda &c) {
  if (auto s = c.bytes()) {
    if (!s->empty() && std::all_of(s->begin(), s->end(),
                                   [](char ch) { return is_word_byte(static_cast<unsigned char>(ch)); })) {
      out += *s;
      return;
    }
    if (*s == "=" || *s == "?") {
      out += *s;
      return;
    }
    if (printable(*s) && s->find('>') == std::string_view::npos) {
      out += '<';
      out += *s;
      out += '>';
      return;
    }
  } else if (auto s = c.code()) {
    if (printable(*s) && balanced_braces(*s)) {
      out += '{';
      out += *s;
      out += '}';
      return;
    }
  }
  out += '(';
  render_into(out, c.left());
  out += ':';
  render_into(out, c.right());
  out += ')';
}

void render_into(std::string &out, const Data &d) {
  bool first = true;
  for (const auto &c : d) {
    if (!first)
      out += ' ';
    first = false;
    render_into(out, c);
  }
}

} // namespace

std::string render(const Data &d) {
  if (d.empty())
    return "()";
  std::string out;
  render_into(out, d);
  return out;
}

std::string render(const Coda &c) {
  std::string out;
  render_into(out, c);
  return out;
}

} // namespace coda
