#pragma once

// Pure data: a Data is a finite sequence of codas, a Coda is a pair of Data.
//
// Codas are hash-consed. Two structurally identical codas built anywhere in
// the process share one node, so Coda equality is a pointer comparison and
// Data equality is an element-wise pointer comparison. Nodes are immutable
// and reference counted; the intern table only holds weak references.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coda {

class Data;

class Coda {
public:
  struct Node;

  /// Left component of the pair.
  const Data &left() const;
  const Data &right() const;

  std::size_t hash() const noexcept;
  const void *id() const noexcept { return node_.get(); }

  /// Byte-string atom text, if this coda is one.
  std::optional<std::string_view> bytes() const;
  /// Source text of a language code atom `{s}`, if this coda is one.
  std::optional<std::string_view> code() const;

  // Built only from the bootstrap atoms (:), 0-bit, 1-bit and their
  // identity domains. Such codas are fixed by every context that contains
  // the bootstrap definitions, so evaluation never needs to descend into them.
  bool bootstrap_inert() const noexcept;

  friend bool operator==(const Coda &a, const Coda &b) noexcept {
    return a.node_ == b.node_;
  }

private:
  explicit Coda(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Coda pair(Data left, Data right);

  std::shared_ptr<const Node> node_;
};

class Data {
public:
  using value_type = Coda;
  using const_iterator = std::vector<Coda>::const_iterator;

  Data() = default;
  Data(std::initializer_list<Coda> items) : items_(items) {}
  explicit Data(std::vector<Coda> items) : items_(std::move(items)) {}

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Coda &operator[](std::size_t i) const { return items_[i]; }
  const Coda &front() const { return items_.front(); }
  const Coda &back() const { return items_.back(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }
  std::span<const Coda> items() const noexcept { return items_; }

  void push_back(Coda c) { items_.push_back(std::move(c)); }
  void append(const Data &other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }
  void reserve(std::size_t n) { items_.reserve(n); }

  /// Items [from, to).
  Data slice(std::size_t from, std::size_t to) const;
  Data slice(std::size_t from) const { return slice(from, size()); }

  std::size_t hash() const noexcept;

  friend bool operator==(const Data &a, const Data &b) noexcept {
    return a.items_ == b.items_;
  }

private:
  std::vector<Coda> items_;
};

struct DataHash {
  std::size_t operator()(const Data &d) const noexcept { return d.hash(); }
};
struct CodaHash {
  std::size_t operator()(const Coda &c) const noexcept { return c.hash(); }
};

Data concat(const Data &a, const Data &b);
Coda pair(Data left, Data right);

/// The domain of a coda: the first coda of its left data, or empty.
Data domain_of(const Coda &c);

/// Structural identity. Interning makes this an element-wise id comparison.
bool structural_equal(const Data &a, const Data &b) noexcept;

/// Number of coda nodes in the tree, counting shared nodes once per use.
std::size_t tree_size(const Data &d, std::size_t limit = SIZE_MAX);

// Bootstrap constants.
const Coda &unit();      ///< (:)
const Coda &bit0();      ///< ((:):)
const Coda &bit1();      ///< ((:):(:))
const Coda &lang_mark(); ///< the empty bit-sequence atom (((:):):), domain of code atoms

/// Bit-sequence atom: left is 0-bit followed by one bit atom per bit.
Coda bit_sequence(std::span<const bool> bits);

/// Byte-string atom: left is 1-bit followed by 8 bits per byte, MSB first.
Coda byte_atom(std::string_view s);
inline Data encode_bytes(std::string_view s) { return Data{byte_atom(s)}; }
std::optional<std::string> decode_bytes(const Data &d);

/// Language code atom {s}: (lang_mark : byte_atom(s)).
Coda code_atom(std::string_view source);

/// Deterministic text form. `()` for empty data, `(L:R)` for codas, byte
/// atoms as bare words or `<...>`, code atoms as `{...}`.
std::string render(const Data &d);
std::string render(const Coda &c);

/// Characters that stop a bare word when rendering or reading literals.
bool is_word_byte(unsigned char ch) noexcept;

} // namespace coda

template <> struct std::hash<coda::Coda> {
  std::size_t operator()(const coda::Coda &c) const noexcept { return c.hash(); }
};
template <> struct std::hash<coda::Data> {
  std::size_t operator()(const coda::Data &d) const noexcept { return d.hash(); }
};
