#pragma once

#include <cctype>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qga/error.hpp"
#include "qga/op.hpp"

namespace qga {

/// A concrete element of one cofactor. Factor 0 is the amalgamated base; a
/// leaf of factor i > 0 always names an element outside the image of the base.
struct Leaf {
  std::uint32_t factor = 0;
  std::uint32_t element = 0;

  friend auto operator<=>(const Leaf&, const Leaf&) = default;
};

enum class Dir : std::uint8_t { left, right };
using Path = std::vector<Dir>;

inline std::string format_path(const Path& p) {
  if (p.empty()) return "root";
  std::string s;
  for (Dir d : p) s += d == Dir::left ? 'L' : 'R';
  return s;
}

/// Immutable binary term over leaves; copies share structure. Equality is
/// syntactic identity.
class Term {
 public:
  static Term leaf(Leaf l) {
    auto n = std::make_shared<Node>();
    n->is_leaf = true;
    n->leaf = l;
    n->count = 1;
    n->hash = std::hash<std::uint64_t>{}((std::uint64_t{l.factor} << 32) | l.element) * 31 + 7;
    return Term(std::move(n));
  }

  static Term leaf(std::uint32_t factor, std::uint32_t element) { return leaf(Leaf{factor, element}); }

  static Term node(Op op, Term left, Term right) {
    auto n = std::make_shared<Node>();
    n->is_leaf = false;
    n->op = op;
    n->count = 1 + left.node_count() + right.node_count();
    std::size_t h = static_cast<std::size_t>(op) + 0x51ed27;
    h ^= left.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= right.hash() * 3 + 0x7f4a7c15ULL + (h << 6) + (h >> 2);
    n->hash = h;
    n->children.reserve(2);
    n->children.push_back(std::move(left));
    n->children.push_back(std::move(right));
    return Term(std::move(n));
  }

  bool is_leaf() const noexcept { return node_->is_leaf; }
  const Leaf& as_leaf() const noexcept { return node_->leaf; }
  Op op() const noexcept { return node_->op; }
  const Term& left() const noexcept { return node_->children[0]; }
  const Term& right() const noexcept { return node_->children[1]; }

  std::size_t node_count() const noexcept { return node_->count; }
  std::size_t hash() const noexcept { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_.get() == b.node_.get()) return true;
    if (a.hash() != b.hash() || a.node_count() != b.node_count()) return false;
    if (a.is_leaf() != b.is_leaf()) return false;
    if (a.is_leaf()) return a.as_leaf() == b.as_leaf();
    return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
  }

 private:
  struct Node {
    bool is_leaf = true;
    Leaf leaf{};
    Op op = Op::mul;
    std::vector<Term> children;
    std::size_t count = 1;
    std::size_t hash = 0;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

inline Term mul(Term a, Term b) { return Term::node(Op::mul, std::move(a), std::move(b)); }
inline Term ldiv(Term a, Term b) { return Term::node(Op::ldiv, std::move(a), std::move(b)); }
inline Term rdiv(Term a, Term b) { return Term::node(Op::rdiv, std::move(a), std::move(b)); }

inline std::size_t node_count(const Term& t) { return t.node_count(); }

inline std::optional<Term> try_subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (Dir d : p) {
    if (cur->is_leaf()) return std::nullopt;
    cur = d == Dir::left ? &cur->left() : &cur->right();
  }
  return *cur;
}

inline Term subterm_at(const Term& t, const Path& p) {
  auto s = try_subterm_at(t, p);
  if (!s) throw std::out_of_range("path " + format_path(p) + " does not resolve");
  return *s;
}

namespace detail {
inline Term replace_from(const Term& t, const Path& p, std::size_t depth, const Term& s) {
  if (depth == p.size()) return s;
  if (t.is_leaf())
    throw std::out_of_range("path " + format_path(p) + " does not resolve");
  if (p[depth] == Dir::left) return Term::node(t.op(), replace_from(t.left(), p, depth + 1, s), t.right());
  return Term::node(t.op(), t.left(), replace_from(t.right(), p, depth + 1, s));
}
}  // namespace detail

/// t with the subterm at p replaced by s; siblings along the path are shared.
inline Term replace_at(const Term& t, const Path& p, const Term& s) {
  return detail::replace_from(t, p, 0, s);
}

// Pre-order visit of every subterm with its path.
template <class F>
void for_each_subterm(const Term& t, F&& f) {
  Path path;
  auto rec = [&](auto&& self, const Term& u) -> void {
    f(u, std::as_const(path));
    if (u.is_leaf()) return;
    path.push_back(Dir::left);
    self(self, u.left());
    path.back() = Dir::right;
    self(self, u.right());
    path.pop_back();
  };
  rec(rec, t);
}

// Leaves left to right, with repetitions.
inline std::vector<Leaf> leaves_of(const Term& t) {
  std::vector<Leaf> out;
  for_each_subterm(t, [&](const Term& u, const Path&) {
    if (u.is_leaf()) out.push_back(u.as_leaf());
  });
  return out;
}

/// Rebuilds t with every leaf l replaced by f(l).
template <class F>
  requires std::invocable<F&, const Leaf&>
Term map_leaves(const Term& t, F&& f) {
  if (t.is_leaf()) return Term(f(t.as_leaf()));
  return Term::node(t.op(), map_leaves(t.left(), f), map_leaves(t.right(), f));
}

// ---------------------------------------------------------------------------
// Text syntax:  term := leaf | op "(" term "," term ")"
//               op   := "*" | "ld" | "rd"
//               leaf := factor_name "." element_name

/// Anything that can translate between leaf names and Leaf values.
template <class N>
concept LeafNaming = requires(const N& n, std::string_view factor, std::string_view element, Leaf l) {
  { n.resolve_leaf(factor, element) } -> std::same_as<std::optional<Leaf>>;
  { n.leaf_name(l) } -> std::convertible_to<std::string>;
};

template <LeafNaming N>
std::string format_term(const Term& t, const N& naming) {
  std::string out;
  auto rec = [&](auto&& self, const Term& u) -> void {
    if (u.is_leaf()) {
      out += naming.leaf_name(u.as_leaf());
      return;
    }
    out += op_symbol(u.op());
    out += '(';
    self(self, u.left());
    out += ',';
    self(self, u.right());
    out += ')';
  };
  rec(rec, t);
  return out;
}

namespace detail {

template <LeafNaming N>
class TermParser {
 public:
  TermParser(std::string_view text, const N& naming) : text_(text), naming_(naming) {}

  Term parse_all() {
    Term t = parse();
    skip_space();
    if (pos_ != text_.size()) throw parse_error(pos_, "unexpected trailing input");
    return t;
  }

 private:
  static bool is_name_char(char c) {
    return !(c == '.' || c == '(' || c == ')' || c == ',' || c == '*' ||
             std::isspace(static_cast<unsigned char>(c)));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw parse_error(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view name() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) throw parse_error(start, "expected a name");
    return text_.substr(start, pos_ - start);
  }

  Term operands(Op op) {
    expect('(');
    Term l = parse();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ')')
      throw parse_error(pos_, std::string(op_symbol(op)) + " takes two arguments, got one");
    expect(',');
    Term r = parse();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ',')
      throw parse_error(pos_, std::string(op_symbol(op)) + " takes two arguments, got more");
    expect(')');
    return Term::node(op, std::move(l), std::move(r));
  }

  Term parse() {
    skip_space();
    if (pos_ >= text_.size()) throw parse_error(pos_, "unexpected end of input");
    if (text_[pos_] == '*') {
      ++pos_;
      return operands(Op::mul);
    }
    const std::size_t start = pos_;
    std::string_view first = name();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      if (first == "ld") return operands(Op::ldiv);
      if (first == "rd") return operands(Op::rdiv);
      throw parse_error(start, "unknown operation '" + std::string(first) + "'");
    }
    expect('.');
    std::string_view second = name();
    auto l = naming_.resolve_leaf(first, second);
    if (!l)
      throw parse_error(start, "unknown leaf '" + std::string(first) + "." + std::string(second) + "'");
    return Term::leaf(*l);
  }

  std::string_view text_;
  const N& naming_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <LeafNaming N>
Term parse_term(std::string_view text, const N& naming) {
  return detail::TermParser<N>(text, naming).parse_all();
}

}  // namespace qga
