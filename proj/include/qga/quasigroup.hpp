#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qga/error.hpp"
#include "qga/op.hpp"
#include "qga/rng.hpp"

namespace qga {

using IndexSet = std::vector<std::size_t>;  // sorted, duplicate-free
using Table = std::vector<std::vector<std::size_t>>;

namespace detail {

inline bool is_valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == '.' || c == '(' || c == ')' || c == ',' || c == '*' || c == ' ' || c == '\t' || c == '\n' ||
        c == '\r')
      return false;
  }
  return true;
}

inline std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

inline void check_names(const std::string& algebra, const std::vector<std::string>& names,
                        std::size_t n) {
  if (!is_valid_name(algebra)) throw invalid_input("invalid algebra name '" + algebra + "'");
  if (names.size() != n)
    throw invalid_input("algebra '" + algebra + "': " + std::to_string(names.size()) +
                        " element names for carrier of size " + std::to_string(n));
  std::set<std::string_view> seen;
  for (const auto& s : names) {
    if (!is_valid_name(s)) throw invalid_input("invalid element name '" + s + "'");
    if (!seen.insert(s).second) throw invalid_input("duplicate element name '" + s + "'");
  }
}

}  // namespace detail

/// A finite quasigroup given by a Latin-square multiplication table. Both
/// division tables are derived once at construction.
class FiniteQuasigroup {
 public:
  /// Throws invalid_input naming the first repeated row or column entry.
  static FiniteQuasigroup from_mul_table(const Table& table, std::vector<std::string> names = {},
                                         std::string name = "A") {
    const std::size_t n = table.size();
    if (n == 0) throw invalid_input("empty multiplication table");
    if (names.empty()) names = detail::default_names(n);
    detail::check_names(name, names, n);
    FiniteQuasigroup q;
    q.n_ = n;
    q.name_ = std::move(name);
    q.names_ = std::move(names);
    q.mul_.assign(n * n, 0);
    q.ldiv_.assign(n * n, n);
    q.rdiv_.assign(n * n, n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n)
        throw invalid_input("row " + std::to_string(a) + " has " + std::to_string(table[a].size()) +
                            " entries, expected " + std::to_string(n));
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t c = table[a][b];
        if (c >= n)
          throw invalid_input("entry (" + std::to_string(a) + "," + std::to_string(b) +
                              ") out of range");
        q.mul_[a * n + b] = static_cast<std::uint32_t>(c);
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t c = q.mul(a, b);
        if (q.ldiv_[a * n + c] != n)
          throw invalid_input("not a Latin square: row " + std::to_string(a) + " repeats " +
                              std::to_string(c));
        if (q.rdiv_[c * n + b] != n)
          throw invalid_input("not a Latin square: column " + std::to_string(b) + " repeats " +
                              std::to_string(c));
        q.ldiv_[a * n + c] = static_cast<std::uint32_t>(b);
        q.rdiv_[c * n + b] = static_cast<std::uint32_t>(a);
      }
    }
    return q;
  }

  static FiniteQuasigroup trivial(std::string name = "A") {
    return from_mul_table({{0}}, {}, std::move(name));
  }

  // Additive group Z_n viewed as a quasigroup.
  static FiniteQuasigroup cyclic(std::size_t n, std::string name = "Z") {
    Table t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return from_mul_table(t, {}, std::move(name));
  }

  std::size_t size() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  const std::string& element_name(std::size_t a) const { return names_.at(a); }
  const std::vector<std::string>& element_names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view element) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (names_[i] == element) return i;
    return std::nullopt;
  }

  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * n_ + b]; }
  std::size_t ldiv(std::size_t a, std::size_t b) const { return ldiv_[a * n_ + b]; }
  std::size_t rdiv(std::size_t a, std::size_t b) const { return rdiv_[a * n_ + b]; }

  std::size_t apply(Op op, std::size_t a, std::size_t b) const {
    switch (op) {
      case Op::mul: return mul(a, b);
      case Op::ldiv: return ldiv(a, b);
      case Op::rdiv: return rdiv(a, b);
    }
    return n_;
  }

  Table table(Op op = Op::mul) const {
    Table t(n_, std::vector<std::size_t>(n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) t[a][b] = apply(op, a, b);
    return t;
  }

  FiniteQuasigroup renamed(std::string name) const {
    if (!detail::is_valid_name(name)) throw invalid_input("invalid algebra name '" + name + "'");
    FiniteQuasigroup q = *this;
    q.name_ = std::move(name);
    return q;
  }

  // Tables only; names are presentation.
  bool same_tables(const FiniteQuasigroup& other) const { return mul_ == other.mul_; }

  friend bool operator==(const FiniteQuasigroup&, const FiniteQuasigroup&) = default;

 private:
  FiniteQuasigroup() = default;

  std::size_t n_ = 0;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> ldiv_;
  std::vector<std::uint32_t> rdiv_;
};

inline bool is_homomorphism(const FiniteQuasigroup& source, const FiniteQuasigroup& target,
                            const std::vector<std::size_t>& map) {
  if (map.size() != source.size()) return false;
  for (std::size_t x : map)
    if (x >= target.size()) return false;
  for (Op op : all_ops)
    for (std::size_t a = 0; a < source.size(); ++a)
      for (std::size_t b = 0; b < source.size(); ++b)
        if (map[source.apply(op, a, b)] != target.apply(op, map[a], map[b])) return false;
  return true;
}

inline bool is_injective(const std::vector<std::size_t>& map) {
  std::vector<std::size_t> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

/// An injective homomorphism between finite quasigroups.
struct Embedding {
  FiniteQuasigroup source;
  FiniteQuasigroup target;
  std::vector<std::size_t> map;

  static Embedding make(FiniteQuasigroup source, FiniteQuasigroup target,
                        std::vector<std::size_t> map) {
    if (map.size() != source.size())
      throw invalid_input("embedding map has " + std::to_string(map.size()) +
                          " entries for a source of size " + std::to_string(source.size()));
    if (!is_injective(map)) throw invalid_input("embedding map is not injective");
    if (!is_homomorphism(source, target, map))
      throw invalid_input("embedding map is not a homomorphism " + source.name() + " -> " +
                          target.name());
    return Embedding{std::move(source), std::move(target), std::move(map)};
  }

  static Embedding identity(const FiniteQuasigroup& a) {
    std::vector<std::size_t> m(a.size());
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Embedding{a, a, std::move(m)};
  }

  IndexSet image() const {
    IndexSet s = map;
    std::sort(s.begin(), s.end());
    return s;
  }
};

// ---------------------------------------------------------------------------
// Latin square generation

namespace detail {

// Fills every cell equal to n by depth-first search with randomized candidate
// order. Returns false if the node budget runs out first.
inline bool complete_latin_square(Table& t, Rng& rng, std::size_t& budget) {
  const std::size_t n = t.size();
  std::size_t cell = 0;
  while (cell < n * n && t[cell / n][cell % n] != n) ++cell;
  if (cell == n * n) return true;
  const std::size_t r = cell / n, c = cell % n;
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < n; ++j)
    if (t[r][j] != n) used[t[r][j]] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (t[i][c] != n) used[t[i][c]] = true;
  std::vector<std::size_t> candidates;
  for (std::size_t s = 0; s < n; ++s)
    if (!used[s]) candidates.push_back(s);
  rng.shuffle(candidates);
  for (std::size_t s : candidates) {
    if (budget == 0) return false;
    --budget;
    t[r][c] = s;
    if (complete_latin_square(t, rng, budget)) return true;
    t[r][c] = n;
  }
  return false;
}

inline Table fill_with_restarts(const Table& partial, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Table t = partial;
    std::size_t budget = 20000;
    if (complete_latin_square(t, rng, budget)) return t;
  }
  throw invalid_input("partial Latin square could not be completed");
}

}  // namespace detail

/// Random Latin square of order n; deterministic for a fixed (n, seed).
inline FiniteQuasigroup random_quasigroup(std::size_t n, std::uint64_t seed,
                                          std::string name = "A") {
  if (n == 0) throw invalid_input("quasigroup order must be positive");
  Rng rng(seed);
  Table partial(n, std::vector<std::size_t>(n, n));
  return FiniteQuasigroup::from_mul_table(detail::fill_with_restarts(partial, rng), {},
                                          std::move(name));
}

/// A random quasigroup of order n containing `base` as a subquasigroup, with
/// the returned map embedding it. An m-element subsquare only extends to
/// order n when n = m or n >= 2m.
inline std::pair<FiniteQuasigroup, std::vector<std::size_t>> random_extension(
    const FiniteQuasigroup& base, std::size_t n, Rng& rng, std::string name = "A") {
  const std::size_t m = base.size();
  if (n != m && n < 2 * m)
    throw invalid_input("a subquasigroup of order " + std::to_string(m) +
                        " cannot sit in order " + std::to_string(n));
  Table partial(n, std::vector<std::size_t>(n, n));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) partial[a][b] = base.mul(a, b);
  const Table filled = detail::fill_with_restarts(partial, rng);
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  rng.shuffle(sigma);
  Table relabeled(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) relabeled[sigma[a]][sigma[b]] = sigma[filled[a][b]];
  std::vector<std::size_t> embedding(sigma.begin(), sigma.begin() + static_cast<long>(m));
  return {FiniteQuasigroup::from_mul_table(relabeled, {}, std::move(name)), std::move(embedding)};
}

/// Every Latin square of order n (n <= 5 is practical).
inline std::vector<Table> all_latin_squares(std::size_t n) {
  std::vector<Table> out;
  Table t(n, std::vector<std::size_t>(n, n));
  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (cell == n * n) {
      out.push_back(t);
      return;
    }
    const std::size_t r = cell / n, c = cell % n;
    for (std::size_t s = 0; s < n; ++s) {
      bool ok = true;
      for (std::size_t j = 0; j < c && ok; ++j) ok = t[r][j] != s;
      for (std::size_t i = 0; i < r && ok; ++i) ok = t[i][c] != s;
      if (!ok) continue;
      t[r][c] = s;
      self(self, cell + 1);
    }
    t[r][c] = n;
  };
  rec(rec, 0);
  return out;
}

/// Lexicographically least relabeling of a multiplication table; equal keys
/// iff the quasigroups are isomorphic.
inline std::vector<std::size_t> isomorphism_key(const FiniteQuasigroup& q) {
  const std::size_t n = q.size();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::vector<std::size_t> best;
  std::vector<std::size_t> key(n * n);
  do {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) key[sigma[a] * n + sigma[b]] = sigma[q.mul(a, b)];
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

/// One representative per isomorphism class of quasigroups of order n.
inline std::vector<FiniteQuasigroup> quasigroups_up_to_isomorphism(std::size_t n,
                                                                   const std::string& name = "Q") {
  std::set<std::vector<std::size_t>> seen;
  std::vector<FiniteQuasigroup> reps;
  for (const Table& t : all_latin_squares(n)) {
    auto q = FiniteQuasigroup::from_mul_table(t, {}, name);
    if (seen.insert(isomorphism_key(q)).second) reps.push_back(std::move(q));
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Subquasigroups

inline bool is_subquasigroup(const FiniteQuasigroup& a, const IndexSet& subset) {
  if (subset.empty()) return false;
  std::vector<bool> in(a.size(), false);
  for (std::size_t x : subset) {
    if (x >= a.size()) return false;
    in[x] = true;
  }
  for (Op op : all_ops)
    for (std::size_t x : subset)
      for (std::size_t y : subset)
        if (!in[a.apply(op, x, y)]) return false;
  return true;
}

/// Smallest subset containing `seeds` closed under all three operations.
inline IndexSet generated_subquasigroup(const FiniteQuasigroup& a, const IndexSet& seeds) {
  if (seeds.empty()) throw invalid_input("generated_subquasigroup: empty seed set");
  std::vector<bool> in(a.size(), false);
  std::vector<std::size_t> members;
  for (std::size_t s : seeds) {
    if (s >= a.size()) throw invalid_input("seed index " + std::to_string(s) + " out of range");
    if (!in[s]) {
      in[s] = true;
      members.push_back(s);
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j)
        for (Op op : all_ops) {
          const std::size_t z = a.apply(op, members[i], members[j]);
          if (!in[z]) {
            in[z] = true;
            members.push_back(z);
            grew = true;
          }
        }
  }
  std::sort(members.begin(), members.end());
  return members;
}

/// The subquasigroup on `subset` as a standalone algebra, with its inclusion map.
inline std::pair<FiniteQuasigroup, std::vector<std::size_t>> subquasigroup(
    const FiniteQuasigroup& a, const IndexSet& subset, std::string name = {}) {
  if (!is_subquasigroup(a, subset))
    throw invalid_input("subset is not closed under the operations of " + a.name());
  std::vector<std::size_t> local(a.size(), a.size());
  for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = i;
  Table t(subset.size(), std::vector<std::size_t>(subset.size()));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    names.push_back(a.element_name(subset[i]));
    for (std::size_t j = 0; j < subset.size(); ++j) t[i][j] = local[a.mul(subset[i], subset[j])];
  }
  if (name.empty()) name = a.name();
  return {FiniteQuasigroup::from_mul_table(t, std::move(names), std::move(name)), subset};
}

// ---------------------------------------------------------------------------
// Congruences

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true if two distinct classes were merged.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// An equivalence on a finite carrier, stored as class ids numbered in order
/// of first appearance (so equal partitions compare equal).
class Congruence {
 public:
  static Congruence from_classes(std::vector<std::size_t> class_of) {
    Congruence r;
    std::vector<std::size_t> renumber(class_of.size() + 1, SIZE_MAX);
    std::size_t next = 0;
    for (auto& c : class_of) {
      if (c >= renumber.size()) renumber.resize(c + 1, SIZE_MAX);
      if (renumber[c] == SIZE_MAX) renumber[c] = next++;
      c = renumber[c];
    }
    r.class_of_ = std::move(class_of);
    r.classes_ = next;
    return r;
  }

  static Congruence diagonal(std::size_t n) {
    std::vector<std::size_t> c(n);
    std::iota(c.begin(), c.end(), std::size_t{0});
    return from_classes(std::move(c));
  }

  static Congruence full(std::size_t n) { return from_classes(std::vector<std::size_t>(n, 0)); }

  std::size_t carrier_size() const noexcept { return class_of_.size(); }
  std::size_t class_count() const noexcept { return classes_; }
  std::size_t class_of(std::size_t a) const { return class_of_.at(a); }
  const std::vector<std::size_t>& classes() const noexcept { return class_of_; }
  bool related(std::size_t a, std::size_t b) const { return class_of_.at(a) == class_of_.at(b); }

  // Every class of *this lies inside a class of other.
  bool refines(const Congruence& other) const {
    for (std::size_t a = 0; a < class_of_.size(); ++a)
      for (std::size_t b = a + 1; b < class_of_.size(); ++b)
        if (related(a, b) && !other.related(a, b)) return false;
    return true;
  }

  std::vector<IndexSet> blocks() const {
    std::vector<IndexSet> out(classes_);
    for (std::size_t a = 0; a < class_of_.size(); ++a) out[class_of_[a]].push_back(a);
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> generating_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::vector<std::size_t> first(classes_, SIZE_MAX);
    for (std::size_t a = 0; a < class_of_.size(); ++a) {
      if (first[class_of_[a]] == SIZE_MAX)
        first[class_of_[a]] = a;
      else
        out.emplace_back(first[class_of_[a]], a);
    }
    return out;
  }

  bool is_compatible_with(const FiniteQuasigroup& a) const {
    if (a.size() != class_of_.size()) return false;
    for (Op op : all_ops)
      for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t x2 = 0; x2 < a.size(); ++x2) {
          if (!related(x, x2)) continue;
          for (std::size_t y = 0; y < a.size(); ++y) {
            if (!related(a.apply(op, x, y), a.apply(op, x2, y))) return false;
            if (!related(a.apply(op, y, x), a.apply(op, y, x2))) return false;
          }
        }
    return true;
  }

  friend bool operator==(const Congruence&, const Congruence&) = default;
  friend auto operator<=>(const Congruence& l, const Congruence& r) {
    return l.class_of_ <=> r.class_of_;
  }

 private:
  std::vector<std::size_t> class_of_;
  std::size_t classes_ = 0;
};

/// Least congruence of `a` identifying every given pair. Merging is propagated
/// one argument at a time: x ~ x' forces f(x,y) ~ f(x',y) and f(y,x) ~ f(y,x').
inline Congruence congruence_closure(const FiniteQuasigroup& a,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  const std::size_t n = a.size();
  DisjointSets ds(n);
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw invalid_input("congruence pair index out of range");
    ds.unite(x, y);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t r = ds.find(x);
      if (r == x) continue;
      for (Op op : all_ops)
        for (std::size_t y = 0; y < n; ++y) {
          changed |= ds.unite(a.apply(op, x, y), a.apply(op, r, y));
          changed |= ds.unite(a.apply(op, y, x), a.apply(op, y, r));
        }
    }
  }
  std::vector<std::size_t> c(n);
  for (std::size_t x = 0; x < n; ++x) c[x] = ds.find(x);
  return Congruence::from_classes(std::move(c));
}

inline Congruence join(const FiniteQuasigroup& a, const Congruence& r, const Congruence& s) {
  auto pairs = r.generating_pairs();
  auto more = s.generating_pairs();
  pairs.insert(pairs.end(), more.begin(), more.end());
  return congruence_closure(a, pairs);
}

/// The whole congruence lattice, generated from the diagonal by joining with
/// principal congruences. Sorted.
inline std::vector<Congruence> all_congruences(const FiniteQuasigroup& a) {
  const std::size_t n = a.size();
  std::vector<Congruence> principal;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) principal.push_back(congruence_closure(a, {{x, y}}));
  std::set<Congruence> found{Congruence::diagonal(n)};
  std::vector<Congruence> frontier{Congruence::diagonal(n)};
  while (!frontier.empty()) {
    std::vector<Congruence> next;
    for (const auto& r : frontier)
      for (const auto& p : principal) {
        Congruence j = join(a, r, p);
        if (found.insert(j).second) next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

struct Quotient {
  FiniteQuasigroup algebra;
  std::vector<std::size_t> projection;  // element -> class id
};

/// A / R; class i is named after its least element.
inline Quotient quotient(const FiniteQuasigroup& a, const Congruence& r) {
  if (!r.is_compatible_with(a))
    throw invalid_input("quotient: partition is not a congruence of " + a.name());
  const std::size_t k = r.class_count();
  std::vector<std::size_t> rep(k, SIZE_MAX);
  for (std::size_t x = 0; x < a.size(); ++x)
    if (rep[r.class_of(x)] == SIZE_MAX) rep[r.class_of(x)] = x;
  Table t(k, std::vector<std::size_t>(k));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    names.push_back(a.element_name(rep[i]));
    for (std::size_t j = 0; j < k; ++j) t[i][j] = r.class_of(a.mul(rep[i], rep[j]));
  }
  return {FiniteQuasigroup::from_mul_table(t, std::move(names), a.name() + "q"), r.classes()};
}

/// Pullback of a congruence on the target along a map into it.
inline Congruence pullback(const Congruence& target_relation, const std::vector<std::size_t>& map) {
  std::vector<std::size_t> c(map.size());
  for (std::size_t x = 0; x < map.size(); ++x) c[x] = target_relation.class_of(map[x]);
  return Congruence::from_classes(std::move(c));
}

/// Least congruence of the target containing the image of r.
inline Congruence closure_along(const Embedding& p, const Congruence& r) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto [x, y] : r.generating_pairs()) pairs.emplace_back(p.map[x], p.map[y]);
  return congruence_closure(p.target, pairs);
}

struct CodescentVerdict {
  bool codescent = true;
  std::optional<Congruence> witness;  // first R with pullback(R') != R
  std::size_t congruences_checked = 0;
};

/// Monomorphism test p: B -> E is codescent iff every congruence R on B equals
/// the pullback of its closure R' in E.
inline CodescentVerdict is_codescent(const Embedding& p) {
  if (!is_injective(p.map)) throw invalid_input("is_codescent: map is not injective");
  if (!is_homomorphism(p.source, p.target, p.map))
    throw invalid_input("is_codescent: map is not a homomorphism");
  CodescentVerdict v;
  for (const Congruence& r : all_congruences(p.source)) {
    ++v.congruences_checked;
    const Congruence back = pullback(closure_along(p, r), p.map);
    if (back != r) {
      v.codescent = false;
      v.witness = r;
      break;
    }
  }
  return v;
}

}  // namespace qga
