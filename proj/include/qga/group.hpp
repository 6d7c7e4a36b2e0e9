#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qga/error.hpp"
#include "qga/quasigroup.hpp"

namespace qga {

/// A finite group given by its multiplication table, with inverses and the
/// identity derived (and checked) at construction.
class FiniteGroup {
 public:
  static FiniteGroup from_mul_table(const Table& table, std::vector<std::string> names = {},
                                    std::string name = "G") {
    const std::size_t n = table.size();
    if (n == 0) throw invalid_input("group " + name + " is empty");
    for (const auto& row : table) {
      if (row.size() != n) throw invalid_input("group " + name + ": table is not square");
      for (std::size_t x : row)
        if (x >= n) throw invalid_input("group " + name + ": table entry out of range");
    }
    if (names.empty()) names = detail::default_names(n);
    detail::check_names(name, names, n);
    FiniteGroup g;
    g.n_ = n;
    g.name_ = std::move(name);
    g.names_ = std::move(names);
    g.mul_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.mul_[a * n + b] = static_cast<std::uint32_t>(table[a][b]);

    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
            throw invalid_input("group " + g.name_ + ": multiplication is not associative");
    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
      if (ok) id = e;
    }
    if (!id) throw invalid_input("group " + g.name_ + ": no identity element");
    g.id_ = *id;
    g.inv_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (g.mul(a, b) == g.id_ && g.mul(b, a) == g.id_) g.inv_[a] = b;
    for (std::size_t a = 0; a < n; ++a)
      if (g.inv_[a] == n) throw invalid_input("group " + g.name_ + ": element without inverse");
    return g;
  }

  static FiniteGroup cyclic(std::size_t n, std::string name = "Z") {
    Table t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return from_mul_table(t, {}, std::move(name));
  }

  /// Elements (i, j) numbered i * |h| + j.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, std::string name) {
    const std::size_t n = g.size() * h.size();
    Table t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        t[a][b] = g.mul(a / h.size(), b / h.size()) * h.size() + h.mul(a % h.size(), b % h.size());
    return from_mul_table(t, {}, std::move(name));
  }

  /// Symmetries of the n-gon: r^k numbered k, s r^k numbered n + k.
  static FiniteGroup dihedral(std::size_t n, std::string name = "D") {
    Table t(2 * n, std::vector<std::size_t>(2 * n));
    for (std::size_t a = 0; a < 2 * n; ++a)
      for (std::size_t b = 0; b < 2 * n; ++b) {
        const std::size_t i = a % n, j = b % n;
        const bool sa = a >= n, sb = b >= n;
        // r^i r^j = r^{i+j}, r^i s r^j = s r^{j-i}, s r^i r^j = s r^{i+j}, s r^i s r^j = r^{j-i}
        const std::size_t k = sb ? (j + n - i) % n : (i + j) % n;
        t[a][b] = (sa != sb ? n : 0) + k;
      }
    return from_mul_table(t, {}, std::move(name));
  }

  /// The quaternion group: 0..3 = 1, i, -1, -i and 4..7 = j, k, -j, -k.
  static FiniteGroup quaternion(std::string name = "Q") {
    // Represent as pairs (x, y) with x in Z4 (power of i) and y in {0,1} (factor j),
    // using j i = i^{-1} j and j^2 = i^2.
    Table t(8, std::vector<std::size_t>(8));
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = 0; b < 8; ++b) {
        const std::size_t x1 = a % 4, y1 = a / 4, x2 = b % 4, y2 = b / 4;
        std::size_t x = y1 ? (x1 + 4 - x2) % 4 : (x1 + x2) % 4;
        if (y1 && y2) x = (x + 2) % 4;
        t[a][b] = ((y1 + y2) % 2) * 4 + x;
      }
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
  std::size_t inv(std::size_t a) const { return inv_.at(a); }
  std::size_t id() const noexcept { return id_; }
  const std::vector<std::size_t>& inverses() const noexcept { return inv_; }

  Table table() const {
    Table t(n_, std::vector<std::size_t>(n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
  }

  FiniteGroup renamed(std::string name) const {
    FiniteGroup g = *this;
    g.name_ = std::move(name);
    return g;
  }

  bool same_tables(const FiniteGroup& other) const { return mul_ == other.mul_; }

 private:
  FiniteGroup() = default;

  std::size_t n_ = 0;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::size_t> inv_;
  std::size_t id_ = 0;
};

inline bool is_group_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                  const std::vector<std::size_t>& map) {
  if (map.size() != g.size()) return false;
  for (std::size_t x : map)
    if (x >= h.size()) return false;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return false;
  return true;
}

inline bool is_subgroup(const FiniteGroup& g, const IndexSet& s) {
  if (s.empty() || !std::is_sorted(s.begin(), s.end())) return false;
  std::vector<bool> in(g.size(), false);
  for (std::size_t x : s) {
    if (x >= g.size()) return false;
    in[x] = true;
  }
  for (std::size_t a : s) {
    if (!in[g.inv(a)]) return false;
    for (std::size_t b : s)
      if (!in[g.mul(a, b)]) return false;
  }
  return true;
}

inline IndexSet generated_subgroup(const FiniteGroup& g, const IndexSet& seeds) {
  std::vector<bool> in(g.size(), false);
  IndexSet members{g.id()};
  in[g.id()] = true;
  for (std::size_t s : seeds)
    if (!in.at(s)) {
      in[s] = true;
      members.push_back(s);
    }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t c : {g.mul(members[i], members[j]), g.mul(members[j], members[i])})
        if (!in[c]) {
          in[c] = true;
          members.push_back(c);
        }
  std::sort(members.begin(), members.end());
  return members;
}

/// Every subgroup, sorted. Finite, so closure under products gives inverses.
inline std::vector<IndexSet> all_subgroups(const FiniteGroup& g) {
  std::set<IndexSet> found{{g.id()}};
  std::vector<IndexSet> frontier{{g.id()}};
  while (!frontier.empty()) {
    std::vector<IndexSet> next;
    for (const auto& h : frontier)
      for (std::size_t x = 0; x < g.size(); ++x) {
        if (std::binary_search(h.begin(), h.end(), x)) continue;
        IndexSet seeds = h;
        seeds.push_back(x);
        IndexSet k = generated_subgroup(g, seeds);
        if (found.insert(k).second) next.push_back(std::move(k));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

/// The subgroup on `subset` renumbered in increasing order, with its inclusion.
inline std::pair<FiniteGroup, std::vector<std::size_t>> subgroup(const FiniteGroup& g,
                                                                 const IndexSet& subset,
                                                                 std::string name) {
  if (!is_subgroup(g, subset)) throw invalid_input("subset is not a subgroup of " + g.name());
  std::vector<std::size_t> local(g.size(), g.size());
  for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = i;
  Table t(subset.size(), std::vector<std::size_t>(subset.size()));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    names.push_back(g.element_name(subset[i]));
    for (std::size_t j = 0; j < subset.size(); ++j) t[i][j] = local[g.mul(subset[i], subset[j])];
  }
  return {FiniteGroup::from_mul_table(t, std::move(names), std::move(name)), subset};
}

struct GroupEmbedding {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<std::size_t> map;

  static GroupEmbedding make(FiniteGroup source, FiniteGroup target, std::vector<std::size_t> map) {
    if (!is_group_homomorphism(source, target, map) || !is_injective(map))
      throw invalid_input("map " + source.name() + " -> " + target.name() +
                          " is not an injective homomorphism");
    return {std::move(source), std::move(target), std::move(map)};
  }

  IndexSet image() const {
    IndexSet s = map;
    std::sort(s.begin(), s.end());
    return s;
  }
};

/// Right cosets Hg of the image H of the base in a group G, with one chosen
/// representative per coset other than H itself.
class CosetSystem {
 public:
  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  /// Representatives default to the least element of each coset; `preferred`
  /// elements win for the cosets they lie in (at most one per coset).
  explicit CosetSystem(const GroupEmbedding& h, const IndexSet& preferred = {})
      : group_(h.target), base_of_(h.target.size(), none), coset_of_(h.target.size(), none) {
    const auto& g = group_;
    for (std::size_t b = 0; b < h.map.size(); ++b) base_of_[h.map[b]] = b;
    std::size_t next = 0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      if (coset_of_[x] != none) continue;
      for (std::size_t hx : h.map) coset_of_[g.mul(hx, x)] = next;
      reps_.push_back(base_of_[x] != none ? none : x);
      ++next;
    }
    for (std::size_t p : preferred) {
      if (p >= g.size()) throw invalid_input("representative out of range");
      const std::size_t c = coset_of_[p];
      if (reps_[c] == none && base_of_[p] != none)
        throw invalid_input("the base coset has no representative");
      if (reps_[c] != p && std::find(preferred.begin(), preferred.end(), reps_[c]) != preferred.end())
        throw invalid_input("two representatives chosen for one coset");
      reps_[c] = p;
    }
  }

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t coset_count() const noexcept { return reps_.size(); }
  std::size_t coset_of(std::size_t g) const { return coset_of_.at(g); }
  bool in_base(std::size_t g) const { return base_of_.at(g) != none; }
  std::optional<std::size_t> base_index(std::size_t g) const {
    if (base_of_.at(g) == none) return std::nullopt;
    return base_of_[g];
  }

  /// Chosen representatives, sorted.
  IndexSet representatives() const {
    IndexSet out;
    for (std::size_t r : reps_)
      if (r != none) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_representative(std::size_t g) const { return reps_[coset_of(g)] == g; }

  /// g = b a with b in the base (as a base index) and a the chosen
  /// representative of Bg, or no letter when g lies in the base.
  std::pair<std::size_t, std::optional<std::size_t>> decompose(std::size_t g) const {
    const std::size_t a = reps_[coset_of(g)];
    if (a == none) return {base_of_[g], std::nullopt};
    return {base_of_[group_.mul(g, group_.inv(a))], a};
  }

 private:
  FiniteGroup group_;
  std::vector<std::size_t> base_of_;
  std::vector<std::size_t> coset_of_;
  std::vector<std::size_t> reps_;
};

/// A letter of a word: side 0 is the base, 1 and 2 the two factors.
struct Letter {
  std::uint8_t side = 0;
  std::size_t element = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// b a_1 ... a_n with each a_j a chosen representative and adjacent letters
/// from different factors.
struct CanonicalWord {
  std::size_t b = 0;
  std::vector<Letter> letters;
  friend bool operator==(const CanonicalWord&, const CanonicalWord&) = default;

  Word to_word() const {
    Word w{{0, b}};
    w.insert(w.end(), letters.begin(), letters.end());
    return w;
  }
};

/// Two groups amalgamated over B, with a coset system in each factor.
class GroupAmalgam {
 public:
  GroupAmalgam(GroupEmbedding first, GroupEmbedding second, const IndexSet& preferred1 = {},
               const IndexSet& preferred2 = {})
      : first_(std::move(first)),
        second_(std::move(second)),
        cosets_{CosetSystem(first_, preferred1), CosetSystem(second_, preferred2)} {
    if (!first_.source.same_tables(second_.source))
      throw invalid_input("the two embeddings do not share a base");
    if (first_.target.name() == second_.target.name())
      throw invalid_input("factor names must differ");
  }

  const FiniteGroup& base() const noexcept { return first_.source; }
  const GroupEmbedding& embedding(std::size_t side) const { return side == 1 ? first_ : second_; }
  const FiniteGroup& factor(std::size_t side) const { return embedding(side).target; }
  const CosetSystem& cosets(std::size_t side) const { return cosets_.at(side - 1); }

  void validate(const Word& w) const {
    for (const Letter& l : w) {
      if (l.side > 2) throw invalid_input("letter side out of range");
      const std::size_t n = l.side == 0 ? base().size() : factor(l.side).size();
      if (l.element >= n) throw invalid_input("letter element out of range");
    }
  }

  /// Reduction from the right: the base coefficient of each factor is carried
  /// into its left neighbour.
  CanonicalWord canonical_form(const Word& w) const {
    validate(w);
    CanonicalWord out{base().id(), {}};
    std::vector<Letter> rev;  // letters of the canonical suffix, rightmost first
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (it->side == 0) {
        out.b = base().mul(it->element, out.b);
        continue;
      }
      const std::size_t s = it->side;
      const FiniteGroup& g = factor(s);
      std::size_t x = g.mul(it->element, embedding(s).map[out.b]);
      if (!rev.empty() && rev.back().side == s) {
        x = g.mul(x, rev.back().element);
        rev.pop_back();
      }
      auto [b, a] = cosets(s).decompose(x);
      out.b = b;
      if (a) rev.push_back({static_cast<std::uint8_t>(s), *a});
    }
    out.letters.assign(rev.rbegin(), rev.rend());
    return out;
  }

  std::string format(const CanonicalWord& cw) const {
    std::string s = base().name() + "." + base().element_name(cw.b);
    for (const Letter& l : cw.letters)
      s += " " + factor(l.side).name() + "." + factor(l.side).element_name(l.element);
    return s;
  }

  std::string format(const Word& w) const {
    std::string s;
    for (const Letter& l : w) {
      if (!s.empty()) s += " ";
      const FiniteGroup& g = l.side == 0 ? base() : factor(l.side);
      s += g.name() + "." + g.element_name(l.element);
    }
    return s;
  }

 private:
  GroupEmbedding first_;
  GroupEmbedding second_;
  std::vector<CosetSystem> cosets_;
};

struct GroupStarVerdict {
  enum class Status { verified, witness_failed };
  Status status = Status::verified;
  CanonicalWord witness;                    // canonical form of alpha over C and E, D indices
  bool compatible = true;                   // letterwise equal to the form over D and E
  std::size_t slots = 0;                    // number of C-letters m
  std::vector<std::size_t> counterexample;  // (d_1..d_m) when failed
  std::size_t tuples_checked = 0;

  bool verified() const noexcept { return status == Status::verified && compatible; }
};

/// For alpha in C ⊔_B E: writes it canonically as b c_1 e_1 ... c_m using
/// representatives of C chosen inside those of D, then checks that replacing
/// the c_i by any (d_1..d_m) in D^m gives the same element only if all d_i lie in C.
inline GroupStarVerdict group_condition_star_check(const Word& alpha, const IndexSet& c,
                                                   const GroupAmalgam& amalgam,
                                                   std::size_t bound = 3) {
  const FiniteGroup& d = amalgam.factor(1);
  if (!is_subgroup(d, c)) throw invalid_input("subset is not a subgroup of " + d.name());
  for (std::size_t x : amalgam.embedding(1).map)
    if (!std::binary_search(c.begin(), c.end(), x))
      throw invalid_input("subgroup of " + d.name() + " misses the image of the base");
  amalgam.validate(alpha);
  for (const Letter& l : alpha)
    if (l.side == 1 && !std::binary_search(c.begin(), c.end(), l.element))
      throw invalid_input("word does not lie in the sub-amalgam over the given subgroup");

  // Representatives for C must be representatives for D.
  const IndexSet reps_d = amalgam.cosets(1).representatives();
  IndexSet reps_c_in_d;
  for (std::size_t r : reps_d)
    if (std::binary_search(c.begin(), c.end(), r)) reps_c_in_d.push_back(r);

  auto [sub, inclusion] = subgroup(d, c, d.name());
  std::vector<std::size_t> local(d.size(), d.size());
  for (std::size_t i = 0; i < c.size(); ++i) local[c[i]] = i;
  std::vector<std::size_t> base_map;
  for (std::size_t x : amalgam.embedding(1).map) base_map.push_back(local[x]);
  IndexSet preferred;
  for (std::size_t r : reps_c_in_d) preferred.push_back(local[r]);
  GroupAmalgam restricted(GroupEmbedding::make(amalgam.base(), sub, base_map), amalgam.embedding(2),
                          preferred, amalgam.cosets(2).representatives());
  const IndexSet reps_c = restricted.cosets(1).representatives();
  for (std::size_t r : reps_c)
    if (!std::binary_search(reps_d.begin(), reps_d.end(), inclusion[r]))
      throw invalid_input("representatives for the subgroup are not among those for " + d.name());

  Word local_alpha = alpha;
  for (Letter& l : local_alpha)
    if (l.side == 1) l.element = local[l.element];
  CanonicalWord witness = restricted.canonical_form(local_alpha);
  for (Letter& l : witness.letters)
    if (l.side == 1) l.element = inclusion[l.element];

  GroupStarVerdict v;
  v.witness = witness;
  const CanonicalWord target = amalgam.canonical_form(alpha);
  v.compatible = target == witness;

  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < witness.letters.size(); ++i)
    if (witness.letters[i].side == 1) slots.push_back(i);
  v.slots = slots.size();
  if (slots.size() > bound)
    throw bound_exceeded("canonical form has " + std::to_string(slots.size()) +
                         " letters from the subgroup, bound is " + std::to_string(bound));

  std::vector<std::size_t> tuple(slots.size(), 0);
  for (;;) {
    ++v.tuples_checked;
    CanonicalWord trial = witness;
    for (std::size_t i = 0; i < slots.size(); ++i) trial.letters[slots[i]].element = tuple[i];
    if (amalgam.canonical_form(trial.to_word()) == target) {
      const bool all_in_c = std::all_of(tuple.begin(), tuple.end(), [&](std::size_t x) {
        return std::binary_search(c.begin(), c.end(), x);
      });
      if (!all_in_c) {
        v.status = GroupStarVerdict::Status::witness_failed;
        v.counterexample = tuple;
        return v;
      }
    }
    std::size_t i = 0;
    while (i < tuple.size() && ++tuple[i] == d.size()) tuple[i++] = 0;
    if (i == tuple.size()) break;
  }
  return v;
}

}  // namespace qga
