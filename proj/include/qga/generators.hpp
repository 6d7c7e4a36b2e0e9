#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qga/amalgam.hpp"
#include "qga/group.hpp"
#include "qga/quasigroup.hpp"
#include "qga/rng.hpp"
#include "qga/term.hpp"

namespace qga {

struct TermShape {
  std::size_t max_nodes = 40;
  // Out of 8: chance that an inner node is built as an instance of a
  // cancellation pattern instead of a plain operation.
  std::uint64_t pattern_bias = 3;
};

namespace detail {

inline Term random_term_within(const std::vector<Leaf>& pool, Rng& rng, std::size_t budget,
                               const TermShape& shape) {
  if (budget < 3 || rng.chance(1, 5)) return Term::leaf(rng.pick(pool));
  if (budget >= 5 && rng.chance(shape.pattern_bias, 8)) {
    // Shapes 0..5 are the left sides of the six cancellation laws; 6 and 7 are
    // the overlaps that the four axioms alone leave unjoined.
    const std::size_t kind = rng.below(budget >= 9 ? 8 : 6);
    const std::size_t copies = kind >= 6 ? 3 : 2;  // occurrences of x
    const std::size_t y_copies = kind >= 6 ? 2 : 1;
    const std::size_t ops = kind >= 6 ? 4 : 2;
    const std::size_t room = budget - ops;
    const Term x = random_term_within(pool, rng, std::max<std::size_t>(1, room / (2 * copies)), shape);
    const std::size_t left = (room - copies * x.node_count()) / y_copies;
    const Term y = random_term_within(pool, rng, std::max<std::size_t>(1, left), shape);
    switch (kind) {
      case 0: return ldiv(x, mul(x, y));
      case 1: return rdiv(mul(y, x), x);
      case 2: return mul(x, ldiv(x, y));
      case 3: return mul(rdiv(y, x), x);
      case 4: return rdiv(x, ldiv(y, x));
      case 5: return ldiv(rdiv(x, y), x);
      case 6: return rdiv(mul(x, ldiv(x, y)), ldiv(x, y));
      default: return ldiv(rdiv(y, x), mul(rdiv(y, x), x));
    }
  }
  const Op op = all_ops[rng.below(3)];
  Term a = random_term_within(pool, rng, 1 + rng.below(budget - 2), shape);
  Term b = random_term_within(pool, rng, budget - 1 - a.node_count(), shape);
  return Term::node(op, std::move(a), std::move(b));
}

}  // namespace detail

/// A random term over `pool` with at most shape.max_nodes nodes.
inline Term random_term_over(const std::vector<Leaf>& pool, Rng& rng, const TermShape& shape = {}) {
  if (pool.empty()) throw invalid_input("random term: empty leaf pool");
  return detail::random_term_within(pool, rng, std::max<std::size_t>(1, shape.max_nodes), shape);
}

inline Term random_term(const AmalgamConfig& cfg, Rng& rng, const TermShape& shape = {}) {
  return random_term_over(cfg.leaves(), rng, shape);
}

/// Applies up to `rounds` inverse reductions at random positions, keeping the
/// term within max_nodes. The result is equal to t in the amalgam.
inline Term expand_term(const Term& t, const AmalgamConfig& cfg, Rng& rng, std::size_t rounds,
                        std::size_t max_nodes = 60) {
  const auto pool = cfg.leaves();
  Term cur = t;
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<Path> paths;
    for_each_subterm(cur, [&](const Term&, const Path& p) { paths.push_back(p); });
    const Path p = rng.pick(paths);
    const Term s = subterm_at(cur, p);
    Term grown = s;
    const std::size_t kind = rng.below(s.is_leaf() ? 9 : 6);
    const Term y = Term::leaf(rng.pick(pool));
    switch (kind) {
      case 0: grown = ldiv(y, mul(y, s)); break;
      case 1: grown = rdiv(mul(s, y), y); break;
      case 2: grown = mul(y, ldiv(y, s)); break;
      case 3: grown = mul(rdiv(s, y), y); break;
      case 4: grown = rdiv(y, ldiv(s, y)); break;
      case 5: grown = ldiv(rdiv(y, s), y); break;
      default: {
        // Inverse evaluation: split the element into an operation inside one factor.
        const Leaf l = s.as_leaf();
        std::size_t f = l.factor;
        if (f == 0) f = rng.below(cfg.factor_count() + 1);
        const auto& a = cfg.algebra(f);
        const std::size_t x = *cfg.element_in(l, f);
        const std::size_t u = rng.below(a.size());
        auto leaf = [&](std::size_t e) { return Term::leaf(cfg.leaf(f, e)); };
        if (kind == 6) grown = mul(leaf(u), leaf(a.ldiv(u, x)));
        else if (kind == 7) grown = ldiv(leaf(u), leaf(a.mul(u, x)));
        else grown = rdiv(leaf(a.mul(x, u)), leaf(u));
      }
    }
    if (cur.node_count() - s.node_count() + grown.node_count() <= max_nodes)
      cur = replace_at(cur, p, grown);
  }
  return cur;
}

struct AmalgamShape {
  std::size_t min_factors = 1;
  std::size_t max_factors = 3;
  std::size_t max_base = 2;
  std::size_t max_factor = 5;
};

namespace detail {
// Sizes n admitting an extension of an m-element quasigroup: n = m or n >= 2m.
inline std::size_t extension_size(std::size_t m, std::size_t max, Rng& rng) {
  std::vector<std::size_t> sizes{m};
  for (std::size_t n = 2 * m; n <= max; ++n) sizes.push_back(n);
  return rng.pick(sizes);
}
}  // namespace detail

/// B named "b" and factors "a1".."ak", each a random extension of B.
inline AmalgamConfig random_amalgam(Rng& rng, const AmalgamShape& shape = {}) {
  const std::size_t m = rng.between(1, shape.max_base);
  FiniteQuasigroup base = random_quasigroup(m, rng.next(), "b");
  const std::size_t k = rng.between(shape.min_factors, shape.max_factors);
  std::vector<FiniteQuasigroup> factors;
  std::vector<std::vector<std::size_t>> embeddings;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t n = detail::extension_size(m, shape.max_factor, rng);
    auto [a, e] = random_extension(base, n, rng, "a" + std::to_string(i));
    factors.push_back(std::move(a));
    embeddings.push_back(std::move(e));
  }
  return AmalgamConfig(std::move(base), std::move(factors), std::move(embeddings));
}

/// D ⊔_B E (D first) together with a subquasigroup C of D containing B.
struct NestedInstance {
  AmalgamConfig ambient;
  IndexSet c;
};

inline NestedInstance random_nested_instance(Rng& rng, std::size_t max_d = 6, std::size_t max_e = 5) {
  const std::size_t m = rng.between(1, 2);
  FiniteQuasigroup base = random_quasigroup(m, rng.next(), "b");
  FiniteQuasigroup d = base;
  std::vector<std::size_t> into_d;
  IndexSet c;
  if (rng.chance(1, 2) && 4 * m <= max_d) {
    // B ⊆ C ⊆ D built as a chain of extensions.
    const std::size_t nc = detail::extension_size(m, max_d / 2, rng);
    auto [cq, bc] = random_extension(base, nc, rng, "c");
    auto [dq, cd] = random_extension(cq, detail::extension_size(nc, max_d, rng), rng, "d");
    d = std::move(dq);
    for (std::size_t b : bc) into_d.push_back(cd[b]);
    c = cd;
    std::sort(c.begin(), c.end());
  } else {
    auto [dq, bd] = random_extension(base, detail::extension_size(m, max_d, rng), rng, "d");
    d = std::move(dq);
    into_d = bd;
    IndexSet seeds = bd;
    switch (rng.below(3)) {
      case 0: break;
      case 1: seeds.push_back(rng.below(d.size())); break;
      default:
        for (std::size_t x = 0; x < d.size(); ++x) seeds.push_back(x);
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    c = generated_subquasigroup(d, seeds);
  }
  auto [e, into_e] = random_extension(base, detail::extension_size(m, max_e, rng), rng, "e");
  AmalgamConfig ambient(base, {d, e}, {into_d, into_e});
  return {std::move(ambient), std::move(c)};
}

/// A random embedding of a fresh base of size <= max_base into an extension
/// of size <= max_target.
inline Embedding random_embedding(Rng& rng, const FiniteQuasigroup& base, std::size_t max_target,
                                  std::string name) {
  auto [t, map] = random_extension(base, detail::extension_size(base.size(), max_target, rng), rng,
                                   std::move(name));
  return Embedding{base, std::move(t), std::move(map)};
}

// ---------------------------------------------------------------------------
// Groups

/// Groups of order at most 8, one per isomorphism type.
inline std::vector<FiniteGroup> small_groups(std::string name = "G") {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= 8; ++n) out.push_back(FiniteGroup::cyclic(n, name));
  const auto z2 = FiniteGroup::cyclic(2);
  out.push_back(FiniteGroup::direct_product(z2, z2, name));
  out.push_back(FiniteGroup::direct_product(z2, FiniteGroup::cyclic(4), name));
  out.push_back(FiniteGroup::direct_product(FiniteGroup::direct_product(z2, z2, "V"), z2, name));
  out.push_back(FiniteGroup::dihedral(3, name));
  out.push_back(FiniteGroup::dihedral(4, name));
  out.push_back(FiniteGroup::quaternion(name));
  return out;
}

/// All injective homomorphisms from b into g.
inline std::vector<std::vector<std::size_t>> group_embeddings(const FiniteGroup& b, const FiniteGroup& g) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> map(b.size(), 0);
  for (;;) {
    if (is_injective(map) && is_group_homomorphism(b, g, map)) out.push_back(map);
    std::size_t i = 0;
    while (i < map.size() && ++map[i] == g.size()) map[i++] = 0;
    if (i == map.size()) break;
  }
  return out;
}

/// G1 ⊔_B G2 with |G1|, |G2| <= 8 and |B| <= max_base, B taken as a subgroup of G1.
inline GroupAmalgam random_group_amalgam(Rng& rng, std::size_t max_base = 4) {
  const auto catalogue = small_groups();
  for (;;) {
    const FiniteGroup g1 = rng.pick(catalogue).renamed("g1");
    std::vector<IndexSet> subs;
    for (auto& s : all_subgroups(g1))
      if (s.size() <= max_base) subs.push_back(s);
    const IndexSet s = rng.pick(subs);
    auto [b, inclusion] = subgroup(g1, s, "b");
    const FiniteGroup g2 = rng.pick(catalogue).renamed("g2");
    auto maps = group_embeddings(b, g2);
    if (maps.empty()) continue;
    return GroupAmalgam(GroupEmbedding::make(b, g1, inclusion),
                        GroupEmbedding::make(b, g2, rng.pick(maps)));
  }
}

inline Word random_word(const GroupAmalgam& amalgam, Rng& rng, std::size_t length) {
  Word w;
  for (std::size_t i = 0; i < length; ++i) {
    const auto side = static_cast<std::uint8_t>(rng.chance(1, 8) ? 0 : rng.between(1, 2));
    const std::size_t n = side == 0 ? amalgam.base().size() : amalgam.factor(side).size();
    w.push_back({side, rng.below(n)});
  }
  return w;
}

}  // namespace qga
