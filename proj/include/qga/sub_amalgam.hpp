#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qga/amalgam.hpp"
#include "qga/error.hpp"
#include "qga/quasigroup.hpp"
#include "qga/rewriter.hpp"

namespace qga {

/// Throws unless C is a subquasigroup of factor d containing the image of the base.
inline void check_sub_factor(const AmalgamConfig& cfg, std::size_t d, const IndexSet& c) {
  if (d == 0 || d > cfg.factor_count())
    throw invalid_input("factor index " + std::to_string(d) + " out of range");
  const auto& algebra = cfg.factor(d);
  if (!is_subquasigroup(algebra, c))
    throw invalid_input("subset is not a subquasigroup of " + algebra.name());
  for (std::size_t x : cfg.embedding(d))
    if (!std::binary_search(c.begin(), c.end(), x))
      throw invalid_input("subset of " + algebra.name() + " misses the image of the base");
}

inline bool leaf_in_subset(Leaf l, std::size_t d, const IndexSet& c) {
  return l.factor != d || std::binary_search(c.begin(), c.end(), std::size_t{l.element});
}

/// Whether t denotes an element of C ⊔_B (other factors), seen inside the full
/// amalgam: every factor-d leaf of its normal form lies in C.
inline bool in_sub_amalgam(const Term& t, const IndexSet& c, std::size_t d, const AmalgamConfig& cfg,
                           RuleSet rules = RuleSet::complete) {
  check_sub_factor(cfg, d, c);
  const Term nf = normalize(t, cfg, Strategy::innermost(), rules);
  for (Leaf l : leaves_of(nf))
    if (!leaf_in_subset(l, d, c)) return false;
  return true;
}

/// The amalgam with factor d cut down to C, plus leaf translation both ways.
class RestrictedConfig {
 public:
  RestrictedConfig(const AmalgamConfig& ambient, std::size_t d, IndexSet c)
      : d_(d), subset_(std::move(c)), config_(build(ambient, d, subset_)) {}

  const AmalgamConfig& config() const noexcept { return config_; }
  const IndexSet& subset() const noexcept { return subset_; }

  Term to_ambient(const Term& t) const {
    return map_leaves(t, [&](const Leaf& l) {
      if (l.factor != d_) return Term::leaf(l);
      return Term::leaf(Leaf{l.factor, static_cast<std::uint32_t>(subset_[l.element])});
    });
  }

  // Defined when every factor-d leaf of t lies in C.
  std::optional<Term> from_ambient(const Term& t) const {
    bool ok = true;
    Term out = map_leaves(t, [&](const Leaf& l) {
      if (l.factor != d_) return Term::leaf(l);
      auto it = std::lower_bound(subset_.begin(), subset_.end(), std::size_t{l.element});
      if (it == subset_.end() || *it != l.element) {
        ok = false;
        return Term::leaf(Leaf{0, 0});
      }
      return Term::leaf(Leaf{l.factor, static_cast<std::uint32_t>(it - subset_.begin())});
    });
    if (!ok) return std::nullopt;
    return out;
  }

 private:
  static AmalgamConfig build(const AmalgamConfig& ambient, std::size_t d, const IndexSet& c) {
    check_sub_factor(ambient, d, c);
    auto factors = ambient.factors();
    auto embeddings = ambient.embeddings();
    factors[d - 1] = subquasigroup(ambient.factor(d), c).first;
    for (auto& x : embeddings[d - 1])
      x = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), x) - c.begin());
    return AmalgamConfig(ambient.base(), std::move(factors), std::move(embeddings));
  }

  std::size_t d_;
  IndexSet subset_;
  AmalgamConfig config_;
};

struct StarVerdict {
  enum class Status { verified, witness_failed };
  Status status = Status::verified;
  Term witness;                        // the irreducible presentation t
  std::vector<Leaf> variables;         // distinct private leaves of factor d in t
  std::vector<std::size_t> counterexample;  // substituted elements of D when failed
  std::size_t tuples_checked = 0;

  bool verified() const noexcept { return status == Status::verified; }
};

/// Bounded instance check of the substitution property for the irreducible
/// presentation t of alpha: for all (d_1..d_m) in D^m, t[c_i := d_i] = t in
/// D ⊔_B E forces every d_i into C. A failure only refutes this witness.
inline StarVerdict condition_star_check(const Term& alpha, const IndexSet& c, std::size_t d,
                                        const AmalgamConfig& cfg, std::size_t bound = 3,
                                        RuleSet rules = RuleSet::complete) {
  check_sub_factor(cfg, d, c);
  const Term t = normalize(alpha, cfg, Strategy::innermost(), rules);
  std::vector<Leaf> vars;
  for (Leaf l : leaves_of(t)) {
    if (!leaf_in_subset(l, d, c))
      throw invalid_input("element does not lie in the sub-amalgam over the given subset");
    if (l.factor == d && std::find(vars.begin(), vars.end(), l) == vars.end()) vars.push_back(l);
  }
  if (vars.size() > bound)
    throw bound_exceeded("presentation has " + std::to_string(vars.size()) +
                         " variables from the subset, bound is " + std::to_string(bound));

  StarVerdict v{StarVerdict::Status::verified, t, vars, {}, 0};
  const std::size_t n = cfg.factor(d).size();
  std::vector<std::size_t> tuple(vars.size(), 0);
  for (;;) {
    ++v.tuples_checked;
    const Term substituted = map_leaves(t, [&](const Leaf& l) {
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (l == vars[i]) return Term::leaf(cfg.leaf(d, tuple[i]));
      return Term::leaf(l);
    });
    if (normalize(substituted, cfg, Strategy::innermost(), rules) == t) {
      const bool all_in_c = std::all_of(tuple.begin(), tuple.end(), [&](std::size_t x) {
        return std::binary_search(c.begin(), c.end(), x);
      });
      if (!all_in_c) {
        v.status = StarVerdict::Status::witness_failed;
        v.counterexample = tuple;
        return v;
      }
    }
    std::size_t i = 0;
    while (i < tuple.size() && ++tuple[i] == n) tuple[i++] = 0;
    if (i == tuple.size()) break;
  }
  return v;
}

}  // namespace qga
