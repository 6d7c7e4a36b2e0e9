#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qga/amalgam.hpp"
#include "qga/error.hpp"
#include "qga/rng.hpp"
#include "qga/term.hpp"

namespace qga {

/// Cancellation identities T = x_i used as left-to-right rewrite rules.
enum class Identity : std::uint8_t {
  ldiv_mul,   // ld(x1, *(x1, x2)) -> x2
  rdiv_mul,   // rd(*(x1, x2), x2) -> x1
  mul_ldiv,   // *(x1, ld(x1, x2)) -> x2
  mul_rdiv,   // *(rd(x1, x2), x2) -> x1
  rdiv_ldiv,  // rd(x2, ld(x1, x2)) -> x1
  ldiv_rdiv,  // ld(rd(x1, x2), x1) -> x2
};

constexpr std::string_view identity_name(Identity id) {
  switch (id) {
    case Identity::ldiv_mul: return "ldiv-mul";
    case Identity::rdiv_mul: return "rdiv-mul";
    case Identity::mul_ldiv: return "mul-ldiv";
    case Identity::mul_rdiv: return "mul-rdiv";
    case Identity::rdiv_ldiv: return "rdiv-ldiv";
    case Identity::ldiv_rdiv: return "ldiv-rdiv";
  }
  return "?";
}

/// `axioms` is the four defining identities of quasigroups. It is not
/// confluent: rd(*(x, ld(x,z)), ld(x,z)) rewrites to both x and the irreducible
/// rd(z, ld(x,z)), and dually for ld(rd(w,y), *(rd(w,y),y)). `complete` adds the
/// two cancellation laws that join those peaks and is the default everywhere.
enum class RuleSet : std::uint8_t { axioms, complete };

enum class StepKind : std::uint8_t { evaluation, identity };

struct ReductionStep {
  Path path;
  StepKind kind = StepKind::evaluation;
  std::optional<Identity> identity;  // set iff kind == identity
  Term replaced;
  Term replacing;
};

/// Identity redex rooted at t, with the instantiated replacing term. At most one
/// identity can match at a given node.
inline std::optional<std::pair<Identity, Term>> match_identity(const Term& t,
                                                               RuleSet rules = RuleSet::complete) {
  if (t.is_leaf()) return std::nullopt;
  const Term& l = t.left();
  const Term& r = t.right();
  const bool complete = rules == RuleSet::complete;
  switch (t.op()) {
    case Op::ldiv:
      if (!r.is_leaf() && r.op() == Op::mul && r.left() == l) return {{Identity::ldiv_mul, r.right()}};
      if (complete && !l.is_leaf() && l.op() == Op::rdiv && l.left() == r)
        return {{Identity::ldiv_rdiv, l.right()}};
      break;
    case Op::rdiv:
      if (!l.is_leaf() && l.op() == Op::mul && l.right() == r) return {{Identity::rdiv_mul, l.left()}};
      if (complete && !r.is_leaf() && r.op() == Op::ldiv && r.right() == l)
        return {{Identity::rdiv_ldiv, r.left()}};
      break;
    case Op::mul:
      if (!r.is_leaf() && r.op() == Op::ldiv && r.left() == l) return {{Identity::mul_ldiv, r.right()}};
      if (!l.is_leaf() && l.op() == Op::rdiv && l.right() == r) return {{Identity::mul_rdiv, l.left()}};
      break;
  }
  return std::nullopt;
}

/// The reduction step rooted at t itself, if any.
inline std::optional<ReductionStep> root_step(const Term& t, const AmalgamConfig& cfg,
                                              RuleSet rules = RuleSet::complete) {
  if (t.is_leaf()) return std::nullopt;
  if (t.left().is_leaf() && t.right().is_leaf()) {
    if (auto v = cfg.evaluate(t.op(), t.left().as_leaf(), t.right().as_leaf()))
      return ReductionStep{{}, StepKind::evaluation, std::nullopt, t, Term::leaf(*v)};
  }
  if (auto m = match_identity(t, rules))
    return ReductionStep{{}, StepKind::identity, m->first, t, std::move(m->second)};
  return std::nullopt;
}

/// All applicable reductions in pre-order (leftmost-outermost first). Empty iff
/// t is irreducible.
inline std::vector<ReductionStep> find_redexes(const Term& t, const AmalgamConfig& cfg,
                                               RuleSet rules = RuleSet::complete) {
  cfg.validate(t);
  std::vector<ReductionStep> out;
  for_each_subterm(t, [&](const Term& u, const Path& p) {
    if (auto s = root_step(u, cfg, rules)) {
      s->path = p;
      out.push_back(std::move(*s));
    }
  });
  return out;
}

inline bool is_irreducible(const Term& t, const AmalgamConfig& cfg,
                           RuleSet rules = RuleSet::complete) {
  bool reducible = false;
  for_each_subterm(t, [&](const Term& u, const Path&) {
    if (!reducible && root_step(u, cfg, rules)) reducible = true;
  });
  return !reducible;
}

/// Throws invalid_input if the step's replaced term is not at its path.
inline Term apply_step(const Term& t, const ReductionStep& step) {
  auto at = try_subterm_at(t, step.path);
  if (!at || !(*at == step.replaced))
    throw invalid_input("stale reduction step at " + format_path(step.path));
  Term result = replace_at(t, step.path, step.replacing);
  if (result.node_count() >= t.node_count())
    throw std::logic_error("reduction step did not decrease the term size");
  return result;
}

struct Strategy {
  enum class Kind : std::uint8_t { leftmost_innermost, leftmost_outermost, seeded_random };
  Kind kind = Kind::leftmost_innermost;
  std::uint64_t seed = 0;

  static Strategy innermost() { return {Kind::leftmost_innermost, 0}; }
  static Strategy outermost() { return {Kind::leftmost_outermost, 0}; }
  static Strategy random(std::uint64_t seed) { return {Kind::seeded_random, seed}; }

  /// Accepts leftmost-innermost, leftmost-outermost and random (with '_' or '-').
  static std::optional<Strategy> from_name(std::string_view name, std::uint64_t seed = 0) {
    std::string n(name);
    for (char& c : n)
      if (c == '_') c = '-';
    if (n == "leftmost-innermost" || n == "innermost") return innermost();
    if (n == "leftmost-outermost" || n == "outermost") return outermost();
    if (n == "random" || n == "seeded-random") return random(seed);
    return std::nullopt;
  }

  std::string name() const {
    switch (kind) {
      case Kind::leftmost_innermost: return "leftmost-innermost";
      case Kind::leftmost_outermost: return "leftmost-outermost";
      case Kind::seeded_random: return "seeded-random(" + std::to_string(seed) + ")";
    }
    return "?";
  }
};

namespace detail {

// First redex in post-order: no redex below it, and leftmost among such.
inline std::optional<ReductionStep> innermost_step(const Term& t, const AmalgamConfig& cfg,
                                                   RuleSet rules, Path& path) {
  if (t.is_leaf()) return std::nullopt;
  path.push_back(Dir::left);
  if (auto s = innermost_step(t.left(), cfg, rules, path)) return s;
  path.back() = Dir::right;
  if (auto s = innermost_step(t.right(), cfg, rules, path)) return s;
  path.pop_back();
  if (auto s = root_step(t, cfg, rules)) {
    s->path = path;
    return s;
  }
  return std::nullopt;
}

inline std::optional<ReductionStep> outermost_step(const Term& t, const AmalgamConfig& cfg,
                                                   RuleSet rules, Path& path) {
  if (auto s = root_step(t, cfg, rules)) {
    s->path = path;
    return s;
  }
  if (t.is_leaf()) return std::nullopt;
  path.push_back(Dir::left);
  if (auto s = outermost_step(t.left(), cfg, rules, path)) return s;
  path.back() = Dir::right;
  if (auto s = outermost_step(t.right(), cfg, rules, path)) return s;
  path.pop_back();
  return std::nullopt;
}

}  // namespace detail

struct NormalizeResult {
  Term term;
  std::size_t steps = 0;
};

/// Reduces t to an irreducible term, re-scanning for a redex after every step.
/// `on_step(before, step, after)` observes each applied reduction.
template <class OnStep>
NormalizeResult normalize_observed(const Term& t, const AmalgamConfig& cfg, Strategy strategy,
                                   RuleSet rules, OnStep&& on_step) {
  cfg.validate(t);
  Rng rng(strategy.seed);
  Term cur = t;
  std::size_t steps = 0;
  for (;;) {
    std::optional<ReductionStep> step;
    Path path;
    switch (strategy.kind) {
      case Strategy::Kind::leftmost_innermost:
        step = detail::innermost_step(cur, cfg, rules, path);
        break;
      case Strategy::Kind::leftmost_outermost:
        step = detail::outermost_step(cur, cfg, rules, path);
        break;
      case Strategy::Kind::seeded_random: {
        auto all = find_redexes(cur, cfg, rules);
        if (!all.empty()) step = std::move(all[rng.below(all.size())]);
        break;
      }
    }
    if (!step) break;
    Term next = apply_step(cur, *step);
    on_step(cur, *step, next);
    cur = std::move(next);
    ++steps;
  }
  return {std::move(cur), steps};
}

inline NormalizeResult normalize_counted(const Term& t, const AmalgamConfig& cfg,
                                         Strategy strategy = Strategy::innermost(),
                                         RuleSet rules = RuleSet::complete) {
  return normalize_observed(t, cfg, strategy, rules, [](const Term&, const ReductionStep&, const Term&) {});
}

inline Term normalize(const Term& t, const AmalgamConfig& cfg,
                      Strategy strategy = Strategy::innermost(), RuleSet rules = RuleSet::complete) {
  return normalize_counted(t, cfg, strategy, rules).term;
}

/// Decides equality in the amalgamated free product by comparing normal forms.
inline bool equal_in_amalgam(const Term& t1, const Term& t2, const AmalgamConfig& cfg,
                             RuleSet rules = RuleSet::complete) {
  return normalize(t1, cfg, Strategy::innermost(), rules) ==
         normalize(t2, cfg, Strategy::innermost(), rules);
}

inline std::string describe_step(const ReductionStep& s, const AmalgamConfig& cfg) {
  std::string kind = s.kind == StepKind::evaluation ? std::string("eval")
                                                    : std::string(identity_name(*s.identity));
  return kind + " at " + format_path(s.path) + ": " + cfg.format(s.replaced) + " -> " +
         cfg.format(s.replacing);
}

struct Peak {
  ReductionStep first;
  ReductionStep second;
  Term first_normal_form;
  Term second_normal_form;
  bool joinable = true;
};

struct ConfluenceReport {
  bool joinable = true;
  std::vector<Peak> peaks;  // every pair of distinct one-step reducts
  std::size_t failing() const {
    std::size_t n = 0;
    for (const auto& p : peaks) n += p.joinable ? 0 : 1;
    return n;
  }
};

/// Checks that every pair of distinct one-step reducts of t has a common normal form.
inline ConfluenceReport check_local_confluence(const Term& t, const AmalgamConfig& cfg,
                                               RuleSet rules = RuleSet::complete) {
  ConfluenceReport report;
  const auto steps = find_redexes(t, cfg, rules);
  std::vector<Term> reducts;
  std::vector<Term> normal;
  for (const auto& s : steps) {
    reducts.push_back(apply_step(t, s));
    normal.push_back(normalize(reducts.back(), cfg, Strategy::innermost(), rules));
  }
  for (std::size_t i = 0; i < steps.size(); ++i)
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      if (reducts[i] == reducts[j]) continue;
      Peak p{steps[i], steps[j], normal[i], normal[j], normal[i] == normal[j]};
      report.joinable = report.joinable && p.joinable;
      report.peaks.push_back(std::move(p));
    }
  return report;
}

}  // namespace qga
