#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qga/amalgam.hpp"
#include "qga/error.hpp"
#include "qga/quasigroup.hpp"
#include "qga/rewriter.hpp"

namespace qga {

// ---------------------------------------------------------------------------
// Pushouts along quotient projections

struct QuotientPushout {
  Congruence base_relation;     // R on B
  Congruence closure;           // R' on E
  Quotient base;                // B' = B/R
  Quotient ambient;             // E' = E/R'
  std::vector<std::size_t> map;  // B' -> E'
  bool injective = true;

  Embedding embedding() const {
    if (!injective) throw invalid_input("pushout map is not injective");
    return Embedding{base.algebra, ambient.algebra, map};
  }
};

/// The pushout of p along B -> B/R: the induced map B/R -> E/R', where R' is
/// the closure of R in E.
inline QuotientPushout pushout_along_quotient(const Embedding& p, const Congruence& r) {
  if (r.carrier_size() != p.source.size() || !r.is_compatible_with(p.source))
    throw invalid_input("pushout_along_quotient: relation is not a congruence on the source");
  Congruence closure = closure_along(p, r);
  Quotient base = quotient(p.source, r);
  Quotient ambient = quotient(p.target, closure);
  std::vector<std::size_t> map(base.algebra.size());
  for (std::size_t b = 0; b < p.source.size(); ++b)
    map[base.projection[b]] = ambient.projection[p.map[b]];
  const bool injective = is_injective(map);
  return {r, std::move(closure), std::move(base), std::move(ambient), std::move(map), injective};
}

// ---------------------------------------------------------------------------
// Codescent data

namespace detail {
inline std::string fresh_name(std::string name, const std::set<std::string>& taken) {
  while (taken.count(name)) name += "'";
  return name;
}

inline std::set<std::string> names_of(const AmalgamConfig& cfg) {
  std::set<std::string> s{cfg.base().name()};
  for (const auto& f : cfg.factors()) s.insert(f.name());
  return s;
}

inline AmalgamConfig with_extra_factor(const AmalgamConfig& cfg, const Embedding& p) {
  auto factors = cfg.factors();
  auto embeddings = cfg.embeddings();
  factors.push_back(p.target.renamed(fresh_name(p.target.name(), names_of(cfg))));
  embeddings.push_back(p.map);
  return AmalgamConfig(cfg.base(), std::move(factors), std::move(embeddings));
}
}  // namespace detail

/// A codescent datum (C, gamma, xi) relative to p': B' -> E'. The object C is an
/// amalgam over B' of one factor (a finite C') or several (e.g. D ⊔ E); xi is
/// kept on its canonical leaves and extended to all of C by normalization.
class CodescentData {
 public:
  /// gamma[e] is a term over `object`; xi maps every canonical leaf of `object`
  /// to a term over object ⊔ E'. Images are normalized on entry.
  static CodescentData make(Embedding p_prime, AmalgamConfig object, std::vector<Term> gamma,
                            std::map<Leaf, Term> xi) {
    if (!object.base().same_tables(p_prime.source))
      throw invalid_input("codescent data: object is not an amalgam over the source of p'");
    if (gamma.size() != p_prime.target.size())
      throw invalid_input("codescent data: gamma needs one image per element of " +
                          p_prime.target.name());
    AmalgamConfig target = detail::with_extra_factor(object, p_prime);
    AmalgamConfig target2 = detail::with_extra_factor(target, p_prime);
    for (auto& g : gamma) g = normalize(g, object);
    for (Leaf l : object.leaves())
      if (!xi.count(l)) throw invalid_input("codescent data: xi undefined on " + object.leaf_name(l));
    if (xi.size() != object.leaves().size())
      throw invalid_input("codescent data: xi defined on a non-canonical leaf");
    for (auto& [l, t] : xi) t = normalize(t, target);
    return CodescentData(std::move(p_prime), std::move(object), std::move(target),
                         std::move(target2), std::move(gamma), std::move(xi));
  }

  const Embedding& p_prime() const noexcept { return p_prime_; }
  const AmalgamConfig& object() const noexcept { return object_; }
  /// object ⊔ E', the codomain of xi.
  const AmalgamConfig& target() const noexcept { return target_; }
  /// object ⊔ E' ⊔ E', where both sides of the coassociativity law live.
  const AmalgamConfig& target2() const noexcept { return target2_; }
  std::size_t ambient_factor() const noexcept { return object_.factor_count() + 1; }

  const Term& gamma(std::size_t e) const { return gamma_.at(e); }
  const std::map<Leaf, Term>& xi_table() const noexcept { return xi_; }

  /// Replaces xi on one generator without re-checking any law.
  CodescentData with_xi(Leaf l, const Term& image) const {
    CodescentData d = *this;
    d.xi_.at(l) = normalize(image, target_);
    return d;
  }

  Term xi(const Term& c) const {
    return normalize(map_leaves(c, [&](const Leaf& l) { return xi_.at(l); }), target_);
  }

  Term i2(std::size_t e) const { return Term::leaf(target_.leaf(ambient_factor(), e)); }

  /// (1_C, gamma): object ⊔ E' -> C.
  Term fold(const Term& x) const {
    return normalize(map_leaves(x,
                                [&](const Leaf& l) {
                                  if (l.factor == ambient_factor()) return gamma_.at(l.element);
                                  return Term::leaf(l);
                                }),
                     object_);
  }

  /// (i1 ⊔ 1): object ⊔ E' -> object ⊔ E' ⊔ E'.
  Term shift_ambient(const Term& x) const {
    return normalize(map_leaves(x,
                                [&](const Leaf& l) {
                                  if (l.factor == ambient_factor())
                                    return Term::leaf(Leaf{l.factor + 1, l.element});
                                  return Term::leaf(l);
                                }),
                     target2_);
  }

  /// (xi ⊔ 1): object ⊔ E' -> object ⊔ E' ⊔ E'.
  Term xi_then_shift(const Term& x) const {
    return normalize(map_leaves(x,
                                [&](const Leaf& l) {
                                  if (l.factor == ambient_factor())
                                    return Term::leaf(Leaf{l.factor + 1, l.element});
                                  return xi_.at(l);
                                }),
                     target2_);
  }

 private:
  CodescentData(Embedding p, AmalgamConfig object, AmalgamConfig target, AmalgamConfig target2,
                std::vector<Term> gamma, std::map<Leaf, Term> xi)
      : p_prime_(std::move(p)),
        object_(std::move(object)),
        target_(std::move(target)),
        target2_(std::move(target2)),
        gamma_(std::move(gamma)),
        xi_(std::move(xi)) {}

  Embedding p_prime_;
  AmalgamConfig object_;
  AmalgamConfig target_;
  AmalgamConfig target2_;
  std::vector<Term> gamma_;
  std::map<Leaf, Term> xi_;
};

/// Data over a finite C': gamma as an index map E' -> C' and xi as one term per
/// element of C'. gamma p' must be injective so that C' extends B'.
inline CodescentData finite_codescent_data(const Embedding& p_prime, const FiniteQuasigroup& c_prime,
                                           const std::vector<std::size_t>& gamma,
                                           const std::vector<Term>& xi) {
  if (gamma.size() != p_prime.target.size())
    throw invalid_input("gamma needs one entry per element of " + p_prime.target.name());
  for (std::size_t g : gamma)
    if (g >= c_prime.size()) throw invalid_input("gamma entry out of range");
  if (!is_homomorphism(p_prime.target, c_prime, gamma))
    throw invalid_input("gamma is not a homomorphism");
  std::vector<std::size_t> base_map;
  for (std::size_t x : p_prime.map) base_map.push_back(gamma[x]);
  if (!is_injective(base_map)) throw invalid_input("gamma p' is not injective");
  if (xi.size() != c_prime.size()) throw invalid_input("xi needs one term per element of C'");
  AmalgamConfig object(p_prime.source, {c_prime}, {base_map});
  std::vector<Term> gamma_terms;
  for (std::size_t g : gamma) gamma_terms.push_back(Term::leaf(object.leaf(1, g)));
  std::map<Leaf, Term> table;
  for (std::size_t c = 0; c < c_prime.size(); ++c) table.insert_or_assign(object.leaf(1, c), xi[c]);
  return CodescentData::make(p_prime, std::move(object), std::move(gamma_terms), std::move(table));
}

/// The comparison functor on f: B -> D, i.e. (D ⊔_B E, i2, i1 ⊔ 1_E). xi keeps
/// D-leaves and moves E-leaves into the appended copy of E.
inline CodescentData phi_p(const Embedding& p, const Embedding& f) {
  if (!p.source.same_tables(f.source)) throw invalid_input("phi_p: p and f have different sources");
  FiniteQuasigroup d = f.target;
  std::set<std::string> taken{p.source.name()};
  d = d.renamed(detail::fresh_name(d.name(), taken));
  taken.insert(d.name());
  FiniteQuasigroup e = p.target.renamed(detail::fresh_name(p.target.name(), taken));
  AmalgamConfig object(p.source, {d, e}, {f.map, p.map});
  std::vector<Term> gamma;
  for (std::size_t x = 0; x < p.target.size(); ++x) gamma.push_back(Term::leaf(object.leaf(2, x)));
  std::map<Leaf, Term> xi;
  for (Leaf l : object.leaves()) {
    if (l.factor == 2)
      xi.insert_or_assign(l, Term::leaf(Leaf{3, l.element}));
    else
      xi.insert_or_assign(l, Term::leaf(l));
  }
  return CodescentData::make(p, std::move(object), std::move(gamma), std::move(xi));
}

// ---------------------------------------------------------------------------
// Verification

struct CodataSample {
  std::vector<Term> object_elements;        // terms over the object
  std::vector<std::size_t> ambient_elements;  // elements of E'
};

inline CodataSample full_sample(const CodescentData& cd) {
  CodataSample s;
  for (Leaf l : cd.object().leaves()) s.object_elements.push_back(Term::leaf(l));
  for (std::size_t e = 0; e < cd.p_prime().target.size(); ++e) s.ambient_elements.push_back(e);
  return s;
}

struct CodataCheck {
  std::string law;
  std::string element;
  bool pass = true;
};

struct CodataReport {
  std::vector<CodataCheck> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CodataCheck& c) { return c.pass; });
  }
  std::size_t failures(std::string_view law) const {
    std::size_t n = 0;
    for (const auto& c : checks) n += (!c.pass && c.law == law) ? 1 : 0;
    return n;
  }
};

inline constexpr std::string_view law_gamma_hom = "gamma-homomorphism";
inline constexpr std::string_view law_xi_hom = "xi-homomorphism";
inline constexpr std::string_view law_xi_gamma = "xi.gamma=i2";
inline constexpr std::string_view law_counit = "(1,gamma).xi=1";
inline constexpr std::string_view law_coassoc = "(i1+1).xi=(xi+1).xi";

/// Checks the three codescent laws on a sample, plus homomorphy of gamma and xi.
inline CodataReport verify_codescent_data(const CodescentData& cd, const CodataSample& sample) {
  const auto& object = cd.object();
  const auto& e_prime = cd.p_prime().target;
  for (const auto& t : sample.object_elements) object.validate(t);
  for (std::size_t e : sample.ambient_elements)
    if (e >= e_prime.size()) throw invalid_input("sample element outside E'");

  CodataReport report;
  auto add = [&](std::string_view law, std::string element, bool pass) {
    report.checks.push_back({std::string(law), std::move(element), pass});
  };

  bool gamma_ok = true;
  for (Op op : all_ops)
    for (std::size_t a = 0; a < e_prime.size() && gamma_ok; ++a)
      for (std::size_t b = 0; b < e_prime.size() && gamma_ok; ++b)
        gamma_ok = normalize(Term::node(op, cd.gamma(a), cd.gamma(b)), object) ==
                   cd.gamma(e_prime.apply(op, a, b));
  for (std::size_t b = 0; b < cd.p_prime().source.size() && gamma_ok; ++b)
    gamma_ok = cd.gamma(cd.p_prime().map[b]) == Term::leaf(Leaf{0, static_cast<std::uint32_t>(b)});
  add(law_gamma_hom, "all", gamma_ok);

  bool xi_ok = true;
  for (std::size_t b = 0; b < object.base().size() && xi_ok; ++b) {
    const Term base = Term::leaf(Leaf{0, static_cast<std::uint32_t>(b)});
    xi_ok = cd.xi(base) == base;
  }
  for (std::size_t j = 1; j <= object.factor_count() && xi_ok; ++j) {
    const auto& a = object.factor(j);
    for (Op op : all_ops)
      for (std::size_t x = 0; x < a.size() && xi_ok; ++x)
        for (std::size_t y = 0; y < a.size() && xi_ok; ++y) {
          const Term lhs = cd.xi(Term::leaf(object.leaf(j, a.apply(op, x, y))));
          const Term rhs = normalize(Term::node(op, cd.xi(Term::leaf(object.leaf(j, x))),
                                                cd.xi(Term::leaf(object.leaf(j, y)))),
                                     cd.target());
          xi_ok = lhs == rhs;
        }
  }
  add(law_xi_hom, "all", xi_ok);

  for (std::size_t e : sample.ambient_elements)
    add(law_xi_gamma, e_prime.element_name(e), cd.xi(cd.gamma(e)) == cd.i2(e));

  for (const auto& c : sample.object_elements) {
    const Term nf = normalize(c, object);
    const Term image = cd.xi(nf);
    const std::string name = object.format(nf);
    add(law_counit, name, cd.fold(image) == nf);
    add(law_coassoc, name, cd.shift_ambient(image) == cd.xi_then_shift(image));
  }
  return report;
}

struct Equalizer {
  std::vector<IndexSet> fixed;  // per object factor: elements a with xi(a) = a
  bool contains_base = true;
  bool closed = true;
};

/// Where xi agrees with the inclusion i1, factor by factor.
inline Equalizer equalizer_q(const CodescentData& cd) {
  const auto& object = cd.object();
  Equalizer q;
  for (std::size_t j = 1; j <= object.factor_count(); ++j) {
    IndexSet fixed;
    for (std::size_t a = 0; a < object.factor(j).size(); ++a) {
      const Term l = Term::leaf(object.leaf(j, a));
      if (cd.xi(l) == l) fixed.push_back(a);
    }
    for (std::size_t x : object.embedding(j))
      q.contains_base = q.contains_base && std::binary_search(fixed.begin(), fixed.end(), x);
    q.closed = q.closed && is_subquasigroup(object.factor(j), fixed);
    q.fixed.push_back(std::move(fixed));
  }
  return q;
}

struct EffectivenessEntry {
  Leaf element;
  Term presentation;           // irreducible xi(element)
  std::vector<Leaf> offending;  // object leaves outside gamma(E') not fixed by xi
  bool pass() const noexcept { return offending.empty(); }
};

struct EffectivenessReport {
  std::vector<EffectivenessEntry> entries;
  bool pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const EffectivenessEntry& e) { return e.pass(); });
  }
};

/// For each generator c, uses the irreducible term xi(c) as the presentation and
/// requires every object leaf c' in it that is not in gamma(E') to satisfy
/// xi(c') = c'. A failing entry only rules out this particular presentation.
inline EffectivenessReport effectiveness_certificate(const CodescentData& cd) {
  const auto& e_prime = cd.p_prime().target;
  std::vector<Term> images;
  std::set<Leaf> gamma_leaves;
  for (std::size_t e = 0; e < e_prime.size(); ++e) {
    const Term& g = cd.gamma(e);
    if (std::find(images.begin(), images.end(), g) != images.end())
      throw invalid_input("effectiveness_certificate: gamma is not injective");
    images.push_back(g);
    if (g.is_leaf()) gamma_leaves.insert(g.as_leaf());
  }
  EffectivenessReport report;
  for (Leaf c : cd.object().leaves()) {
    EffectivenessEntry entry{c, cd.xi(Term::leaf(c)), {}};
    for (Leaf l : leaves_of(entry.presentation)) {
      if (l.factor == 0 || l.factor == cd.ambient_factor() || gamma_leaves.count(l)) continue;
      if (std::find(entry.offending.begin(), entry.offending.end(), l) != entry.offending.end())
        continue;
      if (!(cd.xi(Term::leaf(l)) == Term::leaf(l))) entry.offending.push_back(l);
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace qga
