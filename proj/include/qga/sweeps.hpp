#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qga/amalgam.hpp"
#include "qga/descent.hpp"
#include "qga/generators.hpp"
#include "qga/group.hpp"
#include "qga/quasigroup.hpp"
#include "qga/rewriter.hpp"
#include "qga/sub_amalgam.hpp"

namespace qga {

inline std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Verdict {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::optional<std::uint64_t> seed;
  std::vector<Verdict> verdicts;
  std::vector<std::string> counterexamples;
  std::optional<double> elapsed_ms;  // rendered only when set

  bool pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }

  void add(std::string name, bool pass, std::string detail) {
    verdicts.push_back({std::move(name), pass, std::move(detail)});
  }

  void append(RunReport other) {
    for (auto& v : other.verdicts) verdicts.push_back(std::move(v));
    for (auto& c : other.counterexamples) counterexamples.push_back(std::move(c));
  }

  std::string text() const {
    std::string s = "command: " + command + "\n";
    for (const auto& [path, digest] : inputs) s += "input: " + path + " fnv1a64=" + digest + "\n";
    if (seed) s += "seed: " + std::to_string(*seed) + "\n";
    for (const auto& v : verdicts)
      s += std::string(v.pass ? "[pass] " : "[FAIL] ") + v.name + ": " + v.detail + "\n";
    for (const auto& c : counterexamples) s += "counterexample: " + c + "\n";
    if (elapsed_ms) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f", *elapsed_ms);
      s += std::string("elapsed-ms: ") + buf + "\n";
    }
    s += std::string("result: ") + (pass() ? "pass" : "FAIL") + "\n";
    return s;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : inputs) j["inputs"].push_back({{"path", path}, {"fnv1a64", digest}});
    if (seed) j["seed"] = *seed;
    j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : verdicts)
      j["verdicts"].push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    j["counterexamples"] = counterexamples;
    if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
    j["result"] = pass() ? "pass" : "fail";
    return j;
  }
};

struct SweepOptions {
  std::uint64_t seed = 7;
  std::size_t samples = 50;
  std::size_t bound = 3;
};

namespace detail {
inline std::string ratio(std::size_t ok, std::size_t total) {
  return std::to_string(ok) + "/" + std::to_string(total);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// codescent

/// Congruence-by-congruence check of p, including injectivity of each pushout.
inline RunReport check_codescent(const Embedding& p) {
  RunReport r;
  const auto congruences = all_congruences(p.source);
  std::size_t contained = 0, injective = 0;
  for (const auto& rel : congruences) {
    const auto po = pushout_along_quotient(p, rel);
    contained += rel.refines(pullback(po.closure, p.map)) ? 1 : 0;
    if (po.injective) {
      ++injective;
    } else {
      std::string blocks;
      for (const auto& b : rel.blocks()) {
        blocks += "{";
        for (std::size_t i = 0; i < b.size(); ++i)
          blocks += (i ? "," : "") + p.source.element_name(b[i]);
        blocks += "}";
      }
      r.counterexamples.push_back("congruence " + blocks + " on " + p.source.name() +
                                  " grows when closed in " + p.target.name());
    }
  }
  const auto verdict = is_codescent(p);
  r.add("codescent " + p.source.name() + " -> " + p.target.name(), verdict.codescent,
        std::to_string(verdict.congruences_checked) + " congruences, pushout injective " +
            detail::ratio(injective, congruences.size()));
  r.add("closure contains relation", contained == congruences.size(),
        detail::ratio(contained, congruences.size()));
  return r;
}

/// Random embeddings: the verdict itself may go either way; what must hold is
/// R ⊆ pullback(R') and that codescent maps have injective pushouts.
inline RunReport sweep_codescent(const SweepOptions& o) {
  RunReport r;
  Rng rng(o.seed ^ 0xc0de5ce7ULL);
  std::size_t codescent = 0, contained = 0, pushout_ok = 0, relations = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    Rng item = rng.fork();
    const std::size_t m = item.between(1, 3);
    const auto p = random_embedding(item, random_quasigroup(m, item.next(), "b"), 6, "e");
    const auto verdict = is_codescent(p);
    codescent += verdict.codescent ? 1 : 0;
    bool all_injective = true;
    for (const auto& rel : all_congruences(p.source)) {
      ++relations;
      const auto po = pushout_along_quotient(p, rel);
      contained += rel.refines(pullback(po.closure, p.map)) ? 1 : 0;
      all_injective = all_injective && po.injective;
    }
    if (all_injective == verdict.codescent) ++pushout_ok;
    else r.counterexamples.push_back("codescent sweep item " + std::to_string(i));
  }
  r.add("codescent sweep", true,
        std::to_string(o.samples) + " embeddings, " + std::to_string(codescent) + " codescent");
  r.add("closure contains relation", contained == relations, detail::ratio(contained, relations));
  r.add("codescent iff pushouts injective", pushout_ok == o.samples, detail::ratio(pushout_ok, o.samples));
  return r;
}

// ---------------------------------------------------------------------------
// star

inline RunReport check_star(const AmalgamConfig& cfg, std::size_t d, const IndexSet& c,
                            const std::vector<Term>& terms, std::size_t bound) {
  RunReport r;
  std::size_t ok = 0;
  for (const auto& t : terms) {
    const auto v = condition_star_check(t, c, d, cfg, bound);
    if (v.verified()) ++ok;
    else {
      std::string tuple;
      for (std::size_t x : v.counterexample)
        tuple += (tuple.empty() ? "" : ",") + cfg.factor(d).element_name(x);
      r.counterexamples.push_back("witness " + cfg.format(v.witness) + " fails at (" + tuple + ")");
    }
  }
  r.add("substitution property", ok == terms.size(), detail::ratio(ok, terms.size()) + " witnesses verified");
  return r;
}

/// A random element of C ⊔_B E whose irreducible form has at most `bound`
/// C-variables, as a term over the full D ⊔_B E. Forms with at least one
/// variable are preferred when C has private elements.
inline Term random_sub_amalgam_element(const NestedInstance& inst, Rng& rng, std::size_t bound,
                                       std::size_t max_nodes = 15) {
  const RestrictedConfig rc(inst.ambient, 1, inst.c);
  const bool has_private = !rc.config().private_leaves(1).empty();
  std::optional<Term> fallback;
  for (std::size_t nodes = max_nodes;; nodes = nodes > 1 ? nodes - 2 : 1) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      const Term t = rc.to_ambient(random_term(rc.config(), rng, {nodes, 3}));
      const Term nf = normalize(t, inst.ambient);
      std::vector<Leaf> vars;
      for (Leaf l : leaves_of(nf))
        if (l.factor == 1 && std::find(vars.begin(), vars.end(), l) == vars.end()) vars.push_back(l);
      if (vars.size() > bound) continue;
      if (!vars.empty() || !has_private) return t;
      if (!fallback) fallback = t;
    }
    if (fallback && nodes < max_nodes / 2) return *fallback;
  }
}

inline RunReport sweep_star(const SweepOptions& o) {
  RunReport r;
  Rng rng(o.seed ^ 0x57a7ULL);
  std::size_t ok = 0, tuples = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    Rng item = rng.fork();
    const auto inst = random_nested_instance(item);
    const Term alpha = random_sub_amalgam_element(inst, item, o.bound);
    const auto v = condition_star_check(alpha, inst.c, 1, inst.ambient, o.bound);
    tuples += v.tuples_checked;
    if (v.verified()) ++ok;
    else r.counterexamples.push_back("star sweep item " + std::to_string(i) + ": witness " +
                                     inst.ambient.format(v.witness));
  }
  r.add("substitution property", ok == o.samples,
        detail::ratio(ok, o.samples) + " witnesses verified, " + std::to_string(tuples) + " tuples");
  return r;
}

// ---------------------------------------------------------------------------
// confluence

inline RunReport check_confluence(const AmalgamConfig& cfg, const std::vector<Term>& terms) {
  RunReport r;
  std::size_t peaks = 0, failing = 0;
  for (const auto& t : terms) {
    const auto rep = check_local_confluence(t, cfg);
    peaks += rep.peaks.size();
    failing += rep.failing();
    for (const auto& p : rep.peaks)
      if (!p.joinable)
        r.counterexamples.push_back(cfg.format(t) + ": " + describe_step(p.first, cfg) + " | " +
                                    describe_step(p.second, cfg));
  }
  r.add("local confluence", failing == 0,
        std::to_string(terms.size()) + " terms, " + std::to_string(peaks) + " peaks, " +
            std::to_string(failing) + " failing");
  return r;
}

inline RunReport sweep_confluence(const SweepOptions& o) {
  RunReport r;
  Rng rng(o.seed ^ 0xc0f1ULL);
  std::size_t peaks = 0, failing = 0, agree = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    Rng item = rng.fork();
    const auto cfg = random_amalgam(item);
    const Term t = random_term(cfg, item, {20, 4});
    const auto rep = check_local_confluence(t, cfg);
    peaks += rep.peaks.size();
    failing += rep.failing();
    for (const auto& p : rep.peaks)
      if (!p.joinable)
        r.counterexamples.push_back(cfg.format(t) + ": " + describe_step(p.first, cfg) + " | " +
                                    describe_step(p.second, cfg));
    const Term nf = normalize(t, cfg);
    agree += (normalize(t, cfg, Strategy::outermost()) == nf &&
              normalize(t, cfg, Strategy::random(item.next())) == nf)
                 ? 1
                 : 0;
  }
  r.add("local confluence", failing == 0,
        std::to_string(o.samples) + " terms, " + std::to_string(peaks) + " peaks, " +
            std::to_string(failing) + " failing");
  r.add("strategy independence", agree == o.samples, detail::ratio(agree, o.samples));
  return r;
}

// ---------------------------------------------------------------------------
// codata

inline RunReport check_codata(const CodescentData& cd, const std::string& label = "data") {
  RunReport r;
  const auto rep = verify_codescent_data(cd, full_sample(cd));
  for (std::string_view law : {law_gamma_hom, law_xi_hom, law_xi_gamma, law_counit, law_coassoc}) {
    std::size_t total = 0, ok = 0;
    for (const auto& c : rep.checks)
      if (c.law == law) {
        ++total;
        ok += c.pass ? 1 : 0;
        if (!c.pass) r.counterexamples.push_back(label + ": " + std::string(law) + " fails at " + c.element);
      }
    r.add(std::string(law), ok == total, detail::ratio(ok, total));
  }
  const auto q = equalizer_q(cd);
  std::string sizes;
  for (const auto& f : q.fixed) sizes += (sizes.empty() ? "" : ",") + std::to_string(f.size());
  r.add("equalizer", q.contains_base && q.closed,
        "fixed elements per factor " + sizes + (q.closed ? ", closed" : ", not closed"));
  try {
    const auto eff = effectiveness_certificate(cd);
    std::size_t ok = 0;
    for (const auto& e : eff.entries) {
      if (e.pass()) {
        ++ok;
        continue;
      }
      std::string leaves;
      for (Leaf l : e.offending) leaves += (leaves.empty() ? "" : ",") + cd.object().leaf_name(l);
      r.counterexamples.push_back(label + ": irreducible witness failed for " +
                                  cd.object().leaf_name(e.element) + ", moved leaves " + leaves);
    }
    r.add("effectiveness certificate", ok == eff.entries.size(), detail::ratio(ok, eff.entries.size()));
  } catch (const invalid_input& e) {
    r.add("effectiveness certificate", false, e.what());
  }
  return r;
}

inline RunReport sweep_codata(const SweepOptions& o) {
  RunReport r;
  Rng rng(o.seed ^ 0xc0da7aULL);
  std::size_t laws = 0, effective = 0, equalizer = 0, detected = 0, perturbed = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    Rng item = rng.fork();
    const auto base = random_quasigroup(item.between(1, 2), item.next(), "b");
    const auto p = random_embedding(item, base, 5, "e");
    const auto f = random_embedding(item, base, 5, "d");
    const auto cd = phi_p(p, f);
    const auto rep = verify_codescent_data(cd, full_sample(cd));
    laws += rep.pass() ? 1 : 0;
    effective += effectiveness_certificate(cd).pass() ? 1 : 0;
    const auto q = equalizer_q(cd);
    equalizer += (q.contains_base && q.closed && q.fixed[0].size() == f.target.size()) ? 1 : 0;
    if (!rep.pass()) r.counterexamples.push_back("codata sweep item " + std::to_string(i));

    std::vector<Leaf> movable;
    for (Leaf l : cd.object().leaves())
      if (l.factor != 0) movable.push_back(l);
    if (movable.empty()) continue;
    ++perturbed;
    const Leaf c = item.pick(movable);
    const auto bad = cd.with_xi(c, Term::leaf(Leaf{0, 0}));
    const auto bad_rep = verify_codescent_data(bad, full_sample(bad));
    const std::string name = cd.object().format(Term::leaf(c));
    bool caught = false;
    for (const auto& chk : bad_rep.checks)
      caught = caught || (chk.law == law_counit && chk.element == name && !chk.pass);
    detected += caught ? 1 : 0;
  }
  r.add("phi_p satisfies codescent laws", laws == o.samples, detail::ratio(laws, o.samples));
  r.add("phi_p effectiveness certificate", effective == o.samples, detail::ratio(effective, o.samples));
  r.add("phi_p equalizer", equalizer == o.samples, detail::ratio(equalizer, o.samples));
  r.add("perturbed xi detected", detected == perturbed, detail::ratio(detected, perturbed));
  return r;
}

// ---------------------------------------------------------------------------
// group-star

inline RunReport check_group_star(const GroupAmalgam& a, const IndexSet& c,
                                  const std::vector<Word>& words, std::size_t bound) {
  RunReport r;
  std::size_t ok = 0;
  for (const auto& w : words) {
    const auto v = group_condition_star_check(w, c, a, bound);
    if (v.verified()) ++ok;
    else r.counterexamples.push_back("witness " + a.format(v.witness) +
                                     (v.compatible ? " refuted" : " differs from the form over the full group"));
  }
  r.add("group substitution property", ok == words.size(), detail::ratio(ok, words.size()));
  return r;
}

/// A subgroup of the first factor containing the base, chosen at random.
inline IndexSet random_intermediate_subgroup(const GroupAmalgam& a, Rng& rng) {
  const IndexSet image = a.embedding(1).image();
  std::vector<IndexSet> options;
  for (auto& s : all_subgroups(a.factor(1)))
    if (std::includes(s.begin(), s.end(), image.begin(), image.end())) options.push_back(s);
  return rng.pick(options);
}

inline Word random_sub_word(const GroupAmalgam& a, const IndexSet& c, Rng& rng, std::size_t length) {
  Word w;
  for (std::size_t i = 0; i < length; ++i) {
    if (rng.chance(1, 8)) w.push_back({0, rng.below(a.base().size())});
    else if (rng.chance(1, 2)) w.push_back({1, rng.pick(c)});
    else w.push_back({2, rng.below(a.factor(2).size())});
  }
  return w;
}

inline RunReport sweep_group_star(const SweepOptions& o) {
  RunReport r;
  Rng rng(o.seed ^ 0x960ULL);
  std::size_t ok = 0, tuples = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    Rng item = rng.fork();
    const auto a = random_group_amalgam(item);
    const auto c = random_intermediate_subgroup(a, item);
    Word w = random_sub_word(a, c, item, item.between(0, 2 * o.bound + 1));
    while (a.canonical_form(w).letters.size() > 2 * o.bound) w.pop_back();
    const auto v = group_condition_star_check(w, c, a, o.bound);
    tuples += v.tuples_checked;
    if (v.verified()) ++ok;
    else r.counterexamples.push_back("group-star sweep item " + std::to_string(i) + ": " + a.format(v.witness));
  }
  r.add("group substitution property", ok == o.samples,
        detail::ratio(ok, o.samples) + " witnesses verified, " + std::to_string(tuples) + " tuples");
  return r;
}

inline RunReport sweep_all(const SweepOptions& o) {
  RunReport r;
  r.append(sweep_codescent(o));
  r.append(sweep_star(o));
  r.append(sweep_confluence(o));
  r.append(sweep_codata(o));
  r.append(sweep_group_star(o));
  return r;
}

}  // namespace qga
