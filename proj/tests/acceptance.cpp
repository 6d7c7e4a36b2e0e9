// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qga/qga.hpp"

using namespace qga;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Steps applied anywhere in this run, and how many failed to shrink the term.
std::size_t steps_seen = 0;
std::size_t steps_not_shrinking = 0;

NormalizeResult measured(const Term& t, const AmalgamConfig& cfg, Strategy s) {
  return normalize_observed(t, cfg, s, RuleSet::complete,
                            [](const Term& before, const ReductionStep& step, const Term& after) {
                              ++steps_seen;
                              if (after.node_count() >= before.node_count() ||
                                  step.replacing.node_count() >= step.replaced.node_count())
                                ++steps_not_shrinking;
                            });
}

std::string n(std::size_t x) { return std::to_string(x); }

// ---------------------------------------------------------------------------

Outcome unique_normal_form() {
  Rng rng(1001);
  std::size_t terms = 0, runs = 0, discrepancies = 0, largest = 0;
  std::vector<std::size_t> factor_counts(4, 0);
  for (int c = 0; c < 20; ++c) {
    const auto cfg = random_amalgam(rng, {1, 3, 2, 5});
    ++factor_counts[cfg.factor_count()];
    for (int i = 0; i < 25; ++i) {
      const Term t = random_term(cfg, rng, {40, 3});
      ++terms;
      largest = std::max(largest, t.node_count());
      const Term ref = measured(t, cfg, Strategy::innermost()).term;
      std::vector<Strategy> others{Strategy::outermost()};
      for (std::uint64_t s = 0; s < 30; ++s) others.push_back(Strategy::random(s));
      for (const auto& s : others) {
        ++runs;
        if (measured(t, cfg, s).term != ref) ++discrepancies;
      }
      if (!is_irreducible(ref, cfg)) ++discrepancies;
    }
  }
  const bool shapes = factor_counts[1] && factor_counts[2] && factor_counts[3] && largest <= 40;
  return {discrepancies == 0 && shapes && terms >= 500,
          n(terms) + " terms on 20 configs (k=1/2/3: " + n(factor_counts[1]) + "/" + n(factor_counts[2]) + "/" +
              n(factor_counts[3]) + "), 32 strategies, " + n(discrepancies) + " discrepancies"};
}

Outcome exhaustive_uniqueness() {
  Rng rng(1002);
  std::size_t terms = 0, bad = 0, reachable = 0;
  for (int c = 0; c < 10; ++c) {
    const auto cfg = random_amalgam(rng);
    for (int i = 0; i < 12; ++i) {
      const Term t = random_term(cfg, rng, {12, 4});
      ++terms;
      const auto g = oracle::explore(t, cfg);
      reachable += g.reachable.size();
      if (g.irreducible.size() != 1 || g.irreducible[0] != measured(t, cfg, Strategy::innermost()).term) ++bad;
    }
  }
  return {bad == 0 && terms >= 100,
          n(terms) + " terms, " + n(reachable) + " reachable terms searched, " + n(bad) + " violations"};
}

Outcome local_confluence() {
  Rng rng(1003);
  std::size_t terms = 0, peaks = 0, failing = 0;
  for (int c = 0; c < 15; ++c) {
    const auto cfg = random_amalgam(rng);
    for (int i = 0; i < 20; ++i) {
      const auto r = check_local_confluence(random_term(cfg, rng, {20, 4}), cfg);
      ++terms;
      peaks += r.peaks.size();
      failing += r.failing();
    }
  }
  // rd(*(t11, ld(t12, *(t21, t12))), t12) with t11 and t21 both evaluating to t12
  const auto cfg = fixtures::two_cyclic();
  const Term t11 = cfg.parse("*(a1.x, a1.x)");
  const Term t21 = cfg.parse("ld(a1.x, b.e)");
  const Term t12 = cfg.parse("a1.x2");
  const Term w = rdiv(mul(t11, ldiv(t12, mul(t21, t12))), t12);
  const auto g = oracle::explore(w, cfg);
  auto reaches = [&](const Term& x) { return std::find(g.reachable.begin(), g.reachable.end(), x) != g.reachable.end(); };
  const auto wr = check_local_confluence(w, cfg);
  const bool witness = reaches(t11) && reaches(t21) && wr.joinable && wr.failing() == 0 &&
                       measured(w, cfg, Strategy::innermost()).term == t12;
  return {failing == 0 && terms >= 300 && witness,
          n(terms) + " terms, " + n(peaks) + " peaks, " + n(failing) + " failing; witness " + cfg.format(w) +
              (witness ? " reaches both sides" : " FAILED")};
}

Outcome termination_measure() {
  return {steps_not_shrinking == 0 && steps_seen > 0,
          n(steps_seen) + " observed steps, " + n(steps_not_shrinking) + " violations"};
}

Outcome identity_soundness() {
  std::size_t algebras = 0, pairs = 0, violations = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto q = random_quasigroup(1 + s % 6, 5000 + s);
    ++algebras;
    for (std::size_t a = 0; a < q.size(); ++a)
      for (std::size_t b = 0; b < q.size(); ++b) {
        ++pairs;
        if (q.ldiv(a, q.mul(a, b)) != b) ++violations;
        if (q.rdiv(q.mul(a, b), b) != a) ++violations;
        if (q.mul(a, q.ldiv(a, b)) != b) ++violations;
        if (q.mul(q.rdiv(a, b), b) != a) ++violations;
      }
  }
  return {violations == 0, n(algebras) + " quasigroups of order 1..6, " + n(pairs) + " pairs, " + n(violations) +
                               " violations"};
}

Outcome strong_amalgamation() {
  Rng rng(1006);
  std::size_t instances = 0, comparisons = 0, leaf_pairs = 0, violations = 0;
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_nested_instance(rng);
    ++instances;
    const RestrictedConfig rc(inst.ambient, 1, inst.c);
    for (int j = 0; j < 6; ++j) {
      const Term t1 = random_term(rc.config(), rng, {18, 3});
      const Term t2 = rng.chance(1, 2) ? expand_term(t1, rc.config(), rng, 3, 30)
                                       : random_term(rc.config(), rng, {6, 2});
      ++comparisons;
      if (equal_in_amalgam(t1, t2, rc.config()) !=
          equal_in_amalgam(rc.to_ambient(t1), rc.to_ambient(t2), inst.ambient))
        ++violations;
    }
    const auto& cfg = inst.ambient;
    for (std::size_t a = 0; a < cfg.factor(1).size(); ++a)
      for (std::size_t b = 0; b < cfg.factor(2).size(); ++b) {
        ++leaf_pairs;
        const auto pa = cfg.base_preimage(1, a);
        const auto pb = cfg.base_preimage(2, b);
        const bool expected = pa && pb && *pa == *pb;
        if (equal_in_amalgam(Term::leaf(cfg.leaf(1, a)), Term::leaf(cfg.leaf(2, b)), cfg) != expected) ++violations;
      }
  }
  return {violations == 0 && instances >= 100, n(instances) + " instances, " + n(comparisons) +
                                                   " equality verdicts, " + n(leaf_pairs) + " leaf pairs, " +
                                                   n(violations) + " violations"};
}

Outcome condition_star() {
  Rng rng(1007);
  std::size_t instances = 0, with_vars = 0, tuples = 0, refuted = 0, oversized = 0;
  for (int i = 0; i < 60; ++i) {
    const auto inst = random_nested_instance(rng);
    if (inst.ambient.factor(1).size() > 6) ++oversized;
    const Term alpha = random_sub_amalgam_element(inst, rng, 3);
    const auto v = condition_star_check(alpha, inst.c, 1, inst.ambient, 3);
    ++instances;
    with_vars += v.variables.empty() ? 0 : 1;
    tuples += v.tuples_checked;
    if (!v.verified()) ++refuted;
  }
  return {refuted == 0 && oversized == 0 && instances >= 50,
          n(instances) + " instances (" + n(with_vars) + " with variables), " + n(tuples) + " tuples, " +
              n(refuted) + " refutations"};
}

Outcome codescent_characterization() {
  std::size_t embeddings = 0, codescent = 0, violations = 0;
  auto examine = [&](const Embedding& p) {
    ++embeddings;
    const auto v = is_codescent(p);
    codescent += v.codescent ? 1 : 0;
    for (const auto& r : all_congruences(p.source))
      if (!r.refines(pullback(closure_along(p, r), p.map))) ++violations;
    if (v.codescent != oracle::is_codescent(p)) ++violations;
  };
  std::vector<FiniteQuasigroup> reps;
  for (std::size_t k = 1; k <= 4; ++k)
    for (auto& q : quasigroups_up_to_isomorphism(k)) reps.push_back(q);
  for (const auto& a : reps)
    for (const auto& b : reps) {
      if (a.size() > b.size()) continue;
      std::vector<std::size_t> map(a.size(), 0);
      for (;;) {
        if (is_injective(map) && is_homomorphism(a, b, map)) examine(Embedding{a, b, map});
        std::size_t i = 0;
        while (i < map.size() && ++map[i] == b.size()) map[i++] = 0;
        if (i == map.size()) break;
      }
    }
  const std::size_t exhaustive = embeddings;
  Rng rng(1008);
  for (int i = 0; i < 24; ++i) {
    const std::size_t target = rng.between(5, 6);
    const auto base = random_quasigroup(rng.between(1, target / 2), rng.next(), "b");
    auto [e, map] = random_extension(base, target, rng, "e");
    examine(Embedding{base, e, map});
  }
  // Bases of order <= 3 have only trivial congruences, so everything above is
  // codescent. Order-8 extensions of Z4 give the oracle negative cases too.
  const auto z4 = FiniteQuasigroup::cyclic(4, "b");
  const std::size_t before = codescent;
  for (int i = 0; i < 12; ++i) {
    auto [e, map] = random_extension(z4, 8, rng, "e");
    examine(Embedding{z4, e, map});
  }
  const std::size_t negatives = 12 - (codescent - before);
  // {0,2} in Z4: the verdict and the congruence lattice against partition enumeration
  const auto z = fixtures::z2_in_z4();
  const bool z4z = is_codescent(z).codescent == oracle::is_codescent(z) &&
                  all_congruences(z.target).size() == oracle::congruences(z.target).size() &&
                  all_congruences(z.source).size() == oracle::congruences(z.source).size();
  return {violations == 0 && z4z && exhaustive > 0 && negatives > 0,
          n(exhaustive) + " exhaustive + 24 random order-5/6 + 12 Z4-in-order-8 embeddings (" +
              n(embeddings - codescent) + " not codescent), " + n(violations) + " violations; {0,2} in Z4 " +
              (z4z ? "matches" : "MISMATCH")};
}

Outcome phi_p_correctness() {
  Rng rng(1009);
  std::size_t pairs = 0, rejected = 0, perturbed = 0, undetected = 0;
  for (int i = 0; i < 40; ++i) {
    const auto base = random_quasigroup(rng.between(1, 2), rng.next(), "b");
    const auto p = random_embedding(rng, base, 5, "e");
    const auto f = random_embedding(rng, base, 5, "d");
    const auto cd = phi_p(p, f);
    ++pairs;
    if (!verify_codescent_data(cd, full_sample(cd)).pass() || !effectiveness_certificate(cd).pass()) ++rejected;
    for (Leaf c : cd.object().leaves()) {
      if (c.factor == 0) continue;
      const auto bad = cd.with_xi(c, Term::leaf(0, 0));
      ++perturbed;
      if (verify_codescent_data(bad, full_sample(bad)).failures(law_counit) == 0) ++undetected;
      break;
    }
  }
  return {rejected == 0 && undetected == 0 && pairs >= 30 && perturbed > 0,
          n(pairs) + " pairs, " + n(rejected) + " rejected; " + n(perturbed) + " perturbed xi, " + n(undetected) +
              " not caught by " + std::string(law_counit)};
}

Outcome group_canonical_forms() {
  Rng rng(1010);
  std::size_t comparisons = 0, mismatches = 0, equal = 0;
  for (int i = 0; i < 400; ++i) {
    const auto a = random_group_amalgam(rng);
    const Word u = random_word(a, rng, rng.below(7));
    Word v;
    if (rng.chance(1, 2)) {
      // same element: u with a cancelling pair inserted
      v = u;
      const auto side = static_cast<std::uint8_t>(rng.between(1, 2));
      const std::size_t x = rng.below(a.factor(side).size());
      const auto at = v.begin() + static_cast<std::ptrdiff_t>(rng.below(v.size() + 1));
      v.insert(at, {{side, x}, {side, a.factor(side).inv(x)}});
    } else {
      v = random_word(a, rng, rng.below(9));
    }
    ++comparisons;
    const bool ours = a.canonical_form(u) == a.canonical_form(v);
    equal += ours ? 1 : 0;
    if (ours != oracle::equal_words(a, u, v)) ++mismatches;
  }
  std::size_t instances = 0, refuted = 0;
  for (int i = 0; i < 30; ++i) {
    const auto a = random_group_amalgam(rng);
    const auto c = random_intermediate_subgroup(a, rng);
    Word w = random_sub_word(a, c, rng, rng.between(1, 7));
    while (a.canonical_form(w).letters.size() > 6) w.pop_back();
    const auto v = group_condition_star_check(w, c, a, 3);
    ++instances;
    if (!v.verified() || !v.compatible) ++refuted;
  }
  return {mismatches == 0 && refuted == 0,
          n(comparisons) + " word pairs (" + n(equal) + " equal), " + n(mismatches) + " oracle mismatches; " +
              n(instances) + " group-star instances, " + n(refuted) + " refutations"};
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Outcome cli_determinism() {
  SweepOptions o;
  o.seed = 7;
  const bool library = sweep_all(o).text() == sweep_all(o).text();
  const std::string cmd = std::string(QGA_CLI_PATH) + " check all --seed 7";
  int s1 = 0, s2 = 0;
  const auto a = capture(cmd, s1);
  const auto b = capture(cmd, s2);
  const bool cli = !a.empty() && a == b && s1 == 0 && s2 == 0;
  return {library && cli, "library sweep " + std::string(library ? "identical" : "DIFFERS") + ", `qga check all --seed 7` " +
                              (cli ? "byte-identical (" + n(a.size()) + " bytes, fnv1a64=" + fnv1a64(a) + ")"
                                   : "DIFFERS or failed")};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double limit_s = 0;  // 0: no time limit
  };
  const std::vector<Criterion> criteria{
      {"unique normal form across strategies", unique_normal_form, 60},
      {"exhaustive reduction graph has one irreducible", exhaustive_uniqueness},
      {"local confluence", local_confluence},
      {"every step decreases node count", termination_measure},
      {"division identities in random quasigroups", identity_soundness},
      {"sub-amalgam embedding and strong amalgamation", strong_amalgamation},
      {"condition (*) witness survives substitution", condition_star},
      {"codescent characterization", codescent_characterization},
      {"phi_p gives codescent data", phi_p_correctness},
      {"group canonical forms and group condition (*)", group_canonical_forms, 120},
      {"check sweep determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    auto out = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "; %.2f s (limit %.0f s)", secs, c.limit_s);
      out.detail += buf;
      if (secs > c.limit_s) out.pass = false;
    }
    std::cout << (out.pass ? "PASS " : "FAIL ") << i + 1 << ". " << c.name << ": " << out.detail << std::endl;
    failed += out.pass ? 0 : 1;
  }
  std::cout << (failed ? "acceptance: " + n(static_cast<std::size_t>(failed)) + " failing" : std::string("acceptance: all pass"))
            << std::endl;
  return failed ? 1 : 0;
}
