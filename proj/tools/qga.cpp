// qga: word problem and descent checks for amalgamated free products of quasigroups.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qga/io.hpp"
#include "qga/qga.hpp"

namespace {

using qga::io::json;

constexpr int exit_fail = 1;
constexpr int exit_error = 2;

std::string term_text(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return qga::io::read_file(arg.substr(1));
  return arg;
}

qga::Strategy strategy_from(const std::string& name, std::uint64_t seed) {
  auto s = qga::Strategy::from_name(name, seed);
  if (!s) throw qga::invalid_input("unknown strategy '" + name + "'");
  return *s;
}

qga::RuleSet rules_from(const std::string& name) {
  if (name == "complete") return qga::RuleSet::complete;
  if (name == "axioms") return qga::RuleSet::axioms;
  throw qga::invalid_input("unknown rule set '" + name + "'");
}

std::size_t element_ref(const json& j, const std::vector<std::string>& names) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_string()) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == j.get<std::string>()) return i;
    throw qga::invalid_input("unknown element '" + j.get<std::string>() + "'");
  }
  throw qga::invalid_input("elements are referenced by index or name");
}

qga::IndexSet subset_from(const json& j, const std::vector<std::string>& names) {
  qga::IndexSet s;
  for (const auto& x : j) s.push_back(element_ref(x, names));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

qga::RunReport run_check(const std::string& kind, const std::string& input, const qga::SweepOptions& o) {
  const bool sweep = input.empty();
  json j;
  if (!sweep) j = qga::io::parse_json(qga::io::read_file(input));
  qga::RunReport r;
  if (kind == "codescent") {
    r = sweep ? qga::sweep_codescent(o) : qga::check_codescent(qga::io::embedding_from_json(j));
  } else if (kind == "star") {
    if (sweep) {
      r = qga::sweep_star(o);
    } else {
      const auto cfg = qga::io::amalgam_from_json(j.at("amalgam"));
      std::size_t d = 1;
      if (j.contains("factor")) {
        if (j["factor"].is_string()) {
          d = 0;
          for (std::size_t i = 1; i <= cfg.factor_count(); ++i)
            if (cfg.factor(i).name() == j["factor"].get<std::string>()) d = i;
        } else {
          d = j["factor"].get<std::size_t>();
        }
      }
      if (d == 0 || d > cfg.factor_count()) throw qga::invalid_input("unknown factor");
      const auto c = subset_from(j.at("subset"), cfg.factor(d).element_names());
      std::vector<qga::Term> terms;
      for (const auto& t : j.at("terms")) terms.push_back(cfg.parse(t.get<std::string>()));
      r = qga::check_star(cfg, d, c, terms, o.bound);
    }
  } else if (kind == "confluence") {
    if (sweep) {
      r = qga::sweep_confluence(o);
    } else {
      const auto cfg = qga::io::amalgam_from_json(j.at("amalgam"));
      std::vector<qga::Term> terms;
      for (const auto& t : j.at("terms")) terms.push_back(cfg.parse(t.get<std::string>()));
      r = qga::check_confluence(cfg, terms);
    }
  } else if (kind == "codata") {
    r = sweep ? qga::sweep_codata(o) : qga::check_codata(qga::io::codescent_data_from_json(j), input);
  } else if (kind == "group-star") {
    if (sweep) {
      r = qga::sweep_group_star(o);
    } else {
      const auto a = qga::io::group_amalgam_from_json(j.at("amalgam"));
      const auto c = subset_from(j.at("subgroup"), a.factor(1).element_names());
      std::vector<qga::Word> words;
      for (const auto& w : j.at("words")) words.push_back(qga::io::parse_word(w.get<std::string>(), a));
      r = qga::check_group_star(a, c, words, o.bound);
    }
  } else if (kind == "all") {
    if (!sweep) throw qga::invalid_input("check all takes no input file");
    r = qga::sweep_all(o);
  } else {
    throw qga::invalid_input("unknown check kind '" + kind + "'");
  }
  if (sweep) r.seed = o.seed;
  else r.inputs.emplace_back(input, qga::fnv1a64(qga::io::read_file(input)));
  return r;
}

std::string command_echo(int argc, char** argv) {
  std::string s = "qga";
  for (int i = 1; i < argc; ++i) s += std::string(" ") + argv[i];
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word problem and descent checks for amalgamated free products of quasigroups"};
  app.require_subcommand(1);

  std::uint64_t seed = 7;
  std::string strategy_name = "leftmost-innermost";
  std::string rules_name = "complete";

  auto* normalize = app.add_subcommand("normalize", "Print the irreducible form of a term");
  std::string term_arg, amalgam_path;
  bool trace = false;
  normalize->add_option("term", term_arg, "Term text, or @file")->required();
  normalize->add_option("-a,--amalgam", amalgam_path, "Amalgam JSON file")->required();
  normalize->add_option("--strategy", strategy_name, "leftmost-innermost, leftmost-outermost or random");
  normalize->add_option("--seed", seed, "Seed for the random strategy");
  normalize->add_option("--rules", rules_name, "complete or axioms");
  normalize->add_flag("--trace", trace, "Print every reduction step");

  auto* equal = app.add_subcommand("equal", "Decide whether two terms are equal in the amalgam");
  std::string lhs_arg, rhs_arg;
  equal->add_option("lhs", lhs_arg, "Term text, or @file")->required();
  equal->add_option("rhs", rhs_arg, "Term text, or @file")->required();
  equal->add_option("-a,--amalgam", amalgam_path, "Amalgam JSON file")->required();
  equal->add_option("--rules", rules_name, "complete or axioms");

  auto* check = app.add_subcommand("check", "Run a check on an input file, or a seeded sweep");
  std::string kind, input;
  qga::SweepOptions sweep;
  bool as_json = false, timing = false;
  check->add_option("kind", kind, "codescent, star, confluence, codata, group-star or all")->required();
  check->add_option("-i,--input", input, "Input JSON file; omit for a random sweep");
  check->add_option("--seed", sweep.seed, "Sweep seed");
  check->add_option("--samples", sweep.samples, "Sweep size");
  check->add_option("--bound", sweep.bound, "Largest number of substituted variables");
  check->add_flag("--json", as_json, "Print the report as JSON");
  check->add_flag("--timing", timing, "Include elapsed time in the report");

  auto* gen = app.add_subcommand("gen", "Generate random inputs");
  std::string gen_kind;
  std::size_t order = 3, samples = 10, max_nodes = 15;
  gen->add_option("kind", gen_kind, "quasigroup, amalgam or terms")->required();
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--order", order, "Order of a generated quasigroup");
  gen->add_option("--samples", samples, "Number of generated terms");
  gen->add_option("--max-nodes", max_nodes, "Size limit for generated terms");
  gen->add_option("-a,--amalgam", amalgam_path, "Amalgam JSON file for generated terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every other usage error is an input error
    return app.exit(e) == 0 ? 0 : exit_error;
  }

  try {
    if (*normalize) {
      const auto cfg = qga::io::amalgam_from_json(qga::io::parse_json(qga::io::read_file(amalgam_path)));
      const auto t = cfg.parse(term_text(term_arg));
      const auto result = qga::normalize_observed(
          t, cfg, strategy_from(strategy_name, seed), rules_from(rules_name),
          [&](const qga::Term&, const qga::ReductionStep& s, const qga::Term& after) {
            if (trace) std::cout << qga::describe_step(s, cfg) << "  => " << cfg.format(after) << "\n";
          });
      std::cout << cfg.format(result.term) << "\nsteps: " << result.steps << "\n";
      return 0;
    }
    if (*equal) {
      const auto cfg = qga::io::amalgam_from_json(qga::io::parse_json(qga::io::read_file(amalgam_path)));
      const auto rules = rules_from(rules_name);
      const auto a = qga::normalize(cfg.parse(term_text(lhs_arg)), cfg, qga::Strategy::innermost(), rules);
      const auto b = qga::normalize(cfg.parse(term_text(rhs_arg)), cfg, qga::Strategy::innermost(), rules);
      std::cout << cfg.format(a) << "\n" << cfg.format(b) << "\n" << (a == b ? "equal" : "not equal") << "\n";
      return a == b ? 0 : exit_fail;
    }
    if (*check) {
      const auto start = std::chrono::steady_clock::now();
      auto report = run_check(kind, input, sweep);
      report.command = command_echo(argc, argv);
      if (timing)
        report.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (as_json) std::cout << report.to_json().dump(2) << "\n";
      else std::cout << report.text();
      return report.pass() ? 0 : exit_fail;
    }
    if (*gen) {
      qga::Rng rng(seed);
      if (gen_kind == "quasigroup") {
        std::cout << qga::io::to_json(qga::random_quasigroup(order, seed, "A")).dump(2) << "\n";
      } else if (gen_kind == "amalgam") {
        std::cout << qga::io::to_json(qga::random_amalgam(rng)).dump(2) << "\n";
      } else if (gen_kind == "terms") {
        if (amalgam_path.empty()) throw qga::invalid_input("gen terms needs --amalgam");
        const auto cfg = qga::io::amalgam_from_json(qga::io::parse_json(qga::io::read_file(amalgam_path)));
        json out = json::array();
        for (std::size_t i = 0; i < samples; ++i)
          out.push_back(cfg.format(qga::random_term(cfg, rng, {max_nodes, 3})));
        std::cout << out.dump(2) << "\n";
      } else {
        throw qga::invalid_input("unknown generator '" + gen_kind + "'");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "qga: " << e.what() << "\n";
    return exit_error;
  }
  return 0;
}
