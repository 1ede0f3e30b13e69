#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fairdiv/dimacs.hpp"
#include "fairdiv/document.hpp"
#include "fairdiv/eef_reduction.hpp"
#include "fairdiv/leximin.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/po_reduction.hpp"
#include "fairdiv/report.hpp"

namespace fairdiv {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

namespace cli {

struct Input {
  std::string path;
  std::string text;
};

inline Input read_input(const std::string& path, Report& report) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open file", path);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  report.inputs.push_back({path, sha256_hex(text)});
  return {path, std::move(text)};
}

inline void write_output(const std::string& path, const std::string& text, Report& report) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error("cannot write " + path);
  report.payload["output"] = {{"path", path}, {"sha256", sha256_hex(text)}};
}

/// FAIRDIV_BUDGET if set, else the built-in default.
inline std::uint64_t default_budget() {
  const char* env = std::getenv("FAIRDIV_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  std::uint64_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
    throw FormatError("FAIRDIV_BUDGET must be a positive integer, got '" + std::string(s) + "'");
  }
  return v;
}

inline nlohmann::json assignment_json(const std::vector<bool>& values) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t v = 0; v < values.size(); ++v) out[Literal::pos(v).name()] = bool(values[v]);
  return out;
}

inline nlohmann::json partial_json(const PartialAssignment& s) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t v = 0; v < s.values.size(); ++v) {
    if (s.values[v]) out[Literal::pos(v).name()] = *s.values[v];
  }
  return out;
}

inline nlohmann::json utilities_json(const std::vector<Rational>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(detail::rational_to_json(v));
  return out;
}

inline std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const FormatError& e) {
      throw FormatError(e.what(), "--K");
    }
  }
  return out;
}

inline void solve_leximin_cmd(const std::string& path, const std::optional<std::string>& k,
                              Report& report) {
  const auto doc = parse_instance(read_input(path, report).text);
  const auto alloc = solve_leximin(doc.instance);
  const auto u = utility_vector(doc.instance, alloc);
  report.payload["allocation"] = allocation_to_json(doc.instance, alloc);
  report.payload["utilities"] = utilities_json(u.values);
  report.payload["sorted"] = utilities_json(u.sorted());
  report.witness = allocation_to_json(doc.instance, alloc);
  if (!k) {
    report.verdict = ReportVerdict::Success;
    return;
  }
  UtilityVector kv{parse_vector(*k)};
  report.payload["K"] = utilities_json(kv.values);
  report.verdict = decide_lmmuab(doc.instance, kv) ? ReportVerdict::Yes : ReportVerdict::No;
}

inline InstanceDocument document_with_allocation(const std::string& path, Report& report) {
  auto doc = parse_instance(read_input(path, report).text);
  if (!doc.allocation) throw FormatError("document has no allocation", "/allocation");
  return doc;
}

inline void check_pareto_cmd(const std::string& path, std::uint64_t budget, Report& report) {
  const auto doc = document_with_allocation(path, report);
  const auto r = is_pareto_optimal(doc.instance, *doc.allocation, SearchBudget(budget));
  report.verdict = report_verdict(r.verdict);
  report.nodes = r.nodes;
  report.payload["budget"] = budget;
  if (r.witness) report.witness = allocation_to_json(doc.instance, *r.witness);
}

inline void check_envy_cmd(const std::string& path, Report& report) {
  const auto doc = document_with_allocation(path, report);
  const auto r = is_envy_free(doc.instance, *doc.allocation);
  report.payload["utilities"] = utilities_json(utility_vector(doc.instance, *doc.allocation).values);
  if (r.envy_free()) {
    report.verdict = ReportVerdict::Yes;
    report.witness = allocation_to_json(doc.instance, *doc.allocation);
    return;
  }
  report.verdict = ReportVerdict::No;
  report.witness = {{"envier", doc.instance.agents()[r.envies->envier]},
                    {"envied", doc.instance.agents()[r.envies->envied]}};
}

inline void find_eef_cmd(const std::string& path, std::uint64_t budget, Report& report) {
  const auto doc = parse_instance(read_input(path, report).text);
  const auto r = brute_force_eef(doc.instance, SearchBudget(budget));
  report.verdict = report_verdict(r.verdict);
  report.nodes = r.nodes;
  report.payload["budget"] = budget;
  if (r.witness) report.witness = allocation_to_json(doc.instance, *r.witness);
}

inline void reduce_po_cmd(const std::string& path, const std::optional<std::string>& out,
                          Report& report) {
  const auto red = reduce_3cnf_to_po(parse_dimacs(read_input(path, report).text));
  const auto doc = document_to_json({red.instance, red.baseline, red.map});
  report.payload["agents"] = red.instance.agent_count();
  report.payload["resources"] = red.instance.resource_count();
  if (out) {
    write_output(*out, doc.dump(2) + "\n", report);
  } else {
    report.payload["document"] = doc;
  }
  report.verdict = ReportVerdict::Success;
}

inline nlohmann::json clauses_json(const std::vector<Clause>& clauses) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : clauses) {
    nlohmann::json lits = nlohmann::json::array();
    for (const auto& l : c) lits.push_back(l.dimacs());
    out.push_back(std::move(lits));
  }
  return out;
}

inline void reduce_eef_cmd(const std::string& path, const std::optional<std::string>& out,
                           Report& report) {
  const auto aug = augment_both_polarities(parse_ae_dimacs(read_input(path, report).text));
  const auto red = reduce_ae3cnf_to_eef(aug.formula);
  const auto doc = document_to_json({red.instance, std::nullopt, red.map});
  report.payload["added_clauses"] = clauses_json(aug.added);
  report.payload["agents"] = red.instance.agent_count();
  report.payload["resources"] = red.instance.resource_count();
  report.payload["big_m"] = detail::rational_to_json(red.big_m);
  if (out) {
    write_output(*out, doc.dump(2) + "\n", report);
  } else {
    report.payload["document"] = doc;
  }
  report.verdict = ReportVerdict::Success;
}

inline void verify_po_cmd(const std::string& path, std::uint64_t budget, Report& report) {
  const auto formula = parse_dimacs(read_input(path, report).text);
  const auto red = reduce_3cnf_to_po(formula);
  const auto sat = sat_on_partial(formula, PartialAssignment::empty(formula.num_vars));
  const auto dom = find_dominating_allocation(red.instance, red.baseline, SearchBudget(budget));
  report.nodes = dom.nodes;
  auto& p = report.payload;
  p["reduction"] = "po";
  p["property"] = "satisfiable ⇔ dominated";
  p["agents"] = red.instance.agent_count();
  p["resources"] = red.instance.resource_count();
  p["satisfiable"] = sat.yes();
  p["dominated"] = to_string(dom.verdict);
  p["budget"] = budget;
  if (dom.unknown()) {
    p["agreement"] = nullptr;
    report.verdict = ReportVerdict::Unknown;
    return;
  }
  bool agree = sat.yes() == dom.yes();
  if (sat.yes()) {
    const auto improved = construct_improvement_po(red, *sat.witness);
    const bool improves = dominates(red.instance, improved, red.baseline);
    p["constructed_improvement_dominates"] = improves;
    agree = agree && improves;
    report.witness = {{"assignment", assignment_json(*sat.witness)},
                      {"constructed_improvement", allocation_to_json(red.instance, improved)}};
    if (dom.witness) {
      report.witness["dominating_allocation"] = allocation_to_json(red.instance, *dom.witness);
    }
  } else {
    report.witness = {{"pareto_optimal_baseline", allocation_to_json(red.instance, red.baseline)}};
  }
  p["agreement"] = agree;
  report.verdict = agree ? ReportVerdict::Yes : ReportVerdict::No;
}

inline void verify_eef_cmd(const std::string& path, std::uint64_t budget, bool all_flags,
                           Report& report) {
  const auto aug = augment_both_polarities(parse_ae_dimacs(read_input(path, report).text));
  const auto red = reduce_ae3cnf_to_eef(aug.formula);
  const bool value = ae3cnf_eval(aug.formula);
  auto& p = report.payload;
  p["reduction"] = "eef";
  p["property"] = "formula true ⇔ no EEF allocation";
  p["added_clauses"] = clauses_json(aug.added);
  p["agents"] = red.instance.agent_count();
  p["resources"] = red.instance.resource_count();
  p["formula_true"] = value;
  p["all_flags"] = all_flags;
  p["budget"] = budget;

  // Per X_forall-assignment: satisfiable-on-s must coincide with the
  // default X_forall-allocation being dominated.
  bool agree = true, undecided = false;
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json extensions = nlohmann::json::array();
  const std::uint64_t total = std::uint64_t{1} << red.formula.forall_vars().size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto s = x_forall_assignment(red.formula, mask);
    const auto base = build_x_forall_allocation(red, s, XForallChoices::defaults(red));
    const auto sat = sat_on_partial(red.formula.matrix(), s);
    nlohmann::json row = {{"assignment", partial_json(s)},
                          {"satisfiable_on", sat.yes()},
                          {"envy_free", is_envy_free(red.instance, base).envy_free()}};
    if (!row["envy_free"].get<bool>()) agree = false;
    if (sat.yes()) {
      const auto improved = construct_improvement_eef(red, base, s, *sat.witness);
      const bool improves = dominates(red.instance, improved, base);
      row["extension"] = assignment_json(*sat.witness);
      extensions.push_back({{"assignment", partial_json(s)}, {"extension", row["extension"]}});
      row["constructed_improvement_dominates"] = improves;
      agree = agree && improves;
    } else {
      const auto dom = find_dominating_allocation(red.instance, base, SearchBudget(budget));
      report.nodes += dom.nodes;
      row["dominated"] = to_string(dom.verdict);
      if (dom.unknown()) undecided = true;
      if (dom.yes()) agree = false;
    }
    rows.push_back(std::move(row));
  }
  p["assignments"] = std::move(rows);

  const auto family = find_eef_in_x_forall_family(red, SearchBudget(budget), all_flags);
  report.nodes += family.nodes;
  p["eef_in_family"] = to_string(family.verdict);
  if (family.witness) {
    report.witness = {{"assignment", partial_json(family.witness->assignment)},
                      {"allocation", allocation_to_json(red.instance, family.witness->allocation)}};
  } else if (value) {
    report.witness = {{"extensions", std::move(extensions)}};
  }
  if (family.unknown() || undecided) {
    p["agreement"] = nullptr;
    report.verdict = ReportVerdict::Unknown;
    return;
  }
  agree = agree && (value == family.no());
  p["agreement"] = agree;
  report.verdict = agree ? ReportVerdict::Yes : ReportVerdict::No;
}

}  // namespace cli

/// Runs the command line `args` (without the program name), printing the
/// report to `out` and diagnostics to `err`. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair division of indivisible resources: solvers, checkers and reductions",
               "fairdiv"};
  app.require_subcommand(1);

  std::string input, kind_arg;
  std::optional<std::string> k_arg, out_arg;
  std::optional<std::uint64_t> budget_arg;
  bool all_flags = false;

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", budget_arg, "Search node budget (default: $FAIRDIV_BUDGET or 1e7)")
        ->check(CLI::PositiveNumber);
  };

  auto* lex = app.add_subcommand("solve-leximin", "Leximin-optimal allocation (max-atomic)");
  lex->add_option("instance", input, "Instance document")->required();
  lex->add_option("--K", k_arg, "Comma-separated vector; decide whether the optimum beats it");

  auto* po = app.add_subcommand("check-pareto", "Is the document's allocation Pareto-optimal?");
  po->add_option("instance", input, "Instance document with allocation")->required();
  add_budget(po);

  auto* envy = app.add_subcommand("check-envy", "Is the document's allocation envy-free?");
  envy->add_option("instance", input, "Instance document with allocation")->required();

  auto* eef = app.add_subcommand("find-eef", "Search for an envy-free Pareto-optimal allocation");
  eef->add_option("instance", input, "Instance document (additive)")->required();
  add_budget(eef);

  auto* rpo = app.add_subcommand("reduce-po", "3CNF formula to a Pareto-optimality instance");
  rpo->add_option("cnf", input, "DIMACS CNF file")->required();
  rpo->add_option("--out", out_arg, "Write the instance document here");

  auto* reef = app.add_subcommand("reduce-eef", "forall-exists 3CNF to an EEF-existence instance");
  reef->add_option("cnf", input, "DIMACS file with 'a' and 'e' lines")->required();
  reef->add_option("--out", out_arg, "Write the instance document here");

  auto* ver = app.add_subcommand("verify-reduction", "Check a reduction end to end on a formula");
  ver->add_option("reduction", kind_arg, "po or eef")
      ->required()
      ->check(CLI::IsMember({"po", "eef"}));
  ver->add_option("formula", input, "DIMACS file")->required();
  add_budget(ver);
  ver->add_flag("--all-flags", all_flags, "eef: search over every X_forall choice vector");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  Report report;
  CLI::App* sub = app.get_subcommands().front();
  report.command = sub->get_name();
  if (sub == ver) report.command += " " + kind_arg;
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::uint64_t budget = budget_arg ? *budget_arg : cli::default_budget();
    if (sub == lex) {
      cli::solve_leximin_cmd(input, k_arg, report);
    } else if (sub == po) {
      cli::check_pareto_cmd(input, budget, report);
    } else if (sub == envy) {
      cli::check_envy_cmd(input, report);
    } else if (sub == eef) {
      cli::find_eef_cmd(input, budget, report);
    } else if (sub == rpo) {
      cli::reduce_po_cmd(input, out_arg, report);
    } else if (sub == reef) {
      cli::reduce_eef_cmd(input, out_arg, report);
    } else if (kind_arg == "po") {
      cli::verify_po_cmd(input, budget, report);
    } else {
      cli::verify_eef_cmd(input, budget, all_flags, report);
    }
  } catch (const FormatError& e) {
    report.verdict = ReportVerdict::Error;
    report.witness = nullptr;
    report.payload = {{"error", e.what()}, {"path", e.path()}};
    err << "fairdiv: " << e.what() << (e.path().empty() ? "" : " (at " + e.path() + ")") << "\n";
  } catch (const Error& e) {
    report.verdict = ReportVerdict::Error;
    report.witness = nullptr;
    report.payload = {{"error", e.what()}};
    err << "fairdiv: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    report.verdict = ReportVerdict::Error;
    report.witness = nullptr;
    report.payload = {{"error", e.what()}};
    err << "fairdiv: " << e.what() << "\n";
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                       .count();
  out << report.to_json().dump(2) << "\n";
  return exit_code_for(report);
}

}  // namespace fairdiv
