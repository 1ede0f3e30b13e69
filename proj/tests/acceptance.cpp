// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fairdiv/fairdiv.hpp"
#include "support/generators.hpp"
#include "support/reduction_suite.hpp"
#include "support/reference.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Outcome leximin_vs_oracle() {
  Rng rng(20240601);
  const int count = 500;
  for (int k = 0; k < count; ++k) {
    const auto in = random_instance(rng, UtilityKind::MaxAtomic, uniform(rng, 1, 5),
                                    uniform(rng, 1, 5), 0, 9);
    const auto alloc = solve_leximin(in);
    for (std::size_t i = 0; i < in.agent_count(); ++i) {
      if (alloc.bundle(i).size() > 1) return {false, "agent holds two resources, instance " + std::to_string(k)};
    }
    const auto got = utility_vector(in, alloc).sorted();
    const auto want = brute_force_leximin(in).utilities.sorted();
    if (got != want) return {false, "sorted vectors differ on instance " + std::to_string(k)};
  }
  return {true, std::to_string(count) + " instances, n,m <= 5, demands in [0,9]"};
}

Outcome polynomial_scale() {
  Rng rng(7);
  const auto in = random_instance(rng, UtilityKind::MaxAtomic, 200, 200, 0, 999999);
  const auto t0 = Clock::now();
  const auto alloc = solve_leximin(in);
  const double solve_s = seconds_since(t0);
  const auto weights = generate_weights(in);
  if (auto v = weight_violation_sorted(in, weights)) return {false, "weight invariant: " + *v};
  std::size_t matched = 0;
  for (std::size_t i = 0; i < in.agent_count(); ++i) matched += alloc.bundle(i).size();
  if (matched != 200) return {false, "matching has " + std::to_string(matched) + " pairs"};
  char buf[128];
  std::snprintf(buf, sizeof buf, "200x200, demands in [0,999999], solved in %.2f s", solve_s);
  return {solve_s < 10.0, buf};
}

Outcome worked_example_table() {
  // Rows: resources; columns: agents in the order a_c1, a_c2, a_set(x1),
  // a_set(-x1), a_set(x2), a_set(-x2), a_set(x3), a_set(-x3), a_unassigned,
  // a_satisfied. "*" marks the holder of the resource.
  const char* table[12][10] = {
      {"", "", "1", "1", "", "", "", "", "1*", ""},
      {"", "", "", "", "1", "1", "", "", "1*", ""},
      {"", "", "", "", "", "", "", "2", "1*", ""},
      {"1*", "", "", "", "", "", "", "", "", "1"},
      {"", "1*", "", "", "", "", "", "", "", "1"},
      {"1", "", "1*", "", "", "", "", "", "", ""},
      {"1", "", "", "", "1*", "", "", "", "", ""},
      {"1", "", "", "", "", "", "", "1*", "", ""},
      {"", "1", "", "1*", "", "", "", "", "", ""},
      {"", "1", "", "", "", "1*", "", "", "", ""},
      {"", "1", "", "", "", "", "", "1*", "", ""},
      {"", "", "", "", "", "", "", "", "4", "2*"},
  };
  const CnfFormula f{3,
                     {{Literal::pos(0), Literal::pos(1), Literal::neg(2)},
                      {Literal::neg(0), Literal::neg(1), Literal::neg(2)}}};
  const auto red = reduce_3cnf_to_po(f);
  const auto& in = red.instance;
  if (in.agent_count() != 10 || in.resource_count() != 12) {
    return {false, "size " + std::to_string(in.agent_count()) + "x" +
                       std::to_string(in.resource_count())};
  }
  for (std::size_t r = 0; r < 12; ++r) {
    for (std::size_t a = 0; a < 10; ++a) {
      std::string cell = table[r][a];
      const bool held = !cell.empty() && cell.back() == '*';
      if (held) cell.pop_back();
      const Rational want = cell.empty() ? Rational(0) : parse_rational(cell);
      if (in.value(a, r) != want || (red.baseline.owner(r) == a) != held) {
        return {false, "cell " + in.resources()[r] + " / " + in.agents()[a]};
      }
    }
  }
  return {true, "10 agents x 12 resources, coefficients and allocation match cell for cell"};
}

Outcome po_reduction_theorem() {
  auto formulas = canonical_formulas(3);
  const std::size_t canonical = formulas.size();
  Rng rng(3141);
  for (int k = 0; k < 100; ++k) formulas.push_back(random_3cnf(rng, 4, 4));
  std::size_t sat_count = 0;
  std::uint64_t max_nodes = 0;
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    const auto& f = formulas[k];
    const auto red = reduce_3cnf_to_po(f);
    const auto sat = sat_on_partial(f, PartialAssignment::empty(f.num_vars));
    if (sat.yes() != truth_table_sat(f, PartialAssignment::empty(f.num_vars))) {
      return {false, "sat_on_partial disagrees with the truth table, formula " + std::to_string(k)};
    }
    const auto dom = find_dominating_allocation(red.instance, red.baseline, SearchBudget(10'000'000));
    max_nodes = std::max(max_nodes, dom.nodes);
    if (dom.unknown()) return {false, "search hit the budget, formula " + std::to_string(k)};
    if (sat.yes() != dom.yes()) return {false, "satisfiable != dominated, formula " + std::to_string(k)};
    if (dom.yes() && !dominates(red.instance, *dom.witness, red.baseline)) {
      return {false, "witness does not dominate, formula " + std::to_string(k)};
    }
    sat_count += sat.yes();
  }
  return {true, std::to_string(canonical) + " canonical + 100 random formulas (" +
                    std::to_string(sat_count) + " satisfiable), max " + std::to_string(max_nodes) +
                    " nodes"};
}

std::vector<AEFormula> suite_formulas() {
  std::vector<AEFormula> out;
  out.emplace_back(std::vector<std::size_t>{0}, std::vector<std::size_t>{1},
                   CnfFormula{2, {{Literal::pos(0), Literal::pos(1)},
                                  {Literal::neg(0), Literal::neg(1)}}});
  out.emplace_back(std::vector<std::size_t>{0}, std::vector<std::size_t>{1},
                   CnfFormula{2, {{Literal::pos(0), Literal::pos(1)},
                                  {Literal::pos(0), Literal::neg(1)}}});
  Rng rng(2718);
  while (out.size() < 60) out.push_back(random_ae(rng, 2, 2, 3));
  return out;
}

struct SuiteRun {
  Outcome outcome;
  std::vector<std::vector<int>> verdicts;
};

SuiteRun reduction_suite(unsigned long multiplier) {
  const auto formulas = suite_formulas();
  SuiteRun run;
  std::size_t true_count = 0, allocations = 0;
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    const auto r = run_reduction_suite(formulas[k], multiplier, 10'000'000);
    run.verdicts.push_back(r.verdicts);
    allocations += r.allocations_checked;
    true_count += r.formula_true;
    if (!r.failures.empty() && run.outcome.pass) {
      run.outcome = {false, "formula " + std::to_string(k) + ": " + r.failures.front()};
    }
  }
  if (run.outcome.pass) {
    run.outcome.detail = std::to_string(formulas.size()) + " formulas (" +
                         std::to_string(true_count) + " true), " + std::to_string(allocations) +
                         " X_forall-allocations";
  }
  return run;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d: %s -- %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  };

  report(1, "leximin solver matches exhaustive oracle", leximin_vs_oracle);
  report(2, "200x200 instance within 10 s, weight invariants hold", polynomial_scale);
  report(3, "3CNF reduction reproduces the worked example", worked_example_table);
  report(4, "satisfiable iff baseline dominated", po_reduction_theorem);

  SuiteRun base;
  report(5, "forall-exists reduction property suite", [&] {
    base = reduction_suite(1);
    return base.outcome;
  });

  report(6, "pruned and exhaustive dominance search agree", [] {
    Rng rng(99);
    std::size_t yes = 0;
    for (int k = 0; k < 200; ++k) {
      const std::size_t n = uniform(rng, 1, 3), m = uniform(rng, 1, 4);
      const auto in = random_instance(rng, UtilityKind::Additive, n, m, 0, 3);
      const auto baseline = random_allocation(rng, n, m);
      const auto p = find_dominating_allocation(in, baseline, SearchBudget(1'000'000),
                                                DominanceSearchMode::Pruned);
      const auto e = find_dominating_allocation(in, baseline, SearchBudget(1'000'000),
                                                DominanceSearchMode::Exhaustive);
      if (p.unknown() || e.unknown()) return Outcome{false, "budget hit, instance " + std::to_string(k)};
      if (p.verdict != e.verdict) return Outcome{false, "verdicts differ, instance " + std::to_string(k)};
      if (p.yes() && !dominates(in, *p.witness, baseline)) {
        return Outcome{false, "pruned witness does not dominate, instance " + std::to_string(k)};
      }
      yes += p.yes();
    }
    return Outcome{true, "200 instances, n <= 3, m <= 4 (" + std::to_string(yes) + " dominated)"};
  });

  report(7, "hand-checkable EEF cases", [] {
    const Instance shared = Instance::with_default_ids(UtilityKind::Additive, {{1}, {1}});
    const Instance own = Instance::with_default_ids(UtilityKind::Additive, {{1, 0}, {0, 1}});
    const auto a = brute_force_eef(shared, SearchBudget(1'000'000));
    const auto b = brute_force_eef(own, SearchBudget(1'000'000));
    if (!a.no()) return Outcome{false, std::string("shared item: ") + to_string(a.verdict)};
    if (!b.yes()) return Outcome{false, std::string("own items: ") + to_string(b.verdict)};
    const auto& w = *b.witness;
    if (!is_envy_free(own, w).envy_free() || !is_pareto_optimal(own, w, SearchBudget(1'000'000)).yes() ||
        w.owner(0) != 0u || w.owner(1) != 1u) {
      return Outcome{false, "own-items witness does not re-verify"};
    }
    return Outcome{true, "shared item: no; own items: yes, witness envy-free and Pareto-optimal"};
  });

  report(8, "verdicts unchanged with M x 10", [&] {
    const auto scaled = reduction_suite(10);
    if (!scaled.outcome.pass) return scaled.outcome;
    if (scaled.verdicts != base.verdicts) return Outcome{false, "verdict sequences differ"};
    return Outcome{true, "all reduction-suite verdicts identical"};
  });

  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
