#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "constructions.hpp"
#include "folner.hpp"
#include "group.hpp"
#include "permutation.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "sets.hpp"
#include "structures.hpp"
#include "symbolic.hpp"

namespace amenable {

enum class SuiteMode { fast, full };

inline std::string to_string(SuiteMode m) { return m == SuiteMode::fast ? "fast" : "full"; }

inline SuiteMode parse_suite_mode(std::string_view s)
{
  if (s == "fast")
    return SuiteMode::fast;
  if (s == "full")
    return SuiteMode::full;
  throw InvalidConfig("suite must be fast or full, got '" + std::string(s) + "'");
}

using GreedyFn =
    std::function<std::vector<std::int64_t>(const std::vector<std::int64_t>&, const std::vector<std::int64_t>&)>;

struct SuiteOptions {
  SuiteMode mode{SuiteMode::fast};
  std::uint64_t seed{1};
  GreedyFn greedy; ///< replaces greedy_disjoint_cover in the greedy criterion when set
};

struct CriterionResult {
  int id{0};
  std::string name;
  bool passed{false};
  nlohmann::json detail;

  nlohmann::json to_json() const { return {{"id", id}, {"name", name}, {"passed", passed}, {"detail", detail}}; }
};

namespace criteria {

inline nlohmann::json rj(const Rational& r) { return to_json(r); }

inline CriterionResult straus_density(const SuiteOptions& o)
{
  std::int64_t hi = o.mode == SuiteMode::full ? 1'000'000 : 100'000;
  Rational eps(1, 10);
  auto params = straus_params(eps);
  auto count = count_in(straus_set(eps), integer_range(1, hi));
  Rational density(count, hi);
  bool ok = params.certified() && density >= Rational(9, 10);
  return {1, "straus-density", ok,
          {{"params", params.to_json()}, {"window", {1, hi}}, {"count", count}, {"density", rj(density)}}};
}

inline CriterionResult straus_shift_free(const SuiteOptions&)
{
  auto e = straus_set(Rational(1, 10));
  auto w = shifted_fs_search(e, 4, 64, 1024);
  bool ok = w.status == SearchStatus::not_found;
  auto detail = w.to_json(IntegerGroup{});
  if (w.found())
    detail["witness_reverified"] = verify_shifted_fs(e, w);
  return {2, "straus-shift-free", ok, detail};
}

inline CriterionResult greedy_cover(const SuiteOptions& o)
{
  auto rng = Rng::derived(o.seed, 3);
  IntegerGroup z;
  GreedyFn greedy = o.greedy ? o.greedy : GreedyFn([&z](const auto& s, const auto& f) {
    return greedy_disjoint_cover(z, s, f);
  });
  int failures = 0;
  nlohmann::json first_failure;
  std::int64_t chosen_total = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto f = rng.distinct(-5, 5, static_cast<std::size_t>(rng.range(1, 4)));
    auto s = rng.subset(0, 100, 1, 2);
    auto s_prime = greedy(s, f);
    chosen_total += static_cast<std::int64_t>(s_prime.size());
    auto check = check_greedy_cover(z, s, f, s_prime);
    if (!check.ok()) {
      if (failures == 0)
        first_failure = {{"trial", trial},           {"F", f},
                         {"subset", check.subset},   {"disjoint", check.disjoint},
                         {"covers", check.covers},   {"maximal", check.maximal}};
      ++failures;
    }
  }
  nlohmann::json detail{{"trials", 1000}, {"failures", failures}, {"chosen_total", chosen_total}};
  if (failures)
    detail["first_failure"] = first_failure;
  return {3, "greedy-disjoint-cover", failures == 0, detail};
}

inline CriterionResult alternating_example(const SuiteOptions&)
{
  AlternatingGroup a;
  auto ex = alt_group_example(9);
  bool in_coset = true, disjoint = true, full_density = true, invariant = true;
  std::unordered_set<Permutation> seen;
  nlohmann::json sizes = nlohmann::json::object();
  for (int n = 4; n <= 9; ++n) {
    auto set = ex.phi.at(n);
    sizes[std::to_string(n)] = set.size();
    for (const auto& s : set) {
      if (s.degree() > static_cast<Permutation::Point>(n) || s.sign() != 1 || s(1) != static_cast<Permutation::Point>(n))
        in_coset = false;
      if (!seen.insert(s).second)
        disjoint = false;
    }
  }
  auto density = density_along(ex.e, ex.phi, index_range(5, 9));
  for (const auto& row : density.rows)
    if (row.ratio != Rational(1))
      full_density = false;
  std::int64_t defect_checks = 0;
  for (int n = 4; n <= 7; ++n)
    for (const auto& g : a.up_to_degree(n - 1)) {
      ++defect_checks;
      if (left_defect(ex.phi, n, g) != Rational(0))
        invariant = false;
    }
  bool ok = in_coset && disjoint && full_density && invariant;
  return {4, "alternating-example", ok,
          {{"coset_shape", in_coset},
           {"pairwise_disjoint", disjoint},
           {"density_one_5_to_9", full_density},
           {"left_invariant_n_le_7", invariant},
           {"defect_checks", defect_checks},
           {"sizes", sizes}}};
}

inline CriterionResult fpd_obstruction(const SuiteOptions& o)
{
  auto ex = alt_group_example(9);
  bool obstruction = true;
  nlohmann::json checks = nlohmann::json::array();
  for (int n = 4; n <= 6; ++n) {
    auto r = fpd_obstruction_check(ex, n, 8);
    obstruction = obstruction && r.holds;
    checks.push_back({{"n", n}, {"window_level", 8}, {"holds", r.holds}, {"pairs", r.pairs_checked}});
  }
  AlternatingGroup a;
  int degree = o.mode == SuiteMode::full ? 9 : 8;
  FpSearchOptions<AlternatingGroup> opts{a.up_to_degree(degree), 10'000'000, EscapePolicy::fixed};
  auto search = fp_chain_search(a, ex.e, 3, ProductMode::fpd, opts);
  nlohmann::json s{{"window", "A_" + std::to_string(degree)},
                   {"escape", to_string(opts.escape)},
                   {"budget", opts.budget},
                   {"status", to_string(search.status)},
                   {"queries", search.queries},
                   {"candidate_checks", search.nodes}};
  if (search.status == SearchStatus::found) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : search.chain.generators)
      gens.push_back(a.format(g));
    s["chain"] = gens;
    s["chain_verified"] = search.verified;
  }
  bool ok = obstruction && search.status == SearchStatus::not_found;
  return {5, "fpd-obstruction", ok, {{"obstruction", checks}, {"search", s}}};
}

inline CriterionResult fs_multiples(const SuiteOptions& o)
{
  auto rng = Rng::derived(o.seed, 6);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto t = rng.range(1, 20);
    std::vector<std::int64_t> xs;
    for (std::int64_t i = 0; i < t; ++i)
      xs.push_back(rng.range(-1'000'000, 1'000'000));
    auto w = fs_meets_multiples(xs, t);
    if (!w.found() || !w.verified || !verify_fs_meets_multiples(w, xs, t))
      ++failures;
  }
  return {6, "fs-meets-multiples", failures == 0, {{"trials", 1000}, {"failures", failures}}};
}

inline CriterionResult slicing_round_trip(const SuiteOptions& o)
{
  auto rng = Rng::derived(o.seed, 7);
  int random_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto support = rng.distinct(-100, 100, static_cast<std::size_t>(rng.range(1, 50)));
    std::vector<std::int64_t> raw;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      raw.push_back(rng.range(1, 12));
      total += raw.back();
    }
    std::map<std::int64_t, Rational> table;
    for (std::size_t i = 0; i < support.size(); ++i)
      table[support[i]] = Rational(raw[i], total);
    ReiterWeights<IntegerGroup> w(std::move(table));
    if (!w.valid() || !unslice_check(w))
      ++random_failures;
  }
  int reiter_failures = 0;
  auto phi = interval_sequence();
  for (std::int64_t n = 1; n <= 100; ++n) {
    auto w = two_sided_reiter(phi, n);
    if (!w.valid() || !unslice_check(w))
      ++reiter_failures;
  }
  bool ok = random_failures == 0 && reiter_failures == 0;
  return {7, "slicing-round-trip", ok,
          {{"random_tables", 100},
           {"random_failures", random_failures},
           {"two_sided_reiter_N", {1, 100}},
           {"reiter_failures", reiter_failures}}};
}

inline CriterionResult non_pws(const SuiteOptions&)
{
  IntegerGroup z;
  const std::int64_t hi = 100'000;
  auto window = integer_range(1, hi);
  auto phi = interval_sequence(1).with_last_index(hi);
  Rational eps(1, 4);
  auto c = non_pws_large_set(z, phi, eps, 12, window, index_range(1, hi));
  bool density_ok = c.density.lower_estimate >= Rational(74, 100) - c.boundary;

  auto k_prime = integer_range(-8, 8);
  bool pws_ok = true, core_ok = true;
  nlohmann::json per_k = nlohmann::json::array();
  for (std::int64_t k = 0; k <= 5; ++k) {
    auto kk = integer_range(-k, k);
    auto pws = is_pws_window(z, c.q, kk, k_prime, window);
    auto core = c.syndetic_core(z, kk);
    bool inclusion = false;
    std::size_t core_size = 0;
    if (core) {
      auto kq = left_product(z, kk, c.q);
      inclusion = std::none_of(core->begin(), core->end(), [&](std::int64_t x) { return kq(x); });
      core_size = core->size();
    }
    pws_ok = pws_ok && !pws.found();
    core_ok = core_ok && inclusion;
    nlohmann::json row{{"k", k}, {"pws_status", to_string(pws.status)}, {"core_size", core_size},
                       {"core_in_complement", inclusion}};
    if (pws.translate)
      row["thick_translate"] = *pws.translate;
    per_k.push_back(row);
  }
  nlohmann::json cuts = c.trim.cut_index;
  bool ok = density_ok && pws_ok && core_ok;
  return {8, "non-pws-construction", ok,
          {{"epsilon", rj(eps)},
           {"depth", 12},
           {"translate_counts", c.sizes},
           {"cut_index", cuts},
           {"lower_estimate", rj(c.density.lower_estimate)},
           {"boundary", rj(c.boundary)},
           {"density_ok", density_ok},
           {"K_prime", {-8, 8}},
           {"per_k", per_k}}};
}

inline CriterionResult duality(const SuiteOptions& o)
{
  auto rng = Rng::derived(o.seed, 9);
  IntegerGroup z;
  auto w = integer_range(0, 59);
  int premise = 0, violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto k = rng.distinct(-3, 3, static_cast<std::size_t>(rng.range(1, 4)));
    if (std::find(k.begin(), k.end(), 0) == k.end())
      k.push_back(0);
    auto k_inv = inverse_set(z, k);
    auto s = finite_set(z, rng.subset(-10, 70, 1, 2), "S");
    auto t_members = rng.subset(-10, 70, 1, 3);
    if (rng.chance(1, 2)) {
      auto g = rng.range(5, 54);
      for (auto x : k_inv)
        t_members.push_back(x + g);
    }
    auto t = finite_set(z, t_members, "T");
    std::vector<std::int64_t> core;
    for (auto g : w)
      if (std::all_of(k_inv.begin(), k_inv.end(), [&](std::int64_t x) { return x + g >= 0 && x + g <= 59; }))
        core.push_back(g);
    if (!is_syndetic_window(z, s, k, w) || !is_thick_window(z, t, k_inv, core).found())
      continue;
    ++premise;
    if (count_in(set_intersection(s, t), w) == 0)
      ++violations;
  }
  return {9, "syndetic-thick-duality", violations == 0 && premise > 0,
          {{"trials", 500}, {"premise_held", premise}, {"violations", violations}}};
}

inline CriterionResult symbolic_checks(const SuiteOptions& o)
{
  IntegerGroup z;
  std::int64_t n_max = o.mode == SuiteMode::full ? 10'000 : 1'000;
  auto evens = residue_class(2, 0);
  FolnerSequence<IntegerGroup> psi(z, "[0,2N)", Handedness::two_sided, 1, [](std::int64_t n) {
    return integer_range(0, 2 * n - 1);
  });
  Pattern<IntegerGroup> one{{0}, {1}};
  bool half = true;
  for (std::int64_t n = 1; n <= n_max && half; ++n)
    half = empirical_measure(z, evens, psi, n, one).frequency == Rational(1, 2);

  auto rng = Rng::derived(o.seed, 10);
  auto random_q = finite_set(z, rng.subset(-50, 1050, 1, 3), "random");
  auto interval = interval_sequence();
  bool normalized = true;
  for (const auto& q : {random_q, straus_set(Rational(1, 10))}) {
    Rational sum(0);
    for (const auto& p : all_patterns<IntegerGroup>({0, 1, 2}))
      sum += empirical_measure(z, q, interval, 1000, p).frequency;
    normalized = normalized && sum == Rational(1);
  }

  int unique_failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto q = finite_set(z, rng.subset(2, 60, 1, 3), "Q");
    if (!unique_pattern_check(doubling_example(q), integer_range(-5, 130)))
      ++unique_failures;
  }
  bool ok = half && normalized && unique_failures == 0;
  return {10, "symbolic", ok,
          {{"half_for_all_N_le", n_max},
           {"half", half},
           {"normalized_3_cells", normalized},
           {"unique_pattern_trials", 50},
           {"unique_pattern_failures", unique_failures}}};
}

} // namespace criteria

using CriterionFn = CriterionResult (*)(const SuiteOptions&);

inline const std::vector<CriterionFn>& criterion_table()
{
  static const std::vector<CriterionFn> table{
      criteria::straus_density,      criteria::straus_shift_free, criteria::greedy_cover,
      criteria::alternating_example, criteria::fpd_obstruction,   criteria::fs_multiples,
      criteria::slicing_round_trip,  criteria::non_pws,           criteria::duality,
      criteria::symbolic_checks};
  return table;
}

/// Report for criteria 1..10 only; the determinism check compares two of these.
inline nlohmann::json core_report(const SuiteOptions& o, const std::function<void(const CriterionResult&)>& on_result = {})
{
  nlohmann::json list = nlohmann::json::array();
  for (auto fn : criterion_table()) {
    auto r = fn(o);
    if (on_result)
      on_result(r);
    list.push_back(r.to_json());
  }
  return list;
}

struct SuiteReport {
  std::vector<CriterionResult> results;
  nlohmann::json json;

  bool passed() const
  {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  }

  std::vector<std::string> failing() const
  {
    std::vector<std::string> out;
    for (const auto& r : results)
      if (!r.passed)
        out.push_back(std::to_string(r.id) + ":" + r.name);
    return out;
  }
};

/// Runs all criteria. The report holds no timings, so equal options give
/// byte-identical dumps. `on_result` sees each result as it completes.
inline SuiteReport run_suite(const SuiteOptions& o, const std::function<void(const CriterionResult&)>& on_result = {})
{
  SuiteReport report;
  auto collect = [&](const CriterionResult& r) {
    report.results.push_back(r);
    if (on_result)
      on_result(r);
  };
  auto first = core_report(o, collect);

  SuiteOptions fast = o;
  fast.mode = SuiteMode::fast;
  auto a = o.mode == SuiteMode::fast ? first.dump() : core_report(fast).dump();
  auto b = core_report(fast).dump();
  CriterionResult det{11, "determinism", a == b, {{"mode", "fast"}, {"seed", o.seed}, {"bytes", a.size()}}};
  collect(det);

  nlohmann::json list = first;
  list.push_back(det.to_json());
  report.json = {{"suite", to_string(o.mode)},
                 {"seed", o.seed},
                 {"criteria", list},
                 {"passed", report.passed()},
                 {"failing", report.failing()}};
  return report;
}

} // namespace amenable
