// amenable: construct sets, measure densities, run detectors and the
// acceptance suite.
//
// Exit codes: 0 ok, 1 suite criterion failed, 2 invalid config,
// 3 budget exhausted, 4 certificate failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "amenable.hpp"

namespace {

using namespace amenable;
using nlohmann::json;

enum Exit { ok = 0, criterion_failed = 1, invalid = 2, budget = 3, certificate = 4 };

struct Globals {
  std::string out;
  std::uint64_t seed{1};
  unsigned threads{1};
  std::int64_t budget{10'000'000};
};

void emit(const Globals& g, const std::string& text)
{
  if (g.out.empty())
    std::cout << text;
  else
    write_file_atomically(g.out, text);
}

void emit_json(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

// ---------------------------------------------------------------------------
// Argument parsing helpers

/// "eps=0.1,depth=8" -> map.
std::map<std::string, std::string> parse_params(const std::string& text)
{
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("expected key=value in '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::int64_t to_int(const std::string& s, const std::string& what)
{
  try {
    std::size_t pos = 0;
    auto v = std::stoll(s, &pos);
    if (pos != s.size())
      throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidConfig(what + ": '" + s + "' is not an integer");
  }
}

std::string need(const std::map<std::string, std::string>& p, const std::string& key, const std::string& set)
{
  auto it = p.find(key);
  if (it == p.end())
    throw InvalidConfig("set '" + set + "' needs parameter " + key);
  return it->second;
}

/// "lo:hi".
std::pair<std::int64_t, std::int64_t> parse_interval(const std::string& text, const std::string& what)
{
  auto colon = text.find(':', 1);
  if (colon == std::string::npos)
    throw InvalidConfig(what + " must be lo:hi, got '" + text + "'");
  auto lo = to_int(text.substr(0, colon), what);
  auto hi = to_int(text.substr(colon + 1), what);
  if (hi < lo)
    throw InvalidConfig(what + " is empty: " + text);
  return {lo, hi};
}

/// "lo:hi", "lo:hi:step" or "lo:hi:xK".
std::vector<std::int64_t> parse_index_range(const std::string& text)
{
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':'))
    parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3)
    throw InvalidConfig("range must be lo:hi[:step|:xK], got '" + text + "'");
  auto lo = to_int(parts[0], "range");
  auto hi = to_int(parts[1], "range");
  if (hi < lo || lo < 1)
    throw InvalidConfig("range needs 1 <= lo <= hi, got '" + text + "'");
  if (parts.size() == 2)
    return index_range(lo, hi);
  if (!parts[2].empty() && parts[2][0] == 'x')
    return geometric_range(lo, hi, to_int(parts[2].substr(1), "range factor"));
  return index_range(lo, hi, to_int(parts[2], "range step"));
}

std::vector<std::string> split_top_level(const std::string& text)
{
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty())
    out.push_back(cur);
  return out;
}

/// "lo:hi" (integers only), "level:n" for exhaustion(n), or a comma list.
template <CountableGroup G>
std::vector<ElementOf<G>> parse_elements(const G& group, const std::string& text, const std::string& what)
{
  if (text.rfind("level:", 0) == 0)
    return group.exhaustion(static_cast<int>(to_int(text.substr(6), what)));
  if constexpr (std::is_same_v<G, IntegerGroup>) {
    if (text.find(':', 1) != std::string::npos) {
      auto [lo, hi] = parse_interval(text, what);
      return integer_range(lo, hi);
    }
  }
  std::vector<ElementOf<G>> out;
  for (const auto& item : split_top_level(text))
    out.push_back(group.parse(item));
  if (out.empty())
    throw InvalidConfig(what + " is empty");
  return out;
}

json load_json(const std::string& path)
{
  std::ifstream is(path);
  if (!is)
    throw InvalidConfig("cannot read " + path);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw InvalidConfig(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Sets and sequences by name

SubsetSpec<IntegerGroup> integer_set(const std::string& spec)
{
  IntegerGroup z;
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    auto j = load_json(spec);
    return integer_window_set(j.contains("window") ? j["window"] : j, spec);
  }
  auto colon = spec.find(':');
  auto id = spec.substr(0, colon);
  auto p = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1));
  if (id == "z" || id == "all")
    return whole_group(z);
  if (id == "empty")
    return empty_set(z);
  if (id == "straus")
    return straus_set(parse_rational(need(p, "eps", id)));
  if (id == "residue")
    return residue_class(to_int(need(p, "m", id), "m"), p.count("r") ? to_int(p["r"], "r") : 0);
  if (id == "squares")
    return squares();
  if (id == "blocks")
    return periodic_blocks(to_int(need(p, "period", id), "period"), to_int(need(p, "lo", id), "lo"),
                           to_int(need(p, "hi", id), "hi"));
  if (id == "finite") {
    std::vector<std::int64_t> xs;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ','))
      xs.push_back(to_int(item, "finite set member"));
    return finite_set(z, xs);
  }
  if (id == "nonpws") {
    auto eps = parse_rational(need(p, "eps", id));
    auto depth = static_cast<std::size_t>(to_int(need(p, "depth", id), "depth"));
    auto hi = to_int(need(p, "window", id), "window");
    auto phi = interval_sequence(1).with_last_index(hi);
    return non_pws_large_set(z, phi, eps, depth, integer_range(1, hi), index_range(1, hi)).q;
  }
  throw InvalidConfig("unknown set '" + spec + "'");
}

template <CountableGroup G>
SubsetSpec<G> group_set(const G& group, const std::string& spec)
{
  if constexpr (std::is_same_v<G, IntegerGroup>) {
    return integer_set(spec);
  } else {
    if (spec == "all")
      return whole_group(group);
    if (spec == "empty")
      return empty_set(group);
    if constexpr (std::is_same_v<G, AlternatingGroup>) {
      if (spec == "alt-e")
        return alt_group_example(5).e;
    }
    if constexpr (std::is_same_v<G, SymmetricGroup>) {
      if (spec == "even")
        return SubsetSpec<G>("even", [](const Permutation& p) { return p.sign() == 1; });
    }
    if (spec.rfind("finite:", 0) == 0)
      return finite_set(group, parse_elements(group, spec.substr(7), "finite set"));
    throw InvalidConfig("unknown set '" + spec + "' for group " + group.name());
  }
}

template <CountableGroup G>
FolnerSequence<G> group_sequence(const G& group, const std::string& spec)
{
  auto colon = spec.find(':');
  auto id = spec.substr(0, colon);
  auto p = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1));
  if constexpr (std::is_same_v<G, IntegerGroup>) {
    if (id == "interval")
      return interval_sequence(p.count("offset") ? to_int(p["offset"], "offset") : 0);
    if (id == "symmetric")
      return symmetric_interval_sequence();
  } else if constexpr (std::is_same_v<G, LatticeGroup>) {
    if (id == "box")
      return box_sequence(group);
  } else if constexpr (std::is_same_v<G, AlternatingGroup>) {
    if (id == "alt-coset")
      return alternating_coset_sequence();
  }
  if (id == "inverse" && p.count("of"))
    return invert(group_sequence(group, p["of"]));
  throw InvalidConfig("unknown Følner sequence '" + spec + "' for group " + group.name());
}

/// Calls f(group) for "z", "zD" (D >= 1), "alt" or "sym".
template <class F>
int with_group(const std::string& id, F&& f)
{
  if (id == "z")
    return f(IntegerGroup{});
  if (id == "alt")
    return f(AlternatingGroup{});
  if (id == "sym")
    return f(SymmetricGroup{});
  if (id.size() > 1 && id[0] == 'z') {
    auto d = to_int(id.substr(1), "lattice dimension");
    if (d < 1 || d > 8)
      throw InvalidConfig("lattice dimension must be 1..8");
    return f(LatticeGroup(static_cast<std::size_t>(d)));
  }
  throw InvalidConfig("unknown group '" + id + "' (z, zD, alt, sym)");
}

template <CountableGroup G>
std::vector<ElementOf<G>> group_window(const G& group, const std::string& text)
{
  if constexpr (std::is_same_v<G, IntegerGroup>) {
    if (text.find(':', 1) != std::string::npos) {
      auto [lo, hi] = parse_interval(text, "window");
      return integer_range(lo, hi);
    }
  }
  return group.exhaustion(static_cast<int>(to_int(text, "window level")));
}

// ---------------------------------------------------------------------------
// Subcommands

struct ConstructArgs {
  std::string eps = "0.1";
  std::string emit_window = "1:1000";
  std::string group = "z";
  std::int64_t depth = 8;
  std::int64_t window = 100000;
};

int construct_straus(const Globals& g, const ConstructArgs& a)
{
  auto eps = parse_rational(a.eps);
  auto params = straus_params(eps);
  auto set = straus_set(eps);
  auto [lo, hi] = parse_interval(a.emit_window, "emit-window");
  auto win = integer_window_json(set, lo, hi);
  Rational density(win["count"].get<std::int64_t>(), hi - lo + 1);
  bool certified = params.certified();
  emit_json(g, {{"construction", "straus"},
                {"params", params.to_json()},
                {"window", win},
                {"certificates",
                 {{"removed_mass_le_eps", certified}, {"window_density", to_json(density)}}}});
  return certified ? ok : certificate;
}

int construct_nonpws(const Globals& g, const ConstructArgs& a)
{
  if (a.group != "z")
    throw InvalidConfig("construct nonpws supports --group z");
  if (a.window < 1 || a.depth < 1)
    throw InvalidConfig("construct nonpws needs positive --window and --depth");
  IntegerGroup z;
  auto eps = parse_rational(a.eps);
  auto phi = interval_sequence(1).with_last_index(a.window);
  auto c = non_pws_large_set(z, phi, eps, static_cast<std::size_t>(a.depth), integer_range(1, a.window),
                             index_range(1, a.window));
  json cuts = c.trim.cut_index;
  json translates = c.translates;
  emit_json(g, {{"construction", "nonpws"},
                {"params", {{"group", "z"}, {"epsilon", to_json(eps)}, {"depth", a.depth}, {"window", a.window}}},
                {"translates", translates},
                {"translate_counts", c.sizes},
                {"window", integer_window_json(c.q, 1, a.window)},
                {"certificates",
                 {{"lower_estimate", to_json(c.density.lower_estimate)},
                  {"boundary", to_json(c.boundary)},
                  {"density_guarantee", c.density_guarantee},
                  {"trim_certified", c.trim.certified},
                  {"trim_union_max_ratio", to_json(c.trim.union_max_ratio)},
                  {"trim_bound", to_json(c.trim.bound)},
                  {"cut_index", cuts}}}});
  return c.density_guarantee && c.trim.certified ? ok : certificate;
}

struct DensityArgs {
  std::string group = "z";
  std::string set;
  std::string phi = "interval";
  std::string range;
  std::string format = "csv";
};

int run_density(const Globals& g, const DensityArgs& a)
{
  return with_group(a.group, [&](const auto& group) {
    auto set = group_set(group, a.set);
    auto phi = group_sequence(group, a.phi);
    auto report = density_along(set, phi, parse_index_range(a.range));
    if (a.format == "json") {
      emit_json(g, report.to_json());
    } else {
      std::ostringstream os;
      write_density_csv(os, report);
      emit(g, os.str());
    }
    return int{ok};
  });
}

struct DetectArgs {
  std::string group = "z";
  std::string set;
  std::size_t m = 2;
  std::int64_t gen_bound = 4;
  std::int64_t shift_bound = 4;
  std::string k;
  std::string k_prime;
  std::string window;
  std::string mode = "FPI";
  std::string escape = "fixed";
};

int status_code(SearchStatus s) { return s == SearchStatus::budget_exhausted ? budget : ok; }

int detect_fs(const Globals& g, const DetectArgs& a)
{
  auto set = integer_set(a.set);
  auto w = shifted_fs_search(set, a.m, a.gen_bound, a.shift_bound, g.budget);
  if (w.found() && !(w.verified && verify_shifted_fs(set, w))) {
    emit_json(g, w.to_json(IntegerGroup{}));
    return certificate;
  }
  emit_json(g, w.to_json(IntegerGroup{}));
  return status_code(w.status);
}

int detect_window(const Globals& g, const DetectArgs& a, const std::string& what)
{
  return with_group(a.group, [&](const auto& group) {
    using G = std::decay_t<decltype(group)>;
    auto set = group_set(group, a.set);
    auto k = parse_elements(group, a.k, "K");
    auto w = group_window(group, a.window);
    json out;
    bool verified = true;
    if (what == "syndetic") {
      bool s = is_syndetic_window(group, set, k, w);
      out = {{"kind", "syndetic"}, {"syndetic", s}, {"bounds", {{"K_size", k.size()}, {"W_size", w.size()}}}};
    } else if (what == "thick") {
      auto r = is_thick_window(group, set, k, w);
      verified = !r.found() || verify_thick(group, set, r);
      out = r.to_json(group);
    } else {
      auto kp = parse_elements(group, a.k_prime, "K'");
      auto r = is_pws_window<G>(group, set, k, kp, w);
      verified = !r.found() || verify_pws(group, set, k, r);
      out = r.to_json(group);
    }
    emit_json(g, out);
    return verified ? int{ok} : int{certificate};
  });
}

int detect_fp_chain(const Globals& g, const DetectArgs& a)
{
  return with_group(a.group, [&](const auto& group) {
    using G = std::decay_t<decltype(group)>;
    auto set = group_set(group, a.set);
    FpSearchOptions<G> opts{group_window(group, a.window), g.budget, parse_escape_policy(a.escape)};
    auto mode = parse_product_mode(a.mode);
    auto r = fp_chain_search(group, set, a.m, mode, opts);
    json gens = json::array();
    for (const auto& x : r.chain.generators)
      gens.push_back(group.format(x));
    emit_json(g, {{"kind", to_string(mode)},
                  {"status", to_string(r.status)},
                  {"verified", r.verified},
                  {"generators", gens},
                  {"queries", r.queries},
                  {"candidate_checks", r.nodes},
                  {"bounds",
                   {{"m", a.m}, {"W_size", opts.window.size()}, {"budget", g.budget}, {"escape", a.escape}}}});
    if (r.status == SearchStatus::found && !r.verified)
      return int{certificate};
    return status_code(r.status);
  });
}

struct FolnerArgs {
  std::string group = "z";
  std::string phi = "interval";
  std::int64_t n = 10;
  std::string g;
};

int folner_defect(const Globals& gl, const FolnerArgs& a)
{
  return with_group(a.group, [&](const auto& group) {
    auto phi = group_sequence(group, a.phi);
    auto elements = parse_elements(group, a.g, "g");
    std::ostringstream os;
    os << "N,g,left_defect,right_defect\n";
    for (auto n = phi.first_index(); n <= a.n; ++n)
      for (const auto& x : elements)
      {
        auto name = group.format(x);
        if (name.find(',') != std::string::npos)
          name = '"' + name + '"';
        os << n << ',' << name << ',' << to_string(left_defect(phi, n, x)) << ','
           << to_string(right_defect(phi, n, x)) << '\n';
      }
    emit(gl, os.str());
    return int{ok};
  });
}

struct SymbolicArgs {
  std::string group = "z";
  std::string set;
  std::string psi = "interval";
  std::int64_t n = 1000;
  std::string cylinder;
};

int symbolic_measure(const Globals& gl, const SymbolicArgs& a)
{
  return with_group(a.group, [&](const auto& group) {
    auto set = group_set(group, a.set);
    auto psi = group_sequence(group, a.psi);
    auto m = empirical_measure(group, set, psi, a.n, parse_pattern(group, a.cylinder));
    emit_json(gl, m.to_json(group));
    return int{ok};
  });
}

int run_suite_command(const Globals& g, const std::string& name)
{
  SuiteOptions o;
  o.mode = parse_suite_mode(name);
  o.seed = g.seed;
  auto report = run_suite(o, [](const CriterionResult& r) {
    std::cerr << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name << '\n';
  });
  emit_json(g, report.json);
  if (!report.passed()) {
    std::cerr << "failing criteria:";
    for (const auto& f : report.failing())
      std::cerr << ' ' << f;
    std::cerr << '\n';
    return criterion_failed;
  }
  return ok;
}

/// {"op": "density", "group": "z", ...}: every other key becomes --key value.
std::vector<std::string> config_to_args(const json& config)
{
  if (!config.is_object() || !config.contains("op") || !config["op"].is_string())
    throw InvalidConfig("config must be an object with a string \"op\"");
  static const std::map<std::string, std::vector<std::string>> ops{
      {"construct-straus", {"construct", "straus"}}, {"construct-nonpws", {"construct", "nonpws"}},
      {"density", {"density"}},                      {"detect-fs", {"detect", "fs"}},
      {"detect-syndetic", {"detect", "syndetic"}},   {"detect-thick", {"detect", "thick"}},
      {"detect-pws", {"detect", "pws"}},             {"detect-fp-chain", {"detect", "fp-chain"}},
      {"folner-defect", {"folner", "defect"}},       {"symbolic-measure", {"symbolic", "measure"}}};
  auto op = config["op"].get<std::string>();
  auto it = ops.find(op);
  if (it == ops.end())
    throw InvalidConfig("unknown op '" + op + "'");
  auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto global = [](const std::string& key) {
    return key == "seed" || key == "threads" || key == "budget" || key == "out";
  };
  std::vector<std::string> args;
  for (const auto& [key, value] : config.items())
    if (global(key))
      args.insert(args.end(), {"--" + key, text(value)});
  args.insert(args.end(), it->second.begin(), it->second.end());
  for (const auto& [key, value] : config.items())
    if (key != "op" && !global(key))
      args.insert(args.end(), {"--" + key, text(value)});
  return args;
}

int dispatch(std::vector<std::string> args)
{
  CLI::App app{"Følner densities, set constructions and combinatorial detectors"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "Write output here (atomically) instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized trials");
  app.add_option("--threads", g.threads, "Worker threads for window scans")->check(CLI::Range(1u, 256u));
  app.add_option("--budget", g.budget, "Query budget for searches")->check(CLI::PositiveNumber);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a set and emit it as JSON");
  construct->require_subcommand(1);
  auto* straus = construct->add_subcommand("straus", "Density > 1 - eps, no shifted finite sums set (Z)");
  straus->add_option("--eps", ca.eps, "epsilon, e.g. 0.1 or 1/10");
  straus->add_option("--emit-window", ca.emit_window, "lo:hi");
  auto* nonpws = construct->add_subcommand("nonpws", "Large set that is not piecewise syndetic");
  nonpws->add_option("--group", ca.group);
  nonpws->add_option("--eps", ca.eps);
  nonpws->add_option("--depth", ca.depth);
  nonpws->add_option("--window", ca.window, "window is [1, window]");

  DensityArgs da;
  auto* density = app.add_subcommand("density", "Exact |E ∩ Φ_N| / |Φ_N| along a Følner sequence");
  density->add_option("--group", da.group);
  density->add_option("--set", da.set)->required();
  density->add_option("--phi", da.phi);
  density->add_option("--range", da.range, "lo:hi, lo:hi:step or lo:hi:xK")->required();
  density->add_option("--format", da.format)->check(CLI::IsMember({"csv", "json"}));

  DetectArgs ta;
  auto* detect = app.add_subcommand("detect", "Bounded structure searches");
  detect->require_subcommand(1);
  auto* fs = detect->add_subcommand("fs", "Shifted finite sums FS(x) + t inside a set (Z)");
  fs->add_option("--set", ta.set)->required();
  fs->add_option("--m", ta.m)->required();
  fs->add_option("--gen-bound", ta.gen_bound);
  fs->add_option("--shift-bound", ta.shift_bound);
  std::map<std::string, CLI::App*> window_tests;
  for (const char* what : {"syndetic", "thick", "pws"}) {
    auto* sub = detect->add_subcommand(what, std::string("Window ") + what + " test");
    window_tests[what] = sub;
    sub->add_option("--group", ta.group);
    sub->add_option("--set", ta.set)->required();
    sub->add_option("--K", ta.k)->required();
    sub->add_option("--window", ta.window)->required();
    if (std::string(what) == "pws")
      sub->add_option("--Kprime", ta.k_prime)->required();
  }
  auto* fp = detect->add_subcommand("fp-chain", "Search for g_1..g_m with FPI/FPD/FP products in a set");
  fp->add_option("--group", ta.group);
  fp->add_option("--set", ta.set)->required();
  fp->add_option("--m", ta.m)->required();
  fp->add_option("--mode", ta.mode)->check(CLI::IsMember({"FPI", "FPD", "FP"}));
  fp->add_option("--window", ta.window, "lo:hi for Z, exhaustion level otherwise")->required();
  fp->add_option("--escape", ta.escape)->check(CLI::IsMember({"none", "fixed", "beyond-previous"}));

  FolnerArgs fa;
  auto* folner = app.add_subcommand("folner", "Følner sequence diagnostics");
  folner->require_subcommand(1);
  auto* defect = folner->add_subcommand("defect", "CSV of |Φ_N △ gΦ_N|/|Φ_N| and |Φ_N △ Φ_N g|/|Φ_N|");
  defect->add_option("--group", fa.group);
  defect->add_option("--phi", fa.phi);
  defect->add_option("--n", fa.n, "rows for N up to n");
  defect->add_option("--g", fa.g, "element or comma list")->required();

  SymbolicArgs sa;
  auto* symbolic = app.add_subcommand("symbolic", "Empirical measures of orbit patterns");
  symbolic->require_subcommand(1);
  auto* measure = symbolic->add_subcommand("measure", "Frequency of a cylinder along Ψ_N");
  measure->add_option("--group", sa.group);
  measure->add_option("--set", sa.set)->required();
  measure->add_option("--psi", sa.psi);
  measure->add_option("--n", sa.n);
  measure->add_option("--cylinder", sa.cylinder, "x:b,x:b,...")->required();

  std::string suite_name = "fast";
  auto* suite = app.add_subcommand("suite", "Run the acceptance criteria");
  suite->add_option("name", suite_name)->check(CLI::IsMember({"fast", "full"}));

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one operation described by a JSON config");
  run->add_option("--config", config_path)->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invalid;
  }

  set_scan_threads(g.threads);
  if (straus->parsed())
    return construct_straus(g, ca);
  if (nonpws->parsed())
    return construct_nonpws(g, ca);
  if (density->parsed())
    return run_density(g, da);
  if (fs->parsed())
    return detect_fs(g, ta);
  for (const auto& [what, sub] : window_tests)
    if (sub->parsed())
      return detect_window(g, ta, what);
  if (fp->parsed())
    return detect_fp_chain(g, ta);
  if (defect->parsed())
    return folner_defect(g, fa);
  if (measure->parsed())
    return symbolic_measure(g, sa);
  if (suite->parsed())
    return run_suite_command(g, suite_name);
  if (run->parsed())
    return dispatch(config_to_args(load_json(config_path)));
  return invalid;
}

} // namespace

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const InvalidConfig& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return invalid;
  } catch (const BackendMismatch& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return invalid;
  } catch (const DomainError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return invalid;
  } catch (const Unsupported& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return invalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return budget;
  } catch (const CalibrationError& e) {
    std::cerr << "certificate failure: " << e.what() << '\n';
    return certificate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return invalid;
  }
}
