#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "group.hpp"
#include "sets.hpp"

namespace amenable {

/// 1-based indices into a generator list, ascending.
using IndexSet = std::vector<std::size_t>;

enum class ProductMode { fpi, fpd, fp };

inline std::string to_string(ProductMode m)
{
  switch (m) {
  case ProductMode::fpi:
    return "FPI";
  case ProductMode::fpd:
    return "FPD";
  case ProductMode::fp:
    return "FP";
  }
  return "?";
}

inline ProductMode parse_product_mode(std::string_view s)
{
  if (s == "FPI" || s == "fpi")
    return ProductMode::fpi;
  if (s == "FPD" || s == "fpd")
    return ProductMode::fpd;
  if (s == "FP" || s == "fp")
    return ProductMode::fp;
  throw DomainError("unknown product mode '" + std::string(s) + "' (FPI, FPD or FP)");
}

enum class SearchStatus { found, not_found, budget_exhausted };

inline std::string to_string(SearchStatus s)
{
  switch (s) {
  case SearchStatus::found:
    return "found";
  case SearchStatus::not_found:
    return "not-found";
  case SearchStatus::budget_exhausted:
    return "budget-exhausted";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Finite sums

/// All sums over non-empty index subsets, sorted and deduplicated.
inline std::vector<std::int64_t> fs_set(std::span<const std::int64_t> xs)
{
  if (xs.empty())
    throw DomainError("fs_set needs at least one generator");
  if (xs.size() > 30)
    throw BudgetExceeded("fs_set enumerates 2^m - 1 subsets; m = " + std::to_string(xs.size()) + " exceeds 30");
  std::vector<std::int64_t> sums{0};
  for (auto x : xs) {
    auto n = sums.size();
    for (std::size_t i = 0; i < n; ++i)
      sums.push_back(sums[i] + x);
  }
  sums.erase(sums.begin());
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

// ---------------------------------------------------------------------------
// Witnesses

enum class WitnessKind { fs, fpi, fpd, fp, syndetic, thick, pws };

inline std::string to_string(WitnessKind k)
{
  switch (k) {
  case WitnessKind::fs:
    return "FS";
  case WitnessKind::fpi:
    return "FPI";
  case WitnessKind::fpd:
    return "FPD";
  case WitnessKind::fp:
    return "FP";
  case WitnessKind::syndetic:
    return "syndetic";
  case WitnessKind::thick:
    return "thick";
  case WitnessKind::pws:
    return "pws";
  }
  return "?";
}

/// Outcome of a bounded detector. A positive carries the data needed to
/// re-check it (translate, index set, generators, shift); a negative carries
/// the exact bounds that were searched, so it is never an absolute claim.
template <CountableGroup G>
struct StructureWitness {
  WitnessKind kind{WitnessKind::thick};
  SearchStatus status{SearchStatus::not_found};
  bool verified{false};
  std::optional<ElementOf<G>> translate;
  std::vector<ElementOf<G>> covering;
  IndexSet alpha;
  std::vector<std::int64_t> generators;
  std::int64_t shift{0};
  std::int64_t sum{0};
  std::int64_t queries{0};
  nlohmann::json bounds = nlohmann::json::object();

  bool found() const { return status == SearchStatus::found; }

  nlohmann::json to_json(const G& group) const
  {
    nlohmann::json j{{"kind", to_string(kind)}, {"status", to_string(status)}, {"verified", verified},
                     {"queries", queries}, {"bounds", bounds}};
    if (translate)
      j["translate"] = group.format(*translate);
    if (!covering.empty()) {
      auto& arr = j["covering"] = nlohmann::json::array();
      for (const auto& k : covering)
        arr.push_back(group.format(k));
    }
    if (!alpha.empty())
      j["alpha"] = alpha;
    if (!generators.empty())
      j["generators"] = generators;
    if (kind == WitnessKind::fs && found()) {
      j["shift"] = shift;
      j["sum"] = sum;
    }
    return j;
  }
};

/// Non-empty α ⊆ {1..m} with Σ_{n∈α} x_n ≡ 0 (mod t).
///
/// For m >= t a repeated prefix-sum residue gives a contiguous α. For m < t
/// existence is not guaranteed, so a residue reachability table decides it
/// exactly.
inline StructureWitness<IntegerGroup> fs_meets_multiples(std::span<const std::int64_t> xs, std::int64_t t)
{
  if (t < 1)
    throw DomainError("fs_meets_multiples needs t >= 1");
  if (xs.empty())
    throw DomainError("fs_meets_multiples needs at least one generator");
  StructureWitness<IntegerGroup> w;
  w.kind = WitnessKind::fs;
  w.bounds = {{"m", xs.size()}, {"t", t}};
  auto mod = [t](std::int64_t v) { return ((v % t) + t) % t; };

  std::vector<std::int64_t> first_at(static_cast<std::size_t>(t), -1);
  first_at[0] = 0;
  std::int64_t prefix = 0;
  for (std::size_t j = 1; j <= xs.size(); ++j) {
    prefix = mod(prefix + xs[j - 1]);
    auto& seen = first_at[static_cast<std::size_t>(prefix)];
    if (seen >= 0) {
      for (auto i = static_cast<std::size_t>(seen) + 1; i <= j; ++i) {
        w.alpha.push_back(i);
        w.sum += xs[i - 1];
      }
      break;
    }
    seen = static_cast<std::int64_t>(j);
  }

  if (w.alpha.empty()) {
    // reach[k][r]: some non-empty subset of the first k generators has residue r.
    std::size_t m = xs.size();
    auto T = static_cast<std::size_t>(t);
    std::vector<std::vector<char>> reach(m + 1, std::vector<char>(T, 0));
    for (std::size_t k = 1; k <= m; ++k) {
      auto r = static_cast<std::size_t>(mod(xs[k - 1]));
      reach[k] = reach[k - 1];
      reach[k][r] = 1;
      for (std::size_t s = 0; s < T; ++s)
        if (reach[k - 1][s])
          reach[k][(s + r) % T] = 1;
    }
    if (reach[m][0]) {
      // Walk back: skip k whenever the residue still needed is reachable
      // without it, otherwise take k.
      std::size_t need = 0;
      bool chosen = false;
      for (std::size_t k = m; k >= 1; --k) {
        if (chosen && need == 0)
          break;
        if (reach[k - 1][need])
          continue;
        w.alpha.push_back(k);
        w.sum += xs[k - 1];
        need = (need + T - static_cast<std::size_t>(mod(xs[k - 1]))) % T;
        chosen = true;
      }
      std::sort(w.alpha.begin(), w.alpha.end());
    }
  }

  w.status = w.alpha.empty() ? SearchStatus::not_found : SearchStatus::found;
  w.verified = w.found() && mod(w.sum) == 0;
  return w;
}

inline bool verify_fs_meets_multiples(const StructureWitness<IntegerGroup>& w, std::span<const std::int64_t> xs,
                                      std::int64_t t)
{
  if (!w.found() || w.alpha.empty() || t < 1)
    return false;
  std::int64_t s = 0;
  std::size_t prev = 0;
  for (auto i : w.alpha) {
    if (i <= prev || i > xs.size())
      return false;
    s += xs[i - 1];
    prev = i;
  }
  return s == w.sum && s % t == 0;
}

// ---------------------------------------------------------------------------
// Finite products

template <CountableGroup G>
struct FPChain {
  std::vector<ElementOf<G>> generators;
  bool escaping{false};

  std::size_t size() const { return generators.size(); }
};

/// g_i ∉ exhaustion(i) for every i.
template <CountableGroup G>
bool escapes_exhaustion(const G& group, const FPChain<G>& chain)
{
  for (std::size_t i = 0; i < chain.generators.size(); ++i)
    if (in_exhaustion(group, chain.generators[i], static_cast<int>(i + 1)))
      return false;
  return true;
}

namespace detail {

inline void check_index_set(const IndexSet& s, std::size_t m, const char* what)
{
  std::size_t prev = 0;
  for (auto i : s) {
    if (i < 1 || i > m)
      throw DomainError(std::string(what) + " index " + std::to_string(i) + " outside 1.." + std::to_string(m));
    if (i <= prev)
      throw DomainError(std::string(what) + " must be strictly increasing");
    prev = i;
  }
}

} // namespace detail

/// inc_α(g)·dec_β(g) where inc multiplies in increasing index order and dec
/// in decreasing order; inc_∅ = dec_∅ = id.
template <CountableGroup G>
ElementOf<G> fp_products(const G& group, const FPChain<G>& chain, const IndexSet& alpha, const IndexSet& beta)
{
  auto m = chain.generators.size();
  detail::check_index_set(alpha, m, "alpha");
  detail::check_index_set(beta, m, "beta");
  if (alpha.empty() && beta.empty())
    throw DomainError("alpha and beta cannot both be empty");
  for (auto i : alpha)
    if (std::binary_search(beta.begin(), beta.end(), i))
      throw DomainError("alpha and beta overlap at index " + std::to_string(i));

  auto x = group.identity();
  for (auto i : alpha)
    x = group.multiply(x, chain.generators[i - 1]);
  for (auto it = beta.rbegin(); it != beta.rend(); ++it)
    x = group.multiply(x, chain.generators[*it - 1]);
  return x;
}

namespace detail {

/// Calls visit(alpha, beta) for every admissible pair of the mode, in a fixed
/// order: base-3 counter over the generator slots (0 unused, 1 α, 2 β).
template <class Visit>
bool for_each_admissible(std::size_t m, ProductMode mode, Visit visit)
{
  if (mode == ProductMode::fp) {
    std::vector<int> digit(m, 0);
    while (true) {
      std::size_t k = 0;
      while (k < m && digit[k] == 2)
        digit[k++] = 0;
      if (k == m)
        return true;
      ++digit[k];
      IndexSet a, b;
      for (std::size_t i = 0; i < m; ++i) {
        if (digit[i] == 1)
          a.push_back(i + 1);
        else if (digit[i] == 2)
          b.push_back(i + 1);
      }
      if (!visit(a, b))
        return false;
    }
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    IndexSet s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint64_t{1} << i))
        s.push_back(i + 1);
    bool keep = mode == ProductMode::fpi ? visit(s, IndexSet{}) : visit(IndexSet{}, s);
    if (!keep)
      return false;
  }
  return true;
}

} // namespace detail

/// FPI, FPD or FP of the chain, sorted and deduplicated.
template <CountableGroup G>
std::vector<ElementOf<G>> fp_set(const G& group, const FPChain<G>& chain, ProductMode mode)
{
  if (chain.generators.empty())
    throw DomainError("fp_set needs a non-empty chain");
  if (chain.generators.size() > 16)
    throw BudgetExceeded("fp_set supports chains of length <= 16");
  std::set<ElementOf<G>> out;
  detail::for_each_admissible(chain.generators.size(), mode, [&](const IndexSet& a, const IndexSet& b) {
    out.insert(fp_products(group, chain, a, b));
    return true;
  });
  return {out.begin(), out.end()};
}

template <CountableGroup G>
struct FpContainment {
  bool holds{true};
  IndexSet alpha;
  IndexSet beta;
  std::optional<ElementOf<G>> product;
  std::int64_t checked{0};
};

/// Checks every admissible product of the mode against E and reports the
/// first violating (α, β).
template <CountableGroup G>
FpContainment<G> verify_fp_containment(const G& group, const FPChain<G>& chain, const SubsetSpec<G>& e,
                                       ProductMode mode)
{
  if (chain.generators.empty())
    throw DomainError("verify_fp_containment needs a non-empty chain");
  if (chain.generators.size() > 16)
    throw BudgetExceeded("verify_fp_containment supports chains of length <= 16");
  FpContainment<G> result;
  detail::for_each_admissible(chain.generators.size(), mode, [&](const IndexSet& a, const IndexSet& b) {
    ++result.checked;
    auto x = fp_products(group, chain, a, b);
    if (!e(x)) {
      result.holds = false;
      result.alpha = a;
      result.beta = b;
      result.product = x;
      return false;
    }
    return true;
  });
  return result;
}

// ---------------------------------------------------------------------------
// Window proxies for syndetic / thick / piecewise syndetic

/// Every w ∈ W is k·s with k ∈ K and s ∈ S.
///
/// With a materialization window M, only those w whose whole fiber K⁻¹w lies
/// in M are required to be covered, which avoids false negatives when S is
/// only known on M.
template <CountableGroup G>
bool is_syndetic_window(const G& group, const SubsetSpec<G>& s, const std::vector<ElementOf<G>>& k,
                        const std::vector<ElementOf<G>>& w,
                        const std::vector<ElementOf<G>>* materialization = nullptr)
{
  auto k_inv = inverse_set(group, k);
  std::unordered_set<ElementOf<G>> inside;
  if (materialization)
    inside.insert(materialization->begin(), materialization->end());
  for (const auto& x : w) {
    bool covered = false;
    bool fiber_inside = true;
    for (const auto& ki : k_inv) {
      auto y = group.multiply(ki, x);
      if (materialization && !inside.count(y)) {
        fiber_inside = false;
        continue;
      }
      if (s(y)) {
        covered = true;
        break;
      }
    }
    if (!covered && fiber_inside)
      return false;
  }
  return true;
}

/// First g ∈ W (in W's order) with K·g ⊆ T.
template <CountableGroup G>
StructureWitness<G> is_thick_window(const G& group, const SubsetSpec<G>& t, const std::vector<ElementOf<G>>& k,
                                    const std::vector<ElementOf<G>>& w)
{
  StructureWitness<G> out;
  out.kind = WitnessKind::thick;
  out.covering = k;
  out.bounds = {{"K_size", k.size()}, {"W_size", w.size()}};
  for (const auto& g : w) {
    bool inside = true;
    for (const auto& x : k) {
      ++out.queries;
      if (!t(group.multiply(x, g))) {
        inside = false;
        break;
      }
    }
    if (inside) {
      out.status = SearchStatus::found;
      out.translate = g;
      break;
    }
  }
  if (!w.empty()) {
    out.bounds["W_first"] = group.format(w.front());
    out.bounds["W_last"] = group.format(w.back());
  }
  out.verified = out.found();
  return out;
}

template <CountableGroup G>
bool verify_thick(const G& group, const SubsetSpec<G>& t, const StructureWitness<G>& w)
{
  if (!w.found() || !w.translate)
    return false;
  for (const auto& x : w.covering)
    if (!t(group.multiply(x, *w.translate)))
      return false;
  return true;
}

/// K·P tested for (K′, W)-thickness.
template <CountableGroup G>
StructureWitness<G> is_pws_window(const G& group, const SubsetSpec<G>& p, const std::vector<ElementOf<G>>& k,
                                  const std::vector<ElementOf<G>>& k_prime, const std::vector<ElementOf<G>>& w)
{
  auto out = is_thick_window(group, left_product(group, k, p), k_prime, w);
  out.kind = WitnessKind::pws;
  out.bounds["K_factor_size"] = k.size();
  return out;
}

template <CountableGroup G>
bool verify_pws(const G& group, const SubsetSpec<G>& p, const std::vector<ElementOf<G>>& k,
                const StructureWitness<G>& w)
{
  return verify_thick(group, left_product(group, k, p), w);
}

/// First g ∈ W with g ∉ K and K·g ⊆ T.
template <CountableGroup G>
StructureWitness<G> find_shift_avoiding(const G& group, const SubsetSpec<G>& t, const std::vector<ElementOf<G>>& k,
                                        const std::vector<ElementOf<G>>& w)
{
  std::unordered_set<ElementOf<G>> in_k(k.begin(), k.end());
  std::vector<ElementOf<G>> outside;
  for (const auto& g : w)
    if (!in_k.count(g))
      outside.push_back(g);
  auto out = is_thick_window(group, t, k, outside);
  out.bounds["W_size"] = w.size();
  out.bounds["excluded"] = w.size() - outside.size();
  out.verified = out.found() && verify_thick(group, t, out) && !in_k.count(*out.translate);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration-order candidate stream

/// Walks a group in enumeration order by reading successive exhaustion
/// levels; each level's new elements form a tail of its list.
template <CountableGroup G>
class EnumerationCursor {
public:
  explicit EnumerationCursor(const G& group, int max_level = 1 << 20) : group_(&group), max_level_(max_level) {}

  const ElementOf<G>* next()
  {
    while (pos_ >= current_.size()) {
      if (level_ >= max_level_)
        return nullptr;
      ++level_;
      auto prev = current_.size();
      current_ = group_->exhaustion(level_);
      pos_ = level_ == 1 ? 0 : prev;
    }
    return &current_[pos_++];
  }

private:
  const G* group_;
  int max_level_;
  int level_{0};
  std::vector<ElementOf<G>> current_;
  std::size_t pos_{0};
};

template <CountableGroup G>
struct FpiExtraction {
  FPChain<G> chain;
  bool complete{false};
  std::int64_t queries{0};
};

/// Greedy escaping chain with FPI(chain) ⊆ T, following the thick-set
/// induction: each g_{n+1} avoids (H ∪ {id})⁻¹K_{n+1} and satisfies
/// (H ∪ {id})·g_{n+1} ⊆ T, where H = FPI(g_1..g_n). Candidates are taken in
/// enumeration order; `budget` caps membership queries.
template <CountableGroup G>
FpiExtraction<G> extract_fpi_from_thick(const G& group, const SubsetSpec<G>& t, std::size_t m, std::int64_t budget,
                                        int max_level = 1 << 20)
{
  if (m == 0)
    throw DomainError("extract_fpi_from_thick needs m >= 1");
  FpiExtraction<G> out;
  out.chain.escaping = true;
  std::vector<ElementOf<G>> prefixes{group.identity()}; // H ∪ {id}
  EnumerationCursor<G> cursor(group, max_level);

  while (out.chain.generators.size() < m) {
    int level = static_cast<int>(out.chain.generators.size()) + 1;
    const ElementOf<G>* candidate = nullptr;
    bool accepted = false;
    while ((candidate = cursor.next()) != nullptr) {
      bool escapes = true;
      for (const auto& h : prefixes)
        if (in_exhaustion(group, group.multiply(h, *candidate), level)) {
          escapes = false;
          break;
        }
      if (!escapes)
        continue;
      bool inside = true;
      for (const auto& h : prefixes) {
        if (out.queries >= budget)
          return out;
        ++out.queries;
        if (!t(group.multiply(h, *candidate))) {
          inside = false;
          break;
        }
      }
      if (inside) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      return out;
    auto g = *candidate;
    auto n = prefixes.size();
    for (std::size_t i = 0; i < n; ++i)
      prefixes.push_back(group.multiply(prefixes[i], g));
    out.chain.generators.push_back(g);
    // Later candidates restart from the beginning of the enumeration.
    cursor = EnumerationCursor<G>(group, max_level);
  }
  out.complete = true;
  return out;
}

// ---------------------------------------------------------------------------
// FP-chain search

enum class EscapePolicy {
  none,            ///< no escape requirement
  fixed,           ///< g_i ∉ exhaustion(i)
  beyond_previous, ///< fixed, and g_{i+1} outside the least level holding g_1..g_i
};

inline std::string to_string(EscapePolicy p)
{
  switch (p) {
  case EscapePolicy::none:
    return "none";
  case EscapePolicy::fixed:
    return "fixed";
  case EscapePolicy::beyond_previous:
    return "beyond-previous";
  }
  return "?";
}

inline EscapePolicy parse_escape_policy(std::string_view s)
{
  if (s == "none")
    return EscapePolicy::none;
  if (s == "fixed")
    return EscapePolicy::fixed;
  if (s == "beyond-previous")
    return EscapePolicy::beyond_previous;
  throw DomainError("unknown escape policy '" + std::string(s) + "'");
}

template <CountableGroup G>
struct FpSearchOptions {
  std::vector<ElementOf<G>> window; ///< candidate generators, in search order
  std::int64_t budget{10'000'000};  ///< cap on membership-oracle evaluations
  EscapePolicy escape{EscapePolicy::fixed};
};

template <CountableGroup G>
struct FpSearchResult {
  SearchStatus status{SearchStatus::not_found};
  FPChain<G> chain;
  std::int64_t queries{0}; ///< oracle evaluations (distinct elements asked)
  std::int64_t lookups{0}; ///< membership tests including memo hits
  std::int64_t nodes{0};   ///< candidate checks
  bool verified{false};

  bool found() const { return status == SearchStatus::found; }
};

/// Depth-first search for g_1..g_m with the chosen product family inside E.
///
/// The admissible set after i steps is tracked as a list of context pairs
/// (L, R): g is admissible iff L·g·R ∈ E for every pair. Choosing g maps the
/// pairs as E_{i+1} = g⁻¹E_i ∩ E_i ∩ E_i g⁻¹ (two-sided), E_i ∩ g⁻¹E_i
/// (increasing) or E_i ∩ E_i g⁻¹ (decreasing). Membership answers are
/// memoized, so `queries` counts distinct oracle evaluations.
template <CountableGroup G>
FpSearchResult<G> fp_chain_search(const G& group, const SubsetSpec<G>& e, std::size_t m, ProductMode mode,
                                  const FpSearchOptions<G>& options)
{
  if (m == 0)
    throw DomainError("fp_chain_search needs m >= 1");
  if (m > 16)
    throw BudgetExceeded("fp_chain_search supports chains of length <= 16");

  FpSearchResult<G> result;
  std::unordered_map<ElementOf<G>, bool> memo;
  bool out_of_budget = false;

  auto member = [&](const ElementOf<G>& x) -> std::optional<bool> {
    ++result.lookups;
    if (auto it = memo.find(x); it != memo.end())
      return it->second;
    if (result.queries >= options.budget) {
      out_of_budget = true;
      return std::nullopt;
    }
    ++result.queries;
    bool v = e(x);
    memo.emplace(x, v);
    return v;
  };

  using Pair = std::pair<ElementOf<G>, ElementOf<G>>;
  using Candidates = std::vector<const ElementOf<G>*>;
  const auto id = group.identity();
  std::vector<ElementOf<G>> chosen;

  // Keeps the candidates g at exhaustion level >= floor with L·g·R ∈ E for
  // every pair in [from, end). nullopt means the budget ran out.
  auto filter = [&](const Candidates& in, const std::vector<Pair>& pairs, std::size_t from,
                    int floor) -> std::optional<Candidates> {
    Candidates out;
    for (const auto* g : in) {
      if (group.exhaustion_level(*g) < floor)
        continue;
      ++result.nodes;
      bool ok = true;
      for (std::size_t p = from; p < pairs.size() && ok; ++p) {
        auto answer = member(group.multiply(group.multiply(pairs[p].first, *g), pairs[p].second));
        if (!answer)
          return std::nullopt;
        ok = *answer;
      }
      if (ok)
        out.push_back(g);
    }
    return out;
  };

  // Every candidate passed to a node is admissible for all of its pairs.
  auto dfs = [&](auto&& self, const std::vector<Pair>& pairs, const Candidates& candidates, int max_level) -> bool {
    auto depth = chosen.size();
    if (depth == m)
      return true;
    for (const auto* gp : candidates) {
      const auto& g = *gp;
      int lvl = group.exhaustion_level(g);
      if (options.escape != EscapePolicy::none && lvl <= static_cast<int>(depth) + 1)
        continue;
      if (options.escape == EscapePolicy::beyond_previous && lvl <= max_level)
        continue;
      chosen.push_back(g);
      if (depth + 1 == m)
        return true;

      std::vector<Pair> next = pairs;
      next.reserve(pairs.size() * (mode == ProductMode::fp ? 3 : 2));
      for (const auto& [l, r] : pairs) {
        if (mode != ProductMode::fpd)
          next.emplace_back(group.multiply(l, g), r);
        if (mode != ProductMode::fpi)
          next.emplace_back(l, group.multiply(g, r));
      }
      int floor = 0;
      if (options.escape != EscapePolicy::none)
        floor = static_cast<int>(depth) + 3;
      if (options.escape == EscapePolicy::beyond_previous)
        floor = std::max(floor, std::max(max_level, lvl) + 1);
      auto narrowed = filter(candidates, next, pairs.size(), floor);
      if (!narrowed)
        return false;
      if (self(self, next, *narrowed, std::max(max_level, lvl)))
        return true;
      chosen.pop_back();
      if (out_of_budget)
        return false;
    }
    return false;
  };

  Candidates all;
  all.reserve(options.window.size());
  for (const auto& g : options.window)
    all.push_back(&g);
  std::vector<Pair> root{{id, id}};
  auto admissible = filter(all, root, 0, options.escape == EscapePolicy::none ? 0 : 2);
  bool found = admissible && dfs(dfs, root, *admissible, 0);
  if (found) {
    result.status = SearchStatus::found;
    result.chain.generators = chosen;
    result.chain.escaping = options.escape != EscapePolicy::none;
    result.verified = verify_fp_containment(group, result.chain, e, mode).holds &&
                      (!result.chain.escaping || escapes_exhaustion(group, result.chain));
  } else {
    result.status = out_of_budget ? SearchStatus::budget_exhausted : SearchStatus::not_found;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Shifted finite sums in Z

/// Searches t ∈ [-shift_bound, shift_bound] (order 0, 1, -1, 2, ...) and
/// 1 <= x_1 <= ... <= x_m <= generator_bound (lexicographic) for
/// FS(x) + t ⊆ E. A negative records the exact bounds; running out of
/// budget reports how many shifts were fully covered.
inline StructureWitness<IntegerGroup> shifted_fs_search(const SubsetSpec<IntegerGroup>& e, std::size_t m,
                                                        std::int64_t generator_bound, std::int64_t shift_bound,
                                                        std::int64_t budget = std::int64_t{1} << 40)
{
  if (m == 0 || m > 30)
    throw DomainError("shifted_fs_search needs 1 <= m <= 30");
  if (generator_bound < 1 || shift_bound < 0)
    throw DomainError("shifted_fs_search needs generator_bound >= 1 and shift_bound >= 0");

  StructureWitness<IntegerGroup> out;
  out.kind = WitnessKind::fs;
  out.bounds = {{"m", m}, {"generator_bound", generator_bound}, {"shift_bound", shift_bound}};
  IntegerGroup z;
  std::int64_t shifts_done = 0;
  bool over = false;

  const auto max_sum = static_cast<std::int64_t>(m) * generator_bound;
  std::vector<signed char> cache(static_cast<std::size_t>(max_sum) + 1);

  for (std::size_t ti = 0; ti <= 2 * static_cast<std::size_t>(shift_bound); ++ti) {
    std::int64_t t = z.enumerate(ti);
    std::fill(cache.begin(), cache.end(), -1);
    auto in_e = [&](std::int64_t s) -> std::optional<bool> {
      auto& c = cache[static_cast<std::size_t>(s)];
      if (c < 0) {
        if (out.queries >= budget) {
          over = true;
          return std::nullopt;
        }
        ++out.queries;
        c = e(s + t) ? 1 : 0;
      }
      return c == 1;
    };

    std::vector<std::int64_t> xs;
    std::vector<std::vector<std::int64_t>> sums_stack{{}};
    auto dfs = [&](auto&& self, std::int64_t lo) -> bool {
      if (xs.size() == m)
        return true;
      const auto sums = sums_stack.back();
      for (std::int64_t x = lo; x <= generator_bound; ++x) {
        std::vector<std::int64_t> added{x};
        for (auto s : sums)
          added.push_back(s + x);
        bool ok = true;
        for (auto s : added) {
          auto r = in_e(s);
          if (!r)
            return false;
          if (!*r) {
            ok = false;
            break;
          }
        }
        if (!ok)
          continue;
        auto next = sums;
        next.insert(next.end(), added.begin(), added.end());
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        xs.push_back(x);
        sums_stack.push_back(std::move(next));
        if (self(self, x))
          return true;
        xs.pop_back();
        sums_stack.pop_back();
        if (over)
          return false;
      }
      return false;
    };

    if (dfs(dfs, 1)) {
      out.status = SearchStatus::found;
      out.shift = t;
      out.generators = xs;
      auto fs = fs_set(xs);
      out.sum = fs.back();
      out.verified = std::all_of(fs.begin(), fs.end(), [&](std::int64_t s) { return e(s + t); });
      out.bounds["shifts_covered"] = shifts_done;
      return out;
    }
    if (over) {
      out.status = SearchStatus::budget_exhausted;
      out.bounds["shifts_covered"] = shifts_done;
      return out;
    }
    ++shifts_done;
  }
  out.status = SearchStatus::not_found;
  out.bounds["shifts_covered"] = shifts_done;
  return out;
}

inline bool verify_shifted_fs(const SubsetSpec<IntegerGroup>& e, const StructureWitness<IntegerGroup>& w)
{
  if (!w.found() || w.generators.empty())
    return false;
  auto fs = fs_set(w.generators);
  return std::all_of(fs.begin(), fs.end(), [&](std::int64_t s) { return e(s + w.shift); });
}

} // namespace amenable
