#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "folner.hpp"
#include "group.hpp"
#include "permutation.hpp"
#include "rational.hpp"
#include "sets.hpp"
#include "structures.hpp"

namespace amenable {

// ---------------------------------------------------------------------------
// Straus sets in Z

/// Progressions {a_n k + n : k >= b_n} removed from the positive integers,
/// with a_n = 2^n·⌈2/ε⌉ and b_n = 1. The removed mass is Σ 1/a_n = 1/⌈2/ε⌉,
/// at most ε/2.
struct StrausParams {
  Rational epsilon;
  std::int64_t base; // ⌈2/ε⌉

  std::int64_t modulus(int n) const { return base << n; }
  std::int64_t tail_start(int) const { return 1; }
  Rational removed_mass_bound() const { return Rational(1, base); }
  bool certified() const { return removed_mass_bound() <= epsilon; }

  nlohmann::json to_json() const
  {
    return {{"epsilon", amenable::to_json(epsilon)},
            {"a_n", "2^n * " + std::to_string(base)},
            {"b_n", 1},
            {"removed_mass_bound", amenable::to_json(removed_mass_bound())}};
  }
};

inline StrausParams straus_params(const Rational& epsilon)
{
  if (epsilon <= Rational(0) || epsilon >= Rational(1))
    throw DomainError("Straus epsilon must lie in (0, 1), got " + to_string(epsilon));
  Rational q = Rational(2) / epsilon;
  std::int64_t base = q.numerator() / q.denominator();
  if (q.numerator() % q.denominator() != 0)
    ++base;
  return StrausParams{epsilon, base};
}

inline SubsetSpec<IntegerGroup> straus_set(const Rational& epsilon)
{
  auto params = straus_params(epsilon);
  return SubsetSpec<IntegerGroup>(
      "straus(eps=" + to_string(epsilon) + ")",
      [params](std::int64_t x) {
        if (x < 1)
          return false;
        // Progression n starts at a_n + n; later ones start higher.
        for (int n = 1; n < 62; ++n) {
          auto a = params.modulus(n);
          if (a > x - n)
            break;
          if ((x - n) % a == 0)
            return false;
        }
        return true;
      },
      "positive integers minus the tails {a_n k + n : k >= 1}, a_n = 2^n*" + std::to_string(params.base));
}

// ---------------------------------------------------------------------------
// Greedy disjoint-translate packing

/// Greedy maximal S' ⊆ S (scanned in the given order) whose translates fS',
/// f ∈ F, are pairwise disjoint. Maximality makes F⁻¹F·S' cover S.
///
/// Each accepted s claims the cells f·s; a later candidate is rejected as
/// soon as one of its cells is already claimed by a different f.
template <CountableGroup G>
std::vector<ElementOf<G>> greedy_disjoint_cover(const G& group, const std::vector<ElementOf<G>>& s,
                                                const std::vector<ElementOf<G>>& f)
{
  if (f.empty())
    throw DomainError("greedy_disjoint_cover needs a non-empty F");
  std::unordered_map<ElementOf<G>, std::size_t> claimed;
  claimed.reserve(s.size() * 2);
  std::vector<ElementOf<G>> out;
  std::vector<ElementOf<G>> cells(f.size());
  for (const auto& x : s) {
    bool free = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
      cells[i] = group.multiply(f[i], x);
      auto it = claimed.find(cells[i]);
      if (it != claimed.end() && it->second != i) {
        free = false;
        break;
      }
    }
    if (!free)
      continue;
    for (std::size_t i = 0; i < f.size(); ++i)
      claimed.emplace(cells[i], i);
    out.push_back(x);
  }
  return out;
}

struct GreedyCheck {
  bool subset{false};
  bool disjoint{false};
  bool covers{false};
  bool maximal{false};

  bool ok() const { return subset && disjoint && covers && maximal; }
};

/// Brute-force re-check of the greedy postconditions.
template <CountableGroup G>
GreedyCheck check_greedy_cover(const G& group, const std::vector<ElementOf<G>>& s, const std::vector<ElementOf<G>>& f,
                               const std::vector<ElementOf<G>>& s_prime)
{
  GreedyCheck c;
  std::unordered_set<ElementOf<G>> s_set(s.begin(), s.end());
  std::unordered_set<ElementOf<G>> chosen(s_prime.begin(), s_prime.end());
  c.subset = std::all_of(s_prime.begin(), s_prime.end(), [&](const auto& x) { return s_set.count(x) > 0; });

  auto translate = [&](const ElementOf<G>& g, const std::unordered_set<ElementOf<G>>& set) {
    std::unordered_set<ElementOf<G>> out;
    for (const auto& x : set)
      out.insert(group.multiply(g, x));
    return out;
  };
  auto intersects = [&](const std::unordered_set<ElementOf<G>>& a, const std::unordered_set<ElementOf<G>>& b) {
    for (const auto& x : a)
      if (b.count(x))
        return true;
    return false;
  };

  c.disjoint = true;
  for (std::size_t i = 0; i < f.size() && c.disjoint; ++i)
    for (std::size_t j = i + 1; j < f.size() && c.disjoint; ++j)
      if (f[i] != f[j] && intersects(translate(f[i], chosen), translate(f[j], chosen)))
        c.disjoint = false;

  std::unordered_set<ElementOf<G>> cover;
  for (const auto& a : f)
    for (const auto& b : f) {
      auto ab = group.multiply(group.inverse(a), b);
      for (const auto& x : s_prime)
        cover.insert(group.multiply(ab, x));
    }
  c.covers = std::all_of(s.begin(), s.end(), [&](const auto& x) { return cover.count(x) > 0; });

  c.maximal = true;
  for (const auto& x : s) {
    if (chosen.count(x))
      continue;
    auto extended = chosen;
    extended.insert(x);
    bool breaks = false;
    for (std::size_t i = 0; i < f.size() && !breaks; ++i)
      for (std::size_t j = i + 1; j < f.size() && !breaks; ++j)
        if (f[i] != f[j] && intersects(translate(f[i], extended), translate(f[j], extended)))
          breaks = true;
    if (!breaks) {
      c.maximal = false;
      break;
    }
  }
  return c;
}

/// The first n elements of the group's enumeration.
template <CountableGroup G>
std::vector<ElementOf<G>> enumeration_prefix(const G& group, std::size_t n)
{
  std::vector<ElementOf<G>> out;
  out.reserve(n);
  EnumerationCursor<G> cursor(group);
  while (out.size() < n)
    out.push_back(*cursor.next());
  return out;
}

// ---------------------------------------------------------------------------
// Shrinking syndetic families

template <CountableGroup G>
struct SyndeticLevel {
  std::vector<ElementOf<G>> shifts;  ///< F_n = {g_1, ..., g_{|F_n|}}
  std::vector<ElementOf<G>> members; ///< S_n restricted to the window
  Rational window_density{0};
  Rational boundary{0}; ///< spill of F_n·S_n outside the window, / (|F_n|·|W|)
};

/// S_0 = window ⊇ S_1 ⊇ S_2 ⊇ ..., each S_{n+1} the greedy disjoint cover of
/// S_n for F_{n+1}. Pairwise disjoint translates bound the window density of
/// S_n by 1/|F_n| + boundary. The family stops early, marked partial, at the
/// first level whose F_n is larger than the window.
template <CountableGroup G>
struct SyndeticFamily {
  std::vector<ElementOf<G>> window;
  std::vector<SyndeticLevel<G>> levels; ///< levels[0] is S_0
  bool partial{false};

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }

  SubsetSpec<G> level_set(std::size_t n) const
  {
    auto lookup = std::make_shared<const std::unordered_set<ElementOf<G>>>(levels.at(n).members.begin(),
                                                                            levels.at(n).members.end());
    return SubsetSpec<G>("S_" + std::to_string(n), [lookup](const ElementOf<G>& x) { return lookup->count(x) > 0; },
                         "level of a shrinking syndetic family");
  }
};

/// `sizes[k]` is |F_{k+1}|; it must be non-decreasing. The default is
/// 1, 2, ..., depth. Shifts are the first max(sizes) entries of `shifts`,
/// or of the group's enumeration when `shifts` is empty.
template <CountableGroup G>
SyndeticFamily<G> shrinking_syndetic_family(const G& group, std::size_t depth, const std::vector<ElementOf<G>>& window,
                                            std::vector<std::size_t> sizes = {},
                                            std::vector<ElementOf<G>> shifts = {})
{
  if (depth == 0)
    throw DomainError("shrinking_syndetic_family needs depth >= 1");
  if (window.empty())
    throw DomainError("shrinking_syndetic_family needs a non-empty window");
  if (sizes.empty())
    for (std::size_t n = 1; n <= depth; ++n)
      sizes.push_back(n);
  if (sizes.size() != depth)
    throw DomainError("need one translate count per level");
  if (!std::is_sorted(sizes.begin(), sizes.end()) || sizes.front() == 0)
    throw DomainError("translate counts must be positive and non-decreasing");
  if (shifts.empty())
    shifts = enumeration_prefix(group, sizes.back());
  if (shifts.size() < sizes.back())
    throw DomainError("not enough shifts for the requested translate counts");

  SyndeticFamily<G> family;
  family.window = window;
  std::unordered_set<ElementOf<G>> in_window(window.begin(), window.end());
  auto w_size = static_cast<std::int64_t>(window.size());
  family.levels.push_back({{}, window, Rational(1), Rational(0)});

  for (std::size_t k = 0; k < depth; ++k) {
    if (sizes[k] > window.size()) {
      family.partial = true;
      break;
    }
    SyndeticLevel<G> level;
    level.shifts.assign(shifts.begin(), shifts.begin() + static_cast<std::ptrdiff_t>(sizes[k]));
    level.members = greedy_disjoint_cover(group, family.levels.back().members, level.shifts);
    level.window_density = Rational(static_cast<std::int64_t>(level.members.size()), w_size);
    std::int64_t spill = 0;
    for (const auto& f : level.shifts)
      for (const auto& x : level.members)
        if (!in_window.count(group.multiply(f, x)))
          ++spill;
    level.boundary = Rational(spill, static_cast<std::int64_t>(sizes[k]) * w_size);
    bool empty = level.members.empty();
    family.levels.push_back(std::move(level));
    if (empty) {
      family.partial = true;
      break;
    }
  }
  return family;
}

// ---------------------------------------------------------------------------
// Cofinite trimming

template <CountableGroup G>
struct TrimResult {
  std::vector<SubsetSpec<G>> trimmed;
  std::vector<std::int64_t> cut_index;      ///< s_i
  std::vector<Rational> upper_estimate;     ///< window estimate of the upper density of A_i
  std::vector<std::shared_ptr<const std::unordered_set<ElementOf<G>>>> removed; ///< Φ_1 ∪ ... ∪ Φ_{s_i}
  Rational union_max_ratio{0};              ///< max over tested N of |∪A_i' ∩ Φ_N| / |Φ_N|
  BigRational bound{0};                     ///< Σ estimates + ε
  bool certified{false};
};

/// A_i' = A_i \ (Φ_1 ∪ ... ∪ Φ_{s_i}) with s_i the least tested index after
/// which |A_i ∩ Φ_N|/|Φ_N| stays below est_i + ε/2^i. The union of the A_i'
/// then has ratio at most Σ est_i + ε at every tested index, which is
/// checked and reported.
template <CountableGroup G>
TrimResult<G> cofinite_trim(const std::vector<SubsetSpec<G>>& sets, const FolnerSequence<G>& phi,
                            const Rational& epsilon, const std::vector<std::int64_t>& indices)
{
  if (indices.empty())
    throw CalibrationError("cofinite_trim needs a non-empty calibration range");
  if (epsilon <= Rational(0))
    throw DomainError("cofinite_trim needs epsilon > 0");
  TrimResult<G> out;
  BigRational est_sum(0);
  Rational slack = epsilon;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    slack /= Rational(2);
    auto report = density_along(sets[i], phi, indices);
    auto threshold = report.upper_estimate + slack;
    std::optional<std::size_t> last_bad;
    for (std::size_t r = 0; r < report.rows.size(); ++r)
      if (report.rows[r].ratio >= threshold)
        last_bad = r;
    if (last_bad && *last_bad + 1 == report.rows.size())
      throw CalibrationError("cofinite_trim: set " + std::to_string(i + 1) + " (" + sets[i].name() +
                             ") never settles below its estimate within the calibration range");
    auto s = last_bad ? indices[*last_bad] : indices.front();

    auto removed = std::make_shared<std::unordered_set<ElementOf<G>>>();
    for (auto n = phi.first_index(); n <= s; ++n) {
      if (phi.nested()) {
        auto inc = phi.increment(n);
        removed->insert(inc.begin(), inc.end());
      } else {
        auto set = phi.at(n);
        removed->insert(set.begin(), set.end());
      }
    }
    std::shared_ptr<const std::unordered_set<ElementOf<G>>> frozen = removed;
    const auto& a = sets[i];
    out.trimmed.emplace_back(
        a.name() + "'", [a, frozen](const ElementOf<G>& x) { return a(x) && !frozen->count(x); },
        "cofinite trim of " + a.name() + " past index " + std::to_string(s));
    out.cut_index.push_back(s);
    out.upper_estimate.push_back(report.upper_estimate);
    out.removed.push_back(frozen);
    est_sum += to_big(report.upper_estimate);
  }

  auto trimmed = out.trimmed;
  SubsetSpec<G> united("∪A'", [trimmed](const ElementOf<G>& x) {
    for (const auto& t : trimmed)
      if (t(x))
        return true;
    return false;
  });
  auto report = density_along(united, phi, indices);
  for (const auto& row : report.rows)
    out.union_max_ratio = std::max(out.union_max_ratio, row.ratio);
  out.bound = est_sum + to_big(epsilon);
  out.certified = to_big(out.union_max_ratio) <= out.bound;
  return out;
}

// ---------------------------------------------------------------------------
// Large non-piecewise-syndetic sets

template <CountableGroup G>
struct NonPwsConstruction {
  SubsetSpec<G> q;
  std::vector<ElementOf<G>> window;
  std::vector<ElementOf<G>> translates; ///< g_1, ..., g_depth
  std::vector<std::size_t> sizes;       ///< |F_i|
  SyndeticFamily<G> family;
  TrimResult<G> trim;
  DensityReport density;
  Rational epsilon;
  Rational boundary{0};
  bool density_guarantee{false};

  /// Least N with K ⊆ {g_1⁻¹, ..., g_N⁻¹}, if N <= depth.
  std::optional<std::size_t> covering_depth(const G& group, const std::vector<ElementOf<G>>& k) const
  {
    std::size_t need = 0;
    for (const auto& x : k) {
      auto inv = group.inverse(x);
      auto it = std::find(translates.begin(), translates.end(), inv);
      if (it == translates.end())
        return std::nullopt;
      need = std::max(need, static_cast<std::size_t>(it - translates.begin()) + 1);
    }
    return need;
  }

  /// S_1' ∩ ... ∩ S_N' on the window, where S_i' = g_i⁻¹A_i' is the trimmed
  /// level and N = covering_depth(K). The complement of K·Q contains it.
  std::optional<std::vector<ElementOf<G>>> syndetic_core(const G& group, const std::vector<ElementOf<G>>& k) const
  {
    auto n = covering_depth(group, k);
    if (!n)
      return std::nullopt;
    std::vector<ElementOf<G>> out;
    for (const auto& x : family.levels.at(std::max<std::size_t>(*n, 1)).members) {
      bool keep = true;
      for (std::size_t i = 0; i < *n && keep; ++i)
        if (trim.removed[i]->count(group.multiply(translates[i], x)))
          keep = false;
      if (keep)
        out.push_back(x);
    }
    return out;
  }
};

/// Q = W \ ∪_i g_i S_i' for a shrinking family with |F_i| = ⌈2^{i+1}/ε⌉
/// (so Σ 1/|F_i| < ε/2), trimmed against Φ with slack ε/2. Lower window
/// density is at least 1 - ε - boundary, and K·Q misses the syndetic core
/// for every K inside {g_1⁻¹, ..., g_depth⁻¹}.
template <CountableGroup G>
NonPwsConstruction<G> non_pws_large_set(const G& group, const FolnerSequence<G>& phi, const Rational& epsilon,
                                        std::size_t depth, const std::vector<ElementOf<G>>& window,
                                        const std::vector<std::int64_t>& indices)
{
  if (epsilon <= Rational(0) || epsilon >= Rational(1))
    throw DomainError("non_pws_large_set needs epsilon in (0, 1)");
  if (depth == 0 || depth > 40)
    throw DomainError("non_pws_large_set needs 1 <= depth <= 40");

  std::vector<std::size_t> sizes;
  for (std::size_t i = 1; i <= depth; ++i) {
    Rational q = Rational(std::int64_t{1} << (i + 1)) / epsilon;
    auto n = q.numerator() / q.denominator() + (q.numerator() % q.denominator() != 0 ? 1 : 0);
    sizes.push_back(static_cast<std::size_t>(n));
  }
  auto shifts = enumeration_prefix(group, std::max(sizes.back(), depth));
  auto family = shrinking_syndetic_family(group, depth, window, sizes, shifts);
  if (family.partial)
    throw DomainError("window too small: level " + std::to_string(family.depth()) + " of the syndetic family is empty");

  std::vector<ElementOf<G>> translates(shifts.begin(), shifts.begin() + static_cast<std::ptrdiff_t>(depth));
  std::vector<SubsetSpec<G>> removed_sets;
  for (std::size_t i = 1; i <= depth; ++i)
    removed_sets.push_back(shift_left(group, family.level_set(i), translates[i - 1]).renamed(
        "g_" + std::to_string(i) + "S_" + std::to_string(i)));
  auto trim = cofinite_trim(removed_sets, phi, epsilon / Rational(2), indices);

  auto in_window = std::make_shared<const std::unordered_set<ElementOf<G>>>(window.begin(), window.end());
  auto trimmed = trim.trimmed;
  SubsetSpec<G> q("nonpws(eps=" + to_string(epsilon) + ",depth=" + std::to_string(depth) + ")",
                  [in_window, trimmed](const ElementOf<G>& x) {
                    if (!in_window->count(x))
                      return false;
                    for (const auto& t : trimmed)
                      if (t(x))
                        return false;
                    return true;
                  },
                  "window minus the trimmed translates g_i S_i'");

  Rational boundary(0);
  for (std::size_t i = 1; i < family.levels.size(); ++i)
    boundary += family.levels[i].boundary;
  auto density = density_along(q, phi, indices);
  bool ok = density.lower_estimate >= Rational(1) - epsilon - boundary;
  return NonPwsConstruction<G>{q,       window, translates, sizes, std::move(family), std::move(trim), std::move(density),
                               epsilon, boundary, ok};
}

// ---------------------------------------------------------------------------
// The A(N) example

/// Φ_n = A_{n-1}·h_n in A(N) and E = ∪_{n>=5} Φ_n, which has density 1 along
/// Φ but contains no FPD set.
struct AltGroupExample {
  AlternatingGroup group;
  FolnerSequence<AlternatingGroup> phi;
  SubsetSpec<AlternatingGroup> e;
  int n_max;

  /// σ ∈ Φ_n iff σ ∈ A_n, σ(1) = n and σ·h_n⁻¹ ∈ A_{n-1}.
  static bool in_phi(const Permutation& sigma, int n)
  {
    if (n < 4 || sigma.degree() > static_cast<Permutation::Point>(n) || sigma.sign() != 1)
      return false;
    if (sigma(1) != static_cast<Permutation::Point>(n))
      return false;
    auto h = transposition_pair(n);
    return sigma.compose(h.inverse()).degree() < static_cast<Permutation::Point>(n);
  }
};

inline AltGroupExample alt_group_example(int n_max)
{
  if (n_max < 5 || n_max > 10)
    throw DomainError("alt_group_example needs 5 <= n_max <= 10, got " + std::to_string(n_max));
  auto phi = alternating_coset_sequence().with_last_index(n_max);
  SubsetSpec<AlternatingGroup> e(
      "E=∪Φ_n(n>=5)",
      [](const Permutation& sigma) {
        // Φ_n ⊆ {σ : σ(1) = n} pins down the only candidate n.
        auto n = static_cast<int>(sigma(1));
        return n >= 5 && AltGroupExample::in_phi(sigma, n);
      },
      "union of the cosets A_{n-1}(1 n)(2 3), n >= 5");
  return AltGroupExample{AlternatingGroup{}, phi, e, n_max};
}

struct ObstructionResult {
  bool holds{true};
  std::int64_t pairs_checked{0};
  std::optional<std::pair<Permutation, Permutation>> counterexample; ///< (g, h) with g·h ∈ E
};

/// For h ∈ Φ_{n+1} and g ∈ Φ_j with n+1 < j <= window_level, g·h ∉ E.
/// This is the j > n+1 step of the FPD obstruction, checked exhaustively.
inline ObstructionResult fpd_obstruction_check(const AltGroupExample& example, int n, int window_level)
{
  if (n < 3)
    throw DomainError("fpd_obstruction_check needs n >= 3 so that Φ_{n+1} exists");
  if (window_level > 9)
    throw DomainError("fpd_obstruction_check supports window_level <= 9");
  ObstructionResult out;
  if (window_level <= n + 1)
    return out;
  auto hs = example.phi.with_last_index(window_level).at(n + 1);
  for (int j = n + 2; j <= window_level; ++j) {
    auto gs = example.phi.with_last_index(window_level).at(j);
    for (const auto& g : gs)
      for (const auto& h : hs) {
        ++out.pairs_checked;
        auto gh = g.compose(h);
        if (example.e(gh)) {
          out.holds = false;
          out.counterexample = std::make_pair(g, h);
          return out;
        }
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Doubling example

/// Q' = 2Q ∪ (2Q + 1) ∪ {1}. Needs 0, 1 ∉ Q.
inline SubsetSpec<IntegerGroup> doubling_example(const SubsetSpec<IntegerGroup>& q)
{
  if (q(0) || q(1))
    throw DomainError("doubling_example needs 0, 1 not in Q; translate Q first so that it has two consecutive "
                      "non-members at 0 and 1");
  return SubsetSpec<IntegerGroup>(
      "double(" + q.name() + ")",
      [q](std::int64_t x) {
        if (x == 1)
          return true;
        auto half = (x - (((x % 2) + 2) % 2)) / 2;
        return q(half);
      },
      "2Q ∪ (2Q+1) ∪ {1}");
}

} // namespace amenable
