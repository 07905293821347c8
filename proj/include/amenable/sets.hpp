#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "folner.hpp"
#include "group.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace amenable {

/// A subset of a group given by a pure membership predicate.
///
/// Copies share the predicate. Predicates may be called concurrently, so
/// anything they capture must be immutable.
template <CountableGroup G>
class SubsetSpec {
public:
  using Element = ElementOf<G>;
  using Predicate = std::function<bool(const Element&)>;

  SubsetSpec(std::string name, Predicate member, std::string provenance = {})
      : name_(std::move(name)), provenance_(std::move(provenance)),
        member_(std::make_shared<const Predicate>(std::move(member)))
  {
  }

  bool contains(const Element& x) const { return (*member_)(x); }
  bool operator()(const Element& x) const { return (*member_)(x); }

  const std::string& name() const { return name_; }
  const std::string& provenance() const { return provenance_; }

  SubsetSpec renamed(std::string name) const
  {
    auto copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

private:
  std::string name_;
  std::string provenance_;
  std::shared_ptr<const Predicate> member_;
};

template <CountableGroup G>
SubsetSpec<G> whole_group(const G& group)
{
  return SubsetSpec<G>(group.name(), [](const ElementOf<G>&) { return true; }, "the whole group");
}

template <CountableGroup G>
SubsetSpec<G> empty_set(const G&)
{
  return SubsetSpec<G>("empty", [](const ElementOf<G>&) { return false; }, "the empty set");
}

template <CountableGroup G>
SubsetSpec<G> finite_set(const G&, std::vector<ElementOf<G>> elements, std::string name = "finite")
{
  auto lookup = std::make_shared<const std::unordered_set<ElementOf<G>>>(elements.begin(), elements.end());
  auto size = lookup->size();
  return SubsetSpec<G>(
      std::move(name), [lookup](const ElementOf<G>& x) { return lookup->count(x) > 0; },
      "finite set of " + std::to_string(size) + " elements");
}

/// {x : x ≡ residue (mod modulus)} in Z.
inline SubsetSpec<IntegerGroup> residue_class(std::int64_t modulus, std::int64_t residue)
{
  if (modulus <= 0)
    throw DomainError("modulus must be positive");
  auto r = ((residue % modulus) + modulus) % modulus;
  std::string name = r == 0 ? std::to_string(modulus) + "Z" : std::to_string(modulus) + "Z+" + std::to_string(r);
  return SubsetSpec<IntegerGroup>(
      name, [modulus, r](std::int64_t x) { return ((x % modulus) + modulus) % modulus == r; }, "residue class");
}

/// {n² : n >= 0}.
inline SubsetSpec<IntegerGroup> squares()
{
  return SubsetSpec<IntegerGroup>(
      "squares",
      [](std::int64_t x) {
        if (x < 0)
          return false;
        auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
        while (r * r > x)
          --r;
        while ((r + 1) * (r + 1) <= x)
          ++r;
        return r * r == x;
      },
      "perfect squares");
}

/// ∪_k [period·k + lo, period·k + hi) in Z.
inline SubsetSpec<IntegerGroup> periodic_blocks(std::int64_t period, std::int64_t lo, std::int64_t hi)
{
  if (period <= 0 || lo < 0 || hi > period || lo >= hi)
    throw DomainError("periodic blocks need 0 <= lo < hi <= period");
  return SubsetSpec<IntegerGroup>(
      "blocks(" + std::to_string(period) + "," + std::to_string(lo) + "," + std::to_string(hi) + ")",
      [=](std::int64_t x) {
        auto r = ((x % period) + period) % period;
        return r >= lo && r < hi;
      },
      "union of periodic blocks");
}

// ---------------------------------------------------------------------------
// Shifts and Boolean algebra

/// gE = {x : g⁻¹x ∈ E}.
template <CountableGroup G>
SubsetSpec<G> shift_left(const G& group, const SubsetSpec<G>& e, const ElementOf<G>& g)
{
  auto g_inv = group.inverse(g);
  return SubsetSpec<G>(
      group.format(g) + "·" + e.name(), [group, e, g_inv](const ElementOf<G>& x) { return e(group.multiply(g_inv, x)); },
      "left translate of " + e.name());
}

/// Eg = {x : xg⁻¹ ∈ E}.
template <CountableGroup G>
SubsetSpec<G> shift_right(const G& group, const SubsetSpec<G>& e, const ElementOf<G>& g)
{
  auto g_inv = group.inverse(g);
  return SubsetSpec<G>(
      e.name() + "·" + group.format(g), [group, e, g_inv](const ElementOf<G>& x) { return e(group.multiply(x, g_inv)); },
      "right translate of " + e.name());
}

/// K·E = ∪_{k∈K} kE for finite K.
template <CountableGroup G>
SubsetSpec<G> left_product(const G& group, const std::vector<ElementOf<G>>& k, const SubsetSpec<G>& e)
{
  auto k_inv = std::make_shared<const std::vector<ElementOf<G>>>(inverse_set(group, k));
  return SubsetSpec<G>(
      "K·" + e.name(),
      [group, e, k_inv](const ElementOf<G>& x) {
        for (const auto& ki : *k_inv)
          if (e(group.multiply(ki, x)))
            return true;
        return false;
      },
      "union of " + std::to_string(k.size()) + " left translates of " + e.name());
}

template <CountableGroup G>
SubsetSpec<G> set_union(const SubsetSpec<G>& a, const SubsetSpec<G>& b)
{
  return SubsetSpec<G>("(" + a.name() + " ∪ " + b.name() + ")", [a, b](const ElementOf<G>& x) { return a(x) || b(x); });
}

template <CountableGroup G>
SubsetSpec<G> set_intersection(const SubsetSpec<G>& a, const SubsetSpec<G>& b)
{
  return SubsetSpec<G>("(" + a.name() + " ∩ " + b.name() + ")", [a, b](const ElementOf<G>& x) { return a(x) && b(x); });
}

template <CountableGroup G>
SubsetSpec<G> set_complement(const SubsetSpec<G>& a)
{
  return SubsetSpec<G>("(" + a.name() + ")ᶜ", [a](const ElementOf<G>& x) { return !a(x); });
}

template <CountableGroup G>
SubsetSpec<G> set_difference(const SubsetSpec<G>& a, const SubsetSpec<G>& b)
{
  return SubsetSpec<G>("(" + a.name() + " \\ " + b.name() + ")", [a, b](const ElementOf<G>& x) { return a(x) && !b(x); });
}

template <CountableGroup G>
SubsetSpec<G> set_symmetric_difference(const SubsetSpec<G>& a, const SubsetSpec<G>& b)
{
  return SubsetSpec<G>("(" + a.name() + " △ " + b.name() + ")", [a, b](const ElementOf<G>& x) { return a(x) != b(x); });
}

// ---------------------------------------------------------------------------
// Materialization and density

/// {x ∈ window : x ∈ E}, in window order.
template <CountableGroup G>
std::vector<ElementOf<G>> materialize(const SubsetSpec<G>& e, const std::vector<ElementOf<G>>& window)
{
  using Chunk = std::vector<ElementOf<G>>;
  auto parts = partitioned<Chunk>(window.size(), [&](std::size_t lo, std::size_t hi) {
    Chunk out;
    for (std::size_t i = lo; i < hi; ++i)
      if (e(window[i]))
        out.push_back(window[i]);
    return out;
  });
  Chunk out;
  for (auto& p : parts)
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

/// |E ∩ window|.
template <CountableGroup G>
std::int64_t count_in(const SubsetSpec<G>& e, const std::vector<ElementOf<G>>& window)
{
  auto parts = partitioned<std::int64_t>(window.size(), [&](std::size_t lo, std::size_t hi) {
    std::int64_t c = 0;
    for (std::size_t i = lo; i < hi; ++i)
      c += e(window[i]) ? 1 : 0;
    return c;
  });
  std::int64_t total = 0;
  for (auto c : parts)
    total += c;
  return total;
}

/// Integer window [lo, hi].
inline std::vector<std::int64_t> integer_range(std::int64_t lo, std::int64_t hi)
{
  std::vector<std::int64_t> out;
  if (hi >= lo)
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (auto x = lo; x <= hi; ++x)
    out.push_back(x);
  return out;
}

struct DensityRow {
  std::int64_t index;
  std::int64_t count;
  std::int64_t size;
  Rational ratio;
};

/// Exact per-index counts |E ∩ Φ_N| / |Φ_N| plus window estimates of the
/// upper and lower density: max and min over the tail half of the tested
/// indices. These are finite-range estimates, not limits.
struct DensityReport {
  std::string set_name;
  std::string sequence_name;
  std::vector<DensityRow> rows;
  Rational upper_estimate{0};
  Rational lower_estimate{0};

  nlohmann::json to_json() const
  {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows)
      rows_json.push_back({{"N", r.index}, {"count", r.count}, {"size", r.size}, {"ratio", amenable::to_json(r.ratio)}});
    return {{"set", set_name},
            {"sequence", sequence_name},
            {"rows", rows_json},
            {"upper_estimate", amenable::to_json(upper_estimate)},
            {"lower_estimate", amenable::to_json(lower_estimate)},
            {"estimate_rule", "max/min over the tail half of the tested indices"}};
  }
};

/// Indices lo, lo+step, ... <= hi.
inline std::vector<std::int64_t> index_range(std::int64_t lo, std::int64_t hi, std::int64_t step = 1)
{
  if (step <= 0)
    throw DomainError("index step must be positive");
  std::vector<std::int64_t> out;
  for (auto n = lo; n <= hi; n += step)
    out.push_back(n);
  return out;
}

/// Indices lo, lo·factor, lo·factor², ... <= hi.
inline std::vector<std::int64_t> geometric_range(std::int64_t lo, std::int64_t hi, std::int64_t factor)
{
  if (factor <= 1 || lo <= 0)
    throw DomainError("geometric range needs lo > 0 and factor > 1");
  std::vector<std::int64_t> out;
  for (auto n = lo; n <= hi; n *= factor)
    out.push_back(n);
  return out;
}

template <CountableGroup G>
DensityReport density_along(const SubsetSpec<G>& e, const FolnerSequence<G>& phi, const std::vector<std::int64_t>& indices)
{
  if (indices.empty())
    throw DomainError("density_along needs a non-empty index range");
  DensityReport report{e.name(), phi.name(), {}, Rational(0), Rational(0)};
  report.rows.reserve(indices.size());

  bool incremental = phi.nested() && std::is_sorted(indices.begin(), indices.end()) &&
                     std::adjacent_find(indices.begin(), indices.end()) == indices.end();
  std::int64_t count = 0, size = 0, reached = phi.first_index() - 1;
  for (auto n : indices) {
    if (incremental) {
      for (auto m = reached + 1; m <= n; ++m) {
        auto inc = phi.increment(m);
        size += static_cast<std::int64_t>(inc.size());
        count += count_in(e, inc);
      }
      reached = n;
    } else {
      auto set = phi.at(n);
      size = static_cast<std::int64_t>(set.size());
      count = count_in(e, set);
    }
    report.rows.push_back({n, count, size, Rational(count, size)});
  }

  std::size_t tail = report.rows.size() / 2;
  report.upper_estimate = report.rows[tail].ratio;
  report.lower_estimate = report.rows[tail].ratio;
  for (std::size_t i = tail; i < report.rows.size(); ++i) {
    report.upper_estimate = std::max(report.upper_estimate, report.rows[i].ratio);
    report.lower_estimate = std::min(report.lower_estimate, report.rows[i].ratio);
  }
  return report;
}

} // namespace amenable
