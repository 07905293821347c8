#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "folner.hpp"
#include "group.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "sets.hpp"
#include "structures.hpp"

namespace amenable {

/// A finite window of a configuration in {0,1}^G.
template <CountableGroup G>
struct Pattern {
  std::vector<ElementOf<G>> domain;
  std::vector<char> bits;

  std::size_t size() const { return domain.size(); }

  bool operator==(const Pattern&) const = default;

  /// "x:b,x:b,..." with elements in the group's own syntax.
  std::string format(const G& group) const
  {
    std::string out;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (i)
        out += ',';
      out += group.format(domain[i]) + ':' + (bits[i] ? '1' : '0');
    }
    return out;
  }
};

/// Parses "0:1,1:0,2:0". Commas inside parentheses belong to the element.
template <CountableGroup G>
Pattern<G> parse_pattern(const G& group, std::string_view text)
{
  Pattern<G> p;
  std::vector<std::string> cells;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if (c == ',' && depth == 0) {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty())
    cells.push_back(cur);
  std::unordered_set<ElementOf<G>> seen;
  for (const auto& cell : cells) {
    auto colon = cell.rfind(':');
    if (colon == std::string::npos)
      throw InvalidConfig("pattern cell '" + cell + "' is not of the form element:bit");
    auto bit = cell.substr(colon + 1);
    if (bit != "0" && bit != "1")
      throw InvalidConfig("pattern bit must be 0 or 1 in '" + cell + "'");
    auto x = group.parse(cell.substr(0, colon));
    if (!seen.insert(x).second)
      throw InvalidConfig("pattern repeats the cell " + cell.substr(0, colon));
    p.domain.push_back(x);
    p.bits.push_back(bit == "1");
  }
  return p;
}

/// All 2^|domain| patterns on a domain, in binary counting order with the
/// first cell as the low bit.
template <CountableGroup G>
std::vector<Pattern<G>> all_patterns(const std::vector<ElementOf<G>>& domain)
{
  if (domain.size() > 20)
    throw DomainError("all_patterns is limited to 20 cells");
  std::vector<Pattern<G>> out;
  for (std::uint32_t mask = 0; mask < (1u << domain.size()); ++mask) {
    Pattern<G> p{domain, std::vector<char>(domain.size())};
    for (std::size_t i = 0; i < domain.size(); ++i)
      p.bits[i] = (mask >> i) & 1u;
    out.push_back(std::move(p));
  }
  return out;
}

/// (g·1_Q)(x) = 1_Q(xg) on the domain.
template <CountableGroup G>
Pattern<G> orbit_point(const G& group, const SubsetSpec<G>& q, const ElementOf<G>& g,
                       const std::vector<ElementOf<G>>& domain)
{
  Pattern<G> p{domain, std::vector<char>(domain.size())};
  for (std::size_t i = 0; i < domain.size(); ++i)
    p.bits[i] = q(group.multiply(domain[i], g));
  return p;
}

template <CountableGroup G>
bool matches(const G& group, const SubsetSpec<G>& q, const ElementOf<G>& g, const Pattern<G>& cylinder)
{
  for (std::size_t i = 0; i < cylinder.domain.size(); ++i)
    if (q(group.multiply(cylinder.domain[i], g)) != static_cast<bool>(cylinder.bits[i]))
      return false;
  return true;
}

template <CountableGroup G>
struct EmpiricalMeasure {
  Pattern<G> cylinder;
  std::int64_t index{0};
  std::int64_t matches{0};
  std::int64_t size{0};
  Rational frequency{0};

  nlohmann::json to_json(const G& group) const
  {
    return {{"N", index},
            {"cylinder", cylinder.format(group)},
            {"matches", matches},
            {"size", size},
            {"frequency_num", frequency.numerator()},
            {"frequency_den", frequency.denominator()}};
  }
};

/// μ_N(C) = |{g ∈ Ψ_N : g·1_Q ∈ C}| / |Ψ_N|.
template <CountableGroup G>
EmpiricalMeasure<G> empirical_measure(const G& group, const SubsetSpec<G>& q, const FolnerSequence<G>& psi,
                                      std::int64_t n, const Pattern<G>& cylinder)
{
  auto set = psi.at(n);
  auto parts = partitioned<std::int64_t>(set.size(), [&](std::size_t lo, std::size_t hi) {
    std::int64_t c = 0;
    for (std::size_t i = lo; i < hi; ++i)
      c += matches(group, q, set[i], cylinder) ? 1 : 0;
    return c;
  });
  std::int64_t hits = 0;
  for (auto c : parts)
    hits += c;
  auto size = static_cast<std::int64_t>(set.size());
  return EmpiricalMeasure<G>{cylinder, n, hits, size, Rational(hits, size)};
}

/// Cells x·g with the same bits: h·1_Q matches it iff (gh)·1_Q matches p.
template <CountableGroup G>
Pattern<G> translate_pattern(const G& group, const Pattern<G>& p, const ElementOf<G>& g)
{
  Pattern<G> out = p;
  for (auto& x : out.domain)
    x = group.multiply(x, g);
  return out;
}

template <CountableGroup G>
struct OrbitProbeReport {
  std::int64_t tested{0};
  std::vector<ElementOf<G>> positives;

  nlohmann::json to_json(const G& group) const
  {
    nlohmann::json pos = nlohmann::json::array();
    for (const auto& g : positives)
      pos.push_back(group.format(g));
    return {{"tested", tested}, {"positives", pos}};
  }
};

/// For each sample g, is x ↦ 1_Q(xg) (K, domain)-syndetic?
template <CountableGroup G>
OrbitProbeReport<G> syndetic_orbit_probe(const G& group, const SubsetSpec<G>& q, const std::vector<ElementOf<G>>& k,
                                         const std::vector<ElementOf<G>>& samples,
                                         const std::vector<ElementOf<G>>& domain)
{
  OrbitProbeReport<G> report;
  for (const auto& g : samples) {
    ++report.tested;
    auto b = shift_right(group, q, group.inverse(g));
    if (is_syndetic_window(group, b, k, domain))
      report.positives.push_back(g);
  }
  return report;
}

/// 1 is the only member of Q' with neither neighbour in Q', and 0, 2 ∉ Q'.
inline bool unique_pattern_check(const SubsetSpec<IntegerGroup>& q_prime, const std::vector<std::int64_t>& window)
{
  if (q_prime(0) || q_prime(2) || !q_prime(1))
    return false;
  for (auto n : window)
    if (n != 1 && q_prime(n) && !q_prime(n - 1) && !q_prime(n + 1))
      return false;
  return true;
}

} // namespace amenable
