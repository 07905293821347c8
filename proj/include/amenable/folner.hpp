#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "permutation.hpp"
#include "rational.hpp"

namespace amenable {

enum class Handedness { left, right, two_sided };

inline std::string to_string(Handedness h)
{
  switch (h) {
  case Handedness::left:
    return "left";
  case Handedness::right:
    return "right";
  case Handedness::two_sided:
    return "two-sided";
  }
  return "?";
}

/// N ↦ Φ_N, a sequence of non-empty finite subsets of a group, together with
/// the handedness it claims. The claim is metadata; the defect functions
/// below are how it gets checked.
///
/// A sequence may also be marked nested (Φ_N ⊆ Φ_{N+1}) with a hook returning
/// Φ_N \ Φ_{N-1}, which lets density scans over consecutive indices run in
/// linear time.
template <CountableGroup G>
class FolnerSequence {
public:
  using Element = ElementOf<G>;
  using Generator = std::function<std::vector<Element>(std::int64_t)>;

  FolnerSequence(G group, std::string name, Handedness hand, std::int64_t first_index, Generator at,
                 Generator increment = {})
      : group_(std::move(group)), name_(std::move(name)), hand_(hand), first_(first_index),
        at_(std::make_shared<Generator>(std::move(at))),
        increment_(increment ? std::make_shared<Generator>(std::move(increment)) : nullptr)
  {
  }

  const G& group() const { return group_; }
  const std::string& name() const { return name_; }
  Handedness handedness() const { return hand_; }
  std::int64_t first_index() const { return first_; }
  std::optional<std::int64_t> last_index() const { return last_; }
  bool nested() const { return static_cast<bool>(increment_); }

  FolnerSequence with_last_index(std::int64_t last) const
  {
    auto copy = *this;
    copy.last_ = last;
    return copy;
  }

  std::vector<Element> at(std::int64_t n) const
  {
    check_index(n);
    auto set = (*at_)(n);
    if (set.empty())
      throw DomainError("Følner set " + name_ + "[" + std::to_string(n) + "] is empty");
    return set;
  }

  /// Φ_N \ Φ_{N-1}; Φ_first itself at the first index.
  std::vector<Element> increment(std::int64_t n) const
  {
    check_index(n);
    if (!increment_)
      throw Unsupported("sequence " + name_ + " is not nested");
    return n == first_ ? at(n) : (*increment_)(n);
  }

private:
  void check_index(std::int64_t n) const
  {
    if (n < first_)
      throw DomainError("index " + std::to_string(n) + " is below the first index " + std::to_string(first_) +
                        " of " + name_);
    if (last_ && n > *last_)
      throw DomainError("index " + std::to_string(n) + " is beyond the last index " + std::to_string(*last_) +
                        " of " + name_);
  }

  G group_;
  std::string name_;
  Handedness hand_;
  std::int64_t first_;
  std::optional<std::int64_t> last_;
  std::shared_ptr<const Generator> at_;
  std::shared_ptr<const Generator> increment_;
};

// ---------------------------------------------------------------------------
// Built-in sequences

/// Φ_N = [offset, offset + N) in Z.
inline FolnerSequence<IntegerGroup> interval_sequence(std::int64_t offset = 0)
{
  std::string name = offset == 0 ? "interval" : "interval@" + std::to_string(offset);
  return FolnerSequence<IntegerGroup>(
      IntegerGroup{}, name, Handedness::two_sided, 1,
      [offset](std::int64_t n) {
        std::vector<std::int64_t> out(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i)
          out[static_cast<std::size_t>(i)] = offset + i;
        return out;
      },
      [offset](std::int64_t n) { return std::vector<std::int64_t>{offset + n - 1}; });
}

/// Φ_N = [-N, N] in Z.
inline FolnerSequence<IntegerGroup> symmetric_interval_sequence()
{
  return FolnerSequence<IntegerGroup>(
      IntegerGroup{}, "symmetric", Handedness::two_sided, 1,
      [](std::int64_t n) {
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(2 * n + 1));
        for (std::int64_t i = -n; i <= n; ++i)
          out.push_back(i);
        return out;
      },
      [](std::int64_t n) { return std::vector<std::int64_t>{-n, n}; });
}

/// Φ_N = [0, N)^d in Z^d.
inline FolnerSequence<LatticeGroup> box_sequence(const LatticeGroup& group)
{
  auto dim = group.dimension();
  return FolnerSequence<LatticeGroup>(group, "box", Handedness::two_sided, 1, [dim](std::int64_t n) {
    std::vector<LatticePoint> out;
    LatticePoint p{std::vector<std::int64_t>(dim, 0)};
    while (true) {
      out.push_back(p);
      std::size_t i = dim;
      while (i > 0) {
        --i;
        if (p.coords[i] + 1 < n) {
          ++p.coords[i];
          std::fill(p.coords.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.coords.end(), 0);
          break;
        }
        if (i == 0)
          return out;
      }
    }
  });
}

/// Φ_n = A_{n-1}·h_n with h_n = (1 n)(2 3), n >= 4: a left Følner sequence of
/// pairwise disjoint sets in A(N) that is not right Følner.
inline FolnerSequence<AlternatingGroup> alternating_coset_sequence()
{
  return FolnerSequence<AlternatingGroup>(AlternatingGroup{}, "alt-coset", Handedness::left, 4, [](std::int64_t n) {
    AlternatingGroup alt;
    auto h = transposition_pair(static_cast<int>(n));
    auto sub = alt.up_to_degree(static_cast<std::size_t>(n - 1));
    std::vector<Permutation> out;
    out.reserve(sub.size());
    for (const auto& a : sub)
      out.push_back(a.compose(h));
    return out;
  });
}

// ---------------------------------------------------------------------------
// Defects

namespace detail {

template <CountableGroup G, class Shift>
Rational symmetric_difference_ratio(const std::vector<ElementOf<G>>& set, Shift shift)
{
  std::unordered_set<ElementOf<G>> lookup(set.begin(), set.end());
  std::int64_t outside = 0;
  for (const auto& x : set)
    if (!lookup.count(shift(x)))
      ++outside;
  // |A △ sA| = 2 |sA \ A| because |sA| = |A|.
  return Rational(2 * outside, static_cast<std::int64_t>(set.size()));
}

} // namespace detail

/// |Φ_N △ gΦ_N| / |Φ_N|, exact, in [0, 2].
template <CountableGroup G>
Rational left_defect(const FolnerSequence<G>& phi, std::int64_t n, const ElementOf<G>& g)
{
  const auto& group = phi.group();
  return detail::symmetric_difference_ratio<G>(phi.at(n), [&](const auto& x) { return group.multiply(g, x); });
}

/// |Φ_N △ Φ_N g| / |Φ_N|.
template <CountableGroup G>
Rational right_defect(const FolnerSequence<G>& phi, std::int64_t n, const ElementOf<G>& g)
{
  const auto& group = phi.group();
  return detail::symmetric_difference_ratio<G>(phi.at(n), [&](const auto& x) { return group.multiply(x, g); });
}

/// N ↦ Φ_N⁻¹. Left and right swap; discrete groups are unimodular so no
/// correction is needed.
template <CountableGroup G>
FolnerSequence<G> invert(const FolnerSequence<G>& phi)
{
  Handedness hand = phi.handedness() == Handedness::left    ? Handedness::right
                    : phi.handedness() == Handedness::right ? Handedness::left
                                                            : Handedness::two_sided;
  auto name = phi.name();
  if (name.size() > 4 && name.substr(name.size() - 4) == "^inv")
    name = name.substr(0, name.size() - 4);
  else
    name += "^inv";

  auto at = [phi](std::int64_t n) { return inverse_set(phi.group(), phi.at(n)); };
  typename FolnerSequence<G>::Generator inc;
  if (phi.nested())
    inc = [phi](std::int64_t n) { return inverse_set(phi.group(), phi.increment(n)); };
  auto out = FolnerSequence<G>(phi.group(), name, hand, phi.first_index(), at, inc);
  return phi.last_index() ? out.with_last_index(*phi.last_index()) : out;
}

/// N ↦ Φ_N·h_N. Right translation leaves every left defect unchanged, so a
/// left (or two-sided) sequence stays left Følner. A right-only sequence has
/// no such guarantee and is rejected.
template <CountableGroup G>
FolnerSequence<G> translated(const FolnerSequence<G>& phi, std::function<ElementOf<G>(std::int64_t)> shifts,
                             std::string shift_name = "h")
{
  if (phi.handedness() == Handedness::right)
    throw DomainError("right translation does not preserve the right Følner property");
  auto at = [phi, shifts](std::int64_t n) {
    auto set = phi.at(n);
    auto h = shifts(n);
    for (auto& x : set)
      x = phi.group().multiply(x, h);
    return set;
  };
  auto out = FolnerSequence<G>(phi.group(), phi.name() + "*" + shift_name, Handedness::left, phi.first_index(), at);
  return phi.last_index() ? out.with_last_index(*phi.last_index()) : out;
}

// ---------------------------------------------------------------------------
// Reiter weights

/// A finitely supported probability density on a discrete group.
template <CountableGroup G>
class ReiterWeights {
public:
  using Element = ElementOf<G>;

  ReiterWeights() = default;
  explicit ReiterWeights(std::map<Element, Rational> weights) : weights_(std::move(weights)) {}

  Rational weight(const Element& x) const
  {
    auto it = weights_.find(x);
    return it == weights_.end() ? Rational(0) : it->second;
  }

  Rational total() const
  {
    Rational t(0);
    for (const auto& [x, w] : weights_)
      t += w;
    return t;
  }

  /// Weights are non-negative and sum to exactly 1.
  bool valid() const
  {
    for (const auto& [x, w] : weights_)
      if (w < Rational(0))
        return false;
    return total() == Rational(1);
  }

  std::vector<Element> support() const
  {
    std::vector<Element> out;
    for (const auto& [x, w] : weights_)
      if (w != Rational(0))
        out.push_back(x);
    return out;
  }

  const std::map<Element, Rational>& table() const { return weights_; }
  std::map<Element, Rational>& table() { return weights_; }

private:
  std::map<Element, Rational> weights_;
};

/// Uniform weights 1/|Φ_N| on Φ_N.
template <CountableGroup G>
ReiterWeights<G> reiter_from_folner(const FolnerSequence<G>& phi, std::int64_t n)
{
  auto set = phi.at(n);
  Rational w(1, static_cast<std::int64_t>(set.size()));
  std::map<ElementOf<G>, Rational> table;
  for (const auto& x : set)
    table[x] = w;
  return ReiterWeights<G>(std::move(table));
}

/// w(x) = |Φ_N ∩ xΦ_N| / |Φ_N|², the normalized autocorrelation 1_Φ * 1_Φ^*.
template <CountableGroup G>
ReiterWeights<G> two_sided_reiter(const FolnerSequence<G>& phi, std::int64_t n)
{
  const auto& group = phi.group();
  auto set = phi.at(n);
  std::map<ElementOf<G>, std::int64_t> counts;
  // x = a b⁻¹ ranges over pairs with a = x b, so each x is hit |Φ ∩ xΦ| times.
  for (const auto& a : set)
    for (const auto& b : set)
      ++counts[group.multiply(a, group.inverse(b))];
  auto size = static_cast<std::int64_t>(set.size());
  std::map<ElementOf<G>, Rational> table;
  for (const auto& [x, c] : counts)
    table.emplace(x, Rational(c, size * size));
  return ReiterWeights<G>(std::move(table));
}

/// Strict superlevel set {x : w(x) > h}.
template <CountableGroup G>
std::vector<ElementOf<G>> slice(const ReiterWeights<G>& w, const Rational& h)
{
  if (h <= Rational(0))
    throw DomainError("slice level must be positive, got " + to_string(h));
  std::vector<ElementOf<G>> out;
  for (const auto& [x, v] : w.table())
    if (v > h)
      out.push_back(x);
  return out;
}

/// Layer-cake check: with 0 = h_0 < h_1 < ... < h_k the distinct weight
/// values, every weight must equal Σ_j (h_{j+1} - h_j)·1[x ∈ {w > h_j}], and
/// the layers Σ_j (h_{j+1} - h_j)·|{w > h_j}| must carry total mass 1.
template <CountableGroup G>
bool unslice_check(const ReiterWeights<G>& w)
{
  std::vector<Rational> levels{Rational(0)};
  for (const auto& [x, v] : w.table())
    levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.front() < Rational(0))
    return false;

  std::map<ElementOf<G>, Rational> rebuilt;
  Rational mass(0);
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    Rational thickness = levels[j + 1] - levels[j];
    std::vector<ElementOf<G>> layer;
    if (levels[j] == Rational(0)) {
      for (const auto& [x, v] : w.table())
        if (v > Rational(0))
          layer.push_back(x);
    } else {
      layer = slice(w, levels[j]);
    }
    for (const auto& x : layer)
      rebuilt[x] += thickness;
    mass += thickness * Rational(static_cast<std::int64_t>(layer.size()));
  }
  for (const auto& [x, v] : w.table()) {
    auto it = rebuilt.find(x);
    Rational r = it == rebuilt.end() ? Rational(0) : it->second;
    if (r != v)
      return false;
  }
  return mass == Rational(1);
}

} // namespace amenable
