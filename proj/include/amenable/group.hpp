#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace amenable {

/// A countable discrete group with a fixed enumeration and a nested
/// exhaustion K_1 ⊆ K_2 ⊆ ... by finite sets.
///
/// Elements must be regular, totally ordered values with a std::hash
/// specialization; containers keyed on them are used throughout.
template <class G>
concept CountableGroup = requires(const G& group, const typename G::Element& a, std::size_t index, int level,
                                  std::string_view text) {
  typename G::Element;
  { group.name() } -> std::convertible_to<std::string>;
  { group.identity() } -> std::same_as<typename G::Element>;
  { group.multiply(a, a) } -> std::same_as<typename G::Element>;
  { group.inverse(a) } -> std::same_as<typename G::Element>;
  { group.enumerate(index) } -> std::same_as<typename G::Element>;
  { group.exhaustion(level) } -> std::same_as<std::vector<typename G::Element>>;
  { group.exhaustion_level(a) } -> std::convertible_to<int>;
  { group.format(a) } -> std::convertible_to<std::string>;
  { group.parse(text) } -> std::same_as<typename G::Element>;
  { a == a } -> std::convertible_to<bool>;
  { a < a } -> std::convertible_to<bool>;
  { std::hash<typename G::Element>{}(a) } -> std::convertible_to<std::size_t>;
};

template <class G>
using ElementOf = typename G::Element;

/// Exhaustion level n must be at least 1.
inline void require_level(int n)
{
  if (n < 1)
    throw DomainError("exhaustion level must be >= 1, got " + std::to_string(n));
}

/// The integers under addition.
///
/// Enumeration: 0, 1, -1, 2, -2, ...; exhaustion(n) = [-n, n] listed in
/// enumeration order.
class IntegerGroup {
public:
  using Element = std::int64_t;

  std::string name() const { return "z"; }
  Element identity() const { return 0; }
  Element multiply(Element a, Element b) const { return a + b; }
  Element inverse(Element a) const { return -a; }

  Element enumerate(std::size_t i) const
  {
    if (i == 0)
      return 0;
    auto k = static_cast<Element>((i + 1) / 2);
    return (i % 2 == 1) ? k : -k;
  }

  std::vector<Element> exhaustion(int n) const
  {
    require_level(n);
    std::vector<Element> out;
    out.reserve(2 * static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i <= 2 * static_cast<std::size_t>(n); ++i)
      out.push_back(enumerate(i));
    return out;
  }

  int exhaustion_level(Element a) const
  {
    auto m = a < 0 ? -a : a;
    return static_cast<int>(std::max<Element>(1, m));
  }

  std::string format(Element a) const { return std::to_string(a); }

  Element parse(std::string_view text) const
  {
    try {
      std::size_t pos = 0;
      auto v = std::stoll(std::string(text), &pos);
      if (pos != text.size())
        throw DomainError("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw DomainError("not an integer: '" + std::string(text) + "'");
    }
  }
};

/// A point of the lattice Z^d.
struct LatticePoint {
  std::vector<std::int64_t> coords;

  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;
};

} // namespace amenable

template <>
struct std::hash<amenable::LatticePoint> {
  std::size_t operator()(const amenable::LatticePoint& p) const noexcept
  {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto c : p.coords)
      h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

namespace amenable {

/// Z^d under coordinatewise addition. The dimension is a runtime value so
/// points of different dimension can meet; that raises BackendMismatch.
///
/// Enumeration walks sup-norm shells outward, lexicographic inside a shell;
/// exhaustion(n) is the cube [-n, n]^d in that order.
class LatticeGroup {
public:
  using Element = LatticePoint;

  explicit LatticeGroup(std::size_t dim) : dim_(dim)
  {
    if (dim == 0)
      throw DomainError("lattice dimension must be positive");
  }

  std::size_t dimension() const { return dim_; }
  std::string name() const { return "z" + std::to_string(dim_); }
  Element identity() const { return Element{std::vector<std::int64_t>(dim_, 0)}; }

  Element multiply(const Element& a, const Element& b) const
  {
    check(a);
    check(b);
    Element out = a;
    for (std::size_t i = 0; i < dim_; ++i)
      out.coords[i] += b.coords[i];
    return out;
  }

  Element inverse(const Element& a) const
  {
    check(a);
    Element out = a;
    for (auto& c : out.coords)
      c = -c;
    return out;
  }

  Element enumerate(std::size_t index) const
  {
    std::size_t before = 0;
    for (std::int64_t r = 0;; ++r) {
      auto shell = shell_size(r);
      if (index < before + shell) {
        auto points = shell_points(r);
        return points[index - before];
      }
      before += shell;
    }
  }

  std::vector<Element> exhaustion(int n) const
  {
    require_level(n);
    std::vector<Element> out;
    for (std::int64_t r = 0; r <= n; ++r) {
      auto shell = shell_points(r);
      out.insert(out.end(), shell.begin(), shell.end());
    }
    return out;
  }

  int exhaustion_level(const Element& a) const
  {
    check(a);
    return static_cast<int>(std::max<std::int64_t>(1, sup_norm(a)));
  }

  std::string format(const Element& a) const
  {
    std::string s = "(";
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
      if (i)
        s += ",";
      s += std::to_string(a.coords[i]);
    }
    return s + ")";
  }

  Element parse(std::string_view text) const
  {
    std::string body(text);
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
      throw DomainError("lattice point must look like (x,y,...): '" + body + "'");
    body = body.substr(1, body.size() - 2);
    Element out;
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      auto piece = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      out.coords.push_back(IntegerGroup{}.parse(piece));
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
    check(out);
    return out;
  }

  static std::int64_t sup_norm(const Element& a)
  {
    std::int64_t m = 0;
    for (auto c : a.coords)
      m = std::max(m, c < 0 ? -c : c);
    return m;
  }

private:
  void check(const Element& a) const
  {
    if (a.coords.size() != dim_)
      throw BackendMismatch("lattice point of dimension " + std::to_string(a.coords.size()) + " used in " + name());
  }

  std::size_t shell_size(std::int64_t r) const
  {
    auto pow = [&](std::int64_t b) {
      std::size_t v = 1;
      for (std::size_t i = 0; i < dim_; ++i)
        v *= static_cast<std::size_t>(b);
      return v;
    };
    return r == 0 ? 1 : pow(2 * r + 1) - pow(2 * r - 1);
  }

  std::vector<Element> shell_points(std::int64_t r) const
  {
    std::vector<Element> out;
    Element p{std::vector<std::int64_t>(dim_, -r)};
    while (true) {
      if (sup_norm(p) == r)
        out.push_back(p);
      std::size_t i = dim_;
      while (i > 0) {
        --i;
        if (p.coords[i] < r) {
          ++p.coords[i];
          for (std::size_t j = i + 1; j < dim_; ++j)
            p.coords[j] = -r;
          break;
        }
        if (i == 0)
          return out;
      }
    }
  }

  std::size_t dim_;
};

/// Products of finite sets, A·B = {ab}, deduplicated in first-seen order.
template <CountableGroup G>
std::vector<ElementOf<G>> product_set(const G& group, const std::vector<ElementOf<G>>& a,
                                      const std::vector<ElementOf<G>>& b)
{
  std::vector<ElementOf<G>> out;
  std::unordered_set<ElementOf<G>> seen;
  for (const auto& x : a)
    for (const auto& y : b) {
      auto p = group.multiply(x, y);
      if (seen.insert(p).second)
        out.push_back(std::move(p));
    }
  return out;
}

template <CountableGroup G>
std::vector<ElementOf<G>> inverse_set(const G& group, const std::vector<ElementOf<G>>& a)
{
  std::vector<ElementOf<G>> out;
  out.reserve(a.size());
  for (const auto& x : a)
    out.push_back(group.inverse(x));
  return out;
}

/// Group membership of an element in exhaustion(n), without materializing it.
template <CountableGroup G>
bool in_exhaustion(const G& group, const ElementOf<G>& a, int n)
{
  return group.exhaustion_level(a) <= n;
}

} // namespace amenable
