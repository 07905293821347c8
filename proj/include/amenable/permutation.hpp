#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "errors.hpp"
#include "group.hpp"

namespace amenable {

/// A finitely supported bijection of {1, 2, 3, ...}.
///
/// Stored as the image array of 1..degree() with trailing fixed points
/// stripped, so two permutations are equal iff their payloads are equal.
/// Composition is right-to-left: (a * b)(x) = a(b(x)).
class Permutation {
public:
  using Point = std::uint32_t;
  using Images = boost::container::small_vector<Point, 12>;

  Permutation() = default;

  /// images[k] is the image of k + 1. Throws DomainError unless bijective.
  static Permutation from_images(const std::vector<Point>& images)
  {
    Images img(images.begin(), images.end());
    std::vector<bool> seen(img.size() + 1, false);
    for (auto p : img) {
      if (p < 1 || p > img.size() || seen[p])
        throw DomainError("image list is not a permutation of 1.." + std::to_string(img.size()));
      seen[p] = true;
    }
    return Permutation(std::move(img));
  }

  static Permutation from_cycles(const std::vector<std::vector<Point>>& cycles)
  {
    Point n = 0;
    for (const auto& c : cycles)
      for (auto p : c) {
        if (p < 1)
          throw DomainError("permutation points are positive integers");
        n = std::max(n, p);
      }
    Images img(n);
    std::iota(img.begin(), img.end(), Point{1});
    std::vector<bool> used(n + 1, false);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (used[c[i]])
          throw DomainError("cycles are not disjoint at point " + std::to_string(c[i]));
        used[c[i]] = true;
        img[c[i] - 1] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(img));
  }

  /// Cycle notation, e.g. "(1 5)(2 3)"; "()" is the identity. Commas may
  /// separate points.
  static Permutation parse(std::string_view text)
  {
    std::vector<std::vector<Point>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t'))
        ++i;
    };
    skip_ws();
    if (i == text.size())
      throw DomainError("empty permutation string (use \"()\" for the identity)");
    while (i < text.size()) {
      if (text[i] != '(')
        throw DomainError("expected '(' in permutation '" + std::string(text) + "'");
      ++i;
      std::vector<Point> cycle;
      while (true) {
        while (i < text.size() && (text[i] == ' ' || text[i] == ','))
          ++i;
        if (i == text.size())
          throw DomainError("unterminated cycle in '" + std::string(text) + "'");
        if (text[i] == ')') {
          ++i;
          break;
        }
        if (text[i] < '0' || text[i] > '9')
          throw DomainError("unexpected character in permutation '" + std::string(text) + "'");
        std::uint64_t v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9')
          v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
        if (v == 0 || v > 1'000'000)
          throw DomainError("permutation point out of range in '" + std::string(text) + "'");
        cycle.push_back(static_cast<Point>(v));
      }
      if (!cycle.empty())
        cycles.push_back(std::move(cycle));
      skip_ws();
    }
    return from_cycles(cycles);
  }

  Point operator()(Point x) const { return x >= 1 && x <= img_.size() ? img_[x - 1] : x; }

  /// Largest moved point, 0 for the identity.
  Point degree() const { return static_cast<Point>(img_.size()); }
  bool is_identity() const { return img_.empty(); }
  const Images& images() const { return img_; }

  /// The (point, image) pairs with point != image, ascending by point.
  std::vector<std::pair<Point, Point>> support_pairs() const
  {
    std::vector<std::pair<Point, Point>> out;
    for (Point k = 1; k <= degree(); ++k)
      if (img_[k - 1] != k)
        out.emplace_back(k, img_[k - 1]);
    return out;
  }

  int sign() const
  {
    std::size_t n = img_.size();
    boost::container::small_vector<bool, 32> seen(n, false);
    std::size_t transpositions = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s])
        continue;
      std::size_t len = 0;
      for (std::size_t x = s; !seen[x]; x = img_[x] - 1) {
        seen[x] = true;
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
  }

  Permutation compose(const Permutation& rhs) const
  {
    std::size_t n = std::max(img_.size(), rhs.img_.size());
    Images out(n);
    for (std::size_t k = 0; k < n; ++k)
      out[k] = (*this)(rhs(static_cast<Point>(k + 1)));
    return Permutation(std::move(out));
  }

  Permutation inverse() const
  {
    Images out(img_.size());
    for (std::size_t k = 0; k < img_.size(); ++k)
      out[img_[k] - 1] = static_cast<Point>(k + 1);
    return Permutation(std::move(out));
  }

  std::string to_cycle_string() const
  {
    if (img_.empty())
      return "()";
    std::string s;
    std::vector<bool> seen(img_.size() + 1, false);
    for (Point start = 1; start <= degree(); ++start) {
      if (seen[start] || img_[start - 1] == start)
        continue;
      s += "(";
      Point x = start;
      bool first = true;
      while (!seen[x]) {
        seen[x] = true;
        if (!first)
          s += " ";
        s += std::to_string(x);
        first = false;
        x = (*this)(x);
      }
      s += ")";
    }
    return s;
  }

  bool operator==(const Permutation& other) const { return img_ == other.img_; }

  /// Degree first, then lexicographic on images: the enumeration order of
  /// the permutation groups below.
  std::strong_ordering operator<=>(const Permutation& other) const
  {
    if (img_.size() != other.img_.size())
      return img_.size() <=> other.img_.size();
    for (std::size_t k = 0; k < img_.size(); ++k)
      if (img_[k] != other.img_[k])
        return img_[k] <=> other.img_[k];
    return std::strong_ordering::equal;
  }

private:
  explicit Permutation(Images img) : img_(std::move(img)) { trim(); }

  void trim()
  {
    while (!img_.empty() && img_.back() == img_.size())
      img_.pop_back();
  }

  Images img_;
};

} // namespace amenable

template <>
struct std::hash<amenable::Permutation> {
  std::size_t operator()(const amenable::Permutation& p) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

namespace amenable {

/// S(N) (EvenOnly = false) or A(N) (EvenOnly = true): finitely supported
/// permutations of the positive integers.
///
/// Enumeration is graded by degree (largest moved point), lexicographic on
/// the image array within a grade. exhaustion(n) is everything supported in
/// {1, ..., n + 3}.
template <bool EvenOnly>
class FinitaryPermutationGroup {
public:
  using Element = Permutation;

  static constexpr int kExhaustionOffset = 3;

  std::string name() const { return EvenOnly ? "alt" : "sym"; }
  Element identity() const { return {}; }

  Element multiply(const Element& a, const Element& b) const
  {
    check(a);
    check(b);
    return a.compose(b);
  }

  Element inverse(const Element& a) const
  {
    check(a);
    return a.inverse();
  }

  bool contains(const Element& a) const { return !EvenOnly || a.sign() == 1; }

  /// Number of group elements of degree exactly n.
  static std::size_t grade_size(std::size_t n)
  {
    if (n == 0)
      return 1;
    if (n == 1)
      return 0;
    std::size_t fact = 1;
    for (std::size_t k = 2; k < n; ++k)
      fact *= k;
    std::size_t moving = fact * n - fact;
    if (!EvenOnly)
      return moving;
    return n == 2 ? 0 : moving / 2;
  }

  /// All elements of degree exactly n in enumeration order.
  std::vector<Element> grade(std::size_t n) const
  {
    std::vector<Element> out;
    if (n == 0) {
      out.push_back(identity());
      return out;
    }
    out.reserve(grade_size(n));
    std::vector<Permutation::Point> img(n);
    std::iota(img.begin(), img.end(), Permutation::Point{1});
    do {
      if (img.back() == n)
        continue;
      auto p = Permutation::from_images(img);
      if (contains(p))
        out.push_back(std::move(p));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
  }

  /// All elements supported in {1, ..., n} (S_n or A_n), in enumeration order.
  std::vector<Element> up_to_degree(std::size_t n) const
  {
    std::vector<Element> out;
    for (std::size_t d = 0; d <= n; ++d) {
      auto g = grade(d);
      out.insert(out.end(), std::make_move_iterator(g.begin()), std::make_move_iterator(g.end()));
    }
    return out;
  }

  Element enumerate(std::size_t index) const
  {
    for (std::size_t n = 0;; ++n) {
      auto size = grade_size(n);
      if (index < size)
        return grade(n)[index];
      index -= size;
    }
  }

  std::vector<Element> exhaustion(int n) const
  {
    require_level(n);
    return up_to_degree(static_cast<std::size_t>(n) + kExhaustionOffset);
  }

  int exhaustion_level(const Element& a) const
  {
    return std::max(1, static_cast<int>(a.degree()) - kExhaustionOffset);
  }

  std::string format(const Element& a) const { return a.to_cycle_string(); }

  Element parse(std::string_view text) const
  {
    auto p = Permutation::parse(text);
    if (!contains(p))
      throw DomainError("odd permutation " + p.to_cycle_string() + " is not in A(N)");
    return p;
  }

private:
  void check(const Element& a) const
  {
    if (!contains(a))
      throw BackendMismatch("odd permutation " + a.to_cycle_string() + " is an S(N) element, not an A(N) element");
  }
};

using SymmetricGroup = FinitaryPermutationGroup<false>;
using AlternatingGroup = FinitaryPermutationGroup<true>;

template <class G>
inline constexpr bool is_permutation_group_v = std::is_same_v<typename G::Element, Permutation>;

/// Parity of a permutation; Unsupported for every other backend.
template <CountableGroup G>
int sign(const G&, const ElementOf<G>& a)
{
  if constexpr (is_permutation_group_v<G>)
    return a.sign();
  else
    throw Unsupported("sign is only defined for permutation backends");
}

/// (1 n)(2 3), the coset representative used for the A(N) Følner sequence.
inline Permutation transposition_pair(int n)
{
  if (n < 4)
    throw DomainError("transposition_pair needs n >= 4, got " + std::to_string(n));
  auto m = static_cast<Permutation::Point>(n);
  return Permutation::from_cycles({{1, m}, {2, 3}});
}

} // namespace amenable
