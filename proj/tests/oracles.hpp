#pragma once

// Independent brute-force references for the tests. Nothing here calls into
// the library beyond plain data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

/// Images of a permutation on 1..n as a plain array (index 0 unused).
using Images = std::vector<int>;

inline Images identity(int n)
{
  Images p(static_cast<std::size_t>(n) + 1);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// (a∘b)(x) = a(b(x)).
inline Images compose(const Images& a, const Images& b)
{
  Images out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    out[x] = a[static_cast<std::size_t>(b[x])];
  return out;
}

inline int sign_by_inversions(const Images& p)
{
  int inversions = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j])
        ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

/// Every permutation of 1..n.
inline std::vector<Images> all_permutations(int n)
{
  std::vector<Images> out;
  Images p = identity(n);
  do
    out.push_back(p);
  while (std::next_permutation(p.begin() + 1, p.end()));
  return out;
}

/// All non-empty subset sums, by bitmask.
inline std::set<std::int64_t> finite_sums(const std::vector<std::int64_t>& xs)
{
  std::set<std::int64_t> out;
  for (std::uint32_t mask = 1; mask < (1u << xs.size()); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (mask >> i & 1u)
        s += xs[i];
    out.insert(s);
  }
  return out;
}

inline std::int64_t sym_diff_size(const std::set<std::int64_t>& a, const std::set<std::int64_t>& b)
{
  std::vector<std::int64_t> d;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
  return static_cast<std::int64_t>(d.size());
}

/// Reference greedy in Z: accept s when s + F stays disjoint from every
/// accepted s' + F' with a different shift, checked pairwise.
inline std::vector<std::int64_t> greedy(const std::vector<std::int64_t>& s, const std::vector<std::int64_t>& f)
{
  std::vector<std::int64_t> chosen;
  for (auto x : s) {
    bool ok = true;
    for (auto y : chosen)
      for (auto a : f)
        for (auto b : f)
          if (a != b && a + x == b + y)
            ok = false;
    for (auto a : f)
      for (auto b : f)
        if (a != b && a + x == b + x)
          ok = false;
    if (ok)
      chosen.push_back(x);
  }
  return chosen;
}

} // namespace oracle
