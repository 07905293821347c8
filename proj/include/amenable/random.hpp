#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace amenable {

/// Seeded source for randomized trials. Draws are reduced by rejection from
/// raw mt19937_64 output so they match across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a named sub-task.
  static Rng derived(std::uint64_t seed, std::uint64_t stream)
  {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, n).
  std::uint64_t below(std::uint64_t n)
  {
    if (n <= 1)
      return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do
      x = engine_();
    while (x >= limit);
    return x % n;
  }

  /// Uniform on [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi)
  {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  /// Each of [lo, hi] kept with probability num/den, in increasing order.
  std::vector<std::int64_t> subset(std::int64_t lo, std::int64_t hi, std::uint64_t num, std::uint64_t den)
  {
    std::vector<std::int64_t> out;
    for (auto x = lo; x <= hi; ++x)
      if (chance(num, den))
        out.push_back(x);
    return out;
  }

  /// k distinct values from [lo, hi], in draw order.
  std::vector<std::int64_t> distinct(std::int64_t lo, std::int64_t hi, std::size_t k)
  {
    std::vector<std::int64_t> pool;
    for (auto x = lo; x <= hi; ++x)
      pool.push_back(x);
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < k && !pool.empty(); ++i) {
      auto j = below(pool.size());
      out.push_back(pool[j]);
      pool[j] = pool.back();
      pool.pop_back();
    }
    return out;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace amenable
