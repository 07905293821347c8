#include <gtest/gtest.h>

#include "amenable/constructions.hpp"
#include "amenable/random.hpp"
#include "amenable/symbolic.hpp"

using namespace amenable;

namespace {

Pattern<IntegerGroup> cells(std::vector<std::int64_t> domain, std::vector<char> bits)
{
  return Pattern<IntegerGroup>{std::move(domain), std::move(bits)};
}

} // namespace

TEST(OrbitPoint, EvensShiftedByOne)
{
  IntegerGroup z;
  auto p = orbit_point(z, residue_class(2, 0), std::int64_t{1}, integer_range(0, 3));
  EXPECT_EQ(p.bits, (std::vector<char>{0, 1, 0, 1}));
  auto id = orbit_point(z, residue_class(2, 0), std::int64_t{0}, integer_range(0, 3));
  EXPECT_EQ(id.bits, (std::vector<char>{1, 0, 1, 0}));
  for (std::int64_t g = -5; g <= 5; ++g)
    EXPECT_EQ(orbit_point(z, empty_set(z), g, integer_range(0, 3)).bits, (std::vector<char>(4, 0)));
}

TEST(OrbitPoint, RightMultiplicationInPermutations)
{
  SymmetricGroup s;
  auto q = finite_set(s, {s.parse("(1 2 3)")});
  auto domain = std::vector<Permutation>{s.parse("(1 2)"), s.parse("()")};
  auto g = s.parse("(2 3)");
  auto p = orbit_point(s, q, g, domain);
  EXPECT_EQ(p.bits[0], s.multiply(domain[0], g) == s.parse("(1 2 3)"));
  EXPECT_EQ(p.bits[1], 0);
  EXPECT_TRUE(matches(s, q, g, p));
}

TEST(Patterns, ParseAndFormat)
{
  IntegerGroup z;
  auto p = parse_pattern(z, "0:1,1:0,2:0");
  EXPECT_EQ(p, cells({0, 1, 2}, {1, 0, 0}));
  EXPECT_EQ(p.format(z), "0:1,1:0,2:0");
  EXPECT_THROW(parse_pattern(z, "0:2"), InvalidConfig);
  EXPECT_THROW(parse_pattern(z, "0"), InvalidConfig);
  EXPECT_THROW(parse_pattern(z, "0:1,0:0"), InvalidConfig);

  LatticeGroup z2(2);
  auto q = parse_pattern(z2, "(0,0):1,(1,-1):0");
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(z2.format(q.domain[1]), "(1,-1)");
}

TEST(Patterns, AllPatternsCount)
{
  auto all = all_patterns<IntegerGroup>({0, 1, 2});
  EXPECT_EQ(all.size(), 8u);
  EXPECT_EQ(all[5].bits, (std::vector<char>{1, 0, 1}));
  EXPECT_THROW(all_patterns<IntegerGroup>(integer_range(0, 20)), DomainError);
}

TEST(EmpiricalMeasure, EvensHalf)
{
  IntegerGroup z;
  auto m = empirical_measure(z, residue_class(2, 0), interval_sequence(), 1000, cells({0}, {1}));
  EXPECT_EQ(m.frequency, Rational(1, 2));
  EXPECT_EQ(m.matches, 500);
  auto empty = empirical_measure(z, residue_class(2, 0), interval_sequence(), 7, cells({}, {}));
  EXPECT_EQ(empty.frequency, Rational(1));
  auto j = m.to_json(z);
  EXPECT_EQ(j["frequency_num"], 1);
  EXPECT_EQ(j["frequency_den"], 2);
  EXPECT_EQ(j["N"], 1000);
}

TEST(EmpiricalMeasure, CylindersPartitionUnity)
{
  IntegerGroup z;
  auto q = straus_set(Rational(1, 2));
  Rational total(0);
  for (const auto& p : all_patterns<IntegerGroup>({0, 1, 2}))
    total += empirical_measure(z, q, interval_sequence(1), 5000, p).frequency;
  EXPECT_EQ(total, Rational(1));
}

TEST(EmpiricalMeasure, MatchesDirectCount)
{
  Rng rng(61);
  IntegerGroup z;
  for (int trial = 0; trial < 30; ++trial) {
    auto members = rng.subset(-20, 400, 1, 2);
    auto q = finite_set(z, members);
    auto p = all_patterns<IntegerGroup>({0, 1, 3})[rng.below(8)];
    auto n = rng.range(1, 300);
    std::int64_t hits = 0;
    for (std::int64_t g = 0; g < n; ++g)
      hits += (q(g) == static_cast<bool>(p.bits[0]) && q(1 + g) == static_cast<bool>(p.bits[1]) &&
               q(3 + g) == static_cast<bool>(p.bits[2]))
                  ? 1
                  : 0;
    EXPECT_EQ(empirical_measure(z, q, interval_sequence(), n, p).frequency, Rational(hits, n));
  }
}

TEST(EmpiricalMeasure, ShiftChangesFrequencyByAtMostDefect)
{
  Rng rng(62);
  IntegerGroup z;
  auto psi = interval_sequence();
  for (int trial = 0; trial < 100; ++trial) {
    auto q = finite_set(z, rng.subset(-50, 500, rng.range(1, 5), 6));
    auto p = all_patterns<IntegerGroup>({0, 1})[rng.below(4)];
    auto n = rng.range(1, 400);
    auto g = rng.range(-40, 40);
    auto a = empirical_measure(z, q, psi, n, p).frequency;
    auto b = empirical_measure(z, q, psi, n, translate_pattern(z, p, g)).frequency;
    auto diff = a > b ? a - b : b - a;
    EXPECT_LE(diff, left_defect(psi, n, g));
  }
}

TEST(Probe, EvensAndEmpty)
{
  IntegerGroup z;
  auto samples = integer_range(-20, 20);
  auto domain = integer_range(0, 50);
  auto evens = syndetic_orbit_probe(z, residue_class(2, 0), {0, 1}, samples, domain);
  EXPECT_EQ(evens.tested, 41);
  EXPECT_EQ(evens.positives.size(), 41u);
  auto none = syndetic_orbit_probe(z, empty_set(z), {0, 1}, samples, domain);
  EXPECT_TRUE(none.positives.empty());
}

TEST(Probe, AgreesWithDirectCoverCheck)
{
  Rng rng(63);
  IntegerGroup z;
  auto domain = integer_range(0, 30);
  for (int trial = 0; trial < 50; ++trial) {
    auto q = finite_set(z, rng.subset(-20, 80, 1, 3));
    std::vector<std::int64_t> k{0, 1, 2};
    auto samples = integer_range(-10, 10);
    auto report = syndetic_orbit_probe(z, q, k, samples, domain);
    std::vector<std::int64_t> expected;
    for (auto g : samples) {
      bool ok = true;
      for (auto x : domain) {
        bool covered = false;
        for (auto a : k)
          covered = covered || q(x - a + g);
        ok = ok && covered;
      }
      if (ok)
        expected.push_back(g);
    }
    EXPECT_EQ(report.positives, expected);
  }
}

TEST(UniquePattern, DoublingExamples)
{
  IntegerGroup z;
  auto window = integer_range(-20, 40);
  auto q = doubling_example(finite_set(z, {2, 5}));
  EXPECT_TRUE(unique_pattern_check(q, window));
  EXPECT_TRUE(unique_pattern_check(doubling_example(empty_set(z)), window));
  auto corrupted = set_union(q, finite_set(z, {7}));
  EXPECT_FALSE(unique_pattern_check(corrupted, window));
}

TEST(UniquePattern, HoldsForRandomDoublings)
{
  Rng rng(64);
  IntegerGroup z;
  for (int trial = 0; trial < 100; ++trial) {
    auto q = doubling_example(finite_set(z, rng.subset(2, 100, 1, 2)));
    EXPECT_TRUE(unique_pattern_check(q, integer_range(-10, 230)));
  }
}
