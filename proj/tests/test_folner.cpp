#include <set>

#include <gtest/gtest.h>

#include "amenable/folner.hpp"
#include "amenable/random.hpp"
#include "amenable/sets.hpp"
#include "oracles.hpp"

using namespace amenable;

namespace {

std::set<std::int64_t> as_set(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

/// Brute-force |A △ (g + A)| / |A| on integers.
Rational oracle_defect(const std::vector<std::int64_t>& a, std::int64_t g)
{
  std::set<std::int64_t> shifted;
  for (auto x : a)
    shifted.insert(x + g);
  return Rational(oracle::sym_diff_size(as_set(a), shifted), static_cast<std::int64_t>(a.size()));
}

FolnerSequence<IntegerGroup> constant_block(std::int64_t len)
{
  return FolnerSequence<IntegerGroup>(IntegerGroup{}, "block", Handedness::two_sided, 1,
                                      [len](std::int64_t) { return integer_range(0, len - 1); });
}

ReiterWeights<IntegerGroup> triangle()
{
  return ReiterWeights<IntegerGroup>({{-1, Rational(1, 4)}, {0, Rational(1, 2)}, {1, Rational(1, 4)}});
}

} // namespace

TEST(Defects, IntervalShiftByOne)
{
  auto phi = interval_sequence();
  EXPECT_EQ(left_defect(phi, 10, std::int64_t{1}), Rational(2, 10));
  EXPECT_EQ(right_defect(phi, 10, std::int64_t{1}), Rational(2, 10));
  EXPECT_EQ(left_defect(phi, 10, std::int64_t{0}), Rational(0));
}

TEST(Defects, IntervalFormulaMatchesOracle)
{
  auto phi = interval_sequence();
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto n = rng.range(1, 60);
    auto g = rng.range(-80, 80);
    auto expected = oracle_defect(phi.at(n), g);
    EXPECT_EQ(left_defect(phi, n, g), expected);
    auto m = g < 0 ? -g : g;
    if (n > m) {
      EXPECT_EQ(left_defect(phi, n, g), Rational(2 * m, n));
    }
  }
}

TEST(Defects, AlternatingCosetsAreLeftInvariant)
{
  auto phi = alternating_coset_sequence();
  AlternatingGroup alt;
  for (const auto& g : alt.exhaustion(1))
    EXPECT_EQ(left_defect(phi, 5, g), Rational(0)) << alt.format(g);
}

TEST(Defects, AlternatingRightDefectMatchesBruteForce)
{
  auto phi = alternating_coset_sequence();
  AlternatingGroup alt;
  auto set = phi.at(5);
  ASSERT_EQ(set.size(), 12u);
  auto g = alt.parse("(1 2 3)");
  std::set<Permutation> a(set.begin(), set.end()), ag;
  for (const auto& x : set)
    ag.insert(x.compose(g));
  std::vector<Permutation> diff;
  std::set_symmetric_difference(a.begin(), a.end(), ag.begin(), ag.end(), std::back_inserter(diff));
  auto expected = Rational(static_cast<std::int64_t>(diff.size()), 12);
  EXPECT_EQ(right_defect(phi, 5, g), expected);
  EXPECT_GT(expected, Rational(0));
}

TEST(Sequences, IndicesBelowFirstRejected)
{
  EXPECT_THROW(alternating_coset_sequence().at(3), DomainError);
  EXPECT_THROW(interval_sequence().at(0), DomainError);
  EXPECT_THROW(interval_sequence().with_last_index(5).at(6), DomainError);
}

TEST(Sequences, NestedIncrementsRebuildSets)
{
  auto phi = symmetric_interval_sequence();
  std::set<std::int64_t> acc;
  for (std::int64_t n = phi.first_index(); n < phi.first_index() + 8; ++n) {
    for (auto x : phi.increment(n))
      EXPECT_TRUE(acc.insert(x).second);
    EXPECT_EQ(acc, as_set(phi.at(n)));
  }
  EXPECT_THROW(alternating_coset_sequence().increment(5), Unsupported);
}

TEST(Invert, IntervalBecomesNegative)
{
  auto inv = invert(interval_sequence());
  EXPECT_EQ(as_set(inv.at(10)), as_set(integer_range(-9, 0)));
  EXPECT_EQ(inv.handedness(), Handedness::two_sided);
}

TEST(Invert, SymmetricIntervalIsFixed)
{
  auto phi = symmetric_interval_sequence();
  auto inv = invert(phi);
  for (std::int64_t n = 1; n < 6; ++n)
    EXPECT_EQ(as_set(inv.at(n)), as_set(phi.at(n)));
}

TEST(Invert, TwiceIsIdentity)
{
  auto phi = alternating_coset_sequence();
  auto twice = invert(invert(phi));
  EXPECT_EQ(twice.name(), phi.name());
  EXPECT_EQ(twice.handedness(), Handedness::left);
  for (std::int64_t n = 4; n <= 6; ++n)
    EXPECT_EQ(twice.at(n), phi.at(n));
}

TEST(Invert, AlternatingBecomesRightInvariant)
{
  auto inv = invert(alternating_coset_sequence());
  EXPECT_EQ(inv.handedness(), Handedness::right);
  AlternatingGroup alt;
  for (const auto& g : alt.exhaustion(1))
    EXPECT_EQ(right_defect(inv, 5, g), Rational(0));
}

TEST(Translated, IntervalShiftedBySquare)
{
  auto t = translated<IntegerGroup>(interval_sequence(), [](std::int64_t n) { return n * n; });
  EXPECT_EQ(as_set(t.at(7)), as_set(integer_range(49, 55)));
  EXPECT_EQ(left_defect(t, 10, std::int64_t{1}), Rational(2, 10));
}

TEST(Translated, ThickBlocksHaveFullDensity)
{
  auto t = translated<IntegerGroup>(constant_block(5), [](std::int64_t n) { return 10 * n; });
  auto report = density_along(periodic_blocks(10, 0, 5), t, index_range(1, 50));
  for (const auto& row : report.rows)
    EXPECT_EQ(row.ratio, Rational(1)) << row.index;
}

TEST(Translated, RightOnlySequenceRejected)
{
  auto inv = invert(alternating_coset_sequence());
  EXPECT_THROW(translated<AlternatingGroup>(inv, [](std::int64_t) { return Permutation{}; }), DomainError);
}

TEST(Reiter, UniformOnInterval)
{
  auto w = reiter_from_folner(interval_sequence(), 4);
  for (std::int64_t x = 0; x < 4; ++x)
    EXPECT_EQ(w.weight(x), Rational(1, 4));
  EXPECT_EQ(w.weight(4), Rational(0));
  EXPECT_TRUE(w.valid());
  EXPECT_EQ(w.support(), integer_range(0, 3));
}

TEST(Reiter, TwoSidedOnPair)
{
  auto w = two_sided_reiter(interval_sequence(), 2);
  EXPECT_EQ(w.table(), triangle().table());
  EXPECT_TRUE(w.valid());
}

TEST(Reiter, TwoSidedMatchesConvolutionOracle)
{
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    auto n = rng.range(1, 25);
    auto w = two_sided_reiter(interval_sequence(), n);
    EXPECT_EQ(w.total(), Rational(1));
    auto phi = as_set(integer_range(0, n - 1));
    for (std::int64_t x = -n; x <= n; ++x) {
      std::int64_t overlap = 0;
      for (auto y : phi)
        overlap += phi.count(y - x) ? 1 : 0;
      EXPECT_EQ(w.weight(x), Rational(overlap, n * n)) << n << " " << x;
      EXPECT_EQ(w.weight(x), w.weight(-x));
      EXPECT_LE(w.weight(x), w.weight(0));
    }
  }
}

TEST(Reiter, TwoSidedOnAlternatingCoset)
{
  auto w = two_sided_reiter(alternating_coset_sequence(), 5);
  EXPECT_TRUE(w.valid());
  EXPECT_EQ(w.weight(Permutation{}), Rational(1, 12));
  EXPECT_TRUE(unslice_check(w));
}

TEST(Slice, TriangleLevels)
{
  auto w = triangle();
  EXPECT_EQ(slice(w, Rational(1, 3)), (std::vector<std::int64_t>{0}));
  EXPECT_EQ(slice(w, Rational(1, 5)), (std::vector<std::int64_t>{-1, 0, 1}));
  EXPECT_TRUE(slice(w, Rational(1, 2)).empty());
  EXPECT_THROW(slice(w, Rational(0)), DomainError);
}

TEST(Slice, NestedInLevel)
{
  Rng rng(23);
  auto w = two_sided_reiter(interval_sequence(), 9);
  for (int trial = 0; trial < 100; ++trial) {
    Rational h(static_cast<std::int64_t>(rng.range(1, 40)), 400);
    Rational h2 = h + Rational(static_cast<std::int64_t>(rng.range(0, 40)), 400);
    auto lo = as_set(slice(w, h));
    for (auto x : slice(w, h2))
      EXPECT_TRUE(lo.count(x));
  }
}

TEST(Unslice, LayerCake)
{
  EXPECT_TRUE(unslice_check(triangle()));
  EXPECT_TRUE(unslice_check(reiter_from_folner(interval_sequence(), 7)));
  auto bad = triangle();
  bad.table()[1] = Rational(1, 3);
  EXPECT_FALSE(unslice_check(bad));
  auto negative = triangle();
  negative.table()[5] = Rational(-1, 8);
  EXPECT_FALSE(unslice_check(negative));
}
