#include <set>

#include <gtest/gtest.h>

#include "amenable/constructions.hpp"
#include "amenable/random.hpp"
#include "oracles.hpp"

using namespace amenable;

namespace {

/// Removed tails {a_n k + n : k >= 1} listed up to hi.
std::set<std::int64_t> straus_removed(std::int64_t base, std::int64_t hi)
{
  std::set<std::int64_t> out;
  for (int n = 1; (base << n) + n <= hi; ++n)
    for (std::int64_t v = (base << n) + n; v <= hi; v += base << n)
      out.insert(v);
  return out;
}

const NonPwsConstruction<IntegerGroup>& small_non_pws()
{
  static const auto c = non_pws_large_set(IntegerGroup{}, interval_sequence(1), Rational(1, 4), 8,
                                          integer_range(1, 100000), index_range(1, 100000));
  return c;
}

} // namespace

TEST(Straus, FirstProgressionRemovesNine)
{
  auto p = straus_params(Rational(1, 2));
  EXPECT_EQ(p.base, 4);
  EXPECT_EQ(p.modulus(1), 8);
  EXPECT_FALSE(straus_set(Rational(1, 2))(9));
  EXPECT_TRUE(straus_set(Rational(1, 2))(8));
  EXPECT_FALSE(straus_set(Rational(1, 2))(0));
}

TEST(Straus, MembershipMatchesEnumeratedTails)
{
  for (auto eps : {Rational(1, 2), Rational(1, 10), Rational(3, 7)}) {
    auto p = straus_params(eps);
    auto removed = straus_removed(p.base, 20000);
    auto e = straus_set(eps);
    for (std::int64_t x = 1; x <= 20000; ++x)
      ASSERT_EQ(e(x), !removed.count(x)) << x;
  }
}

TEST(Straus, MassBoundAndDensity)
{
  for (auto eps : {Rational(1, 2), Rational(1, 10), Rational(1, 3)}) {
    auto p = straus_params(eps);
    EXPECT_TRUE(p.certified());
    EXPECT_LE(p.removed_mass_bound(), eps / Rational(2));
    auto report = density_along(straus_set(eps), interval_sequence(1), {100000});
    EXPECT_GE(report.rows[0].ratio, Rational(1) - eps);
  }
}

TEST(Straus, EpsilonOutOfRange)
{
  EXPECT_THROW(straus_params(Rational(0)), DomainError);
  EXPECT_THROW(straus_params(Rational(1)), DomainError);
  EXPECT_THROW(straus_set(Rational(-1, 2)), DomainError);
}

TEST(Greedy, Examples)
{
  IntegerGroup z;
  auto s = integer_range(0, 9);
  EXPECT_EQ(greedy_disjoint_cover(z, s, {0, 1}), (std::vector<std::int64_t>{0, 2, 4, 6, 8}));
  EXPECT_EQ(greedy_disjoint_cover(z, s, {0, 2}), (std::vector<std::int64_t>{0, 1, 4, 5, 8, 9}));
  EXPECT_EQ(greedy_disjoint_cover(z, s, {0}), s);
  EXPECT_THROW(greedy_disjoint_cover(z, s, {}), DomainError);
}

TEST(Greedy, MatchesPairwiseOracle)
{
  Rng rng(51);
  IntegerGroup z;
  for (int trial = 0; trial < 300; ++trial) {
    auto s = rng.subset(-30, 30, 1, 2);
    auto f = rng.distinct(-5, 5, static_cast<std::size_t>(rng.range(1, 4)));
    auto got = greedy_disjoint_cover(z, s, f);
    EXPECT_EQ(got, oracle::greedy(s, f));
    EXPECT_TRUE(check_greedy_cover(z, s, f, got).ok());
  }
}

TEST(Greedy, PostconditionsInSymmetricGroup)
{
  Rng rng(52);
  SymmetricGroup sym;
  auto pool = sym.up_to_degree(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Permutation> s, f;
    for (const auto& x : pool)
      if (rng.chance(1, 2))
        s.push_back(x);
    for (auto i : rng.distinct(0, static_cast<std::int64_t>(pool.size()) - 1, 3))
      f.push_back(pool[static_cast<std::size_t>(i)]);
    auto got = greedy_disjoint_cover(sym, s, f);
    EXPECT_TRUE(check_greedy_cover(sym, s, f, got).ok());
  }
}

TEST(Greedy, CheckerRejectsBadCovers)
{
  IntegerGroup z;
  auto s = integer_range(0, 9);
  std::vector<std::int64_t> f{0, 1};
  auto overlapping = check_greedy_cover(z, s, f, {0, 1, 4, 6, 8});
  EXPECT_FALSE(overlapping.disjoint);
  auto not_maximal = check_greedy_cover(z, s, f, {0, 4, 8});
  EXPECT_TRUE(not_maximal.disjoint);
  EXPECT_FALSE(not_maximal.maximal);
  EXPECT_FALSE(check_greedy_cover(z, s, f, {0, 2, 4, 6, 8, 20}).subset);
}

TEST(SyndeticFamily, DepthTwo)
{
  IntegerGroup z;
  auto fam = shrinking_syndetic_family(z, 2, integer_range(0, 999));
  ASSERT_EQ(fam.depth(), 2u);
  EXPECT_FALSE(fam.partial);
  EXPECT_EQ(fam.levels[1].members.size(), 1000u);
  EXPECT_LE(fam.levels[2].window_density, Rational(1, 2));
  auto s1 = fam.level_set(1);
  for (auto x : fam.levels[2].members)
    EXPECT_TRUE(s1(x));
}

TEST(SyndeticFamily, DensityBoundPerLevel)
{
  IntegerGroup z;
  auto fam = shrinking_syndetic_family(z, 6, integer_range(0, 4999));
  for (std::size_t n = 1; n <= fam.depth(); ++n) {
    const auto& lvl = fam.levels[n];
    auto f_size = static_cast<std::int64_t>(lvl.shifts.size());
    EXPECT_LE(lvl.window_density, Rational(1, f_size) + lvl.boundary) << n;
    auto prev = fam.level_set(n - 1);
    for (auto x : lvl.members)
      EXPECT_TRUE(prev(x));
    std::set<std::int64_t> cells;
    for (auto f : lvl.shifts)
      for (auto x : lvl.members)
        EXPECT_TRUE(cells.insert(f + x).second);
  }
}

TEST(SyndeticFamily, TinyWindowIsPartial)
{
  IntegerGroup z;
  auto fam = shrinking_syndetic_family(z, 3, integer_range(0, 9), {1, 5, 20});
  EXPECT_TRUE(fam.partial);
  EXPECT_EQ(fam.depth(), 2u);
  EXPECT_THROW(shrinking_syndetic_family(z, 0, {0}), DomainError);
  EXPECT_THROW(shrinking_syndetic_family(z, 2, {0}, {2, 1}), DomainError);
}

TEST(CofiniteTrim, EmptySetCutsAtFirstIndex)
{
  IntegerGroup z;
  auto r = cofinite_trim<IntegerGroup>({empty_set(z)}, interval_sequence(1), Rational(1, 10), index_range(1, 1000));
  ASSERT_EQ(r.cut_index.size(), 1u);
  EXPECT_EQ(r.cut_index[0], 1);
  EXPECT_FALSE(r.trimmed[0](5));
  EXPECT_TRUE(r.certified);
}

TEST(CofiniteTrim, ResidueClassesCertified)
{
  auto phi = interval_sequence(1);
  auto r = cofinite_trim<IntegerGroup>({residue_class(2, 0), residue_class(3, 0)}, phi, Rational(1, 10),
                                       index_range(1, 5000));
  EXPECT_TRUE(r.certified);
  EXPECT_LE(to_big(r.union_max_ratio), r.bound);
  for (std::size_t i = 0; i < 2; ++i) {
    auto cut = r.cut_index[i];
    for (std::int64_t x = 1; x <= cut; ++x)
      EXPECT_FALSE(r.trimmed[i](x));
    for (std::int64_t x = cut + 1; x <= cut + 20; ++x)
      EXPECT_EQ(r.trimmed[i](x), (i == 0 ? residue_class(2, 0) : residue_class(3, 0))(x));
  }
}

TEST(CofiniteTrim, CutIndexIsLastViolation)
{
  auto phi = interval_sequence(1);
  auto indices = index_range(1, 3000);
  auto eps = Rational(1, 5);
  auto sets = std::vector<SubsetSpec<IntegerGroup>>{residue_class(3, 1), squares()};
  auto r = cofinite_trim<IntegerGroup>(sets, phi, eps, indices);
  Rational slack = eps;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    slack /= Rational(2);
    auto report = density_along(sets[i], phi, indices);
    std::int64_t expected = indices.front();
    for (const auto& row : report.rows)
      if (row.ratio >= report.upper_estimate + slack)
        expected = row.index;
    EXPECT_EQ(r.cut_index[i], expected);
  }
}

TEST(CofiniteTrim, Errors)
{
  IntegerGroup z;
  EXPECT_THROW(cofinite_trim<IntegerGroup>({empty_set(z)}, interval_sequence(1), Rational(1, 10), {}),
               CalibrationError);
  EXPECT_THROW(cofinite_trim<IntegerGroup>({empty_set(z)}, interval_sequence(1), Rational(0), {1}), DomainError);
}

TEST(NonPws, LowerDensityBound)
{
  const auto& c = small_non_pws();
  EXPECT_TRUE(c.density_guarantee);
  EXPECT_TRUE(c.trim.certified);
  EXPECT_GE(c.density.lower_estimate, Rational(74, 100));
  EXPECT_EQ(c.sizes.front(), 16u);
  EXPECT_EQ(c.sizes.back(), 2048u);
}

TEST(NonPws, ShiftedProductMissesCore)
{
  const auto& c = small_non_pws();
  IntegerGroup z;
  for (std::int64_t k = 0; k <= 3; ++k) {
    auto kk = integer_range(-k, k);
    auto core = c.syndetic_core(z, kk);
    ASSERT_TRUE(core.has_value()) << k;
    EXPECT_FALSE(core->empty());
    for (auto x : *core)
      for (auto a : kk)
        ASSERT_FALSE(c.q(x - a)) << "k=" << k << " x=" << x;
  }
  EXPECT_FALSE(c.syndetic_core(z, integer_range(-50, 50)).has_value());
}

TEST(NonPws, WindowDetectorSeesOnlyShortGaps)
{
  const auto& c = small_non_pws();
  IntegerGroup z;
  auto kk = integer_range(-3, 3);
  auto kp = integer_range(-8, 8);
  auto w = is_pws_window(z, c.q, kk, kp, integer_range(0, 50000));
  ASSERT_TRUE(w.found());
  auto g = *w.translate;
  for (auto b : kp) {
    bool covered = false;
    for (auto a : kk)
      covered = covered || c.q(b + g - a);
    EXPECT_TRUE(covered) << b + g;
  }
}

TEST(NonPws, Errors)
{
  IntegerGroup z;
  EXPECT_THROW(non_pws_large_set(z, interval_sequence(1), Rational(1), 2, integer_range(1, 100), {100}), DomainError);
  EXPECT_THROW(non_pws_large_set(z, interval_sequence(1), Rational(1, 4), 0, integer_range(1, 100), {100}),
               DomainError);
  EXPECT_THROW(non_pws_large_set(z, interval_sequence(1), Rational(1, 4), 41, integer_range(1, 100), {100}),
               DomainError);
}

TEST(AltExample, CosetsAreSmallAndDisjoint)
{
  auto ex = alt_group_example(7);
  auto p5 = ex.phi.at(5);
  auto p6 = ex.phi.at(6);
  EXPECT_EQ(p5.size(), 12u);
  EXPECT_EQ(p6.size(), 60u);
  std::set<Permutation> a(p5.begin(), p5.end());
  for (const auto& x : p6)
    EXPECT_FALSE(a.count(x));
  for (const auto& x : p5) {
    EXPECT_TRUE(ex.e(x));
    EXPECT_TRUE(AltGroupExample::in_phi(x, 5));
  }
  EXPECT_FALSE(ex.e(Permutation{}));
  EXPECT_THROW(ex.phi.at(8), DomainError);
  EXPECT_THROW(alt_group_example(4), DomainError);
}

TEST(AltExample, MembershipMatchesMaterializedCosets)
{
  auto ex = alt_group_example(8);
  std::set<Permutation> members;
  for (int n = 5; n <= 8; ++n)
    for (const auto& x : ex.phi.at(n))
      members.insert(x);
  AlternatingGroup alt;
  for (const auto& x : alt.up_to_degree(8))
    ASSERT_EQ(ex.e(x), members.count(x) > 0) << x.to_cycle_string();
}

TEST(AltExample, ObstructionHolds)
{
  auto ex = alt_group_example(9);
  auto a = fpd_obstruction_check(ex, 4, 7);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.pairs_checked, 12 * (60 + 360));
  EXPECT_TRUE(fpd_obstruction_check(ex, 5, 8).holds);
  auto vacuous = fpd_obstruction_check(ex, 6, 7);
  EXPECT_TRUE(vacuous.holds);
  EXPECT_EQ(vacuous.pairs_checked, 0);
  EXPECT_THROW(fpd_obstruction_check(ex, 2, 7), DomainError);
}

TEST(Doubling, Examples)
{
  IntegerGroup z;
  auto q = doubling_example(finite_set(z, {2, 5}));
  EXPECT_EQ(materialize(q, integer_range(-20, 20)), (std::vector<std::int64_t>{1, 4, 5, 10, 11}));
  auto e = doubling_example(empty_set(z));
  EXPECT_EQ(materialize(e, integer_range(-20, 20)), (std::vector<std::int64_t>{1}));
  EXPECT_THROW(doubling_example(finite_set(z, {0, 3})), DomainError);
  EXPECT_THROW(doubling_example(finite_set(z, {1})), DomainError);
}

TEST(Doubling, PairsAroundEveryMember)
{
  Rng rng(53);
  IntegerGroup z;
  for (int trial = 0; trial < 100; ++trial) {
    auto members = rng.subset(2, 60, 1, 3);
    auto q = doubling_example(finite_set(z, members));
    for (auto m : members) {
      EXPECT_TRUE(q(2 * m));
      EXPECT_TRUE(q(2 * m + 1));
    }
    EXPECT_EQ(count_in(q, integer_range(-10, 200)), 2 * static_cast<std::int64_t>(members.size()) + 1);
  }
}
