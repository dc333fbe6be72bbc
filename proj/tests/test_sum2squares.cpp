#include <gtest/gtest.h>

#include <random>

#include "multlab/multlab.hpp"
#include "oracles.hpp"

using namespace multlab;

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> powers(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (const auto& f : factorize(n).factors) out.push_back({f.prime, f.exponent});
  return out;
}

using Leg = std::pair<std::uint64_t, std::uint64_t>;
using Reps = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

}  // namespace

TEST(Primality, SmallAgainstTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    bool p = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && p; ++d) p = n % d != 0;
    ASSERT_EQ(is_prime(n), p) << n;
  }
}

TEST(Primality, LargeKnownValues) {
  EXPECT_TRUE(is_prime(2305843009213693951ULL));   // 2^61 - 1
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to 2,3,5,7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));
}

TEST(Factorize, Examples) {
  EXPECT_EQ(powers(65), (std::vector<std::pair<std::uint64_t, unsigned>>{{5, 1}, {13, 1}}));
  EXPECT_EQ(powers(12), (std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}}));
  EXPECT_EQ(powers(1105), (std::vector<std::pair<std::uint64_t, unsigned>>{{5, 1}, {13, 1}, {17, 1}}));
  EXPECT_TRUE(factorize(1).factors.empty());
  EXPECT_THROW(factorize(0), InvalidArgument);
  const auto f = factorize(1105);
  for (const auto& pp : f.factors) EXPECT_EQ(pp.cls, PrimeClass::one_mod_four);
}

TEST(Factorize, RandomProductsRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = rng() | 1;
    const auto f = factorize(n);
    EXPECT_EQ(static_cast<std::uint64_t>(f.product()), n);
    for (const auto& pp : f.factors) EXPECT_TRUE(is_prime(pp.prime));
  }
  // semiprime of two 31-bit primes
  const std::uint64_t a = 2147483647ULL, b = 2147483629ULL;
  EXPECT_EQ(powers(a * b), (std::vector<std::pair<std::uint64_t, unsigned>>{{b, 1}, {a, 1}}));
}

TEST(PrimeTwoSquares, Examples) {
  EXPECT_EQ(prime_two_squares(5), (Leg{1, 2}));
  EXPECT_EQ(prime_two_squares(13), (Leg{2, 3}));
  EXPECT_EQ(prime_two_squares(29), (Leg{2, 5}));
  EXPECT_THROW(prime_two_squares(7), NotApplicable);
  EXPECT_THROW(prime_two_squares(2), NotApplicable);
  EXPECT_THROW(prime_two_squares(21), NotApplicable);
  for (auto p : primes_one_mod_four(200)) {
    const auto [a, b] = prime_two_squares(p);
    EXPECT_EQ(a * a + b * b, p);
  }
}

TEST(CountRepresentations, Examples) {
  auto r = count_representations(25);
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(r.reps, (Reps{{0, 5}, {3, 4}}));
  EXPECT_EQ(count_representations(3).count, 0u);
  r = count_representations(1105);
  EXPECT_EQ(r.count, 4u);
  EXPECT_EQ(r.reps, (Reps{{4, 33}, {9, 32}, {12, 31}, {23, 24}}));
  EXPECT_EQ(r.ordered_signed, 32u);
  r = count_representations(0);
  EXPECT_EQ(r.count, 1u);
  EXPECT_EQ(r.reps, (Reps{{0, 0}}));
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_representations(2).reps, (Reps{{1, 1}}));
  EXPECT_EQ(brute_force_representations(0).reps, (Reps{{0, 0}}));
  const auto r = brute_force_representations(325);
  EXPECT_EQ(r.reps, (Reps{{1, 18}, {6, 17}, {10, 15}}));
  EXPECT_EQ(r.count, 3u);
  EXPECT_THROW(brute_force_representations(kBruteForceLimit + 1), RangeExceeded);
}

TEST(CountRepresentations, SweepAgainstTally) {
  const std::uint64_t limit = 200000;
  const auto tally = oracle::r2_table(limit);
  for (std::uint64_t n = 0; n <= limit; ++n) ASSERT_EQ(representation_count(n), tally[n]) << n;
}

TEST(CountRepresentations, ListingMatchesBruteForce) {
  for (std::uint64_t n = 0; n <= 20000; ++n) {
    const auto a = count_representations(n), b = brute_force_representations(n);
    ASSERT_EQ(a.reps, b.reps) << n;
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = rng() % kBruteForceLimit;
    EXPECT_EQ(count_representations(n).reps, brute_force_representations(n).reps) << n;
  }
}

TEST(CountRepresentations, OrderedSignedIsMultiplicative) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 200) {
    const std::uint64_t a = 1 + rng() % 100000, b = 1 + rng() % 100000;
    if (std::gcd(a, b) != 1) continue;
    const auto ra = count_representations(a), rb = count_representations(b);
    if (ra.count == 0 || rb.count == 0) continue;
    // r_2(n)/4 is multiplicative
    EXPECT_EQ(count_representations(a * b).ordered_signed / 4, (ra.ordered_signed / 4) * (rb.ordered_signed / 4));
    ++checked;
  }
}

TEST(CountRepresentations, LargeInputs) {
  // 5^2 * 13 * 17 * 29 * 37 * 41 * 53 * 61 * 73 * 89 * 97
  std::uint64_t n = 25;
  for (std::uint64_t p : {13, 17, 29, 37, 41, 53, 61, 73, 89, 97}) n *= p;
  const auto r = count_representations(n);
  EXPECT_EQ(r.divisor_product, 3u * 1024u);
  EXPECT_EQ(r.count, 1536u);
  for (const auto& [a, b] : r.reps) EXPECT_EQ(static_cast<uint128>(a) * a + static_cast<uint128>(b) * b, n);
}

TEST(LemmaMany, Examples) {
  auto c = lemma_many_construct(2);
  ASSERT_EQ(c.rich.size(), 2u);
  const auto full = std::find_if(c.rich.begin(), c.rich.end(), [](const RichSubset& s) { return s.primes.size() == 2; });
  ASSERT_NE(full, c.rich.end());
  EXPECT_EQ(static_cast<std::uint64_t>(full->product), 65u);
  EXPECT_EQ(full->unordered_count, 2u);
  EXPECT_EQ(brute_force_representations(65).reps, (Reps{{1, 8}, {4, 7}}));

  c = lemma_many_construct(3);
  EXPECT_EQ(c.rich.size(), 4u);
  EXPECT_EQ(static_cast<std::uint64_t>(c.n), 1105u);
  EXPECT_TRUE(c.gaussian_bound_all());

  c = lemma_many_construct(1);
  ASSERT_EQ(c.rich.size(), 1u);
  EXPECT_EQ(c.rich[0].unordered_count, 1u);
  EXPECT_FALSE(c.rich[0].unordered_bound);
  EXPECT_GE(c.unordered_flags(), 1u);

  EXPECT_THROW(lemma_many_construct(0), RangeExceeded);
  EXPECT_THROW(lemma_many_construct(16), RangeExceeded);
}

TEST(LemmaMany, SubsetsAndProducts) {
  for (std::size_t k = 1; k <= 10; ++k) {
    const auto c = lemma_many_construct(k);
    EXPECT_EQ(c.rich.size(), std::size_t{1} << (k - 1));
    EXPECT_TRUE(c.products_distinct);
    EXPECT_TRUE(c.gaussian_bound_all());
    for (const auto& s : c.rich) {
      EXPECT_GE(2 * s.primes.size(), k);
      EXPECT_EQ(s.gaussian_count, std::size_t{1} << s.primes.size());
      if (s.product <= kBruteForceLimit)
        EXPECT_EQ(s.unordered_count, oracle::r2_single(static_cast<std::uint64_t>(s.product)));
      EXPECT_EQ(s.gaussian_bound, std::pow(2.0, s.primes.size()) >= std::pow(2.0, k / 2.0));
    }
  }
}

TEST(Grid, MultiplicitiesAgainstPairs) {
  for (std::size_t s = 1; s <= 25; ++s) {
    const auto mult = grid_multiplicities(s);
    const auto ref = oracle::grid_pairs(s);
    std::map<std::uint64_t, std::uint64_t> got;
    for (std::size_t q = 1; q < mult.size(); ++q)
      if (mult[q]) got[q] = mult[q];
    ASSERT_EQ(got, ref) << s;
  }
}

TEST(Grid, RichExamples) {
  auto r = grid_rich_distances(4, 9);
  EXPECT_EQ(r.n, 16u);
  EXPECT_TRUE(std::find(r.examples.begin(), r.examples.end(), std::pair<std::uint64_t, std::uint64_t>{1, 24}) !=
              r.examples.end());
  EXPECT_EQ(grid_rich_distances(2, 5).rich_count, 0u);
  r = grid_rich_distances(100, 20000);
  EXPECT_GE(r.rich_count, 1u);
}

TEST(Grid, SectionRatios) {
  const auto r = grid_section_ratios(12, 4);
  EXPECT_EQ(r.threshold, Rational(324));
  EXPECT_EQ(r.m_small, 3u);
  for (const auto& c : r.classes) {
    EXPECT_EQ(c.multiplicity, oracle::grid_pairs(12).at(c.q));
    EXPECT_EQ(c.meets, c.multiplicity >= 324);
  }
  EXPECT_TRUE(r.all_nondiagonal_meet());
  const auto t = grid_section_ratios(12, 3);
  EXPECT_EQ(t.threshold, Rational(256));
  EXPECT_GT(t.fraction(), 0.0);
  EXPECT_THROW(grid_section_ratios(8, 5), DivisibilityError);
  EXPECT_THROW(grid_section_ratios(12, 7), InvalidArgument);
}
