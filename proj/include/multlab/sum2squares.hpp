#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace multlab {

// ---------------------------------------------------------------------------
// 64-bit modular arithmetic, primality and factorization
// ---------------------------------------------------------------------------

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<uint128>(r) * r > n) --r;
  while (static_cast<uint128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Deterministic Miller-Rabin; the first twelve prime bases cover all of uint64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Pollard rho with Brent's cycle detection and batched gcds. n must be an odd composite.
inline std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

enum class PrimeClass { two, one_mod_four, three_mod_four };

inline PrimeClass classify_prime(std::uint64_t p) {
  if (p == 2) return PrimeClass::two;
  return p % 4 == 1 ? PrimeClass::one_mod_four : PrimeClass::three_mod_four;
}

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  PrimeClass cls = PrimeClass::two;
};

struct Factorization {
  std::vector<PrimePower> factors;  // ascending primes

  uint128 product() const {
    uint128 v = 1;
    for (const auto& f : factors)
      for (unsigned e = 0; e < f.exponent; ++e) v *= f.prime;
    return v;
  }
};

namespace detail {

inline void split_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

}  // namespace detail

inline Factorization factorize(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("factorize needs n >= 1");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  detail::split_into(n, primes);
  std::sort(primes.begin(), primes.end());
  Factorization f;
  for (auto p : primes) {
    if (!f.factors.empty() && f.factors.back().prime == p)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({p, 1, classify_prime(p)});
  }
  return f;
}

// ---------------------------------------------------------------------------
// Sums of two squares
// ---------------------------------------------------------------------------

// The unique p = a^2 + b^2 with 0 < a < b, via a square root of -1 and Euclid's algorithm.
inline std::pair<std::uint64_t, std::uint64_t> prime_two_squares(std::uint64_t p) {
  if (p % 4 != 1 || !is_prime(p)) throw NotApplicable("prime_two_squares needs a prime p = 1 (mod 4)");
  std::uint64_t c = 2;
  while (pow_mod(c, (p - 1) / 2, p) != p - 1) ++c;
  const std::uint64_t root = pow_mod(c, (p - 1) / 4, p);
  std::uint64_t a = p, b = root;
  const std::uint64_t limit = isqrt(p);
  while (b > limit) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  const std::uint64_t other = isqrt(p - b * b);
  if (other * other + b * b != p) throw InvalidArgument("two-square descent failed");
  return {std::min(b, other), std::max(b, other)};
}

struct Gaussian {
  int128 re = 0;
  int128 im = 0;

  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Gaussian conj() const { return {re, -im}; }
  friend bool operator<(const Gaussian& a, const Gaussian& b) {
    return a.re < b.re || (a.re == b.re && a.im < b.im);
  }
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

// Unordered pair {|re|, |im|} with the smaller leg first.
inline std::pair<uint128, uint128> unordered_legs(const Gaussian& z) {
  const uint128 a = static_cast<uint128>(z.re < 0 ? -z.re : z.re);
  const uint128 b = static_cast<uint128>(z.im < 0 ? -z.im : z.im);
  return {std::min(a, b), std::max(a, b)};
}

struct Sum2SquaresReport {
  std::uint64_t n = 0;
  std::uint64_t count = 0;  // R(n): unordered, a, b >= 0
  std::vector<std::pair<std::uint64_t, std::uint64_t>> reps;  // a <= b, ascending a
  std::uint64_t divisor_product = 0;  // prod (e+1) over p = 1 (mod 4), 0 if not representable
  std::uint64_t ordered_signed = 0;   // r_2(n) = 4 * divisor_product, counting signs and order
};

// prod (e+1) over primes = 1 mod 4; zero when some prime = 3 mod 4 has odd exponent.
inline std::uint64_t divisor_product(const Factorization& f) {
  std::uint64_t b = 1;
  for (const auto& pp : f.factors) {
    if (pp.cls == PrimeClass::three_mod_four && pp.exponent % 2 == 1) return 0;
    if (pp.cls == PrimeClass::one_mod_four) b *= pp.exponent + 1;
  }
  return b;
}

inline std::uint64_t unordered_count_from_divisor_product(std::uint64_t b) { return (b + (b & 1)) / 2; }

// R(n) from the factorization, without listing representations.
inline std::uint64_t representation_count(std::uint64_t n) {
  if (n == 0) return 1;
  return unordered_count_from_divisor_product(divisor_product(factorize(n)));
}

// Every Gaussian integer of norm n up to units, from the factorization.
inline std::vector<Gaussian> gaussian_divisor_choices(const Factorization& f) {
  Gaussian base{1, 0};
  std::vector<std::pair<Gaussian, unsigned>> split;
  for (const auto& pp : f.factors) {
    switch (pp.cls) {
      case PrimeClass::two:
        for (unsigned e = 0; e < pp.exponent; ++e) base = base * Gaussian{1, 1};
        break;
      case PrimeClass::three_mod_four:
        if (pp.exponent % 2 == 1) return {};
        for (unsigned e = 0; e < pp.exponent / 2; ++e) base = base * Gaussian{static_cast<int128>(pp.prime), 0};
        break;
      case PrimeClass::one_mod_four: {
        const auto [a, b] = prime_two_squares(pp.prime);
        split.push_back({Gaussian{static_cast<int128>(a), static_cast<int128>(b)}, pp.exponent});
        break;
      }
    }
  }
  std::vector<Gaussian> out{base};
  for (const auto& [pi, e] : split) {
    std::vector<Gaussian> next;
    next.reserve(out.size() * (e + 1));
    for (const auto& z : out)
      for (unsigned j = 0; j <= e; ++j) {
        Gaussian w = z;
        for (unsigned t = 0; t < j; ++t) w = w * pi;
        for (unsigned t = j; t < e; ++t) w = w * pi.conj();
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

inline Sum2SquaresReport count_representations(std::uint64_t n) {
  Sum2SquaresReport r;
  r.n = n;
  if (n == 0) {
    r.count = 1;
    r.reps = {{0, 0}};
    return r;
  }
  const auto f = factorize(n);
  r.divisor_product = divisor_product(f);
  r.ordered_signed = 4 * r.divisor_product;
  r.count = unordered_count_from_divisor_product(r.divisor_product);
  if (r.divisor_product == 0) return r;
  std::set<std::pair<std::uint64_t, std::uint64_t>> reps;
  for (const auto& z : gaussian_divisor_choices(f)) {
    const auto [a, b] = unordered_legs(z);
    reps.insert({static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)});
  }
  r.reps.assign(reps.begin(), reps.end());
  if (r.reps.size() != r.count) throw InvalidArgument("representation listing disagrees with the divisor count");
  return r;
}

inline constexpr std::uint64_t kBruteForceLimit = 1'000'000'000;

// Exhaustive a = 0..sqrt(n/2); the independent ground truth.
inline Sum2SquaresReport brute_force_representations(std::uint64_t n) {
  if (n > kBruteForceLimit) throw RangeExceeded("brute force limited to n <= 1e9");
  Sum2SquaresReport r;
  r.n = n;
  for (std::uint64_t a = 0; 2 * a * a <= n; ++a) {
    const std::uint64_t rest = n - a * a;
    const std::uint64_t b = isqrt(rest);
    if (b * b == rest) r.reps.push_back({a, b});
  }
  r.count = r.reps.size();
  return r;
}

// ---------------------------------------------------------------------------
// Products of the k smallest primes = 1 (mod 4)
// ---------------------------------------------------------------------------

inline std::vector<std::uint64_t> primes_one_mod_four(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 5; out.size() < count; p += 4)
    if (is_prime(p)) out.push_back(p);
  return out;
}

struct RichSubset {
  std::uint32_t mask = 0;               // bit j set iff p_{j+1} is in K'
  std::vector<std::uint64_t> primes;
  uint128 product = 0;                  // n'
  std::size_t gaussian_count = 0;       // distinct A_J + B_J i over J subset of K'
  std::size_t unordered_count = 0;      // distinct {|A_J|, |B_J|}
  bool gaussian_bound = false;          // gaussian_count >= 2^{k/2}
  bool unordered_bound = false;         // unordered_count >= 2^{k/2}
  bool norms_ok = false;                // every A_J^2 + B_J^2 == n'
};

struct LemmaConstruction {
  std::size_t k = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> legs;
  uint128 n = 0;
  std::size_t subsets_at_least_half = 0;  // raw count of K' with |K'| >= k/2
  std::vector<RichSubset> rich;           // one subset per complementary pair
  bool products_distinct = false;

  bool gaussian_bound_all() const {
    return std::all_of(rich.begin(), rich.end(), [](const RichSubset& s) { return s.gaussian_bound && s.norms_ok; });
  }
  std::size_t unordered_flags() const {
    return static_cast<std::size_t>(
        std::count_if(rich.begin(), rich.end(), [](const RichSubset& s) { return !s.unordered_bound; }));
  }
};

inline constexpr std::size_t kLemmaMaxK = 15;

inline LemmaConstruction lemma_many_construct(std::size_t k) {
  if (k < 1 || k > kLemmaMaxK) throw RangeExceeded("lemma construction supports 1 <= k <= 15");
  LemmaConstruction c;
  c.k = k;
  c.primes = primes_one_mod_four(k);
  c.n = 1;
  for (auto p : c.primes) {
    c.legs.push_back(prime_two_squares(p));
    c.n *= p;
  }
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  std::set<uint128> products;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    if (2 * static_cast<std::size_t>(size) >= k) ++c.subsets_at_least_half;
    const int other = static_cast<int>(k) - size;
    const bool chosen = size > other || (size == other && (mask & 1u));
    if (!chosen) continue;

    RichSubset s;
    s.mask = mask;
    s.product = 1;
    std::vector<Gaussian> factors;
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (1u << j)) {
        s.primes.push_back(c.primes[j]);
        s.product *= c.primes[j];
        factors.push_back({static_cast<int128>(c.legs[j].first), static_cast<int128>(c.legs[j].second)});
      }
    std::set<Gaussian> gaussians;
    std::set<std::pair<uint128, uint128>> unordered;
    s.norms_ok = true;
    const std::uint32_t sub = (std::uint32_t{1} << factors.size());
    for (std::uint32_t J = 0; J < sub; ++J) {
      Gaussian z{1, 0};
      for (std::size_t t = 0; t < factors.size(); ++t) z = z * ((J >> t) & 1u ? factors[t] : factors[t].conj());
      if (static_cast<uint128>(z.re * z.re + z.im * z.im) != s.product) s.norms_ok = false;
      gaussians.insert(z);
      unordered.insert(unordered_legs(z));
    }
    s.gaussian_count = gaussians.size();
    s.unordered_count = unordered.size();
    // count >= 2^{k/2}  <=>  2*log2(count) >= k, evaluated on exact powers of two
    auto meets = [&](std::size_t count) {
      const std::size_t log2floor = static_cast<std::size_t>(std::bit_width(count)) - 1;
      const bool power_of_two = std::has_single_bit(count);
      return power_of_two ? 2 * log2floor >= k : 2 * log2floor + 1 >= k;
    };
    s.gaussian_bound = meets(s.gaussian_count);
    s.unordered_bound = meets(s.unordered_count);
    products.insert(s.product);
    c.rich.push_back(std::move(s));
  }
  c.products_distinct = products.size() == c.rich.size();
  return c;
}

// ---------------------------------------------------------------------------
// Distance multiplicities in the s x s integer grid
// ---------------------------------------------------------------------------

// Multiplicity of every squared distance q (index) in the s x s grid, from lattice-vector
// classes weighted by (s-|dx|)(s-|dy|): O(s^2).
inline std::vector<std::uint64_t> grid_multiplicities(std::size_t s) {
  if (s == 0) return {};
  const std::size_t max_q = 2 * (s - 1) * (s - 1);
  std::vector<std::uint64_t> mult(max_q + 1, 0);
  for (std::size_t dx = 0; dx < s; ++dx)
    for (std::size_t dy = 0; dy < s; ++dy) {
      if (dx == 0 && dy == 0) continue;
      // (dx, dy) and (dx, -dy) are distinct directions unless one leg is zero
      const std::uint64_t orbit = (dx > 0 && dy > 0) ? 2 : 1;
      mult[dx * dx + dy * dy] += orbit * (s - dx) * (s - dy);
    }
  return mult;
}

struct GridRichReport {
  std::size_t s = 0;
  std::uint64_t n = 0;
  std::uint64_t threshold = 0;
  std::size_t m = 0;
  std::size_t rich_count = 0;
  std::uint64_t max_multiplicity = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> examples;  // (q, multiplicity), richest first
};

inline GridRichReport grid_rich_distances(std::size_t s, std::uint64_t threshold, std::size_t max_examples = 10) {
  if (s < 1) throw InvalidArgument("grid side must be positive");
  GridRichReport r;
  r.s = s;
  r.n = static_cast<std::uint64_t>(s) * s;
  r.threshold = threshold;
  const auto mult = grid_multiplicities(s);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rich;
  for (std::size_t q = 1; q < mult.size(); ++q) {
    if (mult[q] == 0) continue;
    ++r.m;
    r.max_multiplicity = std::max(r.max_multiplicity, mult[q]);
    if (mult[q] >= threshold) rich.push_back({q, mult[q]});
  }
  r.rich_count = rich.size();
  std::stable_sort(rich.begin(), rich.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (rich.size() > max_examples) rich.resize(max_examples);
  r.examples = std::move(rich);
  return r;
}

struct SectionClass {
  std::uint64_t q = 0;
  std::uint64_t multiplicity = 0;
  bool diagonal_only = false;  // realized in the subgrid only by vectors with dx == dy
  bool meets = false;
};

struct GridSectionReport {
  std::size_t s = 0;
  std::size_t divisor = 0;
  std::size_t k = 0;  // subgrid side
  std::uint64_t n = 0;
  Rational factor;     // c2
  Rational threshold;  // c2 * n
  std::size_t m = 0;        // classes of the full grid
  std::size_t m_small = 0;  // non-axis classes of the subgrid
  std::size_t meeting = 0;
  std::size_t nondiagonal = 0;
  std::size_t nondiagonal_meeting = 0;
  std::vector<SectionClass> classes;

  double fraction() const { return m == 0 ? 0.0 : static_cast<double>(meeting) / static_cast<double>(m); }
  double fraction_small() const {
    return m_small == 0 ? 0.0 : static_cast<double>(meeting) / static_cast<double>(m_small);
  }
  bool all_meet() const { return meeting == m_small; }
  bool all_nondiagonal_meet() const { return nondiagonal_meeting == nondiagonal; }
};

inline Rational section_factor(std::size_t divisor) {
  switch (divisor) {
    case 3: return Rational(16, 9);
    case 4: return Rational(9, 4);
    case 5: return Rational(64, 25);
    default: throw InvalidArgument("grid section divisor must be 3, 4 or 5");
  }
}

inline GridSectionReport grid_section_ratios(std::size_t s, std::size_t divisor) {
  GridSectionReport r;
  r.factor = section_factor(divisor);
  if (s == 0 || s % divisor != 0) throw DivisibilityError("grid side must be a positive multiple of the divisor");
  r.s = s;
  r.divisor = divisor;
  r.k = s / divisor;
  r.n = static_cast<std::uint64_t>(s) * s;
  r.threshold = r.factor * Rational(static_cast<unsigned long>(r.n));
  const auto mult = grid_multiplicities(s);
  for (std::size_t q = 1; q < mult.size(); ++q)
    if (mult[q] > 0) ++r.m;

  std::vector<int> kind(r.k > 0 ? 2 * (r.k - 1) * (r.k - 1) + 1 : 1, 0);  // 1 diagonal, 2 generic
  for (std::size_t dx = 1; dx < r.k; ++dx)
    for (std::size_t dy = 1; dy < r.k; ++dy) {
      auto& kd = kind[dx * dx + dy * dy];
      kd = std::max(kd, dx == dy ? 1 : 2);
    }
  for (std::size_t q = 1; q < kind.size(); ++q) {
    if (kind[q] == 0) continue;
    SectionClass c;
    c.q = q;
    c.multiplicity = mult[q];
    c.diagonal_only = kind[q] == 1;
    c.meets = Rational(static_cast<unsigned long>(c.multiplicity)) >= r.threshold;
    ++r.m_small;
    if (c.meets) ++r.meeting;
    if (!c.diagonal_only) {
      ++r.nondiagonal;
      if (c.meets) ++r.nondiagonal_meeting;
    }
    r.classes.push_back(c);
  }
  return r;
}

}  // namespace multlab
