#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mstd/primes.hpp"
#include "mstd/sets_core.hpp"
#include "oracles.hpp"

using namespace mstd;

namespace {

// li(x) - li(2) through the exponential integral.
double li_from_2(double x) { return boost::math::expint(std::log(x)) - boost::math::expint(std::log(2.0)); }

}  // namespace

TEST_CASE("sieve examples") {
  CHECK(primes_up_to(20) == std::vector<Int>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(2) == std::vector<Int>{2});
  CHECK(PrimeSieve(1'000'000).count() == 78498);
  CHECK_THROWS_AS(PrimeSieve(100).is_prime(101), DomainError);
}

TEST_CASE("sieve agrees with trial division") {
  const Int limit = 5'000'000;
  const PrimeSieve sieve(limit, 3);
  std::mt19937_64 rng(37);
  for (int i = 0; i < 10000; ++i) {
    const Int n = static_cast<Int>(rng() % (limit + 1));
    REQUIRE(sieve.is_prime(n) == oracle::is_prime(n));
  }
  for (Int n = 0; n < 2000; ++n) REQUIRE(sieve.is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("sieve is independent of thread count") {
  CHECK(PrimeSieve(3'000'000, 1).primes() == PrimeSieve(3'000'000, 4).primes());
}

TEST_CASE("prime tuples normalize") {
  const auto t = PrimeTuple::parse("7, 9");
  CHECK(std::vector<Int>(t.offsets().begin(), t.offsets().end()) == std::vector<Int>{0, 2});
  CHECK(t.to_string() == "0,2");
  CHECK_THROWS_AS(PrimeTuple({0, 2, 2}), DomainError);
  CHECK(conway_tuple().to_string() == "0,60,90,120,210,330,360,420");
}

TEST_CASE("admissibility") {
  const auto t = is_admissible(conway_tuple());
  CHECK(t.admissible);
  CHECK(t.checked_moduli == std::vector<Int>{2, 3, 5, 7});
  CHECK_FALSE(t.witness_modulus);

  const auto a = is_admissible(PrimeTuple({0, 1}));
  CHECK_FALSE(a.admissible);
  CHECK(a.witness_modulus == 2);

  const auto b = is_admissible(PrimeTuple({0, 2, 4}));
  CHECK_FALSE(b.admissible);
  CHECK(b.witness_modulus == 3);

  CHECK(is_admissible(PrimeTuple({0, 2, 6})).admissible);
  CHECK(is_admissible(PrimeTuple({0})).admissible);
}

TEST_CASE("admissibility agrees with residue coverage over all moduli") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    std::set<Int> offsets{0};
    const std::size_t m = 1 + rng() % 6;
    while (offsets.size() < m) offsets.insert(static_cast<Int>(rng() % 40));
    bool covered = false;
    for (Int k = 2; k <= 50 && !covered; ++k) {
      std::set<Int> residues;
      for (Int b : offsets) residues.insert(b % k);
      covered = static_cast<Int>(residues.size()) == k;
    }
    CHECK(is_admissible(PrimeTuple({offsets.begin(), offsets.end()})).admissible == !covered);
  }
}

TEST_CASE("singular series examples") {
  double partial = 2.0;  // p = 2: (2/1) * (2-1)/1
  for (Int p : primes_up_to(1'000'000))
    if (p > 2) partial *= (static_cast<double>(p) / (p - 1)) * (p - 2.0) / (p - 1);
  const auto twin = singular_series(PrimeTuple({0, 2}), 1e-3);
  CHECK(std::abs(twin.value / partial - 1) <= 1e-3);
  CHECK(std::abs(twin.value - 1.3203) <= 1.3203e-3);
  CHECK(twin.tail_bound <= 1e-3);

  CHECK(singular_series(PrimeTuple({0}), 1e-3).value == 1.0);
  CHECK(singular_series(PrimeTuple({0, 1}), 1e-3).value == 0.0);
  CHECK_THROWS_AS(singular_series(PrimeTuple({0, 2}), 0.0), DomainError);
  CHECK_THROWS_AS(singular_series(PrimeTuple({0, 2}), 0.2), DomainError);
}

TEST_CASE("singular series tightens within its tail bound") {
  for (const auto& t : {PrimeTuple({0, 2}), PrimeTuple({0, 4}), PrimeTuple({0, 2, 6}), conway_tuple()}) {
    const auto loose = singular_series(t, 1e-2);
    const auto tight = singular_series(t, 1e-5);
    CHECK(tight.truncation_prime >= loose.truncation_prime);
    CHECK(std::abs(tight.value - loose.value) <= loose.tail_bound * loose.value * 1.01 + 1e-12);
    CHECK(tight.tail_bound <= loose.tail_bound);
  }
}

TEST_CASE("prediction integral") {
  CHECK(log_power_integral(1e6, 1) == doctest::Approx(li_from_2(1e6)).epsilon(1e-6));
  const double m2 = li_from_2(1e6) - 1e6 / std::log(1e6) + 2 / std::log(2.0);
  CHECK(log_power_integral(1e6, 2) == doctest::Approx(m2).epsilon(1e-6));
  CHECK(log_power_integral(2.0, 3) == 0.0);
  CHECK(log_power_integral(1.0, 3) == 0.0);
}

TEST_CASE("match_tuple examples") {
  const auto twin = match_tuple(PrimeTuple({0, 2}), 100);
  CHECK(twin.count == 8);
  CHECK(twin.matches == std::vector<Int>{3, 5, 11, 17, 29, 41, 59, 71});

  const auto one = match_tuple(PrimeTuple({0, 1}), 100);
  CHECK(one.count == 1);
  CHECK(one.matches == std::vector<Int>{2});
  CHECK(std::isnan(one.ratio));

  const auto t = match_tuple(conway_tuple(), 10000);
  CHECK(t.matches == std::vector<Int>{19, 103, 3253, 3929, 5381, 8101});
  CHECK(match_tuple(PrimeTuple({0, 2}), 1).count == 0);
}

TEST_CASE("inadmissible tuples stop matching past the witness modulus") {
  for (const auto& t : {PrimeTuple({0, 1}), PrimeTuple({0, 2, 4})}) {
    const auto adm = is_admissible(t);
    REQUIRE(adm.witness_modulus);
    const auto m = match_tuple(t, 100000);
    for (Int n : m.matches) CHECK(n <= *adm.witness_modulus);
    CHECK(m.count == m.matches.size());
  }
}

TEST_CASE("every listed match is a prime tuple") {
  const auto m = match_tuple(PrimeTuple({0, 2, 6}), 200000);
  CHECK(m.count >= m.matches.size());
  for (Int n : m.matches)
    for (Int b : {0, 2, 6}) REQUIRE(oracle::is_prime(n + b));
}

TEST_CASE("Hardy-Littlewood ratio at one million") {
  const auto twin = match_tuple(PrimeTuple({0, 2}), 1'000'000);
  CHECK(twin.count == 8169);
  CHECK(twin.ratio >= 0.9);
  CHECK(twin.ratio <= 1.1);
  const auto cousin = match_tuple(PrimeTuple({0, 4}), 1'000'000);
  CHECK(cousin.count == 8144);
  CHECK(cousin.ratio >= 0.9);
  CHECK(cousin.ratio <= 1.1);
}

TEST_CASE("dilated conway sets") {
  const auto p = dilated_conway(19, 30);
  CHECK(p == IntSet{19, 79, 109, 139, 229, 349, 379, 439});
  for (Int x : p.values()) CHECK(oracle::is_prime(x));
  CHECK(dilated_conway(0, 1) == conway_set());
  for (auto [a, s] : {std::pair<Int, Int>{19, 30}, {5, 7}, {1000, 999}}) {
    const auto c = classify(dilated_conway(a, s));
    CHECK(c.verdict == Verdict::kMstd);
    CHECK(c.sum_count == 26);
    CHECK(c.diff_count == 25);
  }
}

TEST_CASE("prime arithmetic progressions") {
  const auto ten = find_prime_ap(10, 1000);
  REQUIRE(ten);
  CHECK(ten->first == 199);
  CHECK(ten->difference == 210);
  for (std::size_t k = 0; k < 10; ++k) CHECK(oracle::is_prime(ten->first + static_cast<Int>(k) * ten->difference));

  const auto three = find_prime_ap(3, 10);
  REQUIRE(three);
  CHECK(three->first == 3);
  CHECK(three->difference == 2);

  const auto single = find_prime_ap(1, 2);
  REQUIRE(single);
  CHECK(single->first == 2);

  CHECK_FALSE(find_prime_ap(10, 100, 210));
}

TEST_CASE("conway pattern inside a progression") {
  CHECK(mstd_in_ap({0, 1, 15}) == conway_set());
  CHECK_THROWS_AS(mstd_in_ap({199, 210, 10}), DomainError);
  const auto s = mstd_in_ap({7, 30, 15});
  CHECK(classify(s).verdict == Verdict::kMstd);
}
