#include <random>
#include <tuple>

#include "doctest.h"
#include "mstd/sequences.hpp"
#include "mstd/subset_search.hpp"
#include "oracles.hpp"

using namespace mstd;

namespace {

// a_k > a_{k-1} + a_{k-r} for k > r, with random slack.
std::vector<Int> growth_sequence(std::mt19937_64& rng, unsigned r, std::size_t n) {
  std::vector<Int> a;
  Int next = static_cast<Int>(rng() % 3);
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= r) next = a[k - 1] + a[k - r] + 1 + static_cast<Int>(rng() % 4);
    a.push_back(next);
    next += 1 + static_cast<Int>(rng() % 3);
  }
  return a;
}

std::uint64_t exhaustive_mstd_count(const std::vector<Int>& terms) {
  SearchConfig cfg;
  cfg.ground = IntSet(terms, Limits{Int{1} << 62});
  cfg.threads = 1;
  cfg.limits = Limits{Int{1} << 62};
  return exhaustive_search(cfg).hit_count;
}

}  // namespace

TEST_CASE("materialize examples") {
  CHECK(materialize(SequenceSpec::fibonacci(), 6) == std::vector<Int>{0, 1, 2, 3, 5, 8});
  CHECK(materialize(SequenceSpec::shifted_geometric(1, 3, 1), 4) == std::vector<Int>{4, 10, 28, 82});
  CHECK(materialize(SequenceSpec::linear_recurrence({1, 1}, {1, 2}), 5) == std::vector<Int>{1, 2, 3, 5, 8});
  try {
    materialize(SequenceSpec::linear_recurrence({1, 1}, {0, 1}), 5);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("index 3") != std::string::npos);
  }
  CHECK_THROWS_AS(materialize(SequenceSpec::fibonacci(), 0), DomainError);
  CHECK_THROWS_AS(materialize(SequenceSpec::shifted_geometric(1, 3, 0), 50), CapacityError);
  CHECK_THROWS_AS(SequenceSpec::shifted_geometric(0, 3, 0).validate(), DomainError);
  CHECK_THROWS_AS(SequenceSpec::shifted_geometric(1, 1, 0).validate(), DomainError);
}

TEST_CASE("fibonacci listing") {
  const auto f = materialize(SequenceSpec::fibonacci(), 18);
  CHECK(f.size() == 18);
  CHECK(f[17] == 2584);
  for (std::size_t k = 3; k < f.size(); ++k) CHECK(f[k] == f[k - 1] + f[k - 2]);
}

TEST_CASE("check_growth examples") {
  const auto fib = check_growth(SequenceSpec::fibonacci(), 3, 50);
  CHECK(fib.holds);
  CHECK(fib.symbolic);
  CHECK(fib.checked_upto == 50);

  const auto geo = check_growth(SequenceSpec::shifted_geometric(1, 2, 0), 3, 50);
  CHECK(geo.holds);
  CHECK(geo.symbolic);

  const auto expl = check_growth(SequenceSpec::explicit_terms({1, 2, 3, 5, 8}), 1, 5);
  CHECK_FALSE(expl.holds);
  CHECK_FALSE(expl.symbolic);
  REQUIRE(expl.first_violation);
  CHECK(expl.first_violation->k == 2);
  CHECK(expl.first_violation->a_k == 2);

  CHECK_FALSE(check_growth(SequenceSpec::fibonacci(), 2, 20).holds);
  CHECK_THROWS_AS(check_growth(SequenceSpec::fibonacci(), 3, 3), DomainError);
}

TEST_CASE("symbolic growth for shifted geometric sequences") {
  // 2^k needs r >= 2: 2^k > 2^(k-1) + 2^(k-r) iff r >= 2.
  CHECK_FALSE(check_growth(SequenceSpec::shifted_geometric(1, 2, 0), 1, 20).holds);
  CHECK(check_growth(SequenceSpec::shifted_geometric(1, 2, 0), 2, 20).symbolic);
  CHECK(check_growth(SequenceSpec::shifted_geometric(2, 3, 5), 3, 30).symbolic);
  // Fibonacci fails the window r = 2 at a_4 = 3 = 2 + 1.
  CHECK_FALSE(check_growth(SequenceSpec::fibonacci(), 2, 30).symbolic);
}

TEST_CASE("growth holds for larger windows once it holds") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const unsigned r = 1 + static_cast<unsigned>(rng() % 4);
    const auto spec = SequenceSpec::explicit_terms(growth_sequence(rng, r, 30));
    REQUIRE(check_growth(spec, r, 30).holds);
    for (unsigned r2 = r; r2 <= 8; ++r2) CHECK(check_growth(spec, r2, 30).holds);
  }
}

TEST_CASE("check_growth_from") {
  const auto c = check_growth_from(SequenceSpec::fibonacci(), 4, 40);
  CHECK(c.holds);
  CHECK(c.checked_from == 4);
  const auto spliced = SequenceSpec::explicit_terms({0, 1, 2, 3, 4, 5, 100, 200, 400});
  CHECK_FALSE(check_growth_from(spliced, 4, 9).holds);
  CHECK(check_growth_from(spliced, 7, 9).holds);
  CHECK_THROWS_AS(check_growth_from(spliced, 3, 9), DomainError);
}

TEST_CASE("certify_no_mstd examples") {
  const auto fib = certify_no_mstd(SequenceSpec::fibonacci(), 3, 40);
  CHECK(fib.verdict == NoMstdVerdict::kCertifiedNoMstd);
  CHECK(fib.small_subset_bound == 7);
  CHECK(fib.small_bound_below_minimum);
  CHECK(to_string(fib.verdict) == "certified-no-mstd");

  for (auto [c, q, d] : std::vector<std::tuple<Int, Int, Int>>{{1, 2, 0}, {2, 3, 5}, {1, 3, 1}}) {
    const auto cert = certify_no_mstd(SequenceSpec::shifted_geometric(c, q, d), 3, 30);
    CHECK(cert.verdict == NoMstdVerdict::kCertifiedNoMstd);
  }

  std::vector<Int> dense;
  for (Int i = 0; i <= 14; ++i) dense.push_back(i);
  const auto refuted = certify_no_mstd(SequenceSpec::explicit_terms(dense), 3, 15);
  CHECK(refuted.verdict == NoMstdVerdict::kRefuted);
  REQUIRE(refuted.mstd_witness);
  CHECK(*refuted.mstd_witness == conway_set());
  CHECK(classify(*refuted.mstd_witness).verdict == Verdict::kMstd);
}

TEST_CASE("explicit sequences are never certified from a finite prefix") {
  const auto spec = SequenceSpec::explicit_terms(materialize(SequenceSpec::fibonacci(), 20));
  const auto cert = certify_no_mstd(spec, 3, 20);
  CHECK(cert.growth.holds);
  CHECK_FALSE(cert.growth.symbolic);
  CHECK(cert.verdict == NoMstdVerdict::kConsistentWithinBudget);
}

TEST_CASE("large windows search small subsets of the prefix") {
  // r = 4 needs subsets up to 9 elements checked.
  const auto cert = certify_no_mstd(SequenceSpec::shifted_geometric(1, 2, 0), 4, 16);
  CHECK(cert.small_subset_bound == 9);
  CHECK_FALSE(cert.small_bound_below_minimum);
  CHECK(cert.small_search_exhausted);
  CHECK(cert.verdict == NoMstdVerdict::kConsistentWithinBudget);

  const auto starved = certify_no_mstd(SequenceSpec::shifted_geometric(1, 2, 0), 4, 30, {.budget = 100, .threads = 1});
  CHECK(starved.verdict == NoMstdVerdict::kInconclusive);
}

TEST_CASE("growth sequences have no MSTD subsets in their first 18 terms") {
  CHECK(exhaustive_mstd_count(materialize(SequenceSpec::fibonacci(), 18)) == 0);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 4; ++i) {
    CHECK(exhaustive_mstd_count(growth_sequence(rng, 1 + static_cast<unsigned>(i % 3), 16)) == 0);
  }
}

TEST_CASE("verify_difference_bound examples") {
  const auto fib = materialize(SequenceSpec::fibonacci(), 10);
  const IntSet prefix(std::vector<Int>(fib.begin(), fib.begin() + 9));
  const auto a = verify_difference_bound(prefix, fib[9], 3);
  CHECK(a.hypothesis_applicable);
  CHECK(a.set_size == 10);
  CHECK(a.new_diffs >= 11);
  CHECK(a.new_sums <= 11);
  CHECK(a.verdict == "bound-holds");
  CHECK(a.after.gap - a.before.gap <= 0);

  std::vector<Int> dense;
  for (Int i = 0; i <= 13; ++i) dense.push_back(i);
  const auto b = verify_difference_bound(IntSet(dense), 14, 3);
  CHECK_FALSE(b.hypothesis_applicable);
  CHECK(b.verdict == "hypothesis-not-applicable");

  std::vector<Int> pow3;
  for (Int k = 1, p = 3; k <= 8; ++k, p *= 3) pow3.push_back(p);
  const auto c = verify_difference_bound(IntSet(pow3), 19683, 3);
  CHECK(c.new_sums == 9);
  CHECK(c.new_diffs == 16);

  CHECK_THROWS_AS(verify_difference_bound(IntSet(pow3), 27, 3), DomainError);
  CHECK_THROWS_AS(verify_difference_bound(IntSet{0, 1, 5}, 100, 3), DomainError);
}

TEST_CASE("difference bound holds on random growth instances") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const unsigned r = 1 + static_cast<unsigned>(rng() % 4);
    const auto seq = growth_sequence(rng, r, 24);
    // Subsets of a growth sequence inherit the hypothesis for their top element.
    std::vector<Int> sub;
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
      if (rng() % 3 != 0) sub.push_back(seq[k]);
    if (sub.size() + 1 < 2 * r + 2) continue;
    const Int top = seq.back();
    const auto rep = verify_difference_bound(IntSet(sub, Limits{Int{1} << 62}), top, r);
    if (!rep.hypothesis_applicable) continue;
    CHECK(rep.bound_holds);
    CHECK(rep.new_diffs >= rep.set_size + 1);
    CHECK(rep.set_size + 1 >= rep.new_sums);
    CHECK(rep.difference_lead_grows);
  }
}

TEST_CASE("certify_finitely_many examples") {
  std::vector<Int> spliced;
  for (Int i = 0; i <= 14; ++i) spliced.push_back(i);
  for (Int k = 1, p = 300; k <= 5; ++k, p *= 3) spliced.push_back(p);
  const auto a = certify_finitely_many(SequenceSpec::explicit_terms(spliced), 16, 20, 1 << 22, {.threads = 1});
  CHECK(a.growth.holds);
  CHECK(a.search_exhausted);
  CHECK(a.verdict == FinitenessVerdict::kConsistentWithinBudget);
  CHECK_FALSE(a.special_witness);

  const auto s3 = base_expansion(conway_set(), 3);
  const auto b = certify_finitely_many(SequenceSpec::explicit_terms(s3.values()), 4, 512, 1 << 16, {.threads = 1});
  CHECK(b.verdict == FinitenessVerdict::kRefuted);
  REQUIRE(b.special_witness);
  CHECK(*b.special_witness == s3);
  REQUIRE(b.witness_classification);
  CHECK(b.witness_classification->special);

  // Elements appended after S_3 can keep the prefix special; the longest special prefix is reported.
  auto terms = s3.values();
  for (Int k = 1, p = 2 * s3.max() + 1; k <= 3; ++k, p *= 3) terms.push_back(p);
  const auto e = certify_finitely_many(SequenceSpec::explicit_terms(terms), 4, 515, 1 << 16, {.threads = 1});
  CHECK(e.verdict == FinitenessVerdict::kRefuted);
  REQUIRE(e.special_witness);
  CHECK(e.special_witness->size() >= 512);
  CHECK(classify(*e.special_witness).special);
  for (std::size_t n = e.special_witness->size() + 1; n <= terms.size(); ++n)
    CHECK_FALSE(classify(IntSet(std::vector<Int>(terms.begin(), terms.begin() + n))).special);

  const auto c = certify_finitely_many(SequenceSpec::fibonacci(), 4, 40, 1 << 16, {.threads = 1});
  CHECK(c.growth.holds);
  CHECK(c.verdict == FinitenessVerdict::kConsistentWithinBudget);
}
