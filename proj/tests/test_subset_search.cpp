#include <cmath>
#include <random>

#include "doctest.h"
#include "mstd/primes.hpp"
#include "mstd/sequences.hpp"
#include "mstd/subset_search.hpp"
#include "oracles.hpp"

using namespace mstd;

namespace {

IntSet interval(Int n) {
  std::vector<Int> v;
  for (Int i = 0; i <= n; ++i) v.push_back(i);
  return IntSet(v);
}

SearchConfig over(const IntSet& ground) {
  SearchConfig cfg;
  cfg.ground = ground;
  return cfg;
}

bool same(const SearchReport& a, const SearchReport& b) {
  return a.hits == b.hits && a.hit_count == b.hit_count && a.examined == b.examined &&
         a.density == b.density && a.stderr_estimate == b.stderr_estimate && a.exhausted == b.exhausted;
}

}  // namespace

TEST_CASE("diameter baseline") {
  const auto& b = min_mstd_diameter();
  CHECK(b.min_diameter == 14);
  CHECK(b.subsets_checked == (1u << 14) - 1);
}

TEST_CASE("exhaustive search over {0..14}") {
  auto cfg = over(interval(14));
  const auto all = exhaustive_search(cfg);
  CHECK(all.hit_count == 4);
  CHECK(all.exhausted);
  for (const auto& h : all.hits) CHECK(reverify_hit(h, HitFilter::kMstd));

  cfg.max_size = 7;
  CHECK(exhaustive_search(cfg).hit_count == 0);

  cfg.min_size = 8;
  cfg.max_size = 8;
  const auto eight = exhaustive_search(cfg);
  CHECK(eight.hit_count == 2);
  CHECK(std::find(eight.hits.begin(), eight.hits.end(), conway_set()) != eight.hits.end());
  CHECK(std::find(eight.hits.begin(), eight.hits.end(), IntSet{0, 2, 3, 7, 10, 11, 12, 14}) != eight.hits.end());
}

TEST_CASE("pruning does not change exhaustive results") {
  for (Int n : {10, 14, 16}) {
    auto cfg = over(interval(n));
    const auto pruned = exhaustive_search(cfg);
    cfg.prune_small_diameter = false;
    const auto plain = exhaustive_search(cfg);
    CHECK(pruned.hit_count == plain.hit_count);
    CHECK(pruned.hits == plain.hits);
    CHECK(plain.pruning_rules.empty());
    CHECK_FALSE(pruned.pruning_rules.empty());
  }
}

TEST_CASE("exhaustive search matches the pair oracle on {0..16}") {
  std::uint64_t expected = 0;
  for (std::uint64_t mask = 1; mask < (1u << 17); ++mask) {
    const auto v = oracle::from_mask(mask);
    if (oracle::sums(v).size() > oracle::diffs(v).size()) ++expected;
  }
  auto cfg = over(interval(16));
  CHECK(exhaustive_search(cfg).hit_count == expected);
}

TEST_CASE("small grounds have no hits") {
  CHECK(exhaustive_search(over(interval(7))).hit_count == 0);
  CHECK(exhaustive_search(over(interval(10))).hit_count == 0);
}

TEST_CASE("first-hit returns the first hit in enumeration order") {
  auto cfg = over(interval(14));
  cfg.objective = Objective::kFirstHit;
  const auto r = exhaustive_search(cfg);
  REQUIRE(r.hits.size() == 1);
  CHECK(r.hits.front() == conway_set());
  CHECK_FALSE(r.exhausted);
}

TEST_CASE("budget truncation") {
  auto cfg = over(interval(14));
  cfg.budget = 1000;
  const auto r = exhaustive_search(cfg);
  CHECK_FALSE(r.exhausted);
  CHECK(r.examined <= 1000);
}

TEST_CASE("hit cap limits stored hits but not the count") {
  auto cfg = over(interval(16));
  cfg.hit_cap = 3;
  const auto r = exhaustive_search(cfg);
  CHECK(r.hits.size() == 3);
  CHECK(r.hit_count > 3);
}

TEST_CASE("results do not depend on the thread count") {
  auto cfg = over(interval(17));
  cfg.threads = 1;
  const auto one = exhaustive_search(cfg);
  cfg.threads = 4;
  CHECK(same(one, exhaustive_search(cfg)));

  cfg.mode = SearchMode::kMonteCarlo;
  cfg.samples = 100000;
  cfg.seed = 42;
  cfg.threads = 1;
  const auto mc1 = monte_carlo_search(cfg);
  cfg.threads = 3;
  CHECK(same(mc1, monte_carlo_search(cfg)));
  CHECK(mc1.seed == 42);
}

TEST_CASE("monte carlo density") {
  const auto zero = monte_carlo_density(10, 100000, 7);
  CHECK(zero.hit_count == 0);
  REQUIRE(zero.density);
  CHECK(*zero.density == 0.0);

  const auto a = monte_carlo_density(30, 20000, 99);
  const auto b = monte_carlo_density(30, 20000, 99);
  CHECK(same(a, b));
  CHECK(a.examined == 20000);
  CHECK(*a.density == doctest::Approx(static_cast<double>(a.hit_count) / 20000));
}

TEST_CASE("monte carlo agrees with the exhaustive ratio on {0..14}") {
  const double exact = 4.0 / 32768.0;
  const auto r = monte_carlo_density(14, 2'000'000, 2024);
  REQUIRE(r.stderr_estimate);
  const double se = std::sqrt(exact * (1 - exact) / 2'000'000);
  CHECK(std::abs(*r.density - exact) <= 4 * se);
  for (const auto& h : r.hits) CHECK(reverify_hit(h, HitFilter::kMstd));
}

TEST_CASE("hits are affine closed") {
  const auto base = exhaustive_search(over(interval(15)));
  for (auto [c, t] : {std::pair<Int, Int>{3, 5}, {7, 100}}) {
    const auto moved = exhaustive_search(over(interval(15).affine(c, t)));
    CHECK(moved.hit_count == base.hit_count);
    for (const auto& h : base.hits)
      CHECK(std::find(moved.hits.begin(), moved.hits.end(), h.affine(c, t)) != moved.hits.end());
  }
}

TEST_CASE("minimal_mstd_in") {
  const auto primes = IntSet(primes_up_to(439));
  const auto p = minimal_mstd_in(primes, Objective::kMinimizeMaxElement, 1 << 26);
  CHECK(std::find(p.hits.begin(), p.hits.end(), IntSet{19, 79, 109, 139, 229, 349, 379, 439}) != p.hits.end());
  REQUIRE(p.best_objective);
  // Independent brute force over subsets of the primes up to 73 finds nothing smaller.
  CHECK(*p.best_objective == 73);
  CHECK(p.optimal);
  CHECK(p.hits.front() == IntSet{3, 5, 7, 13, 17, 19, 23, 43, 47, 53, 59, 61, 67, 71, 73});
  for (const auto& h : p.hits) {
    CHECK(reverify_hit(h, HitFilter::kMstd));
    CHECK(h.max() >= *p.best_objective);
  }

  const auto c = minimal_mstd_in(interval(14), Objective::kMinimizeMaxElement, 1 << 20);
  REQUIRE(c.best_objective);
  CHECK(*c.best_objective == 14);
  CHECK(c.optimal);

  const auto d = minimal_mstd_in(interval(20), Objective::kMinimizeDiameter, 1 << 22);
  REQUIRE(d.best_objective);
  CHECK(*d.best_objective == 14);
  CHECK(d.optimal);

  const auto fib = IntSet(materialize(SequenceSpec::fibonacci(), 18));
  const auto f = minimal_mstd_in(fib, Objective::kMinimizeMaxElement, 1 << 22);
  CHECK(f.hits.empty());
  CHECK(f.exhausted);

  const auto starved = minimal_mstd_in(fib, Objective::kMinimizeMaxElement, 10);
  CHECK(starved.hits.empty());
  CHECK_FALSE(starved.exhausted);
}

TEST_CASE("special search") {
  const auto s3 = base_expansion(conway_set(), 3);
  auto cfg = over(s3);
  cfg.min_size = s3.size();
  const auto hit = special_search(cfg);
  REQUIRE(hit.hit_count == 1);
  CHECK(hit.hits.front() == s3);
  CHECK(reverify_hit(s3, HitFilter::kSpecial));

  CHECK(special_search(over(interval(14))).hit_count == 0);

  auto empty_window = over(interval(5));
  empty_window.min_size = 7;
  const auto e = special_search(empty_window);
  CHECK(e.hit_count == 0);
  CHECK(e.exhausted);
}
