#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mstd/int_set.hpp"
#include "mstd/sets_core.hpp"

namespace mstd {

enum class SearchMode { kExhaustive, kMonteCarlo };

enum class Objective { kFirstHit, kCountAll, kMinimizeMaxElement, kMinimizeDiameter };

// Which classifications count as hits.
enum class HitFilter { kMstd, kSpecial };

inline constexpr std::size_t kDefaultHitCap = 1000;
inline constexpr std::uint64_t kUnlimitedBudget = std::numeric_limits<std::uint64_t>::max();

struct SearchConfig {
  IntSet ground;
  std::size_t min_size = 1;
  std::size_t max_size = std::numeric_limits<std::size_t>::max();  // clamped to |ground|
  std::uint64_t budget = kUnlimitedBudget;
  SearchMode mode = SearchMode::kExhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Objective objective = Objective::kCountAll;
  HitFilter filter = HitFilter::kMstd;
  // Skip subsets whose diameter is below the minimal MSTD diameter
  // established by min_mstd_diameter().
  bool prune_small_diameter = true;
  std::size_t hit_cap = kDefaultHitCap;
  unsigned threads = 0;  // 0 = hardware concurrency
  Limits limits;
};

struct SearchReport {
  std::vector<IntSet> hits;  // at most hit_cap, in enumeration order
  std::uint64_t hit_count = 0;
  std::uint64_t examined = 0;
  std::optional<double> density;
  std::optional<double> stderr_estimate;
  bool exhausted = false;
  std::uint64_t seed = 0;
  std::vector<std::string> pruning_rules;
  // minimal_mstd_in only
  std::optional<Int> best_objective;
  bool optimal = false;
};

// Smallest diameter of any MSTD set, derived by exhaustively classifying all
// subsets of {0..13} (no pruning) and confirming the Conway set. Computed once.
struct DiameterBaseline {
  Int min_diameter = 0;
  std::uint64_t subsets_checked = 0;
  std::string rule;
};
const DiameterBaseline& min_mstd_diameter();

// Subsets in ascending size; within a size, ascending index bitmask (colex).
SearchReport exhaustive_search(const SearchConfig& cfg);

// Each ground element included independently with probability 1/2.
SearchReport monte_carlo_search(const SearchConfig& cfg);

// Uniform random subsets of {0..n}; density = hits/samples with binomial stderr.
SearchReport monte_carlo_density(Int n, std::uint64_t samples, std::uint64_t seed,
                                 unsigned threads = 0);

// Best MSTD subset of `ground` under the objective. `optimal` is set when
// every candidate strictly better than the returned one was enumerated.
SearchReport minimal_mstd_in(const IntSet& ground, Objective objective, std::uint64_t budget,
                             unsigned threads = 0);

// exhaustive_search / monte_carlo_search restricted to special MSTD hits.
SearchReport special_search(const SearchConfig& cfg);

// True iff `hit` passes `filter` when re-classified from scratch.
bool reverify_hit(const IntSet& hit, HitFilter filter);

}  // namespace mstd
