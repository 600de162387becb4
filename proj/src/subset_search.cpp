#include "mstd/subset_search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "mstd/parallel.hpp"

namespace mstd {

namespace {

using Index = std::uint32_t;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// C(n, r), saturating at 2^64 - 1.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    acc = acc * (n - i) / (i + 1);
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

// Advances a strictly increasing combination over {0..n-1} to its colex
// successor; false after the last one.
bool next_colex(std::vector<Index>& c, Index n) {
  const std::size_t m = c.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Index limit = (i + 1 < m) ? c[i + 1] : n;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<Index>(j);
      return true;
    }
  }
  return false;
}

bool passes(const Classification& c, HitFilter filter) {
  return filter == HitFilter::kSpecial ? c.special : c.verdict == Verdict::kMstd;
}

Int pruning_bound(bool enabled, std::vector<std::string>& rules) {
  if (!enabled) return 0;
  const auto& baseline = min_mstd_diameter();
  rules.push_back(baseline.rule);
  return baseline.min_diameter;
}

// All subsets of a fixed size whose largest element is ground[top].
struct Chunk {
  std::size_t size = 0;
  std::size_t top = 0;
  std::uint64_t alloc = 0;  // how many of its subsets (in colex order) to visit
};

struct ChunkResult {
  std::uint64_t examined = 0;
  std::uint64_t hit_count = 0;
  std::vector<IntSet> hits;
};

ChunkResult run_chunk(const Chunk& chunk, std::span<const Int> ground, HitFilter filter,
                      Int min_diameter, bool stop_at_first, std::size_t hit_cap, Limits limits) {
  ChunkResult out;
  const Int top_value = ground[chunk.top];
  if (top_value - ground.front() < min_diameter) {
    out.examined = chunk.alloc;
    return out;
  }
  CountingWorkspace ws(limits);
  std::vector<Index> comb(chunk.size - 1);
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = static_cast<Index>(i);
  std::vector<Int> values(chunk.size);
  for (std::uint64_t visited = 0; visited < chunk.alloc; ++visited) {
    if (visited > 0) next_colex(comb, static_cast<Index>(chunk.top));
    ++out.examined;
    const Int low = comb.empty() ? top_value : ground[comb.front()];
    if (top_value - low < min_diameter) continue;
    for (std::size_t i = 0; i < comb.size(); ++i) values[i] = ground[comb[i]];
    values.back() = top_value;
    if (!passes(classify_sorted(values, ws), filter)) continue;
    ++out.hit_count;
    if (out.hits.size() < hit_cap) out.hits.push_back(IntSet::from_sorted_unchecked(values));
    if (stop_at_first) break;
  }
  return out;
}

struct BlockResult {
  std::uint64_t hit_count = 0;
  std::vector<IntSet> hits;
};

constexpr std::uint64_t kSamplesPerBlock = std::uint64_t{1} << 14;

std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

void sort_hits_by_objective(std::vector<IntSet>& hits, Objective objective) {
  auto key = [objective](const IntSet& s) {
    return objective == Objective::kMinimizeDiameter ? s.diameter() : s.max();
  };
  std::sort(hits.begin(), hits.end(), [&](const IntSet& a, const IntSet& b) {
    if (key(a) != key(b)) return key(a) < key(b);
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.elements().begin(), a.elements().end(),
                                        b.elements().begin(), b.elements().end());
  });
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
}

// MSTD sets of minimal diameter with min 0, used as affine patterns.
const std::vector<IntSet>& minimal_diameter_patterns() {
  static const std::vector<IntSet> patterns = [] {
    const Int d = min_mstd_diameter().min_diameter;
    std::vector<Int> range(static_cast<std::size_t>(d) + 1);
    for (Int i = 0; i <= d; ++i) range[static_cast<std::size_t>(i)] = i;
    SearchConfig cfg;
    cfg.ground = IntSet(range);
    cfg.prune_small_diameter = false;
    cfg.threads = 1;
    std::vector<IntSet> out;
    for (auto& h : exhaustive_search(cfg).hits)
      if (h.min() == 0 && h.max() == d) out.push_back(h);
    return out;
  }();
  return patterns;
}

// Enumerates {ground[lo]} ∪ (mask over interior indices) ∪ {ground[hi]} for
// every mask in [0, 2^interior.size()). When lo is absent only the top is fixed.
struct FixedEndpointsResult {
  std::uint64_t examined = 0;
  std::vector<IntSet> hits;
};

FixedEndpointsResult enumerate_with_endpoints(std::span<const Int> ground, std::optional<std::size_t> lo,
                                              std::size_t hi, Int min_diameter, unsigned threads) {
  const std::size_t first_interior = lo ? *lo + 1 : 0;
  const std::size_t interior = hi - first_interior;
  const std::uint64_t total = std::uint64_t{1} << interior;
  constexpr std::uint64_t kMasksPerChunk = std::uint64_t{1} << 14;
  const std::size_t chunks = static_cast<std::size_t>((total + kMasksPerChunk - 1) / kMasksPerChunk);
  std::vector<std::vector<IntSet>> found(chunks);
  parallel_for_chunks(chunks, threads, [&](std::size_t c) {
    CountingWorkspace ws;
    std::vector<Int> values;
    const std::uint64_t begin = c * kMasksPerChunk;
    const std::uint64_t end = std::min(total, begin + kMasksPerChunk);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      values.clear();
      if (lo) values.push_back(ground[*lo]);
      for (std::uint64_t m = mask; m; m &= m - 1)
        values.push_back(ground[first_interior + static_cast<std::size_t>(std::countr_zero(m))]);
      values.push_back(ground[hi]);
      if (values.back() - values.front() < min_diameter) continue;
      if (classify_sorted(values, ws).verdict == Verdict::kMstd)
        found[c].push_back(IntSet::from_sorted_unchecked(values));
    }
  });
  FixedEndpointsResult out;
  out.examined = total;
  for (auto& f : found)
    for (auto& h : f) out.hits.push_back(std::move(h));
  return out;
}

}  // namespace

const DiameterBaseline& min_mstd_diameter() {
  static const DiameterBaseline baseline = [] {
    constexpr Int kProbe = 13;
    DiameterBaseline b;
    b.min_diameter = kProbe + 1;
    CountingWorkspace ws;
    std::vector<Int> values;
    for (std::uint32_t mask = 1; mask < (1u << (kProbe + 1)); ++mask) {
      values.clear();
      for (Int i = 0; i <= kProbe; ++i)
        if (mask >> i & 1u) values.push_back(i);
      ++b.subsets_checked;
      if (classify_sorted(values, ws).verdict == Verdict::kMstd)
        b.min_diameter = std::min(b.min_diameter, values.back() - values.front());
    }
    if (b.min_diameter == kProbe + 1 && classify(conway_set()).verdict != Verdict::kMstd) {
      // Conway set not MSTD would mean the kernels are broken; do not prune.
      b.min_diameter = 0;
    }
    b.rule = "skip-diameter-below-" + std::to_string(b.min_diameter) + " (baseline: " +
             std::to_string(b.subsets_checked) + " subsets of {0..13} classified, Conway set has diameter 14)";
    return b;
  }();
  return baseline;
}

bool reverify_hit(const IntSet& hit, HitFilter filter) {
  if (hit.empty()) return false;
  return passes(classify(hit), filter);
}

SearchReport exhaustive_search(const SearchConfig& cfg) {
  SearchReport report;
  report.seed = cfg.seed;
  const auto ground = cfg.ground.elements();
  const std::size_t n = ground.size();
  const std::size_t min_size = std::max<std::size_t>(cfg.min_size, 1);
  const std::size_t max_size = std::min(cfg.max_size, n);
  const Int min_diameter = pruning_bound(cfg.prune_small_diameter, report.pruning_rules);

  // Plan chunks in enumeration order, granting budget front to back.
  std::vector<Chunk> plan;
  std::uint64_t remaining = cfg.budget;
  bool complete = true;
  for (std::size_t k = min_size; k <= max_size && complete; ++k) {
    for (std::size_t top = k - 1; top < n; ++top) {
      const std::uint64_t total = binomial(top, k - 1);
      if (remaining == 0) {
        complete = false;
        break;
      }
      const std::uint64_t alloc = std::min(total, remaining);
      remaining -= alloc;
      plan.push_back({k, top, alloc});
      if (alloc < total) {
        complete = false;
        break;
      }
    }
  }

  const bool first_hit = cfg.objective == Objective::kFirstHit;
  // First-hit runs in fixed-size waves so the stopping point does not depend
  // on the number of workers.
  constexpr std::size_t kWave = 64;
  const std::size_t wave = first_hit ? kWave : std::max<std::size_t>(plan.size(), 1);
  bool stopped = false;
  for (std::size_t start = 0; start < plan.size() && !stopped; start += wave) {
    const std::size_t count = std::min(wave, plan.size() - start);
    std::vector<ChunkResult> results(count);
    parallel_for_chunks(count, cfg.threads, [&](std::size_t i) {
      results[i] = run_chunk(plan[start + i], ground, cfg.filter, min_diameter, first_hit,
                             cfg.hit_cap, cfg.limits);
    });
    for (auto& r : results) {
      report.examined += r.examined;
      report.hit_count += r.hit_count;
      for (auto& h : r.hits)
        if (report.hits.size() < cfg.hit_cap) report.hits.push_back(std::move(h));
      if (first_hit && r.hit_count > 0) {
        stopped = true;
        break;
      }
    }
  }
  report.exhausted = complete && !stopped;
  return report;
}

SearchReport monte_carlo_search(const SearchConfig& cfg) {
  if (cfg.samples == 0) throw DomainError("monte carlo search needs samples >= 1");
  SearchReport report;
  report.seed = cfg.seed;
  const auto ground = cfg.ground.elements();
  const std::size_t n = ground.size();
  const std::size_t words = (n + 63) / 64;
  const std::size_t min_size = std::max<std::size_t>(cfg.min_size, 1);
  const std::size_t max_size = std::min(cfg.max_size, n);
  const std::uint64_t blocks = (cfg.samples + kSamplesPerBlock - 1) / kSamplesPerBlock;

  std::vector<BlockResult> results(static_cast<std::size_t>(blocks));
  parallel_for_chunks(results.size(), cfg.threads, [&](std::size_t b) {
    auto rng = block_rng(cfg.seed, b);
    CountingWorkspace ws(cfg.limits);
    std::vector<Int> values;
    values.reserve(n);
    const std::uint64_t first = b * kSamplesPerBlock;
    const std::uint64_t last = std::min(cfg.samples, first + kSamplesPerBlock);
    auto& out = results[b];
    for (std::uint64_t s = first; s < last; ++s) {
      values.clear();
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = rng();
        const std::size_t base = w * 64;
        if (n - base < 64) bits &= (std::uint64_t{1} << (n - base)) - 1;
        for (; bits; bits &= bits - 1) values.push_back(ground[base + std::countr_zero(bits)]);
      }
      // The empty draw and draws outside the size window count as non-hits.
      if (values.size() < min_size || values.size() > max_size) continue;
      if (!passes(classify_sorted(values, ws), cfg.filter)) continue;
      ++out.hit_count;
      if (out.hits.size() < cfg.hit_cap) out.hits.push_back(IntSet::from_sorted_unchecked(values));
    }
  });

  for (auto& r : results) {
    report.hit_count += r.hit_count;
    for (auto& h : r.hits)
      if (report.hits.size() < cfg.hit_cap) report.hits.push_back(std::move(h));
  }
  report.examined = cfg.samples;
  const double p = static_cast<double>(report.hit_count) / static_cast<double>(cfg.samples);
  report.density = p;
  report.stderr_estimate = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.samples));
  report.exhausted = false;
  return report;
}

SearchReport monte_carlo_density(Int n, std::uint64_t samples, std::uint64_t seed,
                                 unsigned threads) {
  if (n < 0) throw DomainError("density: n must be nonnegative");
  std::vector<Int> range(static_cast<std::size_t>(n) + 1);
  for (Int i = 0; i <= n; ++i) range[static_cast<std::size_t>(i)] = i;
  SearchConfig cfg;
  cfg.ground = IntSet(std::move(range));
  cfg.mode = SearchMode::kMonteCarlo;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.threads = threads;
  return monte_carlo_search(cfg);
}

SearchReport minimal_mstd_in(const IntSet& ground, Objective objective, std::uint64_t budget,
                             unsigned threads) {
  if (objective != Objective::kMinimizeMaxElement && objective != Objective::kMinimizeDiameter) {
    throw DomainError("minimal_mstd_in: objective must be minimize-max-element or minimize-diameter");
  }
  SearchReport report;
  const auto g = ground.elements();
  const std::size_t n = g.size();
  const Int min_diameter = pruning_bound(true, report.pruning_rules);
  auto objective_of = [objective](const IntSet& s) {
    return objective == Objective::kMinimizeDiameter ? s.diameter() : s.max();
  };
  std::vector<IntSet> hits;
  std::optional<Int> best;
  auto consider = [&](IntSet hit) {
    const Int v = objective_of(hit);
    if (!best || v < *best) best = v;
    hits.push_back(std::move(hit));
  };

  // Phase 1: affine images a + s*P of minimal-diameter MSTD patterns inside
  // the ground set.
  report.pruning_rules.push_back("affine-pattern-probe");
  std::uint64_t remaining = budget;
  if (n > 0) {
    const std::unordered_set<Int> members(g.begin(), g.end());
    bool out_of_budget = false;
    for (const IntSet& pattern : minimal_diameter_patterns()) {
      const Int span = pattern.max();
      for (std::size_t i = 0; i < n && !out_of_budget; ++i) {
        const Int a = g[i];
        for (Int s = 1; a + s * span <= ground.max(); ++s) {
          if (remaining == 0) {
            out_of_budget = true;
            break;
          }
          --remaining;
          ++report.examined;
          bool inside = true;
          for (Int p : pattern.elements()) {
            if (!members.count(a + s * p)) {
              inside = false;
              break;
            }
          }
          if (inside) consider(pattern.affine(s, a));
        }
      }
    }
  }

  // Phase 2: exhaustive enumeration ordered by the objective.
  bool exhausted = true;
  bool optimal = false;
  auto charge = [&](std::size_t interior) {
    if (interior >= 63) return false;
    const std::uint64_t cost = std::uint64_t{1} << interior;
    if (cost > remaining) return false;
    remaining -= cost;
    return true;
  };
  auto absorb = [&](FixedEndpointsResult r) {
    report.examined += r.examined;
    for (auto& h : r.hits) consider(std::move(h));
    return !r.hits.empty();
  };

  if (objective == Objective::kMinimizeMaxElement) {
    for (std::size_t top = 0; top < n; ++top) {
      if (best && g[top] >= *best) {
        optimal = true;
        break;
      }
      if (g[top] - g.front() < min_diameter) continue;
      if (!charge(top)) {
        exhausted = false;
        break;
      }
      if (absorb(enumerate_with_endpoints(g, std::nullopt, top, min_diameter, threads))) {
        optimal = true;
        break;
      }
    }
  } else {
    struct Pair {
      Int diameter;
      std::size_t lo, hi;
    };
    std::vector<Pair> pairs;
    bool truncated = false;
    for (std::size_t lo = 0; lo < n; ++lo) {
      for (std::size_t hi = lo + 1; hi < n; ++hi) {
        if (hi - lo - 1 >= 63) {
          truncated = true;
          break;
        }
        if (g[hi] - g[lo] >= min_diameter) pairs.push_back({g[hi] - g[lo], lo, hi});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return a.diameter != b.diameter ? a.diameter < b.diameter : a.lo < b.lo;
    });
    bool stopped = false;
    for (const Pair& p : pairs) {
      if (best && p.diameter >= *best) {
        optimal = true;
        stopped = true;
        break;
      }
      if (!charge(p.hi - p.lo - 1)) {
        exhausted = false;
        stopped = true;
        break;
      }
      if (absorb(enumerate_with_endpoints(g, p.lo, p.hi, min_diameter, threads))) {
        optimal = true;
        stopped = true;
        break;
      }
    }
    if (!stopped && truncated) exhausted = false;
  }

  sort_hits_by_objective(hits, objective);
  report.hit_count = hits.size();
  if (hits.size() > kDefaultHitCap) hits.resize(kDefaultHitCap);
  report.hits = std::move(hits);
  report.best_objective = best;
  report.optimal = optimal && best.has_value();
  report.exhausted = exhausted;
  return report;
}

SearchReport special_search(const SearchConfig& cfg) {
  SearchConfig filtered = cfg;
  filtered.filter = HitFilter::kSpecial;
  return cfg.mode == SearchMode::kMonteCarlo ? monte_carlo_search(filtered)
                                             : exhaustive_search(filtered);
}

}  // namespace mstd
