#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mstd/int_set.hpp"

namespace mstd {

enum class Verdict { kMstd, kBalanced, kDifferenceDominated };

std::string_view to_string(Verdict v);

struct Classification {
  std::size_t sum_count = 0;
  std::size_t diff_count = 0;
  Verdict verdict = Verdict::kBalanced;
  std::int64_t gap = 0;  // sum_count - diff_count
  bool special = false;  // gap >= |S|
};

// S - S as a sorted list of signed integers; symmetric about 0.
struct DifferenceSet {
  std::vector<Int> elements;
  std::size_t size() const { return elements.size(); }
};

struct AppendAnalysis {
  std::size_t new_sums = 0;
  std::size_t new_diffs = 0;
  bool threshold_met = false;  // x >= 2 * sum(S)
  Classification before;
  Classification after;
};

struct SumDiffCounts {
  std::size_t sums = 0;
  std::size_t diffs = 0;
};

// Reusable scratch buffers for |S+S| and |S-S| in tight loops. Not shareable
// between threads; give each worker its own.
class CountingWorkspace {
 public:
  explicit CountingWorkspace(Limits limits = {}) : limits_(limits) {}

  // `sorted` must be nonempty, strictly increasing. Picks the bit-vector or
  // the sort-based kernel by estimated cost.
  SumDiffCounts count(std::span<const Int> sorted);

  SumDiffCounts count_dense(std::span<const Int> sorted);
  SumDiffCounts count_sparse(std::span<const Int> sorted);

  bool dense_allowed(std::span<const Int> sorted) const;
  bool prefer_dense(std::span<const Int> sorted) const;

  // Bit-vector kernels exposed for materialization. Bit i of the sum vector
  // is 2*min + i; bit i of the positive-difference vector is the difference i.
  const std::vector<std::uint64_t>& dense_sum_bits(std::span<const Int> sorted);
  const std::vector<std::uint64_t>& dense_positive_diff_bits(std::span<const Int> sorted);

 private:
  void load_source(std::span<const Int> sorted);

  Limits limits_;
  std::vector<std::uint64_t> source_;
  std::vector<std::uint64_t> sums_;
  std::vector<std::uint64_t> diffs_;
  std::vector<Int> scratch_;
};

// Classification from raw counts and the set size.
Classification make_classification(std::size_t sum_count, std::size_t diff_count,
                                   std::size_t set_size);

// Convenience for sorted spans with a caller-owned workspace.
Classification classify_sorted(std::span<const Int> sorted, CountingWorkspace& ws);

IntSet sumset(const IntSet& s, Limits limits = {});
DifferenceSet diffset(const IntSet& s, Limits limits = {});
Classification classify(const IntSet& s, Limits limits = {});
AppendAnalysis append_analysis(const IntSet& s, Int x, Limits limits = {});

// S_k = { sum_{i<k} c_i b^i : c_i in S } with the carry-free base b = 2*max(S)+1.
IntSet base_expansion(const IntSet& s, unsigned k, Limits limits = {});
Int carry_free_base(const IntSet& s);

inline const IntSet& conway_set() {
  static const IntSet kConway{0, 2, 3, 4, 7, 11, 12, 14};
  return kConway;
}

}  // namespace mstd
