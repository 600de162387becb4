#include "mstd/sets_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace mstd {

namespace {

using Word = std::uint64_t;
constexpr unsigned kWordBits = 64;

std::size_t words_for_bits(std::uint64_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// dst |= src << shift
void or_shifted_left(std::vector<Word>& dst, const std::vector<Word>& src, std::uint64_t shift) {
  const std::size_t word = shift / kWordBits;
  const unsigned bit = shift % kWordBits;
  const std::size_t n = src.size();
  if (bit == 0) {
    for (std::size_t i = 0; i < n && i + word < dst.size(); ++i) dst[i + word] |= src[i];
    return;
  }
  for (std::size_t i = 0; i < n && i + word < dst.size(); ++i) {
    dst[i + word] |= src[i] << bit;
    if (i + word + 1 < dst.size()) dst[i + word + 1] |= src[i] >> (kWordBits - bit);
  }
}

// dst |= src >> shift, both the same length
void or_shifted_right(std::vector<Word>& dst, const std::vector<Word>& src, std::uint64_t shift) {
  const std::size_t word = shift / kWordBits;
  const unsigned bit = shift % kWordBits;
  const std::size_t n = src.size();
  if (word >= n) return;
  if (bit == 0) {
    for (std::size_t i = 0; i + word < n; ++i) dst[i] |= src[i + word];
    return;
  }
  for (std::size_t i = 0; i + word < n; ++i) {
    Word v = src[i + word] >> bit;
    if (i + word + 1 < n) v |= src[i + word + 1] << (kWordBits - bit);
    dst[i] |= v;
  }
}

std::size_t popcount(const std::vector<Word>& bits) {
  std::size_t c = 0;
  for (Word w : bits) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

void require_nonempty(const IntSet& s, const char* op) {
  if (s.empty()) throw DomainError(std::string(op) + ": empty set");
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kMstd:
      return "mstd";
    case Verdict::kBalanced:
      return "balanced";
    case Verdict::kDifferenceDominated:
      return "diff_dominated";
  }
  return "?";
}

void CountingWorkspace::load_source(std::span<const Int> sorted) {
  const Int lo = sorted.front();
  const std::uint64_t d = static_cast<std::uint64_t>(sorted.back() - lo);
  source_.assign(words_for_bits(d + 1), 0);
  for (Int e : sorted) {
    const auto o = static_cast<std::uint64_t>(e - lo);
    source_[o / kWordBits] |= Word{1} << (o % kWordBits);
  }
}

const std::vector<std::uint64_t>& CountingWorkspace::dense_sum_bits(std::span<const Int> sorted) {
  load_source(sorted);
  const Int lo = sorted.front();
  const std::uint64_t d = static_cast<std::uint64_t>(sorted.back() - lo);
  sums_.assign(words_for_bits(2 * d + 1), 0);
  for (Int e : sorted) or_shifted_left(sums_, source_, static_cast<std::uint64_t>(e - lo));
  return sums_;
}

const std::vector<std::uint64_t>& CountingWorkspace::dense_positive_diff_bits(
    std::span<const Int> sorted) {
  load_source(sorted);
  const Int lo = sorted.front();
  diffs_.assign(source_.size(), 0);
  for (Int e : sorted) or_shifted_right(diffs_, source_, static_cast<std::uint64_t>(e - lo));
  return diffs_;
}

SumDiffCounts CountingWorkspace::count_dense(std::span<const Int> sorted) {
  const Int lo = sorted.front();
  const std::uint64_t d = static_cast<std::uint64_t>(sorted.back() - lo);
  load_source(sorted);
  sums_.assign(words_for_bits(2 * d + 1), 0);
  diffs_.assign(source_.size(), 0);
  for (Int e : sorted) {
    const auto o = static_cast<std::uint64_t>(e - lo);
    or_shifted_left(sums_, source_, o);
    or_shifted_right(diffs_, source_, o);
  }
  // diffs_ holds {a - a' >= 0}; bit 0 is always set.
  return {popcount(sums_), 2 * popcount(diffs_) - 1};
}

SumDiffCounts CountingWorkspace::count_sparse(std::span<const Int> sorted) {
  const std::size_t n = sorted.size();
  SumDiffCounts out;
  scratch_.clear();
  scratch_.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) scratch_.push_back(sorted[i] + sorted[j]);
  std::sort(scratch_.begin(), scratch_.end());
  out.sums = static_cast<std::size_t>(std::unique(scratch_.begin(), scratch_.end()) - scratch_.begin());

  scratch_.clear();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) scratch_.push_back(sorted[j] - sorted[i]);
  std::sort(scratch_.begin(), scratch_.end());
  const auto positive =
      static_cast<std::size_t>(std::unique(scratch_.begin(), scratch_.end()) - scratch_.begin());
  out.diffs = 2 * positive + 1;
  return out;
}

bool CountingWorkspace::dense_allowed(std::span<const Int> sorted) const {
  const auto d = static_cast<std::uint64_t>(sorted.back() - sorted.front());
  return 2 * d <= limits_.diameter_cap;
}

bool CountingWorkspace::prefer_dense(std::span<const Int> sorted) const {
  if (!dense_allowed(sorted)) return false;
  const double n = static_cast<double>(sorted.size());
  const double d = static_cast<double>(sorted.back() - sorted.front());
  const double dense_cost = n * (3.0 * d / kWordBits + 4.0);
  const double pairs = n * (n + 1) / 2;
  const double sparse_cost = pairs * (std::log2(pairs + 1) + 2.0);
  return dense_cost <= sparse_cost;
}

SumDiffCounts CountingWorkspace::count(std::span<const Int> sorted) {
  return prefer_dense(sorted) ? count_dense(sorted) : count_sparse(sorted);
}

Classification make_classification(std::size_t sum_count, std::size_t diff_count,
                                   std::size_t set_size) {
  Classification c;
  c.sum_count = sum_count;
  c.diff_count = diff_count;
  c.gap = static_cast<std::int64_t>(sum_count) - static_cast<std::int64_t>(diff_count);
  c.verdict = c.gap > 0    ? Verdict::kMstd
              : c.gap == 0 ? Verdict::kBalanced
                           : Verdict::kDifferenceDominated;
  c.special = c.gap >= static_cast<std::int64_t>(set_size);
  return c;
}

Classification classify_sorted(std::span<const Int> sorted, CountingWorkspace& ws) {
  const auto counts = ws.count(sorted);
  return make_classification(counts.sums, counts.diffs, sorted.size());
}

IntSet sumset(const IntSet& s, Limits limits) {
  require_nonempty(s, "sumset");
  if (2 * static_cast<std::uint64_t>(s.diameter()) > limits.diameter_cap) {
    throw CapacityError("sumset: diameter of S+S (" + std::to_string(2 * s.diameter()) +
                        ") exceeds diameter cap " + std::to_string(limits.diameter_cap));
  }
  CountingWorkspace ws(limits);
  const auto& bits = ws.dense_sum_bits(s.elements());
  std::vector<Int> out;
  const Int base = 2 * s.min();
  for (std::size_t w = 0; w < bits.size(); ++w) {
    Word word = bits[w];
    while (word) {
      const int b = std::countr_zero(word);
      out.push_back(base + static_cast<Int>(w * kWordBits + b));
      word &= word - 1;
    }
  }
  return IntSet::from_sorted_unchecked(std::move(out));
}

DifferenceSet diffset(const IntSet& s, Limits limits) {
  require_nonempty(s, "diffset");
  CountingWorkspace ws(limits);
  std::vector<Int> positive;
  if (ws.dense_allowed(s.elements())) {
    const auto& bits = ws.dense_positive_diff_bits(s.elements());
    for (std::size_t w = 0; w < bits.size(); ++w) {
      Word word = bits[w];
      while (word) {
        const int b = std::countr_zero(word);
        const Int v = static_cast<Int>(w * kWordBits + b);
        if (v > 0) positive.push_back(v);
        word &= word - 1;
      }
    }
  } else {
    const auto e = s.elements();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) positive.push_back(e[j] - e[i]);
    std::sort(positive.begin(), positive.end());
    positive.erase(std::unique(positive.begin(), positive.end()), positive.end());
  }
  DifferenceSet out;
  out.elements.reserve(2 * positive.size() + 1);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) out.elements.push_back(-*it);
  out.elements.push_back(0);
  out.elements.insert(out.elements.end(), positive.begin(), positive.end());
  return out;
}

Classification classify(const IntSet& s, Limits limits) {
  require_nonempty(s, "classify");
  CountingWorkspace ws(limits);
  return classify_sorted(s.elements(), ws);
}

AppendAnalysis append_analysis(const IntSet& s, Int x, Limits limits) {
  require_nonempty(s, "append_analysis");
  if (x < 0) throw DomainError("append_analysis: appended element must be nonnegative");
  if (s.contains(x)) {
    throw DomainError("append_analysis: " + std::to_string(x) + " is already in S");
  }
  std::vector<Int> grown = s.values();
  grown.insert(std::upper_bound(grown.begin(), grown.end(), x), x);

  CountingWorkspace ws(limits);
  AppendAnalysis out;
  out.before = classify_sorted(s.elements(), ws);
  out.after = classify_sorted(grown, ws);
  // S+S and S-S are subsets of the grown sumset/diffset, so new = difference of sizes.
  out.new_sums = out.after.sum_count - out.before.sum_count;
  out.new_diffs = out.after.diff_count - out.before.diff_count;
  out.threshold_met = static_cast<__int128>(x) >= 2 * s.sum();
  return out;
}

Int carry_free_base(const IntSet& s) { return 2 * s.max() + 1; }

IntSet base_expansion(const IntSet& s, unsigned k, Limits limits) {
  require_nonempty(s, "base_expansion");
  if (k == 0) throw DomainError("base_expansion: k must be at least 1");
  if (s.min() != 0) throw DomainError("base_expansion: S must contain 0");
  if (k == 1) return s;

  const Int base = carry_free_base(s);
  // max(S_k) = max(S) * (1 + b + ... + b^{k-1})
  __int128 place = 1;
  __int128 top = 0;
  for (unsigned i = 0; i < k; ++i) {
    top += static_cast<__int128>(s.max()) * place;
    if (top > static_cast<__int128>(limits.diameter_cap)) {
      throw CapacityError("base_expansion: diameter of S_" + std::to_string(k) +
                          " exceeds diameter cap " + std::to_string(limits.diameter_cap));
    }
    place *= base;
  }

  std::vector<Int> current = s.values();
  Int weight = 1;
  for (unsigned i = 1; i < k; ++i) {
    weight *= base;
    std::vector<Int> next;
    next.reserve(current.size() * s.size());
    for (Int digit : s.elements())
      for (Int lower : current) next.push_back(digit * weight + lower);
    current = std::move(next);
  }
  // Digits are placed highest-first over sorted lower parts, and b exceeds
  // the largest lower part, so `current` is already sorted.
  return IntSet::from_sorted_unchecked(std::move(current));
}

}  // namespace mstd
