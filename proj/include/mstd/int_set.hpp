#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mstd {

using Int = std::int64_t;

// Precondition violations on mathematical inputs (empty set, x already in S, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured resource limit would be exceeded.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::uint64_t kDefaultDiameterCap = std::uint64_t{1} << 24;

struct Limits {
  // Largest max-min allowed for any IntSet, and the largest bit-vector the
  // dense sumset kernel may allocate.
  std::uint64_t diameter_cap = kDefaultDiameterCap;
};

/// Finite set of nonnegative integers, stored sorted and strictly increasing.
/// Min, max and element sum are cached at construction; values are immutable.
class IntSet {
 public:
  IntSet() = default;

  // Sorts and validates. Throws DomainError on negative or duplicate elements,
  // CapacityError when max-min exceeds limits.diameter_cap.
  explicit IntSet(std::vector<Int> elements, Limits limits = {});
  IntSet(std::initializer_list<Int> elements);

  // Trusted path for already sorted, distinct, nonnegative input.
  static IntSet from_sorted_unchecked(std::vector<Int> elements);

  // Parses "0,2,3,4" (whitespace tolerated).
  static IntSet parse(const std::string& text, Limits limits = {});

  std::span<const Int> elements() const { return elements_; }
  const std::vector<Int>& values() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  Int min() const { return min_; }
  Int max() const { return max_; }
  Int diameter() const { return max_ - min_; }
  // Element sum, widened: S_3-style expansions can have large sums.
  __int128 sum() const { return sum_; }
  bool contains(Int x) const;

  // Comma-separated canonical form.
  std::string to_string() const;

  // c*s + t for c >= 1, t >= -min.
  IntSet affine(Int scale, Int shift) const;

  friend bool operator==(const IntSet& a, const IntSet& b) {
    return a.elements_ == b.elements_;
  }

 private:
  void recompute_cache();

  std::vector<Int> elements_;
  Int min_ = 0;
  Int max_ = 0;
  __int128 sum_ = 0;
};

}  // namespace mstd
