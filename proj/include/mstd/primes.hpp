#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mstd/int_set.hpp"

namespace mstd {

/// Odd-only bitmap of the primes up to `limit`, filled segment by segment.
/// Immutable after construction; membership queries are O(1).
class PrimeSieve {
 public:
  explicit PrimeSieve(Int limit, unsigned threads = 0);

  Int limit() const { return limit_; }
  // Throws DomainError for n above the limit.
  bool is_prime(Int n) const;
  std::vector<Int> primes() const;
  std::size_t count() const;

 private:
  bool odd_bit(std::uint64_t index) const { return bits_[index >> 6] >> (index & 63) & 1u; }

  Int limit_ = 0;
  std::vector<std::uint64_t> bits_;  // bit i set <=> 2i+1 is prime
};

std::vector<Int> primes_up_to(Int limit);

/// Offset pattern (b_1 < ... < b_m), normalized so that b_1 = 0.
class PrimeTuple {
 public:
  explicit PrimeTuple(std::vector<Int> offsets);
  static PrimeTuple parse(const std::string& text);

  std::span<const Int> offsets() const { return offsets_; }
  std::size_t arity() const { return offsets_.size(); }
  Int spread() const { return offsets_.back(); }
  std::string to_string() const;

 private:
  std::vector<Int> offsets_;
};

// The Conway set scaled by 30.
PrimeTuple conway_tuple();

struct AdmissibilityResult {
  bool admissible = true;
  std::optional<Int> witness_modulus;  // a prime whose residues are all covered
  std::vector<Int> checked_moduli;     // every prime p <= m
};

AdmissibilityResult is_admissible(const PrimeTuple& t);

struct SingularSeries {
  double value = 0;
  Int truncation_prime = 0;  // product taken over p <= truncation_prime
  double tail_bound = 0;     // bound on |G - value| / G from the omitted primes
  std::vector<std::pair<Int, Int>> per_prime_v;  // (p, v(p)) for p <= m
};

// rel_tol in (0, 0.1].
SingularSeries singular_series(const PrimeTuple& t, double rel_tol);

// ∫_2^x du / (log u)^m by adaptive Simpson quadrature; 0 for x <= 2.
double log_power_integral(double x, unsigned m, double rel_tol = 1e-6);

struct MatchReport {
  Int x = 0;
  std::vector<Int> matches;  // first match_cap values of n
  std::uint64_t count = 0;   // #{1 <= n <= x : n + b_i prime for all i}
  double singular_series = 0;
  double integral = 0;
  double predicted = 0;  // singular_series * integral
  double ratio = 0;      // count / predicted, NaN when predicted is 0
  bool admissible = true;
};

struct MatchOptions {
  std::size_t match_cap = 1000;
  double series_tol = 1e-3;
  unsigned threads = 0;
};

MatchReport match_tuple(const PrimeTuple& t, Int x, const MatchOptions& options = {});

// {p, p+2s, p+3s, p+4s, p+7s, p+11s, p+12s, p+14s}
IntSet dilated_conway(Int p, Int s);

struct ArithmeticProgression {
  Int first = 0;
  Int difference = 0;
  std::size_t length = 0;
};

// Smallest first term <= start_bound of an all-prime progression of the
// given length, then the smallest difference <= max_difference. A
// max_difference of 0 picks a default that keeps the sieve below 2^28.
std::optional<ArithmeticProgression> find_prime_ap(std::size_t length, Int start_bound,
                                                   Int max_difference = 0);

// Conway pattern inside an arithmetic progression of length >= 15.
IntSet mstd_in_ap(const ArithmeticProgression& ap);

}  // namespace mstd
