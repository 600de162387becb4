#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mstd/int_set.hpp"
#include "mstd/sets_core.hpp"

namespace mstd {

enum class SequenceKind { kExplicit, kLinearRecurrence, kShiftedGeometric, kFibonacci };

std::string_view to_string(SequenceKind kind);

/// An infinite sequence a_1 < a_2 < ... described in closed form, by a linear
/// recurrence, or by an explicit list of terms.
struct SequenceSpec {
  SequenceKind kind = SequenceKind::kFibonacci;
  std::vector<Int> elements;  // explicit
  std::vector<Int> coeffs;    // a_k = coeffs[0] a_{k-1} + coeffs[1] a_{k-2} + ...
  std::vector<Int> seeds;     // initial terms of the recurrence
  Int c = 1;                  // a_k = c * ratio^k + d, k >= 1
  Int ratio = 2;
  Int d = 0;

  static SequenceSpec fibonacci();
  static SequenceSpec explicit_terms(std::vector<Int> terms);
  static SequenceSpec shifted_geometric(Int c, Int ratio, Int d);
  static SequenceSpec linear_recurrence(std::vector<Int> coeffs, std::vector<Int> seeds);

  // Throws DomainError for malformed parameters.
  void validate() const;
  bool closed_form() const {
    return kind == SequenceKind::kFibonacci || kind == SequenceKind::kShiftedGeometric;
  }
};

// First n terms. Fibonacci is listed 0, 1, 2, 3, 5, 8, ... Throws DomainError
// naming the index if the terms are not strictly increasing, or on overflow.
std::vector<Int> materialize(const SequenceSpec& spec, std::size_t n);

enum class GrowthMode {
  kWindow,     // a_k > a_{k-1} + a_{k-r} for k >= r+1
  kFromIndex,  // a_k > a_{k-1} + a_{k-3} for k >= s
};

struct GrowthViolation {
  std::size_t k = 0;  // 1-based
  Int a_k = 0;
  Int a_prev = 0;
  Int a_back = 0;
};

struct GrowthCertificate {
  GrowthMode mode = GrowthMode::kWindow;
  unsigned r = 0;
  std::size_t s = 0;
  std::size_t checked_from = 0;
  std::size_t checked_upto = 0;
  bool holds = false;
  std::optional<GrowthViolation> first_violation;
  // Holds for every k by the closed form, independent of checked_upto.
  bool symbolic = false;
  // Checked on q^k instead of c q^k + d (same MSTD subsets up to an affine map).
  bool affine_normalized = false;
};

GrowthCertificate check_growth(const SequenceSpec& spec, unsigned r, std::size_t upto);
GrowthCertificate check_growth_from(const SequenceSpec& spec, std::size_t s, std::size_t upto);

enum class NoMstdVerdict { kCertifiedNoMstd, kRefuted, kConsistentWithinBudget, kInconclusive };
std::string_view to_string(NoMstdVerdict v);

struct CertifyOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;
  unsigned threads = 0;
};

struct NoMstdCertificate {
  GrowthCertificate growth;
  std::size_t small_subset_bound = 0;  // 2r + 1
  // Condition on small subsets met because no MSTD set has fewer than 8 elements.
  bool small_bound_below_minimum = false;
  bool small_search_exhausted = false;
  std::optional<IntSet> mstd_witness;
  std::uint64_t examined = 0;
  std::uint64_t budget = 0;
  std::size_t upto = 0;
  std::vector<std::string> notes;
  NoMstdVerdict verdict = NoMstdVerdict::kInconclusive;
};

NoMstdCertificate certify_no_mstd(const SequenceSpec& spec, unsigned r, std::size_t upto,
                                  const CertifyOptions& options = {});

/// Effect of appending `new_element` above every element of S'. The growth
/// hypothesis is applicable when new_element > s_{k-1} + s_{k-r} (k = |S|,
/// 1-based indices into S'), which is what a_k > a_{k-1} + a_{k-r} implies
/// for subsets of the sequence.
struct DifferenceBoundReport {
  unsigned r = 0;
  std::size_t set_size = 0;  // k = |S' ∪ {x}|
  std::size_t new_sums = 0;
  std::size_t new_diffs = 0;
  bool hypothesis_applicable = false;
  bool bound_holds = false;  // new_diffs >= k+1 >= new_sums
  // Either S is not MSTD or |S-S|-|S+S| grew strictly.
  bool difference_lead_grows = false;
  Classification before;
  Classification after;
  std::string verdict;  // bound-holds | bound-violated | hypothesis-not-applicable
};

DifferenceBoundReport verify_difference_bound(const IntSet& s_prime, Int new_element, unsigned r);

enum class FinitenessVerdict { kRefuted, kConsistentWithinBudget };
std::string_view to_string(FinitenessVerdict v);

struct FinitenessCertificate {
  GrowthCertificate growth;
  std::size_t s = 0;
  std::size_t upto = 0;
  std::uint64_t budget = 0;
  std::uint64_t examined = 0;
  bool search_exhausted = false;
  std::optional<IntSet> special_witness;
  std::optional<Classification> witness_classification;
  std::vector<std::string> notes;
  FinitenessVerdict verdict = FinitenessVerdict::kConsistentWithinBudget;
};

FinitenessCertificate certify_finitely_many(const SequenceSpec& spec, std::size_t s,
                                            std::size_t upto, std::uint64_t special_search_budget,
                                            const CertifyOptions& options = {});

}  // namespace mstd
