#include "mstd/sequences.hpp"

#include <algorithm>
#include <limits>

#include "mstd/subset_search.hpp"

namespace mstd {

namespace {

// Smallest MSTD cardinality, as established in the literature for sets of integers.
constexpr std::size_t kMinMstdSize = 8;

Int checked_add(Int a, Int b) {
  Int out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw CapacityError("sequence term overflows 64-bit integers");
  return out;
}

Int checked_mul(Int a, Int b) {
  Int out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw CapacityError("sequence term overflows 64-bit integers");
  return out;
}

// q^e saturated to a large sentinel; only compared against small values.
__int128 saturating_pow(Int q, unsigned e) {
  constexpr __int128 kCeiling = static_cast<__int128>(1) << 100;
  __int128 acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    acc *= q;
    if (acc > kCeiling) return kCeiling;
  }
  return acc;
}

// c q^{m} (q^w - q^{w-1} - 1) > d, the closed-form growth inequality of a
// shifted geometric sequence at its first checked index (m = first k minus w).
bool geometric_growth_symbolic(Int c, Int q, Int d, unsigned w, unsigned m) {
  const __int128 factor = saturating_pow(q, w - 1) * (q - 1) - 1;
  if (factor <= 0) return false;
  return static_cast<__int128>(c) * saturating_pow(q, m) * factor > d;
}

GrowthCertificate check_window(const std::vector<Int>& terms, unsigned window, std::size_t from,
                               std::size_t upto) {
  GrowthCertificate g;
  g.checked_from = from;
  g.checked_upto = upto;
  g.holds = true;
  for (std::size_t k = from; k <= upto; ++k) {
    const Int a_k = terms[k - 1];
    const Int prev = terms[k - 2];
    const Int back = terms[k - 1 - window];
    if (static_cast<__int128>(a_k) <= static_cast<__int128>(prev) + back) {
      g.holds = false;
      g.first_violation = GrowthViolation{k, a_k, prev, back};
      break;
    }
  }
  return g;
}

IntSet unbounded_set(std::vector<Int> sorted) {
  return IntSet(std::move(sorted), Limits{std::numeric_limits<std::uint64_t>::max()});
}

}  // namespace

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::kExplicit:
      return "explicit";
    case SequenceKind::kLinearRecurrence:
      return "linear_recurrence";
    case SequenceKind::kShiftedGeometric:
      return "shifted_geometric";
    case SequenceKind::kFibonacci:
      return "fibonacci";
  }
  return "?";
}

std::string_view to_string(NoMstdVerdict v) {
  switch (v) {
    case NoMstdVerdict::kCertifiedNoMstd:
      return "certified-no-mstd";
    case NoMstdVerdict::kRefuted:
      return "refuted";
    case NoMstdVerdict::kConsistentWithinBudget:
      return "consistent-within-budget";
    case NoMstdVerdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string_view to_string(FinitenessVerdict v) {
  return v == FinitenessVerdict::kRefuted ? "refuted" : "consistent-within-budget";
}

SequenceSpec SequenceSpec::fibonacci() { return SequenceSpec{}; }

SequenceSpec SequenceSpec::explicit_terms(std::vector<Int> terms) {
  SequenceSpec s;
  s.kind = SequenceKind::kExplicit;
  s.elements = std::move(terms);
  return s;
}

SequenceSpec SequenceSpec::shifted_geometric(Int c, Int ratio, Int d) {
  SequenceSpec s;
  s.kind = SequenceKind::kShiftedGeometric;
  s.c = c;
  s.ratio = ratio;
  s.d = d;
  return s;
}

SequenceSpec SequenceSpec::linear_recurrence(std::vector<Int> coeffs, std::vector<Int> seeds) {
  SequenceSpec s;
  s.kind = SequenceKind::kLinearRecurrence;
  s.coeffs = std::move(coeffs);
  s.seeds = std::move(seeds);
  return s;
}

void SequenceSpec::validate() const {
  switch (kind) {
    case SequenceKind::kFibonacci:
      return;
    case SequenceKind::kExplicit:
      if (elements.empty()) throw DomainError("explicit sequence needs at least one term");
      return;
    case SequenceKind::kShiftedGeometric:
      if (c < 1) throw DomainError("shifted geometric sequence needs c >= 1");
      if (ratio < 2) throw DomainError("shifted geometric sequence needs ratio >= 2");
      if (d < 0) throw DomainError("shifted geometric sequence needs d >= 0");
      return;
    case SequenceKind::kLinearRecurrence:
      if (coeffs.empty()) throw DomainError("linear recurrence needs at least one coefficient");
      if (seeds.size() < coeffs.size())
        throw DomainError("linear recurrence needs at least as many seeds as coefficients");
      return;
  }
}

std::vector<Int> materialize(const SequenceSpec& spec, std::size_t n) {
  if (n == 0) throw DomainError("materialize: need at least one term");
  spec.validate();
  std::vector<Int> terms;
  terms.reserve(n);
  switch (spec.kind) {
    case SequenceKind::kFibonacci:
      for (std::size_t k = 0; k < n; ++k) {
        if (k < 3)
          terms.push_back(static_cast<Int>(k));
        else
          terms.push_back(checked_add(terms[k - 1], terms[k - 2]));
      }
      break;
    case SequenceKind::kExplicit:
      if (spec.elements.size() < n) {
        throw DomainError("explicit sequence has only " + std::to_string(spec.elements.size()) +
                          " terms, " + std::to_string(n) + " requested");
      }
      terms.assign(spec.elements.begin(), spec.elements.begin() + static_cast<std::ptrdiff_t>(n));
      break;
    case SequenceKind::kShiftedGeometric: {
      Int power = 1;
      for (std::size_t k = 1; k <= n; ++k) {
        power = checked_mul(power, spec.ratio);
        terms.push_back(checked_add(checked_mul(spec.c, power), spec.d));
      }
      break;
    }
    case SequenceKind::kLinearRecurrence:
      for (std::size_t k = 0; k < n; ++k) {
        if (k < spec.seeds.size()) {
          terms.push_back(spec.seeds[k]);
          continue;
        }
        Int next = 0;
        for (std::size_t i = 0; i < spec.coeffs.size(); ++i)
          next = checked_add(next, checked_mul(spec.coeffs[i], terms[k - 1 - i]));
        terms.push_back(next);
      }
      break;
  }
  if (terms.front() < 0) throw DomainError("sequence term a_1 is negative");
  for (std::size_t k = 1; k < terms.size(); ++k) {
    if (terms[k] <= terms[k - 1]) {
      throw DomainError("sequence is not strictly increasing at index " + std::to_string(k + 1) +
                        " (a_" + std::to_string(k + 1) + " = " + std::to_string(terms[k]) +
                        ", a_" + std::to_string(k) + " = " + std::to_string(terms[k - 1]) + ")");
    }
  }
  return terms;
}

GrowthCertificate check_growth(const SequenceSpec& spec, unsigned r, std::size_t upto) {
  if (r == 0) throw DomainError("check_growth: r must be positive");
  if (upto < r + 1) throw DomainError("check_growth: upto must be at least r+1");
  const auto terms = materialize(spec, upto);
  GrowthCertificate g = check_window(terms, r, r + 1, upto);
  g.mode = GrowthMode::kWindow;
  g.r = r;
  g.s = r + 1;
  if (spec.kind == SequenceKind::kFibonacci) {
    // a_k = a_{k-1} + a_{k-2} > a_{k-1} + a_{k-r} once r >= 3.
    g.symbolic = r >= 3;
  } else if (spec.kind == SequenceKind::kShiftedGeometric) {
    g.symbolic = geometric_growth_symbolic(spec.c, spec.ratio, spec.d, r, 1);
  }
  return g;
}

GrowthCertificate check_growth_from(const SequenceSpec& spec, std::size_t s, std::size_t upto) {
  if (s < 4) throw DomainError("check_growth_from: s must be at least 4");
  if (upto < s) throw DomainError("check_growth_from: upto must be at least s");
  const auto terms = materialize(spec, upto);
  GrowthCertificate g = check_window(terms, 3, s, upto);
  g.mode = GrowthMode::kFromIndex;
  g.r = 3;
  g.s = s;
  if (spec.kind == SequenceKind::kFibonacci) {
    g.symbolic = true;
  } else if (spec.kind == SequenceKind::kShiftedGeometric) {
    g.symbolic =
        geometric_growth_symbolic(spec.c, spec.ratio, spec.d, 3, static_cast<unsigned>(s - 3));
  }
  return g;
}

NoMstdCertificate certify_no_mstd(const SequenceSpec& spec, unsigned r, std::size_t upto,
                                  const CertifyOptions& options) {
  NoMstdCertificate cert;
  cert.upto = upto;
  cert.budget = options.budget;
  cert.small_subset_bound = 2 * static_cast<std::size_t>(r) + 1;

  if (spec.kind == SequenceKind::kShiftedGeometric) {
    // c q^k + d is an affine image of q^k, and affine maps preserve sumset
    // and difference-set sizes.
    cert.growth = check_growth(SequenceSpec::shifted_geometric(1, spec.ratio, 0), r, upto);
    cert.growth.affine_normalized = true;
    cert.notes.push_back("growth checked on ratio^k; c*ratio^k + d has the same MSTD subsets");
  } else {
    cert.growth = check_growth(spec, r, upto);
  }
  const auto prefix = materialize(spec, upto);
  std::uint64_t remaining = options.budget;

  auto search_prefix = [&](std::size_t min_size, std::size_t max_size) {
    SearchConfig cfg;
    cfg.ground = unbounded_set(prefix);
    cfg.min_size = min_size;
    cfg.max_size = max_size;
    cfg.budget = remaining;
    cfg.objective = Objective::kFirstHit;
    cfg.threads = options.threads;
    auto report = exhaustive_search(cfg);
    remaining -= std::min(remaining, report.examined);
    cert.examined += report.examined;
    for (const auto& rule : report.pruning_rules) cert.notes.push_back("pruning: " + rule);
    if (!report.hits.empty()) cert.mstd_witness = report.hits.front();
    return report;
  };

  if (cert.small_subset_bound < kMinMstdSize) {
    cert.small_bound_below_minimum = true;
    cert.small_search_exhausted = true;
    cert.notes.push_back("no MSTD set has fewer than 8 elements, so 2r+1 = " +
                         std::to_string(cert.small_subset_bound) + " needs no search");
  } else {
    const auto report = search_prefix(kMinMstdSize, cert.small_subset_bound);
    cert.small_search_exhausted = report.exhausted || cert.mstd_witness.has_value();
    cert.notes.push_back("small-subset search covers the first " + std::to_string(upto) +
                         " terms only");
  }

  if (!cert.mstd_witness && !cert.growth.holds) {
    // Growth fails: hunt for an explicit MSTD subset of the prefix.
    search_prefix(kMinMstdSize, prefix.size());
  }

  if (cert.mstd_witness) {
    cert.verdict = NoMstdVerdict::kRefuted;
  } else if (!cert.growth.holds || !cert.small_search_exhausted) {
    cert.verdict = NoMstdVerdict::kInconclusive;
  } else if (cert.growth.symbolic && cert.small_bound_below_minimum) {
    cert.verdict = NoMstdVerdict::kCertifiedNoMstd;
  } else {
    cert.verdict = NoMstdVerdict::kConsistentWithinBudget;
  }
  return cert;
}

DifferenceBoundReport verify_difference_bound(const IntSet& s_prime, Int new_element, unsigned r) {
  if (r == 0) throw DomainError("verify_difference_bound: r must be positive");
  if (s_prime.empty()) throw DomainError("verify_difference_bound: S' is empty");
  if (new_element <= s_prime.max()) {
    throw DomainError("verify_difference_bound: new element must exceed max(S')");
  }
  const std::size_t k = s_prime.size() + 1;
  if (k < 2 * static_cast<std::size_t>(r) + 2) {
    throw DomainError("verify_difference_bound: need |S'| + 1 >= 2r + 2, got |S'| = " +
                      std::to_string(s_prime.size()));
  }
  const auto analysis = append_analysis(s_prime, new_element);

  DifferenceBoundReport rep;
  rep.r = r;
  rep.set_size = k;
  rep.new_sums = analysis.new_sums;
  rep.new_diffs = analysis.new_diffs;
  rep.before = analysis.before;
  rep.after = analysis.after;
  const auto e = s_prime.elements();
  const __int128 threshold = static_cast<__int128>(e[k - 2]) + e[k - r - 1];
  rep.hypothesis_applicable = static_cast<__int128>(new_element) > threshold;
  rep.bound_holds = rep.new_diffs >= k + 1 && k + 1 >= rep.new_sums;
  const auto excess_before = -rep.before.gap;
  const auto excess_after = -rep.after.gap;
  rep.difference_lead_grows =
      rep.after.verdict != Verdict::kMstd || excess_after > excess_before;
  if (!rep.hypothesis_applicable)
    rep.verdict = "hypothesis-not-applicable";
  else
    rep.verdict = rep.bound_holds ? "bound-holds" : "bound-violated";
  return rep;
}

FinitenessCertificate certify_finitely_many(const SequenceSpec& spec, std::size_t s,
                                            std::size_t upto, std::uint64_t special_search_budget,
                                            const CertifyOptions& options) {
  FinitenessCertificate cert;
  cert.s = s;
  cert.upto = upto;
  cert.budget = special_search_budget;
  cert.growth = check_growth_from(spec, s, upto);
  const auto prefix = materialize(spec, upto);
  std::uint64_t remaining = special_search_budget;
  CountingWorkspace ws;

  // Prefixes a_1..a_j, longest first.
  for (std::size_t j = prefix.size(); j >= kMinMstdSize && remaining > 0; --j) {
    --remaining;
    ++cert.examined;
    const std::span<const Int> head(prefix.data(), j);
    const auto c = classify_sorted(head, ws);
    if (c.special) {
      cert.special_witness = IntSet::from_sorted_unchecked({head.begin(), head.end()});
      cert.witness_classification = c;
      break;
    }
  }

  if (!cert.special_witness) {
    SearchConfig cfg;
    cfg.ground = unbounded_set(prefix);
    cfg.min_size = kMinMstdSize;
    cfg.budget = remaining;
    cfg.objective = Objective::kFirstHit;
    cfg.filter = HitFilter::kSpecial;
    cfg.threads = options.threads;
    const auto report = exhaustive_search(cfg);
    cert.examined += report.examined;
    cert.search_exhausted = report.exhausted;
    for (const auto& rule : report.pruning_rules) cert.notes.push_back("pruning: " + rule);
    if (!report.hits.empty()) {
      cert.special_witness = report.hits.front();
      cert.witness_classification = classify(report.hits.front(), Limits{});
    }
  }

  if (cert.special_witness) {
    cert.verdict = FinitenessVerdict::kRefuted;
  } else {
    cert.verdict = FinitenessVerdict::kConsistentWithinBudget;
    cert.notes.push_back(
        "absence of special MSTD subsets is only checked within the first " +
        std::to_string(upto) + " terms");
  }
  return cert;
}

}  // namespace mstd
