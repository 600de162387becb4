#include "mstd/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "mstd/parallel.hpp"
#include "mstd/sets_core.hpp"

namespace mstd {

namespace {

// Odd numbers per sieve segment; a multiple of 64 so segments own whole words.
constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 18;

std::vector<Int> small_primes(Int limit) {
  if (limit < 2) return {};
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<Int> out;
  for (Int i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (Int j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

Int isqrt(Int n) {
  auto r = static_cast<Int>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

}  // namespace

PrimeSieve::PrimeSieve(Int limit, unsigned threads) : limit_(std::max<Int>(limit, 0)) {
  if (limit_ < 2) return;
  const std::uint64_t odds = static_cast<std::uint64_t>(limit_ + 1) / 2;  // 1, 3, ..., <= limit
  bits_.assign((odds + 63) / 64, ~std::uint64_t{0});
  if (odds % 64) bits_.back() &= (std::uint64_t{1} << (odds % 64)) - 1;
  bits_[0] &= ~std::uint64_t{1};  // 1 is not prime

  const auto base = small_primes(isqrt(limit_));
  const std::size_t segments = static_cast<std::size_t>((odds + kSegmentOdds - 1) / kSegmentOdds);
  parallel_for_chunks(segments, threads, [&](std::size_t seg) {
    const std::uint64_t lo = seg * kSegmentOdds;  // odd index range [lo, hi)
    const std::uint64_t hi = std::min(odds, lo + kSegmentOdds);
    for (Int p : base) {
      if (p == 2) continue;
      const auto up = static_cast<std::uint64_t>(p);
      // First odd multiple of p that is >= p*p and has odd index >= lo.
      std::uint64_t start = up * up;
      const std::uint64_t lo_value = 2 * lo + 1;
      if (start < lo_value) {
        std::uint64_t m = (lo_value + up - 1) / up;
        if (m % 2 == 0) ++m;
        start = m * up;
      }
      for (std::uint64_t v = start; (v - 1) / 2 < hi; v += 2 * up) {
        const std::uint64_t idx = (v - 1) / 2;
        bits_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
      }
    }
  });
}

bool PrimeSieve::is_prime(Int n) const {
  if (n > limit_) {
    throw DomainError("is_prime: " + std::to_string(n) + " is above the sieve limit " +
                      std::to_string(limit_));
  }
  if (n < 2) return false;
  if (n == 2) return true;
  if (n % 2 == 0) return false;
  return odd_bit(static_cast<std::uint64_t>(n) / 2);
}

std::vector<Int> PrimeSieve::primes() const {
  std::vector<Int> out;
  if (limit_ < 2) return out;
  out.reserve(count());
  out.push_back(2);
  for (std::size_t w = 0; w < bits_.size(); ++w)
    for (std::uint64_t word = bits_[w]; word; word &= word - 1)
      out.push_back(static_cast<Int>(2 * (w * 64 + std::countr_zero(word)) + 1));
  return out;
}

std::size_t PrimeSieve::count() const {
  if (limit_ < 2) return 0;
  std::size_t c = 1;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Int> primes_up_to(Int limit) { return PrimeSieve(limit).primes(); }

PrimeTuple::PrimeTuple(std::vector<Int> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw DomainError("prime tuple needs at least one offset");
  std::sort(offsets_.begin(), offsets_.end());
  if (std::adjacent_find(offsets_.begin(), offsets_.end()) != offsets_.end())
    throw DomainError("prime tuple offsets must be distinct");
  const Int base = offsets_.front();
  for (Int& b : offsets_) b -= base;
}

PrimeTuple PrimeTuple::parse(const std::string& text) {
  std::vector<Int> offsets;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t used = 0;
    Int v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed tuple offset '" + token + "'");
    }
    if (token.find_first_not_of(" \t", used) != std::string::npos)
      throw DomainError("malformed tuple offset '" + token + "'");
    offsets.push_back(v);
  }
  return PrimeTuple(std::move(offsets));
}

std::string PrimeTuple::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < offsets_.size(); ++i) os << (i ? "," : "") << offsets_[i];
  return os.str();
}

PrimeTuple conway_tuple() {
  std::vector<Int> offsets;
  for (Int c : conway_set().elements()) offsets.push_back(30 * c);
  return PrimeTuple(std::move(offsets));
}

AdmissibilityResult is_admissible(const PrimeTuple& t) {
  AdmissibilityResult result;
  // A composite modulus is fully covered only if one of its prime factors
  // is, and m offsets cannot cover p > m classes.
  for (Int p : small_primes(static_cast<Int>(t.arity()))) {
    result.checked_moduli.push_back(p);
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    std::size_t distinct = 0;
    for (Int b : t.offsets()) {
      auto r = static_cast<std::size_t>(((b % p) + p) % p);
      if (!seen[r]) {
        seen[r] = true;
        ++distinct;
      }
    }
    if (distinct == static_cast<std::size_t>(p) && result.admissible) {
      result.admissible = false;
      result.witness_modulus = p;
    }
  }
  return result;
}

SingularSeries singular_series(const PrimeTuple& t, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol <= 0.1)) throw DomainError("singular_series: rel_tol must be in (0, 0.1]");
  const auto m = static_cast<Int>(t.arity());
  SingularSeries out;

  auto residues = [&](Int p) {
    std::vector<Int> r;
    r.reserve(t.arity());
    for (Int b : t.offsets()) r.push_back(b % p);
    std::sort(r.begin(), r.end());
    return static_cast<Int>(std::unique(r.begin(), r.end()) - r.begin());
  };

  for (Int p : small_primes(m)) out.per_prime_v.emplace_back(p, residues(p));
  for (const auto& [p, v] : out.per_prime_v) {
    if (v == p) {
      out.value = 0.0;
      out.truncation_prime = p;
      out.tail_bound = 0.0;
      return out;
    }
  }
  if (m == 1) {
    out.value = 1.0;
    out.truncation_prime = 2;
    return out;
  }

  // For p > spread every residue is distinct (v = m), and for p >= 2m each
  // omitted factor has |log f_p| <= m^2/p^2; summing over odd p > P gives
  // at most m^2 / (2(P-1)).
  const double m2 = static_cast<double>(m * m);
  const double needed = std::ceil(m2 / (2.0 * -std::log1p(-rel_tol))) + 1.0;
  const Int cutoff = std::max({t.spread() + 1, 2 * m, static_cast<Int>(needed)});

  double log_sum = 0.0;
  Int last = 2;
  for (Int p : primes_up_to(cutoff)) {
    const double dp = static_cast<double>(p);
    const double v = static_cast<double>(residues(p));
    log_sum += static_cast<double>(m - 1) * std::log(dp / (dp - 1.0)) + std::log((dp - v) / (dp - 1.0));
    last = p;
  }
  out.value = std::exp(log_sum);
  out.truncation_prime = last;
  out.tail_bound = -std::expm1(-m2 / (2.0 * static_cast<double>(cutoff - 1)));
  return out;
}

double log_power_integral(double x, unsigned m, double rel_tol) {
  if (x <= 2.0) return 0.0;
  // u = e^t turns the integrand into e^t / t^m on [log 2, log x].
  auto f = [m](double t) { return std::exp(t) / std::pow(t, static_cast<double>(m)); };
  const double a = std::log(2.0);
  const double b = std::log(x);
  constexpr int kPieces = 64;
  double total = 0.0;
  // Coarse pass for the tolerance scale, then refine each piece.
  double coarse = 0.0;
  for (int i = 0; i < kPieces; ++i) {
    const double lo = a + (b - a) * i / kPieces;
    const double hi = a + (b - a) * (i + 1) / kPieces;
    coarse += simpson(f(lo), f(0.5 * (lo + hi)), f(hi), lo, hi);
  }
  const double eps = rel_tol * std::fabs(coarse) / kPieces;
  for (int i = 0; i < kPieces; ++i) {
    const double lo = a + (b - a) * i / kPieces;
    const double hi = a + (b - a) * (i + 1) / kPieces;
    const double flo = f(lo);
    const double fmid = f(0.5 * (lo + hi));
    const double fhi = f(hi);
    total += adaptive_simpson(f, lo, hi, flo, fmid, fhi, simpson(flo, fmid, fhi, lo, hi), eps, 40);
  }
  return total;
}

MatchReport match_tuple(const PrimeTuple& t, Int x, const MatchOptions& options) {
  MatchReport report;
  report.x = x;
  report.admissible = is_admissible(t).admissible;
  if (x < 2) {
    report.ratio = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const PrimeSieve sieve(x + t.spread(), options.threads);
  const auto offsets = t.offsets();

  // Since b_1 = 0, only prime n can match; scan n in fixed blocks and merge
  // in block order.
  constexpr Int kBlock = Int{1} << 20;
  const auto blocks = static_cast<std::size_t>((x + kBlock - 1) / kBlock);
  struct BlockMatches {
    std::uint64_t count = 0;
    std::vector<Int> first;
  };
  std::vector<BlockMatches> found(blocks);
  parallel_for_chunks(blocks, options.threads, [&](std::size_t b) {
    const Int lo = static_cast<Int>(b) * kBlock + 1;
    const Int hi = std::min(x, lo + kBlock - 1);
    for (Int n = lo; n <= hi; ++n) {
      if (!sieve.is_prime(n)) continue;
      bool all = true;
      for (std::size_t i = 1; i < offsets.size(); ++i) {
        if (!sieve.is_prime(n + offsets[i])) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      ++found[b].count;
      if (found[b].first.size() < options.match_cap) found[b].first.push_back(n);
    }
  });
  for (auto& f : found) {
    report.count += f.count;
    for (Int n : f.first)
      if (report.matches.size() < options.match_cap) report.matches.push_back(n);
  }

  report.singular_series = singular_series(t, options.series_tol).value;
  report.integral = log_power_integral(static_cast<double>(x), static_cast<unsigned>(t.arity()));
  report.predicted = report.singular_series * report.integral;
  report.ratio = report.predicted > 0 ? static_cast<double>(report.count) / report.predicted
                                      : std::numeric_limits<double>::quiet_NaN();
  return report;
}

IntSet dilated_conway(Int p, Int s) {
  if (p < 0) throw DomainError("dilated_conway: p must be nonnegative");
  if (s < 1) throw DomainError("dilated_conway: s must be positive");
  return conway_set().affine(s, p);
}

std::optional<ArithmeticProgression> find_prime_ap(std::size_t length, Int start_bound,
                                                   Int max_difference) {
  if (length == 0) throw DomainError("find_prime_ap: length must be at least 1");
  if (start_bound < 2) return std::nullopt;
  if (length == 1) return ArithmeticProgression{2, 0, 1};

  Int primorial = 1;
  for (Int p : small_primes(static_cast<Int>(length))) primorial *= p;
  const Int steps = static_cast<Int>(length) - 1;
  if (max_difference <= 0) {
    constexpr Int kSieveCeiling = Int{1} << 28;
    max_difference = std::max(primorial, std::min(primorial * 4096, (kSieveCeiling - start_bound) / steps));
  }
  const PrimeSieve sieve(start_bound + steps * max_difference);

  for (Int a : sieve.primes()) {
    if (a > start_bound) break;
    // Every prime p <= length divides the difference, except p = a when the
    // progression is too short to revisit the class of a (a == length).
    const Int step = (a == static_cast<Int>(length)) ? primorial / a : primorial;
    for (Int d = step; d <= max_difference; d += step) {
      bool all = true;
      for (Int i = 1; i <= steps; ++i) {
        if (!sieve.is_prime(a + i * d)) {
          all = false;
          break;
        }
      }
      if (all) return ArithmeticProgression{a, d, length};
    }
  }
  return std::nullopt;
}

IntSet mstd_in_ap(const ArithmeticProgression& ap) {
  const Int needed = conway_set().max() + 1;
  if (static_cast<Int>(ap.length) < needed) {
    throw DomainError("mstd_in_ap: progression length " + std::to_string(ap.length) +
                      " is below " + std::to_string(needed));
  }
  if (ap.difference < 1) throw DomainError("mstd_in_ap: difference must be positive");
  if (ap.first < 0) throw DomainError("mstd_in_ap: first term must be nonnegative");
  return conway_set().affine(ap.difference, ap.first);
}

}  // namespace mstd
