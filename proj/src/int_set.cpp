#include "mstd/int_set.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace mstd {

IntSet::IntSet(std::vector<Int> elements, Limits limits) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (!elements_.empty() && elements_.front() < 0) {
    throw DomainError("set elements must be nonnegative, got " +
                      std::to_string(elements_.front()));
  }
  auto dup = std::adjacent_find(elements_.begin(), elements_.end());
  if (dup != elements_.end()) {
    throw DomainError("duplicate set element " + std::to_string(*dup));
  }
  recompute_cache();
  if (!elements_.empty() && static_cast<std::uint64_t>(diameter()) > limits.diameter_cap) {
    throw CapacityError("set diameter " + std::to_string(diameter()) +
                        " exceeds diameter cap " + std::to_string(limits.diameter_cap));
  }
}

IntSet::IntSet(std::initializer_list<Int> elements) : IntSet(std::vector<Int>(elements)) {}

IntSet IntSet::from_sorted_unchecked(std::vector<Int> elements) {
  IntSet s;
  s.elements_ = std::move(elements);
  s.recompute_cache();
  return s;
}

IntSet IntSet::parse(const std::string& text, Limits limits) {
  std::vector<Int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string token = text.substr(pos, comma - pos);
    auto first = token.find_first_not_of(" \t\r\n");
    auto last = token.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) {
      if (comma == text.size() && out.empty() && pos == 0) break;
      throw DomainError("empty element in set literal '" + text + "'");
    }
    token = token.substr(first, last - first + 1);
    Int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw DomainError("malformed integer '" + token + "' in set literal");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return IntSet(std::move(out), limits);
}

bool IntSet::contains(Int x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::string IntSet::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) os << ',';
    os << elements_[i];
  }
  return os.str();
}

IntSet IntSet::affine(Int scale, Int shift) const {
  if (scale < 1) throw DomainError("affine scale must be positive");
  std::vector<Int> out;
  out.reserve(elements_.size());
  for (Int e : elements_) {
    Int v = 0;
    if (__builtin_mul_overflow(e, scale, &v) || __builtin_add_overflow(v, shift, &v)) {
      throw CapacityError("affine image overflows 64-bit integers");
    }
    if (v < 0) throw DomainError("affine image has negative elements");
    out.push_back(v);
  }
  return from_sorted_unchecked(std::move(out));
}

void IntSet::recompute_cache() {
  if (elements_.empty()) {
    min_ = max_ = 0;
    sum_ = 0;
    return;
  }
  min_ = elements_.front();
  max_ = elements_.back();
  sum_ = 0;
  for (Int e : elements_) sum_ += e;
}

}  // namespace mstd
