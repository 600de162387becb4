#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mstd/json_io.hpp"

namespace mstd {

struct ReproduceOverrides {
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

// Claim ids accepted by reproduce_claim, in manifest order.
const std::vector<std::string>& reproducible_claims();

// Runs one pinned pipeline. Output: {"claim", "pass", "parameters", "measured"}.
// Throws std::invalid_argument for an unknown id.
Json reproduce_claim(const std::string& id, const ReproduceOverrides& overrides = {});

}  // namespace mstd
