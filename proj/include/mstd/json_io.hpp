#pragma once

#include "json.hpp"
#include "mstd/int_set.hpp"
#include "mstd/primes.hpp"
#include "mstd/sequences.hpp"
#include "mstd/sets_core.hpp"
#include "mstd/subset_search.hpp"

// nlohmann/json adapters for every report type. Reports serialize through
// these functions only, so CLI output matches the library values exactly.
namespace mstd {

using Json = nlohmann::ordered_json;

void to_json(Json& j, const IntSet& s);
void from_json(const Json& j, IntSet& s);
void to_json(Json& j, const Classification& c);
void to_json(Json& j, const DifferenceSet& d);
void to_json(Json& j, const AppendAnalysis& a);
void to_json(Json& j, const SearchReport& r);

void to_json(Json& j, const SequenceSpec& s);
void from_json(const Json& j, SequenceSpec& s);
void to_json(Json& j, const GrowthCertificate& g);
void to_json(Json& j, const NoMstdCertificate& c);
void to_json(Json& j, const DifferenceBoundReport& r);
void to_json(Json& j, const FinitenessCertificate& c);

void to_json(Json& j, const PrimeTuple& t);
void to_json(Json& j, const AdmissibilityResult& a);
void to_json(Json& j, const SingularSeries& s);
void to_json(Json& j, const MatchReport& m);
void to_json(Json& j, const ArithmeticProgression& ap);

}  // namespace mstd
