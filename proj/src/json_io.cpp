#include "mstd/json_io.hpp"

#include <cmath>

namespace mstd {

namespace {

Json hits_array(const std::vector<IntSet>& hits) {
  Json arr = Json::array();
  for (const auto& h : hits) arr.push_back(h.values());
  return arr;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

void to_json(Json& j, const IntSet& s) { j = Json{{"elements", s.values()}}; }

void from_json(const Json& j, IntSet& s) {
  if (j.is_array()) {
    s = IntSet(j.get<std::vector<Int>>());
  } else {
    s = IntSet(j.at("elements").get<std::vector<Int>>());
  }
}

void to_json(Json& j, const Classification& c) {
  j = Json{{"sum_count", c.sum_count},
           {"diff_count", c.diff_count},
           {"verdict", to_string(c.verdict)},
           {"gap", c.gap},
           {"special", c.special}};
}

void to_json(Json& j, const DifferenceSet& d) { j = Json{{"elements", d.elements}}; }

void to_json(Json& j, const AppendAnalysis& a) {
  j = Json{{"new_sums", a.new_sums},
           {"new_diffs", a.new_diffs},
           {"threshold_met", a.threshold_met},
           {"before", a.before},
           {"after", a.after}};
}

void to_json(Json& j, const SearchReport& r) {
  j = Json{{"hits", hits_array(r.hits)},
           {"hit_count", r.hit_count},
           {"examined", r.examined},
           {"density", r.density ? Json(*r.density) : Json(nullptr)},
           {"stderr", r.stderr_estimate ? Json(*r.stderr_estimate) : Json(nullptr)},
           {"exhausted", r.exhausted},
           {"seed", r.seed},
           {"pruning_rules", r.pruning_rules}};
  if (r.best_objective) {
    j["best_objective"] = *r.best_objective;
    j["optimal"] = r.optimal;
  }
}

void to_json(Json& j, const SequenceSpec& s) {
  j = Json{{"kind", to_string(s.kind)}};
  switch (s.kind) {
    case SequenceKind::kExplicit:
      j["elements"] = s.elements;
      break;
    case SequenceKind::kLinearRecurrence:
      j["coeffs"] = s.coeffs;
      j["seeds"] = s.seeds;
      break;
    case SequenceKind::kShiftedGeometric:
      j["c"] = s.c;
      j["r"] = s.ratio;
      j["d"] = s.d;
      break;
    case SequenceKind::kFibonacci:
      break;
  }
}

void from_json(const Json& j, SequenceSpec& s) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "fibonacci") {
    s = SequenceSpec::fibonacci();
  } else if (kind == "shifted_geometric") {
    s = SequenceSpec::shifted_geometric(j.value("c", Int{1}), j.value("r", Int{2}), j.value("d", Int{0}));
  } else if (kind == "linear_recurrence") {
    s = SequenceSpec::linear_recurrence(j.at("coeffs").get<std::vector<Int>>(),
                                        j.at("seeds").get<std::vector<Int>>());
  } else if (kind == "explicit") {
    s = SequenceSpec::explicit_terms(j.at("elements").get<std::vector<Int>>());
  } else {
    throw DomainError("unknown sequence kind '" + kind + "'");
  }
  s.validate();
}

void to_json(Json& j, const GrowthCertificate& g) {
  j = Json{{"mode", g.mode == GrowthMode::kWindow ? "window" : "from_index"},
           {"r", g.r},
           {"s", g.s},
           {"checked_from", g.checked_from},
           {"checked_upto", g.checked_upto},
           {"holds", g.holds},
           {"symbolic", g.symbolic},
           {"affine_normalized", g.affine_normalized}};
  if (g.first_violation) {
    const auto& v = *g.first_violation;
    j["first_violation"] = Json{{"k", v.k}, {"a_k", v.a_k}, {"a_k_minus_1", v.a_prev}, {"a_k_minus_r", v.a_back}};
  } else {
    j["first_violation"] = nullptr;
  }
}

void to_json(Json& j, const NoMstdCertificate& c) {
  j = Json{{"verdict", to_string(c.verdict)},
           {"growth", c.growth},
           {"small_subset_bound", c.small_subset_bound},
           {"small_bound_below_minimum", c.small_bound_below_minimum},
           {"small_search_exhausted", c.small_search_exhausted},
           {"witness", c.mstd_witness ? Json(c.mstd_witness->values()) : Json(nullptr)},
           {"upto", c.upto},
           {"budget", c.budget},
           {"examined", c.examined},
           {"notes", c.notes}};
}

void to_json(Json& j, const DifferenceBoundReport& r) {
  j = Json{{"verdict", r.verdict},
           {"r", r.r},
           {"set_size", r.set_size},
           {"new_sums", r.new_sums},
           {"new_diffs", r.new_diffs},
           {"hypothesis_applicable", r.hypothesis_applicable},
           {"bound_holds", r.bound_holds},
           {"difference_lead_grows", r.difference_lead_grows},
           {"before", r.before},
           {"after", r.after}};
}

void to_json(Json& j, const FinitenessCertificate& c) {
  j = Json{{"verdict", to_string(c.verdict)},
           {"growth", c.growth},
           {"s", c.s},
           {"upto", c.upto},
           {"budget", c.budget},
           {"examined", c.examined},
           {"search_exhausted", c.search_exhausted},
           {"witness", c.special_witness ? Json(c.special_witness->values()) : Json(nullptr)},
           {"witness_classification",
            c.witness_classification ? Json(*c.witness_classification) : Json(nullptr)},
           {"notes", c.notes}};
}

void to_json(Json& j, const PrimeTuple& t) {
  j = Json{{"offsets", std::vector<Int>(t.offsets().begin(), t.offsets().end())}};
}

void to_json(Json& j, const AdmissibilityResult& a) {
  j = Json{{"admissible", a.admissible},
           {"witness_modulus", a.witness_modulus ? Json(*a.witness_modulus) : Json(nullptr)},
           {"checked_moduli", a.checked_moduli}};
}

void to_json(Json& j, const SingularSeries& s) {
  Json v = Json::object();
  for (const auto& [p, count] : s.per_prime_v) v[std::to_string(p)] = count;
  j = Json{{"value", s.value},
           {"truncation_prime", s.truncation_prime},
           {"tail_bound", s.tail_bound},
           {"per_prime_v", v}};
}

void to_json(Json& j, const MatchReport& m) {
  j = Json{{"x", m.x},
           {"count", m.count},
           {"matches", m.matches},
           {"singular_series", number_or_null(m.singular_series)},
           {"integral", number_or_null(m.integral)},
           {"predicted", number_or_null(m.predicted)},
           {"ratio", number_or_null(m.ratio)},
           {"admissible", m.admissible}};
}

void to_json(Json& j, const ArithmeticProgression& ap) {
  j = Json{{"first", ap.first}, {"difference", ap.difference}, {"length", ap.length}};
}

}  // namespace mstd
