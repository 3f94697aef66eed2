#pragma once

// Serialization of result structs. JSON keeps scalars as their string form
// (exact rationals stay exact, doubles round-trip); CSV is used where the
// natural shape is a table. Output is fully deterministic: no timestamps,
// no environment echoes, keys in fixed order.

#include <optional>
#include <string>

#include "json.hpp"
#include "pcn/classify.hpp"
#include "pcn/covers.hpp"
#include "pcn/scan.hpp"
#include "pcn/symbolic.hpp"

namespace pcn::reports {

using json = nlohmann::json;

json classification_json(const Classification& c);
json map_classification_json(const MapClassification& mc);
json cells_json(const std::vector<RegularCell>& cells, int depth);
json witness_json(const std::optional<SingularConnectionWitness>& w, int depth);
json cover_json(const CoverCertificate& cert);
json verdict_json(const FinitenessVerdict& v);
json reduction_json(const Reduction& red);
json census_json(const CensusTable& t);
json doubling_json(const DoublingReport& r);

std::string growth_csv(const GrowthTable& t);
std::string scan_csv(const ScanReport& rep);
json scan_sidecar_json(const ScanReport& rep, const BoxDimFit* fit,
                       const std::vector<double>* flagged_points);

}  // namespace pcn::reports
