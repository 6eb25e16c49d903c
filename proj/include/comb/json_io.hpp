#ifndef COMB_JSON_IO_HPP
#define COMB_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "comb/boundary.hpp"
#include "comb/coverings.hpp"
#include "comb/hyperbolicity.hpp"
#include "comb/path_metric.hpp"

// Canonical JSON forms for every artifact the CLI emits. nlohmann::json
// keeps object keys sorted and prints shortest round-trip doubles, so equal
// values always serialize to identical bytes.

namespace comb {

nlohmann::json spec_to_json(const CombSpec& spec);
// Rebuilds the deterministic construction and cross-checks the stored
// fields, so a tampered file is rejected instead of silently trusted.
CombSpec spec_from_json(const nlohmann::json& j);

nlohmann::json located_to_json(const LocatedPoint& p);
LocatedPoint located_from_json(const nlohmann::json& j);

nlohmann::json witness_to_json(const PathWitness& w);
nlohmann::json delta_to_json(const DeltaEstimate& est);
nlohmann::json qi_to_json(const QiConstants& qi);
nlohmann::json boundary_cover_to_json(const BoundaryCover& cover);
nlohmann::json covering_to_json(const Covering& cover);
nlohmann::json verdict_to_json(const DecompositionVerdict& v);

std::string canonical_dump(const nlohmann::json& j);

std::string delta_histogram_csv(const DeltaEstimate& est);
std::string visual_matrix_csv(const std::vector<std::int64_t>& spokes,
                              const std::vector<double>& vis);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace comb

#endif  // COMB_JSON_IO_HPP
