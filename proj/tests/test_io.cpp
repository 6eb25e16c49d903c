#include <doctest.h>

#include <stdexcept>
#include <string>

#include "comb/boundary.hpp"
#include "comb/coverings.hpp"
#include "comb/hyperbolicity.hpp"
#include "comb/path_metric.hpp"
#include "comb/json_io.hpp"
#include "comb/manifest.hpp"
#include "comb/svg_render.hpp"

using namespace comb;

namespace {

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("spec JSON round trips byte for byte") {
  const CombSpec spec = build(3, 7.5);
  const std::string once = canonical_dump(spec_to_json(spec));
  const CombSpec parsed = spec_from_json(nlohmann::json::parse(once));
  const std::string twice = canonical_dump(spec_to_json(parsed));
  CHECK(once == twice);
  CHECK(parsed.spoke_count() == spec.spoke_count());
  CHECK(parsed.r_max() == spec.r_max());

  // tampering is rejected
  nlohmann::json bad = spec_to_json(spec);
  bad["r_max"] = 99.0;
  CHECK_THROWS_AS(spec_from_json(bad), std::invalid_argument);
  nlohmann::json bad2 = spec_to_json(spec);
  bad2["sectors"][0]["pieces"] = 7;
  CHECK_THROWS_AS(spec_from_json(bad2), std::invalid_argument);
}

TEST_CASE("located point JSON") {
  const LocatedPoint a = LocatedPoint::in_sector(2, PolarPoint{3.25, 1.125});
  const LocatedPoint b = LocatedPoint::on_spoke(17, 9.5);
  const LocatedPoint a2 = located_from_json(located_to_json(a));
  CHECK(a2.kind == LocatedPoint::Kind::kInSector);
  CHECK(a2.sector == 2);
  CHECK(a2.pos.rho == 3.25);
  CHECK(a2.pos.phi == 1.125);
  const LocatedPoint b2 = located_from_json(located_to_json(b));
  CHECK(b2.spoke == 17);
  CHECK(b2.t == 9.5);
  CHECK_THROWS(located_from_json(nlohmann::json{{"kind", "nowhere"}}));
}

TEST_CASE("csv outputs have stable headers") {
  DeltaEstimate est;
  est.bucket_width = 0.05;
  est.histogram = {3, 1, 0};
  const std::string csv = delta_histogram_csv(est);
  CHECK(csv.rfind("bucket_lo,bucket_hi,count\n", 0) == 0);
  CHECK(count_occurrences(csv, "\n") == 4);

  const std::string vm = visual_matrix_csv({5, 9}, {0.0, 0.25, 0.25, 0.0});
  CHECK(vm.rfind("spoke,5,9\n", 0) == 0);
  CHECK(count_occurrences(vm, "\n") == 3);
}

TEST_CASE("svg render matches the construction") {
  const CombSpec spec = build(2, 3.0);
  const std::string svg = render_svg(spec);
  CHECK(count_occurrences(svg, "class=\"spoke\"") == std::size_t(spec.spoke_count()));
  CHECK(count_occurrences(svg, "class=\"sector\"") == 2);
  CHECK(count_occurrences(svg, "class=\"arc\"") == 2);
  CHECK(count_occurrences(svg, "class=\"ray\"") == 3);
  CHECK(count_occurrences(svg, "class=\"disk\"") == 1);
  CHECK(render_svg(spec) == svg);  // deterministic bytes

  // zero hair extension: hairs degenerate for the deepest sector
  const CombSpec flat = build(2, 0.0);
  const std::string svg0 = render_svg(flat);
  CHECK(count_occurrences(svg0, "class=\"spoke\"") == std::size_t(flat.spoke_count()));
}

TEST_CASE("sha256 known vectors and manifest shape") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // a block-boundary-straddling message
  const std::string s(64, 'a');
  CHECK(sha256_hex(s) ==
        "ffe054fe7ae0cb6dc65c3af9b61d5209f439851db43d0ba5997337df154668eb");

  RunManifest m("delta", nlohmann::json{{"samples", 10}}, 7, "deadbeef");
  m.add_output("a.json", "{}\n");
  const nlohmann::json j = m.to_json();
  CHECK(j.at("command") == "delta");
  CHECK(j.at("seed") == 7);
  CHECK(j.at("tool_version") == kToolVersion);
  CHECK(j.at("outputs").size() == 1);
  CHECK(j.at("outputs")[0].at("path") == "a.json");
  CHECK(j.at("outputs")[0].at("sha256") == sha256_hex("{}\n"));
}

TEST_CASE("covering and verdict serialization") {
  const CombSpec spec = build(1, 6.0);
  const Covering cover = build_cover(spec, 1.0);
  const nlohmann::json j = covering_to_json(cover);
  CHECK(j.at("multiplicity").get<int>() == cover.multiplicity);
  CHECK(j.at("blocks").size() == cover.blocks.size());
  CHECK(j.at("covers_probes").get<bool>() == cover.covers_probes);

  DecompositionVerdict v;
  v.kind = DecompositionVerdict::Kind::kUnsat;
  v.d = 2;
  v.D = 2;
  v.nodes_explored = 165;
  v.budget = 100;
  CHECK(verdict_to_json(v).at("verdict") == "UNSAT");
}

namespace {

// Minimal structural validation against the shipped schemas: every required
// key is present with the stated JSON type.
bool matches_schema(const nlohmann::json& doc, const nlohmann::json& schema) {
  for (const auto& [key, type] : schema.at("required").items()) {
    if (!doc.contains(key)) return false;
    const std::string t = type.get<std::string>();
    const auto& v = doc.at(key);
    if (t == "number" && !v.is_number()) return false;
    if (t == "integer" && !v.is_number_integer() && !v.is_number_unsigned()) return false;
    if (t == "string" && !v.is_string()) return false;
    if (t == "array" && !v.is_array()) return false;
    if (t == "boolean" && !v.is_boolean()) return false;
    if (t == "object" && !v.is_object()) return false;
  }
  return true;
}

nlohmann::json load_schema(const std::string& name) {
  return nlohmann::json::parse(read_file(std::string(COMB_SCHEMA_DIR) + "/" + name));
}

}  // namespace

TEST_CASE("emitted documents validate against the shipped schemas") {
  const CombSpec spec = build(2, 5.0);
  CHECK(matches_schema(spec_to_json(spec), load_schema("spec.schema.json")));

  const PathMetric metric(spec, 0.1);
  const DeltaEstimate est = estimate_delta(metric, 50, 8.0, 1);
  CHECK(matches_schema(delta_to_json(est), load_schema("delta.schema.json")));

  const Covering cover = build_cover(spec, 1.0);
  CHECK(matches_schema(covering_to_json(cover), load_schema("cover.schema.json")));

  DecompositionVerdict v;
  v.kind = DecompositionVerdict::Kind::kUnknown;
  CHECK(matches_schema(verdict_to_json(v), load_schema("lower_bound.schema.json")));

  const QiConstants qi = qi_constants(metric, 50, 1);
  CHECK(matches_schema(qi_to_json(qi), load_schema("qi.schema.json")));

  std::vector<std::int64_t> spokes{0, 1, 2, 3};
  const auto vis = visual_matrix(metric, VisualMetricParams{}, spokes);
  const BoundaryCover bc = zero_dim_cover(spokes, vis, 0.5);
  CHECK(matches_schema(boundary_cover_to_json(bc), load_schema("boundary_cover_entry.schema.json")));

  RunManifest m("cover", nlohmann::json{{"d", 1.0}}, 1, "beef");
  CHECK(matches_schema(m.to_json(), load_schema("manifest.schema.json")));
}
