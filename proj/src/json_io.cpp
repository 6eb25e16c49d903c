#include "comb/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace comb {

using nlohmann::json;

nlohmann::json spec_to_json(const CombSpec& spec) {
  json j;
  j["format"] = "comb-spec/1";
  j["n_sectors"] = spec.n_sectors();
  j["hair_extension"] = spec.hair_extension();
  j["r_max"] = spec.r_max();
  json sectors = json::array();
  for (const SectorSpec& s : spec.sectors()) {
    json js;
    js["index"] = s.index;
    js["theta_lo"] = s.theta_lo;
    js["theta_hi"] = s.theta_hi;
    js["alpha"] = s.alpha;
    js["center_rho"] = s.center.rho;
    js["center_phi"] = s.center.phi;
    js["truncation_radius"] = s.N_n;
    js["pieces"] = s.pieces;
    js["vertex_angles"] = s.vertex_angles();
    sectors.push_back(std::move(js));
  }
  j["sectors"] = std::move(sectors);
  json spokes = json::array();
  for (std::int64_t id = 0; id < spec.spoke_count(); ++id) {
    const SpokeRay r = spec.spoke(id);
    json jr;
    jr["id"] = r.id;
    jr["angle"] = r.angle;
    jr["attach_radius"] = r.attach_radius;
    jr["kind"] = r.kind == SpokeRay::Kind::kOriginalRay ? "original_ray" : "arc_vertex";
    if (r.kind == SpokeRay::Kind::kOriginalRay) jr["ray_index"] = r.ray_index;
    jr["sector"] = r.sector;
    jr["vertex"] = r.vertex;
    spokes.push_back(std::move(jr));
  }
  j["spokes"] = std::move(spokes);
  return j;
}

CombSpec spec_from_json(const nlohmann::json& j) {
  if (j.at("format").get<std::string>() != "comb-spec/1") {
    throw std::invalid_argument("unsupported spec format");
  }
  const int n = j.at("n_sectors").get<int>();
  const double hair = j.at("hair_extension").get<double>();
  CombSpec spec = build(n, hair);
  if (j.at("r_max").get<double>() != spec.r_max()) {
    throw std::invalid_argument("spec file r_max does not match the construction");
  }
  const auto& sectors = j.at("sectors");
  if (int(sectors.size()) != n) throw std::invalid_argument("sector count mismatch");
  for (int i = 0; i < n; ++i) {
    const SectorSpec& s = spec.sector(i + 1);
    if (sectors[std::size_t(i)].at("pieces").get<std::int64_t>() != s.pieces ||
        sectors[std::size_t(i)].at("truncation_radius").get<double>() != s.N_n) {
      throw std::invalid_argument("sector data does not match the deterministic construction");
    }
  }
  return spec;
}

nlohmann::json located_to_json(const LocatedPoint& p) {
  json j;
  if (p.kind == LocatedPoint::Kind::kInSector) {
    j["kind"] = "sector";
    j["sector"] = p.sector;
    j["rho"] = p.pos.rho;
    j["phi"] = p.pos.phi;
  } else {
    j["kind"] = "spoke";
    j["spoke"] = p.spoke;
    j["t"] = p.t;
  }
  return j;
}

LocatedPoint located_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "sector") {
    return LocatedPoint::in_sector(
        j.at("sector").get<int>(),
        make_polar(j.at("rho").get<double>(), j.at("phi").get<double>()));
  }
  if (kind == "spoke") {
    return LocatedPoint::on_spoke(j.at("spoke").get<std::int64_t>(), j.at("t").get<double>());
  }
  throw std::invalid_argument("located point kind must be 'sector' or 'spoke'");
}

nlohmann::json witness_to_json(const PathWitness& w) {
  json j;
  j["length"] = w.length;
  json poly = json::array();
  for (const LocatedPoint& p : w.polyline) poly.push_back(located_to_json(p));
  j["polyline"] = std::move(poly);
  return j;
}

nlohmann::json delta_to_json(const DeltaEstimate& est) {
  json j;
  j["delta_max"] = est.delta_max;
  j["sample_count"] = est.sample_count;
  j["radius_cap"] = est.radius_cap;
  j["epsilon"] = est.epsilon;
  j["seed"] = est.seed;
  j["bucket_width"] = est.bucket_width;
  j["histogram"] = est.histogram;
  return j;
}

nlohmann::json qi_to_json(const QiConstants& qi) {
  json j;
  j["lambda"] = qi.lambda;
  j["c"] = qi.c;
  j["sample_count"] = qi.sample_count;
  j["seed"] = qi.seed;
  return j;
}

nlohmann::json boundary_cover_to_json(const BoundaryCover& cover) {
  json j;
  j["eps_mesh"] = cover.eps_mesh;
  j["mesh"] = cover.mesh;
  j["min_gap"] = std::isinf(cover.min_gap) ? json("inf") : json(cover.min_gap);
  j["certified"] = cover.certified;
  j["clusters"] = cover.clusters;
  return j;
}

nlohmann::json covering_to_json(const Covering& cover) {
  json j;
  j["d"] = cover.d;
  j["mesh"] = cover.mesh;
  j["mesh_over_d"] = cover.mesh_over_d;
  j["multiplicity"] = cover.multiplicity;
  j["probe_spacing"] = cover.probe_spacing;
  j["probe_count"] = cover.probe_count;
  j["covers_probes"] = cover.covers_probes;
  json blocks = json::array();
  for (const CoverBlock& b : cover.blocks) {
    json jb;
    jb["id"] = b.id;
    jb["band"] = b.band;
    jb["diameter"] = b.diameter;
    switch (b.kind) {
      case CoverBlock::Kind::kDiskCore:
        jb["kind"] = "disk_core";
        break;
      case CoverBlock::Kind::kSectorBand:
        jb["kind"] = "sector_band";
        break;
      case CoverBlock::Kind::kHairInterval:
        jb["kind"] = "hair_interval";
        break;
    }
    if (b.kind == CoverBlock::Kind::kHairInterval) {
      jb["family"] = b.family;
      jb["spoke"] = b.spoke;
      jb["t_lo"] = b.t_lo;
      jb["t_hi"] = b.t_hi;
    } else {
      json parts = json::array();
      for (const BlockPart& p : b.parts) {
        parts.push_back(json{{"sector", p.sector},
                             {"r_lo", p.r_lo},
                             {"r_hi", p.r_hi},
                             {"phi_lo", p.phi_lo},
                             {"phi_hi", p.phi_hi}});
      }
      jb["parts"] = std::move(parts);
      jb["merged_hairs"] = b.merged_hairs;
      jb["merged_len"] = b.merged_len;
    }
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

nlohmann::json verdict_to_json(const DecompositionVerdict& v) {
  json j;
  switch (v.kind) {
    case DecompositionVerdict::Kind::kSat:
      j["verdict"] = "SAT";
      j["coloring"] = v.coloring;
      break;
    case DecompositionVerdict::Kind::kUnsat:
      j["verdict"] = "UNSAT";
      break;
    case DecompositionVerdict::Kind::kUnknown:
      j["verdict"] = "UNKNOWN";
      break;
  }
  j["d"] = v.d;
  j["D"] = v.D;
  j["nodes_explored"] = v.nodes_explored;
  j["budget"] = v.budget;
  return j;
}

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string delta_histogram_csv(const DeltaEstimate& est) {
  std::ostringstream os;
  os << "bucket_lo,bucket_hi,count\n";
  os.precision(17);
  for (std::size_t k = 0; k < est.histogram.size(); ++k) {
    os << double(k) * est.bucket_width << ',' << double(k + 1) * est.bucket_width << ','
       << est.histogram[k] << '\n';
  }
  return os.str();
}

std::string visual_matrix_csv(const std::vector<std::int64_t>& spokes,
                              const std::vector<double>& vis) {
  const std::size_t n = spokes.size();
  std::ostringstream os;
  os.precision(17);
  os << "spoke";
  for (std::size_t j = 0; j < n; ++j) os << ',' << spokes[j];
  os << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    os << spokes[i];
    for (std::size_t j = 0; j < n; ++j) os << ',' << vis[i * n + j];
    os << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace comb
