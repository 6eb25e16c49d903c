// Command-line front door: build comb specs, query the path metric, run the
// certificate suites, render the construction, and bundle reproducible
// reports.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "comb/boundary.hpp"
#include "comb/coverings.hpp"
#include "comb/hyperbolicity.hpp"
#include "comb/json_io.hpp"
#include "comb/manifest.hpp"
#include "comb/path_metric.hpp"
#include "comb/svg_render.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SpecInput {
  std::string spec_path;
  int sectors = 0;
  double hair = 10.0;

  comb::CombSpec load() const {
    if (!spec_path.empty()) {
      return comb::spec_from_json(json::parse(comb::read_file(spec_path)));
    }
    if (sectors < 1) {
      throw CLI::ValidationError("provide --spec FILE or --sectors N");
    }
    return comb::build(sectors, hair);
  }
};

void add_spec_options(CLI::App* cmd, SpecInput& in) {
  cmd->add_option("--spec", in.spec_path, "comb spec JSON file");
  cmd->add_option("--sectors", in.sectors, "construction depth (builds the spec in-process)");
  cmd->add_option("--hair", in.hair, "hair extension beyond the largest truncation radius");
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
  } else {
    comb::write_file(out, content);
  }
}

json visual_check_report(const comb::CombSpec& spec, std::int64_t samples,
                         std::uint64_t seed) {
  comb::SpaceSampler sampler(spec, spec.r_max());
  double worst = 0.0;
  std::int64_t worst_index = -1;
  for (std::int64_t i = 0; i < samples; ++i) {
    comb::Rng rng = comb::rng_for(seed, std::uint64_t(i));
    const comb::LocatedPoint p = sampler.sample(rng);
    const auto [id, d] = spec.nearest_spoke(p);
    if (d > worst) {
      worst = d;
      worst_index = i;
    }
  }
  json j;
  j["max_distance"] = worst;
  j["worst_sample_index"] = worst_index;
  j["sample_count"] = samples;
  j["seed"] = seed;
  j["bound"] = 1.0 + 1e-6;
  j["pass"] = worst <= 1.0 + 1e-6;
  return j;
}

std::vector<std::int64_t> first_spokes(const comb::CombSpec& spec, std::int64_t count) {
  std::vector<std::int64_t> ids;
  const std::int64_t n = std::min(count, spec.spoke_count());
  ids.reserve(std::size_t(n));
  for (std::int64_t i = 0; i < n; ++i) ids.push_back(i);
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comb space construction and certification"};
  app.require_subcommand(1);

  // build
  auto* cmd_build = app.add_subcommand("build", "construct a comb spec and write canonical JSON");
  int b_sectors = 1;
  double b_hair = 10.0;
  std::string b_out;
  cmd_build->add_option("--sectors", b_sectors, "construction depth")->required();
  cmd_build->add_option("--hair", b_hair, "hair extension");
  cmd_build->add_option("--out", b_out, "output path (stdout when omitted)");

  // render
  auto* cmd_render = app.add_subcommand("render", "draw the construction as SVG");
  SpecInput r_in;
  std::string r_out;
  add_spec_options(cmd_render, r_in);
  cmd_render->add_option("--out", r_out, "output SVG path (stdout when omitted)");

  // dist
  auto* cmd_dist = app.add_subcommand("dist", "path-metric distance between two points");
  SpecInput d_in;
  std::string d_p, d_q, d_out;
  double d_eps = 0.05;
  add_spec_options(cmd_dist, d_in);
  cmd_dist->add_option("--p", d_p, "first point as JSON")->required();
  cmd_dist->add_option("--q", d_q, "second point as JSON")->required();
  cmd_dist->add_option("--epsilon", d_eps, "portal spacing");
  cmd_dist->add_option("--out", d_out, "output path (stdout when omitted)");

  // delta
  auto* cmd_delta = app.add_subcommand("delta", "sampled four-point hyperbolicity constant");
  SpecInput h_in;
  std::int64_t h_samples = 100000;
  double h_cap = 20.0, h_eps = 0.1;
  std::uint64_t h_seed = 1;
  std::string h_out;
  add_spec_options(cmd_delta, h_in);
  cmd_delta->add_option("--samples", h_samples, "quadruple count");
  cmd_delta->add_option("--radius-cap", h_cap, "sampling radius cap");
  cmd_delta->add_option("--epsilon", h_eps, "portal spacing");
  cmd_delta->add_option("--seed", h_seed, "random seed");
  cmd_delta->add_option("--out", h_out, "output directory")->required();

  // visual-check
  auto* cmd_visual = app.add_subcommand("visual-check", "certify nearest-spoke distance <= 1");
  SpecInput v_in;
  std::int64_t v_samples = 10000;
  std::uint64_t v_seed = 1;
  std::string v_out;
  add_spec_options(cmd_visual, v_in);
  cmd_visual->add_option("--samples", v_samples, "sample count");
  cmd_visual->add_option("--seed", v_seed, "random seed");
  cmd_visual->add_option("--out", v_out, "output path (stdout when omitted)");

  // boundary
  auto* cmd_boundary = app.add_subcommand("boundary", "boundary visual metric and dim-0 covers");
  SpecInput bd_in;
  std::int64_t bd_first = 200;
  double bd_eps = 0.05, bd_base = 2.718281828459045;
  std::string bd_out;
  add_spec_options(cmd_boundary, bd_in);
  cmd_boundary->add_option("--first", bd_first, "number of spokes (by angle) to include");
  cmd_boundary->add_option("--epsilon", bd_eps, "portal spacing for attachment distances");
  cmd_boundary->add_option("--base", bd_base, "visual metric base a > 1");
  cmd_boundary->add_option("--out", bd_out, "output directory")->required();

  // cover
  auto* cmd_cover = app.add_subcommand("cover", "constructive covering with multiplicity certificate");
  SpecInput c_in;
  double c_d = 1.0;
  std::string c_out;
  add_spec_options(cmd_cover, c_in);
  cmd_cover->add_option("--scale-d", c_d, "scale d of the certificate");
  cmd_cover->add_option("--out", c_out, "output path (stdout when omitted)");

  // lower-bound
  auto* cmd_lb = app.add_subcommand("lower-bound", "refute two-family decompositions of a ball net");
  SpecInput l_in;
  int l_sector = 4;
  double l_ball = 3.0, l_scale = 1.0, l_d = 2.0, l_D = 2.0, l_eps = 0.05;
  std::int64_t l_budget = 10000000;
  std::string l_out;
  add_spec_options(cmd_lb, l_in);
  cmd_lb->add_option("--sector", l_sector, "sector whose inscribed-ball center is used");
  cmd_lb->add_option("--ball", l_ball, "ball radius around that center");
  cmd_lb->add_option("--net-scale", l_scale, "net scale");
  cmd_lb->add_option("--scale-d", l_d, "required family separation d");
  cmd_lb->add_option("--diam-D", l_D, "block diameter cap D");
  cmd_lb->add_option("--budget", l_budget, "search node budget");
  cmd_lb->add_option("--epsilon", l_eps, "portal spacing");
  cmd_lb->add_option("--out", l_out, "output path (stdout when omitted)");

  // certify-all
  auto* cmd_all = app.add_subcommand("certify-all", "run every certificate suite into one bundle");
  SpecInput a_in;
  std::int64_t a_samples = 10000;
  std::uint64_t a_seed = 1;
  double a_eps = 0.1;
  std::int64_t a_budget = 1000000;
  std::string a_out;
  add_spec_options(cmd_all, a_in);
  cmd_all->add_option("--samples", a_samples, "sample count per sampled suite");
  cmd_all->add_option("--seed", a_seed, "random seed");
  cmd_all->add_option("--epsilon", a_eps, "portal spacing");
  cmd_all->add_option("--budget", a_budget, "lower-bound search budget");
  cmd_all->add_option("--out", a_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_build) {
      const comb::CombSpec spec = comb::build(b_sectors, b_hair);
      emit(b_out, comb::canonical_dump(comb::spec_to_json(spec)));
      return 0;
    }

    if (*cmd_render) {
      const comb::CombSpec spec = r_in.load();
      emit(r_out, comb::render_svg(spec));
      return 0;
    }

    if (*cmd_dist) {
      const comb::CombSpec spec = d_in.load();
      const comb::PathMetric metric(spec, d_eps);
      const comb::LocatedPoint p = comb::located_from_json(json::parse(d_p));
      const comb::LocatedPoint q = comb::located_from_json(json::parse(d_q));
      const auto [value, witness] = metric.dist_witness(p, q);
      json j;
      j["value"] = value;
      j["epsilon"] = d_eps;
      j["witness"] = comb::witness_to_json(witness);
      emit(d_out, comb::canonical_dump(j));
      return 0;
    }

    if (*cmd_delta) {
      const comb::CombSpec spec = h_in.load();
      const comb::PathMetric metric(spec, h_eps);
      const comb::DeltaEstimate est = comb::estimate_delta(metric, h_samples, h_cap, h_seed);
      fs::create_directories(h_out);
      const std::string js = comb::canonical_dump(comb::delta_to_json(est));
      const std::string csv = comb::delta_histogram_csv(est);
      comb::write_file(h_out + "/delta.json", js);
      comb::write_file(h_out + "/delta_hist.csv", csv);
      comb::RunManifest manifest("delta",
                                 json{{"samples", h_samples},
                                      {"radius_cap", h_cap},
                                      {"epsilon", h_eps},
                                      {"sectors", spec.n_sectors()},
                                      {"hair", spec.hair_extension()}},
                                 h_seed, comb::sha256_hex(spec.content_key()));
      manifest.add_output("delta.json", js);
      manifest.add_output("delta_hist.csv", csv);
      comb::write_file(h_out + "/manifest.json", comb::canonical_dump(manifest.to_json()));
      std::cout << "delta_max " << est.delta_max << "\n";
      return std::isfinite(est.delta_max) ? 0 : 1;
    }

    if (*cmd_visual) {
      const comb::CombSpec spec = v_in.load();
      const json j = visual_check_report(spec, v_samples, v_seed);
      emit(v_out, comb::canonical_dump(j));
      return j["pass"].get<bool>() ? 0 : 1;
    }

    if (*cmd_boundary) {
      const comb::CombSpec spec = bd_in.load();
      const comb::PathMetric metric(spec, bd_eps);
      const std::vector<std::int64_t> spokes = first_spokes(spec, bd_first);
      const comb::VisualMetricParams params{bd_base};
      const std::vector<double> vis = comb::visual_matrix(metric, params, spokes);
      fs::create_directories(bd_out);
      const std::string csv = comb::visual_matrix_csv(spokes, vis);
      comb::write_file(bd_out + "/boundary_matrix.csv", csv);
      bool all_ok = true;
      json covers = json::array();
      for (int k = 1; k <= 6; ++k) {
        const double eps_mesh = std::ldexp(1.0, -k);
        const comb::BoundaryCover cover = comb::zero_dim_cover(spokes, vis, eps_mesh);
        all_ok = all_ok && cover.certified;
        covers.push_back(comb::boundary_cover_to_json(cover));
      }
      json j;
      j["spoke_count"] = std::int64_t(spokes.size());
      j["base"] = bd_base;
      j["epsilon"] = bd_eps;
      j["covers"] = std::move(covers);
      j["pass"] = all_ok;
      const std::string js = comb::canonical_dump(j);
      comb::write_file(bd_out + "/boundary_covers.json", js);
      comb::RunManifest manifest("boundary",
                                 json{{"first", bd_first},
                                      {"epsilon", bd_eps},
                                      {"base", bd_base},
                                      {"sectors", spec.n_sectors()},
                                      {"hair", spec.hair_extension()}},
                                 0, comb::sha256_hex(spec.content_key()));
      manifest.add_output("boundary_matrix.csv", csv);
      manifest.add_output("boundary_covers.json", js);
      comb::write_file(bd_out + "/manifest.json", comb::canonical_dump(manifest.to_json()));
      return all_ok ? 0 : 1;
    }

    if (*cmd_cover) {
      const comb::CombSpec spec = c_in.load();
      const comb::Covering cover = comb::build_cover(spec, c_d);
      json j = comb::covering_to_json(cover);
      const bool pass = cover.covers_probes && cover.multiplicity <= 3;
      j["pass"] = pass;
      emit(c_out, comb::canonical_dump(j));
      return pass ? 0 : 1;
    }

    if (*cmd_lb) {
      const comb::CombSpec spec = l_in.load();
      const comb::PathMetric metric(spec, l_eps);
      const comb::Net net =
          comb::build_net(metric, comb::Region::sector_ball(l_sector, l_ball), l_scale);
      const comb::DecompositionVerdict verdict =
          comb::decomposition_search(net, l_d, l_D, l_budget);
      json j = comb::verdict_to_json(verdict);
      j["net_size"] = std::int64_t(net.size());
      j["net_scale"] = net.scale;
      j["covering_radius"] = net.covering_radius;
      j["min_pairwise"] = net.min_pairwise;
      if (verdict.kind == comb::DecompositionVerdict::Kind::kSat) {
        j["witness_verified"] = comb::verify_decomposition(net, verdict.coloring, l_d, l_D);
      }
      emit(l_out, comb::canonical_dump(j));
      return 0;
    }

    if (*cmd_all) {
      const comb::CombSpec spec = a_in.load();
      fs::create_directories(a_out);
      const comb::PathMetric metric(spec, a_eps);
      bool all_pass = true;
      comb::RunManifest manifest("certify-all",
                                 json{{"samples", a_samples},
                                      {"epsilon", a_eps},
                                      {"budget", a_budget},
                                      {"sectors", spec.n_sectors()},
                                      {"hair", spec.hair_extension()}},
                                 a_seed, comb::sha256_hex(spec.content_key()));
      auto save = [&](const std::string& name, const std::string& content) {
        comb::write_file(a_out + "/" + name, content);
        manifest.add_output(name, content);
      };

      // Visuality (D = 1).
      const json visual = visual_check_report(spec, a_samples, a_seed);
      all_pass = all_pass && visual["pass"].get<bool>();
      save("visual.json", comb::canonical_dump(visual));

      // Hyperbolicity.
      const comb::DeltaEstimate est =
          comb::estimate_delta(metric, a_samples, 15.0, a_seed);
      all_pass = all_pass && std::isfinite(est.delta_max);
      save("delta.json", comb::canonical_dump(comb::delta_to_json(est)));
      save("delta_hist.csv", comb::delta_histogram_csv(est));

      // Plane control.
      const comb::DeltaEstimate plane =
          comb::estimate_delta_plane(10.0, a_samples, a_seed);
      all_pass = all_pass && plane.delta_max <= 1.0;
      save("plane_delta.json", comb::canonical_dump(comb::delta_to_json(plane)));

      // Boundary covers.
      const std::vector<std::int64_t> spokes = first_spokes(spec, 200);
      const comb::VisualMetricParams params{};
      const std::vector<double> vis = comb::visual_matrix(metric, params, spokes);
      save("boundary_matrix.csv", comb::visual_matrix_csv(spokes, vis));
      json covers = json::array();
      for (int k = 1; k <= 6; ++k) {
        const comb::BoundaryCover cover =
            comb::zero_dim_cover(spokes, vis, std::ldexp(1.0, -k));
        all_pass = all_pass && cover.certified;
        covers.push_back(comb::boundary_cover_to_json(cover));
      }
      save("boundary_covers.json", comb::canonical_dump(json{{"covers", covers}}));

      // Covering certificate.
      const comb::Covering cover = comb::build_cover(spec, 1.0);
      all_pass = all_pass && cover.covers_probes && cover.multiplicity <= 3;
      save("cover_d1.json", comb::canonical_dump(comb::covering_to_json(cover)));

      // Lower-bound search on a ball net inside the deepest usable sector.
      const int lb_sector = std::min(4, spec.n_sectors());
      const double lb_ball = std::min(3.0, double(lb_sector));
      const comb::Net net =
          comb::build_net(metric, comb::Region::sector_ball(lb_sector, lb_ball), 1.0);
      const comb::DecompositionVerdict verdict =
          comb::decomposition_search(net, 2.0, 2.0, a_budget);
      json lbj = comb::verdict_to_json(verdict);
      lbj["net_size"] = std::int64_t(net.size());
      save("lower_bound.json", comb::canonical_dump(lbj));

      // Quasi-isometry constants.
      const comb::QiConstants qi = comb::qi_constants(metric, std::min<std::int64_t>(a_samples, 2000), a_seed);
      save("qi.json", comb::canonical_dump(comb::qi_to_json(qi)));

      json mj = manifest.to_json();
      mj["all_pass"] = all_pass;
      comb::write_file(a_out + "/manifest.json", comb::canonical_dump(mj));
      std::cout << (all_pass ? "PASS" : "FAIL") << "\n";
      return all_pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
