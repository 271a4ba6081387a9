#include "polypdd/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polypdd/closed_form.hpp"
#include "polypdd/compose.hpp"
#include "polypdd/curve_io.hpp"
#include "polypdd/errors.hpp"
#include "polypdd/geometry_json.hpp"
#include "polypdd/km_engine.hpp"
#include "polypdd/mc_oracle.hpp"

namespace polypdd::cli {

namespace {

using nlohmann::json;

struct Options {
  double dtheta_deg = 0.25;
  double dp = 1.0 / 2000.0;
  int grid = 500;
  std::int64_t samples = 50'000;
  std::uint64_t seed = SampleConfig{}.seed;
  std::int64_t batch = SampleConfig{}.batch;
  std::string method = "km";
  std::string format = "csv";
  std::string output = "-";

  std::vector<double> angles;
  std::optional<double> scale;
  std::string geometry;
  std::string second;
  std::string outer;
  std::string hole;
  std::string out_dir = ".";
  std::string a = "km";
  std::string b = "mc";
  double ks_max = 0.01;

  KMConfig km() const {
    KMConfig c;
    c.d_theta = dtheta_deg * kPi / 180.0;
    c.d_p = dp;
    c.grid_points = grid;
    c.validate();
    return c;
  }

  SampleConfig mc() const {
    SampleConfig c{samples, seed, batch};
    c.validate();
    return c;
  }
};

// A curve from one of the estimators. MC results stay as samples so that
// `check` can compare against the exact step function.
struct Estimate {
  std::optional<Distribution> curve;
  std::optional<EmpiricalCdf> samples;
  double d_max = 0.0;

  CurveTable table(int cells) const {
    return curve ? make_table(curve->pdf, curve->cdf) : make_table(*samples, d_max, cells);
  }
};

double max_vertex_distance(const SimplePolygon& a, const SimplePolygon& b) {
  double out = 0.0;
  for (Point2 p : a.vertices()) {
    for (Point2 q : b.vertices()) out = std::max(out, distance(p, q));
  }
  return out;
}

Estimate estimate(const std::string& method, const std::vector<GeometryInput>& regions,
                  const Options& opt) {
  const bool single = regions.size() == 1;
  Estimate e;
  if (method == "closed") {
    if (!single || !regions[0].is_triangle()) {
      throw std::invalid_argument("method 'closed' needs a single triangle");
    }
    const KMConfig cfg = opt.km();
    const DensityCurve pdf = closed_form_curve(std::get<Triangle>(regions[0].shape), cfg.grid_points);
    e.curve = Distribution{pdf, pdf_to_cdf(pdf)};
    e.d_max = pdf.d_max();
  } else if (method == "km") {
    const KMConfig cfg = opt.km();
    if (single && regions[0].is_triangle()) {
      const DensityCurve pdf = within_triangle_pdf(std::get<Triangle>(regions[0].shape), cfg);
      e.curve = Distribution{pdf, pdf_to_cdf(pdf)};
    } else if (single) {
      e.curve = polygon_distribution(regions[0].polygon(), cfg);
    } else {
      const auto ta = triangulate(regions[0].polygon());
      const auto tb = triangulate(regions[1].polygon());
      e.curve = between_regions_distribution(ta, tb, cfg);
    }
    e.d_max = e.curve->pdf.d_max();
  } else if (method == "mc") {
    const SimplePolygon pa = regions[0].polygon();
    const SimplePolygon pb = single ? pa : regions[1].polygon();
    e.samples = pdd_mc(pa, pb, opt.mc());
    e.d_max = single ? pa.diameter() : max_vertex_distance(pa, pb);
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  return e;
}

double ks(const Estimate& x, const Estimate& y) {
  if (x.curve && y.curve) return ks_distance(x.curve->cdf, y.curve->cdf);
  if (x.curve) return ks_distance(x.curve->cdf, *y.samples);
  if (y.curve) return ks_distance(*x.samples, y.curve->cdf);
  return ks_distance(*x.samples, *y.samples);
}

json config_json(const Options& opt, const std::string& method) {
  json c;
  if (method == "mc") {
    c["samples"] = opt.samples;
    c["seed"] = opt.seed;
    c["batch"] = opt.batch;
  } else {
    c["dtheta_deg"] = opt.dtheta_deg;
    c["dp"] = opt.dp;
  }
  c["grid"] = opt.grid;
  return c;
}

json metadata(const std::string& command, const std::string& method, json geometry,
              const Options& opt) {
  return {{"tool", "polypdd"},
          {"version", POLYPDD_VERSION},
          {"command", command},
          {"method", method},
          {"geometry", std::move(geometry)},
          {"config", config_json(opt, method)}};
}

void emit(std::ostream& out, const CurveTable& table, const std::string& format, const json& meta) {
  if (format == "json") {
    write_json(out, table, meta);
  } else {
    write_csv(out, table);
  }
}

void emit_to(const std::string& target, std::ostream& out, const CurveTable& table,
             const std::string& format, const json& meta) {
  if (target.empty() || target == "-") {
    emit(out, table, format, meta);
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot write " + target);
  emit(file, table, format, meta);
  if (!file) throw std::invalid_argument("failed writing " + target);
}

GeometryInput triangle_input(const Options& opt) {
  if (!opt.angles.empty()) {
    json doc = {{"angles", opt.angles}};
    if (opt.scale) doc["scale"] = *opt.scale;
    return parse_geometry(doc);
  }
  if (opt.geometry.empty()) throw std::invalid_argument("give --angles or --geometry");
  GeometryInput g = load_geometry(opt.geometry);
  if (!g.is_triangle()) throw GeometryError(opt.geometry + " does not describe a triangle");
  return g;
}

json geometry_echo(const std::vector<GeometryInput>& regions) {
  if (regions.size() == 1) return regions[0].source;
  return json::array({regions[0].source, regions[1].source});
}

int run_curve(const std::string& command, const std::vector<GeometryInput>& regions,
              const std::string& method, const Options& opt, std::ostream& out) {
  const Estimate e = estimate(method, regions, opt);
  emit_to(opt.output, out, e.table(opt.grid), opt.format,
          metadata(command, method, geometry_echo(regions), opt));
  return kOk;
}

int run_check(const std::vector<GeometryInput>& regions, const Options& opt, std::ostream& out) {
  const Estimate x = estimate(opt.a, regions, opt);
  const Estimate y = estimate(opt.b, regions, opt);
  const double d = ks(x, y);
  const bool pass = d <= opt.ks_max;
  out << "check " << opt.a << " vs " << opt.b << ": ks=" << format_number(d)
      << " ks_max=" << format_number(opt.ks_max) << (pass ? " PASS" : " FAIL") << '\n';
  return pass ? kOk : kCheckFailed;
}

int run_ring(const Options& opt, std::ostream& out) {
  const GeometryInput outer = load_geometry(opt.outer);
  const GeometryInput hole = load_geometry(opt.hole);
  const RingSpec ring(outer.polygon(), hole.polygon());
  const RingResult r = ring_pdd(ring, opt.km());

  const json geometry = {{"outer", outer.source}, {"hole", hole.source}};
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  const std::string ext = opt.format == "json" ? ".json" : ".csv";
  const std::pair<const char*, const Distribution*> curves[] = {
      {"F11", &r.f11}, {"F22", &r.f22}, {"F23", &r.f23},
      {"F33", &r.f33}, {"F12", &r.f12}, {"F13", &r.f13}};
  for (const auto& [name, dist] : curves) {
    json meta = metadata("ring", "km", geometry, opt);
    meta["curve"] = name;
    meta["areas"] = {{"S1", r.s1}, {"S2", r.s2}, {"S3", r.s3}};
    const std::string path = (dir / (std::string(name) + ext)).string();
    emit_to(path, out, make_table(dist->pdf, dist->cdf), opt.format, meta);
    out << path << '\n';
  }
  return kOk;
}

void add_km_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--dtheta", opt.dtheta_deg, "orientation step in degrees")->capture_default_str();
  cmd->add_option("--dp", opt.dp, "offset step as a fraction of the diameter")
      ->capture_default_str();
  cmd->add_option("--grid", opt.grid, "distance grid cells")->capture_default_str();
}

void add_mc_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--samples", opt.samples, "Monte Carlo point pairs")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  cmd->add_option("--batch", opt.batch, "pairs per random stream")->capture_default_str();
}

void add_output_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", opt.output, "output file, - for stdout")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Distance distributions of uniform random points in triangles, polygons and rings",
               "polypdd"};
  app.set_version_flag("--version", POLYPDD_VERSION);
  app.require_subcommand(1);

  auto* tri = app.add_subcommand("triangle", "distance within one triangle");
  auto* angles = tri->add_option("--angles", opt.angles, "three angles in degrees, e.g. 80,70,30")
                     ->delimiter(',')
                     ->expected(3);
  tri->add_option("--scale", opt.scale, "longest side when --angles is used");
  tri->add_option("--geometry", opt.geometry, "geometry JSON file")->excludes(angles);
  tri->add_option("--method", opt.method, "km, closed or mc")
      ->check(CLI::IsMember({"km", "closed", "mc"}))
      ->capture_default_str();

  auto* pair = app.add_subcommand("pair", "distance between two interior-disjoint regions");
  pair->add_option("--first", opt.geometry, "first region")->required();
  pair->add_option("--second", opt.second, "second region")->required();
  pair->add_option("--method", opt.method, "km or mc")
      ->check(CLI::IsMember({"km", "mc"}))
      ->capture_default_str();

  auto* poly = app.add_subcommand("polygon", "distance within a simple polygon");
  poly->add_option("--geometry", opt.geometry, "geometry JSON file")->required();
  poly->add_option("--method", opt.method, "km or mc")
      ->check(CLI::IsMember({"km", "mc"}))
      ->capture_default_str();

  auto* ring = app.add_subcommand("ring", "ring region: writes F11 F22 F23 F33 F12 F13");
  ring->add_option("--outer", opt.outer, "outer region")->required();
  ring->add_option("--hole", opt.hole, "hole strictly inside the outer region")->required();
  ring->add_option("--out-dir", opt.out_dir, "directory for the six curve files")
      ->capture_default_str();

  auto* mc = app.add_subcommand("mc", "Monte Carlo empirical distribution");
  mc->add_option("--geometry", opt.geometry, "region")->required();
  mc->add_option("--second", opt.second, "second region for between-region distances");

  auto* check = app.add_subcommand("check", "compare two estimators by KS distance");
  check->add_option("--geometry", opt.geometry, "region")->required();
  check->add_option("--second", opt.second, "second region for between-region distances");
  check->add_option("--a", opt.a, "first method")->check(CLI::IsMember({"km", "closed", "mc"}));
  check->add_option("--b", opt.b, "second method")->check(CLI::IsMember({"km", "closed", "mc"}));
  check->add_option("--ks-max", opt.ks_max, "largest accepted KS distance")->capture_default_str();

  for (auto* cmd : {tri, pair, poly, ring, mc, check}) add_km_options(cmd, opt);
  for (auto* cmd : {tri, pair, poly, mc, check}) add_mc_options(cmd, opt);
  for (auto* cmd : {tri, pair, poly, mc}) add_output_options(cmd, opt);
  ring->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    auto regions = [&] {
      std::vector<GeometryInput> r{load_geometry(opt.geometry)};
      if (!opt.second.empty()) r.push_back(load_geometry(opt.second));
      return r;
    };
    if (*tri) return run_curve("triangle", {triangle_input(opt)}, opt.method, opt, out);
    if (*pair) return run_curve("pair", regions(), opt.method, opt, out);
    if (*poly) return run_curve("polygon", regions(), opt.method, opt, out);
    if (*ring) return run_ring(opt, out);
    if (*mc) return run_curve("mc", regions(), "mc", opt, out);
    if (*check) return run_check(regions(), opt, out);
  } catch (const DiagnosticError& e) {
    err << "error: " << e.what() << '\n';
    return kDiagnosticError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDiagnosticError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDiagnosticError;
  }
  return kUsageError;
}

}  // namespace polypdd::cli
