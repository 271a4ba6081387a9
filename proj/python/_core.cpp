#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "polypdd/closed_form.hpp"
#include "polypdd/compose.hpp"
#include "polypdd/errors.hpp"
#include "polypdd/km_engine.hpp"
#include "polypdd/mc_oracle.hpp"

namespace py = pybind11;
using namespace polypdd;

namespace {

using Vertices = std::vector<std::array<double, 2>>;

std::vector<Point2> points(const Vertices& v) {
  std::vector<Point2> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back({p[0], p[1]});
  return out;
}

SimplePolygon polygon(const Vertices& v) { return SimplePolygon(points(v)); }

Triangle triangle(const Vertices& v) {
  if (v.size() != 3) throw GeometryError("a triangle needs exactly three vertices");
  const auto p = points(v);
  return Triangle(p[0], p[1], p[2]);
}

py::array_t<double> to_array(std::span<const double> v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict to_dict(const DensityCurve& pdf, const CdfCurve& cdf) {
  std::vector<double> d(static_cast<std::size_t>(pdf.cells()) + 1);
  for (int k = 0; k <= pdf.cells(); ++k) d[k] = pdf.node(k);
  py::dict out;
  out["d"] = to_array(d);
  out["pdf"] = to_array(pdf.values());
  out["cdf"] = to_array(cdf.values());
  return out;
}

py::dict to_dict(const Distribution& dist) { return to_dict(dist.pdf, dist.cdf); }

Triangle triangle_from_angles(const std::array<double, 3>& deg, std::optional<double> scale) {
  const double k = kPi / 180.0;
  return canonicalize_triangle(AngleSpec{{deg[0] * k, deg[1] * k, deg[2] * k}}, scale);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distance distributions of triangles, polygons and rings";

  py::register_exception<DiagnosticError>(m, "DiagnosticError", PyExc_RuntimeError);

  py::class_<KMConfig>(m, "KMConfig")
      .def(py::init<>())
      .def_readwrite("d_theta", &KMConfig::d_theta)
      .def_readwrite("d_p", &KMConfig::d_p)
      .def_readwrite("grid_points", &KMConfig::grid_points)
      .def_readwrite("min_p_samples", &KMConfig::min_p_samples)
      .def_readwrite("min_theta_samples", &KMConfig::min_theta_samples)
      .def("validate", &KMConfig::validate)
      .def("refined", &KMConfig::refined, py::arg("factor"));

  py::class_<SampleConfig>(m, "SampleConfig")
      .def(py::init<>())
      .def(py::init([](std::int64_t n, std::uint64_t seed, std::int64_t batch) {
             return SampleConfig{n, seed, batch};
           }),
           py::arg("n_pairs"), py::arg("seed") = SampleConfig{}.seed,
           py::arg("batch") = SampleConfig{}.batch)
      .def_readwrite("n_pairs", &SampleConfig::n_pairs)
      .def_readwrite("seed", &SampleConfig::seed)
      .def_readwrite("batch", &SampleConfig::batch);

  m.def(
      "triangle_pdd",
      [](const Vertices& v, const KMConfig& cfg) {
        const DensityCurve f = within_triangle_pdf(triangle(v), cfg);
        return to_dict(f, pdf_to_cdf(f));
      },
      py::arg("vertices"), py::arg("config") = KMConfig{},
      "Within-triangle distance curves on [0, diameter].");

  m.def(
      "triangle_pdd_angles",
      [](const std::array<double, 3>& deg, std::optional<double> scale, const KMConfig& cfg) {
        const DensityCurve f = within_triangle_pdf(triangle_from_angles(deg, scale), cfg);
        return to_dict(f, pdf_to_cdf(f));
      },
      py::arg("angles_deg"), py::arg("scale") = py::none(), py::arg("config") = KMConfig{});

  m.def(
      "closed_form_pdf",
      [](const std::array<double, 3>& deg, py::array_t<double> d) {
        const double k = kPi / 180.0;
        const TriangleParams t = TriangleParams::from_angles(deg[0] * k, deg[1] * k, deg[2] * k);
        auto in = d.unchecked<1>();
        py::array_t<double> out(in.shape(0));
        auto o = out.mutable_unchecked<1>();
        for (py::ssize_t i = 0; i < in.shape(0); ++i) o(i) = closed_form_pdf(t, in(i));
        return out;
      },
      py::arg("angles_deg"), py::arg("d"),
      "Closed-form density of the triangle with longest side 1 at 0 < d < 1.");

  m.def(
      "pair_pdd",
      [](const Vertices& a, const Vertices& b, const KMConfig& cfg) {
        const auto ta = triangulate(polygon(a));
        const auto tb = triangulate(polygon(b));
        return to_dict(between_regions_distribution(ta, tb, cfg));
      },
      py::arg("first"), py::arg("second"), py::arg("config") = KMConfig{},
      "Distance between two interior-disjoint regions.");

  m.def(
      "polygon_pdd",
      [](const Vertices& v, const KMConfig& cfg) { return to_dict(polygon_distribution(polygon(v), cfg)); },
      py::arg("vertices"), py::arg("config") = KMConfig{});

  m.def(
      "ring_pdd",
      [](const Vertices& outer, const Vertices& hole, const KMConfig& cfg) {
        const RingResult r = ring_pdd(RingSpec(polygon(outer), polygon(hole)), cfg);
        py::dict out;
        out["F11"] = to_dict(r.f11);
        out["F22"] = to_dict(r.f22);
        out["F23"] = to_dict(r.f23);
        out["F33"] = to_dict(r.f33);
        out["F12"] = to_dict(r.f12);
        out["F13"] = to_dict(r.f13);
        out["areas"] = py::make_tuple(r.s1, r.s2, r.s3);
        return out;
      },
      py::arg("outer"), py::arg("hole"), py::arg("config") = KMConfig{});

  m.def(
      "mc_samples",
      [](const Vertices& a, std::optional<Vertices> b, const SampleConfig& cfg) {
        const SimplePolygon pa = polygon(a);
        const SimplePolygon pb = b ? polygon(*b) : pa;
        py::gil_scoped_release release;
        const EmpiricalCdf e = pdd_mc(pa, pb, cfg);
        py::gil_scoped_acquire acquire;
        return to_array(e.samples());
      },
      py::arg("first"), py::arg("second") = py::none(), py::arg("config") = SampleConfig{},
      "Sorted Monte Carlo distances.");

  m.def(
      "ks_distance",
      [](double d_max, std::vector<double> cdf, std::vector<double> samples) {
        return ks_distance(CdfCurve(d_max, std::move(cdf)), EmpiricalCdf(std::move(samples)));
      },
      py::arg("d_max"), py::arg("cdf"), py::arg("samples"),
      "KS distance between a gridded CDF on [0, d_max] and an empirical one.");
}
