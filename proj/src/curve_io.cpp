#include "polypdd/curve_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace polypdd {

CurveTable make_table(const DensityCurve& pdf, const CdfCurve& cdf) {
  if (pdf.cells() != cdf.cells()) throw std::invalid_argument("density and CDF grids differ");
  CurveTable t;
  for (int k = 0; k <= pdf.cells(); ++k) {
    t.d.push_back(pdf.node(k));
    t.pdf.push_back(pdf.values()[k]);
    t.cdf.push_back(cdf.values()[k]);
  }
  return t;
}

CurveTable make_table(const EmpiricalCdf& mc, double d_max, int cells) {
  CurveTable t;
  const double w = 0.01 * d_max;
  for (int k = 0; k <= cells; ++k) {
    const double d = k * d_max / cells;
    t.d.push_back(d);
    t.pdf.push_back(mc.density(d, w));
    t.cdf.push_back(mc(d));
  }
  return t;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed number '" + std::string(s) + "' in curve table");
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const CurveTable& table) {
  out << "d,pdf,cdf\n";
  for (std::size_t k = 0; k < table.d.size(); ++k) {
    out << format_number(table.d[k]) << ',' << format_number(table.pdf[k]) << ','
        << format_number(table.cdf[k]) << '\n';
  }
}

CurveTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "d,pdf,cdf") {
    throw std::invalid_argument("curve table must start with the header d,pdf,cdf");
  }
  CurveTable t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw std::invalid_argument("curve table row needs three columns: " + line);
    }
    const std::string_view v(line);
    t.d.push_back(parse_number(v.substr(0, c1)));
    t.pdf.push_back(parse_number(v.substr(c1 + 1, c2 - c1 - 1)));
    t.cdf.push_back(parse_number(v.substr(c2 + 1)));
  }
  return t;
}

void write_json(std::ostream& out, const CurveTable& table, const nlohmann::json& metadata) {
  nlohmann::json doc;
  doc["metadata"] = metadata;
  doc["d"] = table.d;
  doc["pdf"] = table.pdf;
  doc["cdf"] = table.cdf;
  out << doc.dump(1) << '\n';
}

CurveTable read_json(std::istream& in) {
  nlohmann::json doc;
  in >> doc;
  CurveTable t;
  t.d = doc.at("d").get<std::vector<double>>();
  t.pdf = doc.at("pdf").get<std::vector<double>>();
  t.cdf = doc.at("cdf").get<std::vector<double>>();
  if (t.pdf.size() != t.d.size() || t.cdf.size() != t.d.size()) {
    throw std::invalid_argument("curve document columns differ in length");
  }
  return t;
}

}  // namespace polypdd
