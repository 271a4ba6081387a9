#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polypdd/km_engine.hpp"
#include "polypdd/mc_oracle.hpp"

namespace polypdd {

/// Plot-ready samples: one row per distance node.
struct CurveTable {
  std::vector<double> d;
  std::vector<double> pdf;
  std::vector<double> cdf;
};

CurveTable make_table(const DensityCurve& pdf, const CdfCurve& cdf);
/// Empirical CDF at the nodes of [0, d_max] and a centered-difference
/// density with half window 0.01 d_max.
CurveTable make_table(const EmpiricalCdf& mc, double d_max, int cells);

/// 17 significant digits, trailing zeros dropped; parses back to the same double.
std::string format_number(double x);

/// Header `d,pdf,cdf`, LF line endings.
void write_csv(std::ostream& out, const CurveTable& table);
CurveTable read_csv(std::istream& in);

/// {"metadata": ..., "d": [...], "pdf": [...], "cdf": [...]}
void write_json(std::ostream& out, const CurveTable& table, const nlohmann::json& metadata);
CurveTable read_json(std::istream& in);

}  // namespace polypdd
