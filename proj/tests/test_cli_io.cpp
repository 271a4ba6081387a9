#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polypdd/cli.hpp"
#include "polypdd/curve_io.hpp"
#include "polypdd/errors.hpp"

using namespace polypdd;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "polypdd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("polypdd_test_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(FormatNumber, RoundTripsExactly) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(2.0), "2");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 10'000; ++k) {
    const double x = std::ldexp(u(rng), static_cast<int>(rng() % 40) - 20);
    const std::string s = format_number(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x) << s;
  }
}

TEST(CurveIo, CsvRoundTrip) {
  const DensityCurve f(1.0, {0.0, 1.2, 1.6, 1.2, 0.0});
  const CurveTable t = make_table(f, pdf_to_cdf(f));
  std::stringstream ss;
  write_csv(ss, t);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, 10), "d,pdf,cdf\n");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const CurveTable back = read_csv(ss);
  EXPECT_EQ(back.d, t.d);
  EXPECT_EQ(back.pdf, t.pdf);
  EXPECT_EQ(back.cdf, t.cdf);

  std::istringstream bad("x,y,z\n0,0,0\n");
  EXPECT_THROW(read_csv(bad), std::invalid_argument);
  std::istringstream garbled("d,pdf,cdf\n0,abc,0\n");
  EXPECT_THROW(read_csv(garbled), std::invalid_argument);
}

TEST(CurveIo, JsonRoundTrip) {
  const DensityCurve f(2.0, {0.0, 0.5, 1.0, 0.5, 0.0});
  const CurveTable t = make_table(f, pdf_to_cdf(f));
  std::stringstream ss;
  write_json(ss, t, {{"tool", "polypdd"}});
  const nlohmann::json doc = nlohmann::json::parse(ss.str());
  EXPECT_EQ(doc["metadata"]["tool"], "polypdd");
  std::istringstream in(ss.str());
  const CurveTable back = read_json(in);
  EXPECT_EQ(back.d, t.d);
  EXPECT_EQ(back.pdf, t.pdf);
  EXPECT_EQ(back.cdf, t.cdf);
}

TEST(CurveIo, EmpiricalTable) {
  std::vector<double> s(1000);
  for (int k = 0; k < 1000; ++k) s[k] = (k + 0.5) / 1000.0;
  const CurveTable t = make_table(EmpiricalCdf(s), 1.0, 100);
  ASSERT_EQ(t.d.size(), 101u);
  EXPECT_NEAR(t.cdf[50], 0.5, 1e-12);
  EXPECT_NEAR(t.pdf[50], 1.0, 1e-12);
}

TEST(Cli, ClosedFormTriangleHas501Rows) {
  const Result r = run_cli({"triangle", "--angles", "80,70,30", "--method", "closed"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 502);
  std::istringstream in(r.out);
  const CurveTable t = read_csv(in);
  EXPECT_EQ(t.d.front(), 0.0);
  EXPECT_EQ(t.d.back(), 1.0);
  EXPECT_NEAR(t.cdf.back(), 1.0, 2e-3);
}

TEST(Cli, KmTriangleJsonWithMetadata) {
  const Result r = run_cli({"triangle", "--angles", "60,60,60", "--scale", "3", "--format", "json",
                            "--grid", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["metadata"]["command"], "triangle");
  EXPECT_EQ(doc["metadata"]["method"], "km");
  EXPECT_EQ(doc["metadata"]["config"]["grid"], 100);
  EXPECT_EQ(doc["d"].size(), 101u);
  EXPECT_NEAR(doc["d"].back().get<double>(), 3.0, 1e-12);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"nonsense"}).code, 2);
  EXPECT_EQ(run_cli({"triangle", "--angles", "80,70,20"}).code, 2);
  EXPECT_EQ(run_cli({"triangle", "--angles", "80,70,30", "--dtheta", "5"}).code, 2);
  EXPECT_EQ(run_cli({"triangle", "--angles", "80,70,30", "--method", "bogus"}).code, 2);
  EXPECT_EQ(run_cli({"polygon", "--geometry", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);

  TempDir dir;
  const std::string a = dir.write("a.json", R"({"vertices": [[0,0],[1,0],[1,1],[0,1]]})");
  const std::string b = dir.write("b.json", R"({"vertices": [[0.5,0],[1.5,0],[1.5,1],[0.5,1]]})");
  EXPECT_EQ(run_cli({"pair", "--first", a, "--second", b}).code, 2);  // overlap
  const std::string tri = dir.write("t.json", R"({"angles": [80, 70, 30]})");
  EXPECT_EQ(run_cli({"polygon", "--geometry", a, "--method", "closed"}).code, 2);
  EXPECT_EQ(run_cli({"triangle", "--geometry", tri, "--method", "closed"}).code, 0);
}

TEST(Cli, CheckPassesAndFails) {
  TempDir dir;
  const std::string tri = dir.write("t.json", R"({"angles": [60, 60, 60]})");
  const Result pass = run_cli({"check", "--geometry", tri, "--a", "km", "--b", "mc"});
  EXPECT_EQ(pass.code, 0) << pass.out << pass.err;
  EXPECT_NE(pass.out.find("PASS"), std::string::npos);
  const Result fail =
      run_cli({"check", "--geometry", tri, "--a", "km", "--b", "mc", "--ks-max", "1e-6"});
  EXPECT_EQ(fail.code, 1);
  EXPECT_NE(fail.out.find("FAIL"), std::string::npos);
  const Result closed = run_cli({"check", "--geometry", tri, "--a", "closed", "--b", "km"});
  EXPECT_EQ(closed.code, 0) << closed.out;
}

TEST(Cli, SeededOutputsAreByteIdentical) {
  TempDir dir;
  const std::string sq = dir.write("sq.json", R"({"vertices": [[0,0],[1,0],[1,1],[0,1]]})");
  const std::vector<std::string> args{"mc", "--geometry", sq, "--samples", "20000", "--seed", "9"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Result c = run_cli({"mc", "--geometry", sq, "--samples", "20000", "--seed", "10"});
  EXPECT_NE(a.out, c.out);

  const std::string f1 = (dir / "p1.csv").string(), f2 = (dir / "p2.csv").string();
  ASSERT_EQ(run_cli({"polygon", "--geometry", sq, "-o", f1}).code, 0);
  ASSERT_EQ(run_cli({"polygon", "--geometry", sq, "-o", f2}).code, 0);
  EXPECT_EQ(slurp(f1), slurp(f2));
}

TEST(Cli, RingWritesSixCurves) {
  TempDir dir;
  const std::string outer =
      dir.write("outer.json", R"({"vertices": [[-0.5,-0.5],[0.5,-0.5],[0.5,0.5],[-0.5,0.5]]})");
  const std::string hole =
      dir.write("hole.json", R"({"vertices": [[-0.3,-0.3],[0.3,-0.3],[0.3,0.3],[-0.3,0.3]]})");
  const fs::path out_dir = dir / "ring";
  const Result r = run_cli({"ring", "--outer", outer, "--hole", hole, "--out-dir", out_dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 6);
  for (const char* name : {"F11", "F22", "F23", "F33", "F12", "F13"}) {
    const fs::path p = out_dir / (std::string(name) + ".csv");
    ASSERT_TRUE(fs::exists(p)) << p;
    std::ifstream in(p);
    const CurveTable t = read_csv(in);
    EXPECT_EQ(t.d.size(), 501u);
    EXPECT_GE(t.cdf.back(), 0.995);
  }
  const std::string bad_hole =
      dir.write("bad.json", R"({"vertices": [[-0.3,-0.3],[0.8,-0.3],[0.8,0.3],[-0.3,0.3]]})");
  EXPECT_EQ(run_cli({"ring", "--outer", outer, "--hole", bad_hole, "--out-dir", out_dir.string()}).code, 2);
}
