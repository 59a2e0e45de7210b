#include "hyperframe/error.hpp"
#include "hyperframe/pipeline.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace hyperframe;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({"name":"helix","curvature":{"m":"1","n":"1","a":"2","b":"0"},
  "domain":{"t0":0,"t1":2,"samples":21},"theta":{"min":-1,"max":1,"samples":5}})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hyperframe_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string field_of_failure(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HYPERFRAME_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

}  // namespace

TEST(ParseSpec, MinimalIsValid) {
  const CurveSpec s = parse_spec(kMinimal);
  EXPECT_EQ(s.name, "helix");
  EXPECT_EQ(s.domain.samples, 21u);
  EXPECT_EQ(s.tolerances.fiber_samples, 5u);
  EXPECT_FALSE(s.initial_frame.has_value());
}

TEST(ParseSpec, ValidationNamesField) {
  std::string bad = kMinimal;
  bad.replace(bad.find("\"samples\":21"), 12, "\"samples\":1");
  EXPECT_EQ(field_of_failure(bad), "domain.samples");
  std::string extra = kMinimal;
  extra.insert(1, "\"colour\":1,");
  EXPECT_EQ(field_of_failure(extra), "colour");
  std::string tol = kMinimal;
  tol.insert(1, "\"tolerances\":{\"tau_sign\":1},");
  EXPECT_EQ(field_of_failure(tol), "tolerances.tau_sign");
  std::string expr = kMinimal;
  expr.replace(expr.find("\"m\":\"1\""), 7, "\"m\":\"t^(1/2)\"");
  EXPECT_EQ(field_of_failure(expr), "curvature.m");
}

TEST(ParseSpec, MalformedDocument) {
  try {
    parse_spec("{\"name\": ");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
  }
}

TEST(ParseSpec, InitialFrameChecked) {
  std::string s = kMinimal;
  s.insert(1, "\"initial_frame\":[1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1],");
  EXPECT_TRUE(parse_spec(s).initial_frame.has_value());
  std::string b = kMinimal;
  b.insert(1, "\"initial_frame\":[1,0,0,0, 0,2,0,0, 0,0,1,0, 0,0,0,1],");
  EXPECT_EQ(field_of_failure(b), "initial_frame");
}

TEST(Projection, PoincareExamples) {
  const auto a = project_poincare({1, 0, 0, 0});
  EXPECT_EQ(a[0], 0.0);
  const auto b = project_poincare({std::cosh(1.0), 0, 0, std::sinh(1.0)});
  EXPECT_NEAR(b[2], std::tanh(0.5), 1e-15);
  EXPECT_THROW(project_poincare({0, 1, 0, 0}), Error);
}

TEST(Projection, HollowBallExamples) {
  EXPECT_DOUBLE_EQ(project_hollow_ball({0, 1, 0, 0})[0], 0.5);
  EXPECT_DOUBLE_EQ(project_hollow_ball({0, 0, 1, 0})[1], 0.5);
  EXPECT_THROW(project_hollow_ball({1, 0, 0, 0}), Error);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-30, 30);
  for (int i = 0; i < 200; ++i) {
    const double x0 = u(rng), phi = u(rng), psi = u(rng) / 10;
    const double r = std::sqrt(1 + x0 * x0);
    const MinkVec x{x0, r * std::cos(phi) * std::cos(psi), r * std::sin(phi) * std::cos(psi), r * std::sin(psi)};
    const auto y = project_hollow_ball(x);
    const double rad = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    EXPECT_LT(rad, 1.0);
    EXPECT_GE(rad, 0.5 - 1e-15);
  }
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(std::stod(format_number(M_PI)), M_PI);
}

TEST(ObjExport, CountsAndDeterminism) {
  const auto g = hftest::geometry("1", "1", "2", "0");
  const double ts[] = {0.5, 1.0}, ths[] = {-0.5, 0.5};
  const auto grid = surface_grid(g, SurfaceKind::Fh, ts, ths);
  const fs::path dir = scratch("obj");
  export_obj(grid, Projection::Poincare, dir / "a.obj");
  export_obj(grid, Projection::Poincare, dir / "b.obj");
  const std::string text = slurp(dir / "a.obj");
  EXPECT_EQ(count_prefix(text, "v "), 4u);
  EXPECT_EQ(count_prefix(text, "f "), 1u);
  EXPECT_NE(text.find("f 1 2 4 3"), std::string::npos);
  EXPECT_EQ(text, slurp(dir / "b.obj"));
  SurfaceGrid empty;
  export_obj(empty, Projection::Poincare, dir / "e.obj");
  EXPECT_EQ(count_prefix(slurp(dir / "e.obj"), "#"), 1u);
  EXPECT_EQ(count_prefix(slurp(dir / "e.obj"), "v"), 0u);
}

TEST(ObjExport, RunsAreNotJoined) {
  const auto g = hftest::geometry("1", "1", "2", "0");
  const double t1[] = {0.5, 1.0}, t2[] = {2.0, 2.5}, ths[] = {-0.5, 0.5};
  const SurfaceGrid runs[] = {surface_grid(g, SurfaceKind::Fh, t1, ths), surface_grid(g, SurfaceKind::Fh, t2, ths)};
  const std::string text = obj_text(runs, Projection::Poincare, "two runs");
  EXPECT_EQ(count_prefix(text, "v "), 8u);
  EXPECT_EQ(count_prefix(text, "f "), 2u);
  EXPECT_NE(text.find("f 5 6 8 7"), std::string::npos);
}

TEST(LociCsv, HeaderOrderingAndQuoting) {
  const fs::path dir = scratch("csv");
  export_loci_csv({}, dir / "empty.csv");
  EXPECT_EQ(slurp(dir / "empty.csv"), "surface,t,theta,lambda,sigma_F,type,nondegenerate\r\n");

  const auto g = hftest::geometry("1", "1", "2", "0", 0.0, 1.0, 3);
  auto recs = singular_locus_h(g);
  std::reverse(recs.begin(), recs.end());
  const std::string text = loci_csv_text(recs);
  EXPECT_NE(text.find("Fh,0,0,0,12,CuspidalEdge,true\r\n"), std::string::npos);
  EXPECT_LT(text.find("Fh,0,"), text.find("Fh,0.5,"));
  EXPECT_EQ(text, loci_csv_text(singular_locus_h(g)));
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Pipeline, HyperbolicHelixReport) {
  const CurveSpec spec = load_spec(fs::path(HYPERFRAME_SPECS_DIR) / "hyperbolic_helix.json");
  PipelineOptions opt;
  opt.out_dir = scratch("pipe_h");
  const RunReport r = run_pipeline(spec, opt);
  EXPECT_FALSE(r.numeric_failure);
  EXPECT_FALSE(r.checks_failed);
  const auto& j = r.json;
  EXPECT_EQ(j["surfaces"]["Fh"]["status"], "defined");
  EXPECT_EQ(j["surfaces"]["DualEh"]["status"], "defined");
  EXPECT_EQ(j["surfaces"]["Fd"]["status"], "skipped");
  EXPECT_EQ(j["surfaces"]["DualEd"]["status"], "skipped");
  EXPECT_EQ(j["correspondence"]["hyperbolic"]["status"], "pass");
  EXPECT_EQ(j["correspondence"]["de_sitter"]["status"], "skipped");
  EXPECT_EQ(j["duality"]["Fh_mu"]["status"], "pass");
  EXPECT_EQ(j["duality"]["DualEh_Eh"]["status"], "pass");
  EXPECT_TRUE(j["errors"].empty());
  EXPECT_FALSE(j.contains("timestamp"));
  for (const char* f : {"frames.csv", "Fh.obj", "loci.csv", "evolute_h.csv", "report.json"})
    EXPECT_TRUE(fs::exists(opt.out_dir / f)) << f;
}

TEST(Pipeline, DeSitterHelixReport) {
  const CurveSpec spec = load_spec(fs::path(HYPERFRAME_SPECS_DIR) / "de_sitter_helix.json");
  PipelineOptions opt;
  opt.out_dir = scratch("pipe_d");
  opt.products = {"report"};
  const RunReport r = run_pipeline(spec, opt);
  EXPECT_EQ(r.json["correspondence"]["de_sitter"]["status"], "pass");
  EXPECT_EQ(r.json["correspondence"]["hyperbolic"]["status"], "skipped");
  EXPECT_EQ(r.json["surfaces"]["Fd"]["status"], "defined");
  EXPECT_EQ(r.json["surfaces"]["Fh"]["status"], "skipped");
  EXPECT_EQ(r.written, std::vector<std::string>{"report.json"});
}

TEST(Pipeline, GeodesicSkipsEverythingWithReasons) {
  const CurveSpec spec = load_spec(fs::path(HYPERFRAME_SPECS_DIR) / "geodesic.json");
  PipelineOptions opt;
  opt.out_dir = scratch("pipe_g");
  const RunReport r = run_pipeline(spec, opt);
  for (const char* k : {"Fh", "Fd", "DualEh", "DualEd"}) {
    EXPECT_EQ(r.json["surfaces"][k]["status"], "skipped");
    EXPECT_FALSE(r.json["surfaces"][k]["reason"].get<std::string>().empty());
  }
  for (const char* k : {"Fh_mu", "Fd_mu", "DualEh_Eh", "DualEd_Ed"}) EXPECT_TRUE(r.json["duality"][k].contains("reason"));
  EXPECT_TRUE(r.json["correspondence"]["hyperbolic"].contains("reason"));
}

TEST(Pipeline, ByteDeterministic) {
  const CurveSpec spec = load_spec(fs::path(HYPERFRAME_SPECS_DIR) / "swallowtail_sweep.json");
  PipelineOptions a, b;
  a.out_dir = scratch("det_a");
  b.out_dir = scratch("det_b");
  const RunReport ra = run_pipeline(spec, a);
  run_pipeline(spec, b);
  for (const auto& f : ra.written) EXPECT_EQ(slurp(a.out_dir / f), slurp(b.out_dir / f)) << f;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  const std::string specs = HYPERFRAME_SPECS_DIR;
  EXPECT_EQ(run_cli("run --spec " + specs + "/hyperbolic_helix.json --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "report.json"));
  EXPECT_EQ(run_cli("classify --spec " + specs + "/de_sitter_helix.json --out " + (dir / "c").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "c" / "loci.csv"));
  EXPECT_FALSE(fs::exists(dir / "c" / "report.json"));

  std::ofstream(dir / "bad.json") << "{\"name\":\"x\"}";
  EXPECT_EQ(run_cli("run --spec " + (dir / "bad.json").string() + " --out " + dir.string()), 1);
  std::ofstream(dir / "broken.json") << "{";
  EXPECT_EQ(run_cli("run --spec " + (dir / "broken.json").string() + " --out " + dir.string()), 1);
  EXPECT_EQ(run_cli("run --spec " + specs + "/hyperbolic_helix.json --tol nope=1 --out " + dir.string()), 1);
  EXPECT_EQ(run_cli("frobnicate"), 1);

  // A frame tolerance below round-off makes the integrator fail.
  EXPECT_EQ(run_cli("integrate --spec " + specs + "/de_sitter_helix.json --tol tol_frame=1e-16 --out " +
                    (dir / "i").string()),
            2);
}
