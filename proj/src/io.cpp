#include "hyperframe/io.hpp"
#include "hyperframe/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace hyperframe {

using nlohmann::json;

const std::vector<std::string>& known_outputs() {
  static const std::vector<std::string> names = {"frames", "focal_meshes", "evolutes", "dual_meshes", "loci",
                                                 "report"};
  return names;
}

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
      throw ValidationError(where.empty() ? k : where + "." + k, "unknown key");
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

const json& require_object(const json& obj, const std::string& where, const char* key) {
  const json& v = require(obj, where, key);
  if (!v.is_object()) throw ValidationError(where.empty() ? key : where + "." + key, "must be an object");
  return v;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ValidationError(field, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(field, "must be finite");
  return x;
}

std::size_t count(const json& v, const std::string& field, std::int64_t lo) {
  if (!v.is_number_integer()) throw ValidationError(field, "must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo) throw ValidationError(field, "must be >= " + std::to_string(lo));
  if (x > 10000000) throw ValidationError(field, "too large");
  return static_cast<std::size_t>(x);
}

}  // namespace

CurveSpec parse_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Syntax, std::string("spec parse error: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("<root>", "must be an object");
  only_keys(j, "", {"name", "curvature", "domain", "theta", "initial_frame", "tolerances", "outputs"});

  CurveSpec s;
  const json& name = require(j, "", "name");
  if (!name.is_string() || name.get<std::string>().empty()) throw ValidationError("name", "must be a non-empty string");
  s.name = name.get<std::string>();

  const json& curv = require_object(j, "", "curvature");
  only_keys(curv, "curvature", {"m", "n", "a", "b"});
  const char* names[4] = {"m", "n", "a", "b"};
  for (int i = 0; i < 4; ++i) {
    const std::string field = std::string("curvature.") + names[i];
    const json& v = require(curv, "curvature", names[i]);
    if (!v.is_string()) throw ValidationError(field, "must be a string");
    s.curvature[static_cast<std::size_t>(i)] = v.get<std::string>();
    try {
      parse_expr(s.curvature[static_cast<std::size_t>(i)]);
    } catch (const ParseError& e) {
      throw ValidationError(field, e.what());
    }
  }

  const json& dom = require_object(j, "", "domain");
  only_keys(dom, "domain", {"t0", "t1", "samples"});
  s.domain.t0 = number(require(dom, "domain", "t0"), "domain.t0");
  s.domain.t1 = number(require(dom, "domain", "t1"), "domain.t1");
  s.domain.samples = count(require(dom, "domain", "samples"), "domain.samples", 2);
  if (!(s.domain.t1 > s.domain.t0)) throw ValidationError("domain.t1", "must exceed domain.t0");

  const json& th = require_object(j, "", "theta");
  only_keys(th, "theta", {"min", "max", "samples"});
  s.theta.min = number(require(th, "theta", "min"), "theta.min");
  s.theta.max = number(require(th, "theta", "max"), "theta.max");
  s.theta.samples = count(require(th, "theta", "samples"), "theta.samples", 2);
  if (!(s.theta.max > s.theta.min)) throw ValidationError("theta.max", "must exceed theta.min");
  s.tolerances.fiber_min = s.theta.min;
  s.tolerances.fiber_max = s.theta.max;
  s.tolerances.fiber_samples = s.theta.samples;

  if (auto it = j.find("initial_frame"); it != j.end()) {
    if (!it->is_array() || it->size() != 16) throw ValidationError("initial_frame", "must be 16 numbers");
    std::array<double, 16> v{};
    for (std::size_t i = 0; i < 16; ++i) v[i] = number((*it)[i], "initial_frame[" + std::to_string(i) + "]");
    FrameSample f;
    f.t = s.domain.t0;
    MinkVec* rows[4] = {&f.gamma, &f.v1, &f.v2, &f.mu};
    for (std::size_t r = 0; r < 4; ++r) *rows[r] = {v[4 * r], v[4 * r + 1], v[4 * r + 2], v[4 * r + 3]};
    if (!(frame_residual(f) <= 1e-10)) throw ValidationError("initial_frame", "not a pseudo-orthonormal frame");
    if (!(f.gamma[0] > 0.0)) throw ValidationError("initial_frame", "gamma must lie on the upper sheet");
    s.initial_frame = f;
  }

  if (auto it = j.find("tolerances"); it != j.end()) {
    if (!it->is_object()) throw ValidationError("tolerances", "must be an object");
    for (const auto& [k, v] : it->items()) s.tolerances.set(k, number(v, "tolerances." + k));
  }
  if (!(s.tolerances.fiber_max > s.tolerances.fiber_min))
    throw ValidationError("tolerances.fiber_max", "must exceed fiber_min");

  if (auto it = j.find("outputs"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("outputs", "must be an array of strings");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& v = (*it)[i];
      const std::string field = "outputs[" + std::to_string(i) + "]";
      if (!v.is_string()) throw ValidationError(field, "must be a string");
      const auto& known = known_outputs();
      if (std::find(known.begin(), known.end(), v.get<std::string>()) == known.end())
        throw ValidationError(field, "unknown product '" + v.get<std::string>() + "'");
      s.outputs.push_back(v.get<std::string>());
    }
  }
  s.canonical = j.dump();
  return s;
}

CurveSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open spec " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string spec_digest(const CurveSpec& spec) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : spec.canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + out;
}

std::array<double, 3> project_poincare(const MinkVec& x) {
  if (!(std::abs(membership_residual(x, Quadric::H3)) <= 1e-6) || !(x[0] > 0.0))
    throw Error(ErrorKind::InvalidInput, "point " + to_string(x) + " is not on H^3");
  const double s = 1.0 + x[0];
  return {x[1] / s, x[2] / s, x[3] / s};
}

std::array<double, 3> project_hollow_ball(const MinkVec& x) {
  if (!(std::abs(membership_residual(x, Quadric::S31)) <= 1e-6))
    throw Error(ErrorKind::InvalidInput, "point " + to_string(x) + " is not on S^3_1");
  const double s = 1.0 + std::sqrt(1.0 + x[0] * x[0]);
  return {x[1] / s, x[2] / s, x[3] / s};
}

Projection projection_for(SurfaceKind kind) {
  return kind == SurfaceKind::Fh ? Projection::Poincare : Projection::HollowBall;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string obj_text(std::span<const SurfaceGrid> runs, Projection projection, const std::string& title) {
  std::string out = "# " + title + "\n";
  std::string faces;
  std::size_t base = 1;
  for (const SurfaceGrid& g : runs) {
    for (const MinkVec& x : g.points) {
      const auto y = projection == Projection::Poincare ? project_poincare(x) : project_hollow_ball(x);
      out += "v " + format_number(y[0]) + ' ' + format_number(y[1]) + ' ' + format_number(y[2]) + '\n';
    }
    for (std::size_t i = 0; i + 1 < g.rows; ++i) {
      for (std::size_t j = 0; j + 1 < g.cols; ++j) {
        const std::size_t a = base + i * g.cols + j;
        const std::size_t d = base + (i + 1) * g.cols + j;
        faces += "f " + std::to_string(a) + ' ' + std::to_string(a + 1) + ' ' + std::to_string(d + 1) + ' ' +
                 std::to_string(d) + '\n';
      }
    }
    base += g.points.size();
  }
  return out + faces;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

void export_obj(const SurfaceGrid& grid, Projection projection, const std::filesystem::path& path) {
  export_obj(std::span<const SurfaceGrid>(&grid, 1), projection, path,
             std::string("hyperframe ") + to_string(grid.kind) + " mesh");
}

void export_obj(std::span<const SurfaceGrid> runs, Projection projection, const std::filesystem::path& path,
                const std::string& title) {
  write_text(path, obj_text(runs, projection, title));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string loci_csv_text(std::vector<SingularPointRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const SingularPointRecord& a, const SingularPointRecord& b) {
    const std::string sa = to_string(a.surface), sb = to_string(b.surface);
    if (sa != sb) return sa < sb;
    if (a.t != b.t) return a.t < b.t;
    return a.theta < b.theta;
  });
  std::string out = "surface,t,theta,lambda,sigma_F,type,nondegenerate\r\n";
  for (const auto& r : records) {
    out += csv_field(to_string(r.surface)) + ',' + format_number(r.t) + ',' + format_number(r.theta) + ',' +
           format_number(r.lambda) + ',' + format_number(r.sigmaF) + ',' + csv_field(to_string(r.type)) + ',' +
           (r.nondegenerate ? "true" : "false") + "\r\n";
  }
  return out;
}

void export_loci_csv(const std::vector<SingularPointRecord>& records, const std::filesystem::path& path) {
  write_text(path, loci_csv_text(records));
}

}  // namespace hyperframe
