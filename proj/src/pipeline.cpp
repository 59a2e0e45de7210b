#include "hyperframe/pipeline.hpp"
#include "hyperframe/duality.hpp"
#include "hyperframe/error.hpp"
#include "hyperframe/evolute.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>

namespace hyperframe {

using nlohmann::json;

namespace {

constexpr SurfaceKind kSurfaces[] = {SurfaceKind::Fh, SurfaceKind::Fd, SurfaceKind::DualEh, SurfaceKind::DualEd};

bool circle_fiber(SurfaceKind k) { return k == SurfaceKind::Fd || k == SurfaceKind::DualEh; }

std::vector<double> fiber_grid(const CurveSpec& spec, SurfaceKind kind) {
  std::vector<double> th(spec.theta.samples);
  const double lo = circle_fiber(kind) ? 0.0 : spec.theta.min;
  const double hi = circle_fiber(kind) ? 2.0 * M_PI : spec.theta.max;
  for (std::size_t j = 0; j < th.size(); ++j)
    th[j] = j + 1 == th.size() ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(th.size() - 1);
  return th;
}

// Maximal runs of consecutive indices with flag set.
std::vector<std::pair<std::size_t, std::size_t>> runs(const std::vector<bool>& flags) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < flags.size();) {
    if (!flags[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < flags.size() && flags[j + 1]) ++j;
    out.emplace_back(i, j);
    i = j + 1;
  }
  return out;
}

json interval_list(const std::vector<double>& ts, const std::vector<bool>& flags) {
  json out = json::array();
  for (auto [a, b] : runs(flags)) out.push_back({ts[a], ts[b]});
  return out;
}

json diagnostics_json(const Diagnostics& d) {
  json out = json::object();
  for (const auto& [k, v] : d) out[k] = v;
  return out;
}

std::string frames_csv(const FramedCurveModel& m) {
  std::string out = "t";
  for (const char* v : {"gamma", "v1", "v2", "mu"})
    for (int i = 0; i < 4; ++i) out += std::string(",") + v + "_" + std::to_string(i);
  out += "\r\n";
  for (const FrameSample& s : m.samples()) {
    out += format_number(s.t);
    for (const MinkVec* v : {&s.gamma, &s.v1, &s.v2, &s.mu})
      for (int i = 0; i < 4; ++i) out += ',' + format_number((*v)[static_cast<std::size_t>(i)]);
    out += "\r\n";
  }
  return out;
}

struct Context {
  const CurveSpec& spec;
  const CurveGeometry& geom;
  std::vector<double> ts;
  json errors = json::array();
  bool failed = false;

  template <class F>
  void guarded(const char* stage, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      errors.push_back({{"stage", stage}, {"kind", to_string(e.kind())}, {"message", e.what()}});
      failed = true;
    }
  }
};

}  // namespace

RunReport run_pipeline(const CurveSpec& spec, const PipelineOptions& options) {
  std::set<std::string> products = options.products;
  if (products.empty()) products.insert(spec.outputs.begin(), spec.outputs.end());
  if (products.empty()) products.insert(known_outputs().begin(), known_outputs().end());
  auto wants = [&](const char* p) { return products.count(p) > 0; };

  RunReport rep;
  json& r = rep.json;
  r["tool"] = "hyperframe";
  r["version"] = kToolVersion;
  r["spec_name"] = spec.name;
  r["spec_digest"] = spec_digest(spec);
  if (options.timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    r["timestamp"] = buf;
  }
  std::filesystem::create_directories(options.out_dir);
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text(options.out_dir / name, text);
    rep.written.push_back(name);
  };

  const Tolerances& tol = spec.tolerances;
  std::optional<FramedCurveModel> model;
  try {
    const CurvatureQuartet q =
        parse_quartet(spec.curvature[0], spec.curvature[1], spec.curvature[2], spec.curvature[3]);
    model = integrate_frame(q, spec.domain, spec.initial_frame.value_or(standard_frame(spec.domain.t0)), tol.step,
                            tol.tol_frame, tol.tau_zero);
  } catch (const Error& e) {
    r["errors"] = json::array({{{"stage", "integrate"}, {"kind", to_string(e.kind())}, {"message", e.what()}}});
    rep.numeric_failure = true;
    if (wants("report")) emit("report.json", r.dump(2) + "\n");
    return rep;
  }

  double pairing = 0.0, wedge = 0.0;
  for (const auto& s : model->samples()) {
    pairing = std::max(pairing, pairing_residual(s));
    wedge = std::max(wedge, wedge_residual(s));
  }
  const IntegrationStats& st = model->stats();
  r["integration"] = {{"steps", st.steps},          {"corrections", st.corrections},
                      {"max_drift", st.max_drift},  {"worst_t", st.worst_t},
                      {"max_pairing_residual", pairing}, {"max_wedge_residual", wedge},
                      {"orientation", model->orientation()}};
  if (wants("frames")) emit("frames.csv", frames_csv(*model));

  const CurveGeometry geom(*model, tol);
  Context cx{spec, geom, {}, json::array(), false};
  for (const auto& s : model->samples()) cx.ts.push_back(s.t);
  const std::vector<double>& ts = cx.ts;

  // sigma_F sign intervals.
  {
    json intervals = json::array();
    std::string prev;
    for (double t : ts) {
      std::string sign;
      try {
        const double s = geom.frenet(t).data.sigmaF;
        sign = s > tol.tau_sing ? "positive" : (s < -tol.tau_sing ? "negative" : "zero");
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::FrameDegenerate) throw;
        sign = "frame_degenerate";
      }
      if (sign != prev) intervals.push_back({{"sign", sign}, {"t0", t}, {"t1", t}});
      else intervals.back()["t1"] = t;
      prev = sign;
    }
    r["sigma_F"] = intervals;
  }

  // Definedness per surface.
  std::map<SurfaceKind, std::vector<bool>> defined;
  for (SurfaceKind k : kSurfaces) {
    std::vector<bool> flags(ts.size());
    std::string reason;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string why = surface_undefined_reason(geom, k, ts[i]);
      flags[i] = why.empty();
      if (!flags[i] && reason.empty()) reason = why;
    }
    defined[k] = flags;
    const auto n = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
    json s = {{"defined_intervals", interval_list(ts, flags)}};
    s["status"] = n == 0 ? "skipped" : (n == ts.size() ? "defined" : "partial");
    if (n < ts.size()) s["reason"] = reason;
    r["surfaces"][to_string(k)] = s;
  }

  // Meshes.
  auto mesh = [&](SurfaceKind k) {
    std::vector<SurfaceGrid> grids;
    cx.guarded("mesh", [&] {
      const auto th = fiber_grid(spec, k);
      for (auto [a, b] : runs(defined[k])) {
        const std::span<const double> span(ts.data() + a, b - a + 1);
        grids.push_back(surface_grid(geom, k, span, th));
      }
    });
    emit(std::string(to_string(k)) + ".obj",
         obj_text(grids, projection_for(k), std::string("hyperframe ") + to_string(k) + " mesh"));
  };
  if (wants("focal_meshes")) {
    mesh(SurfaceKind::Fh);
    mesh(SurfaceKind::Fd);
  }
  if (wants("dual_meshes")) {
    mesh(SurfaceKind::DualEh);
    mesh(SurfaceKind::DualEd);
  }

  // Loci.
  std::vector<SingularPointRecord> records;
  for (SurfaceKind k : {SurfaceKind::Fh, SurfaceKind::Fd}) {
    if (std::none_of(defined[k].begin(), defined[k].end(), [](bool b) { return b; })) continue;
    cx.guarded("locus", [&] {
      auto loc = k == SurfaceKind::Fh ? singular_locus_h(geom) : singular_locus_d(geom);
      records.insert(records.end(), loc.begin(), loc.end());
    });
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (defined[SurfaceKind::DualEh][i]) {
      cx.guarded("dual", [&] {
        DualSurfaceRecord d = classify_dual_h(geom, ts[i]);
        records.push_back(d);
        d.theta = M_PI;
        d.branch = 1;
        d.lambda = lambda_dual_h(geom, ts[i], M_PI);
        records.push_back(d);
      });
    }
    if (defined[SurfaceKind::DualEd][i]) cx.guarded("dual", [&] { records.push_back(classify_dual_d(geom, ts[i])); });
  }
  {
    json loci = json::object();
    for (SurfaceKind k : kSurfaces) {
      json types = json::object();
      std::size_t n = 0, nondeg = 0, whole = 0;
      for (const auto& rec : records) {
        if (rec.surface != k) continue;
        ++n;
        nondeg += rec.nondegenerate ? 1 : 0;
        whole += rec.whole_fiber ? 1 : 0;
        types[to_string(rec.type)] = types.value(to_string(rec.type), 0) + 1;
      }
      json entry = {{"records", n}, {"nondegenerate", nondeg}, {"whole_fiber", whole}, {"types", types}};
      json special = json::array();
      for (const auto& rec : records) {
        if (rec.surface != k || rec.type == SingularityType::CuspidalEdge) continue;
        if (special.size() >= 50) break;
        special.push_back({{"t", rec.t},
                           {"theta", rec.theta},
                           {"type", to_string(rec.type)},
                           {"diagnostics", diagnostics_json(rec.diagnostics)}});
      }
      entry["non_cuspidal_edge"] = special;
      loci[to_string(k)] = entry;
    }
    r["loci"] = loci;
  }
  if (wants("loci")) emit("loci.csv", loci_csv_text(records));

  // Evolutes.
  for (bool hyp : {true, false}) {
    const SurfaceKind k = hyp ? SurfaceKind::DualEh : SurfaceKind::DualEd;
    std::string csv = "t,x0,x1,x2,x3,epsilon,epsilon_prime,type\r\n";
    json summary = {{"points", 0}};
    json types = json::object();
    json cusps = json::array();
    std::size_t n = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!defined[k][i]) continue;
      cx.guarded("evolute", [&] {
        const EvoluteSample e = hyp ? evolute_h(geom, ts[i]) : evolute_d(geom, ts[i]);
        ++n;
        types[to_string(e.type)] = types.value(to_string(e.type), 0) + 1;
        if (e.type != CurvePointType::RegularPoint) cusps.push_back({{"t", e.t}, {"type", to_string(e.type)}});
        csv += format_number(e.t);
        for (std::size_t c = 0; c < 4; ++c) csv += ',' + format_number(e.point[c]);
        csv += ',' + format_number(e.epsilon) + ',' + format_number(e.epsilon_prime) + ',' + to_string(e.type) + "\r\n";
      });
    }
    summary = {{"points", n}, {"types", types}, {"non_regular", cusps}};
    summary["status"] = n == 0 ? "skipped" : "defined";
    r["evolutes"][hyp ? "hyperbolic" : "de_sitter"] = summary;
    if (wants("evolutes")) emit(hyp ? "evolute_h.csv" : "evolute_d.csv", csv);
  }

  // Correspondence.
  cx.guarded("correspondence", [&] {
    const CorrespondenceReport cr = correspondence_check(geom);
    for (const CorrespondenceLeg* leg : {&cr.hyperbolic, &cr.de_sitter}) {
      json j = {{"status", to_string(leg->status)}};
      if (leg->status == LegStatus::Skipped) {
        j["reason"] = leg->reason;
      } else {
        std::size_t antipodal = 0;
        json failures = json::array();
        json counts = json::object();
        for (const auto& c : leg->entries) {
          antipodal += c.antipodal ? 1 : 0;
          for (const auto& [name, ok] : c.agreements) {
            counts[name] = counts.value(name, 0) + (ok ? 1 : 0);
            if (!ok && failures.size() < 50) failures.push_back({{"t", c.t}, {"check", name}});
          }
        }
        j["points"] = leg->entries.size();
        j["max_distance"] = leg->max_distance;
        j["antipodal_points"] = antipodal;
        j["agreements_true"] = counts;
        j["failures"] = failures;
        if (leg->status == LegStatus::Fail) rep.checks_failed = true;
      }
      r["correspondence"][leg->name] = j;
    }
  });

  // Duality residuals on a coarse deterministic subgrid.
  {
    const std::size_t stride = std::max<std::size_t>(1, ts.size() / 25);
    for (DualPairKind pk : {DualPairKind::FocalH, DualPairKind::FocalD, DualPairKind::EvoluteH, DualPairKind::EvoluteD}) {
      const SurfaceKind k = pk == DualPairKind::FocalH   ? SurfaceKind::Fh
                            : pk == DualPairKind::FocalD ? SurfaceKind::Fd
                            : pk == DualPairKind::EvoluteH ? SurfaceKind::DualEh
                                                           : SurfaceKind::DualEd;
      const auto th = fiber_grid(spec, k);
      std::vector<DualPairSample> samples;
      cx.guarded("duality", [&] {
        for (std::size_t i = 0; i < ts.size(); i += stride) {
          if (!defined[k][i]) continue;
          for (std::size_t j = 0; j < th.size(); j += std::max<std::size_t>(1, th.size() / 5))
            samples.push_back(dual_pair(geom, pk, ts[i], th[j]));
        }
      });
      json j;
      if (samples.empty()) {
        j = {{"status", "skipped"}, {"reason", std::string(to_string(k)) + " undefined on the grid"}};
      } else {
        double iso = 0.0, mem = 0.0;
        for (const auto& s : samples) {
          iso = std::max(iso, max_isotropy_residual(s));
          mem = std::max(mem, leg_membership_residual(s));
        }
        const FrontVerdict v = front_verdict(samples, tol.tau_dual, tol.tau_rank);
        const bool ok = iso <= tol.tau_dual && mem <= 1e-8;
        if (!ok) rep.checks_failed = true;
        j = {{"status", ok ? "pass" : "fail"},
             {"samples", samples.size()},
             {"max_isotropy_residual", iso},
             {"max_membership_residual", mem},
             {"verdict", to_string(v)}};
      }
      r["duality"][to_string(pk)] = j;
    }
  }

  r["errors"] = cx.errors;
  rep.numeric_failure = cx.failed;
  if (wants("report")) {
    json files = json::array();
    for (const auto& w : rep.written) files.push_back(w);
    files.push_back("report.json");
    r["outputs"] = files;
    emit("report.json", r.dump(2) + "\n");
  }
  return rep;
}

}  // namespace hyperframe
