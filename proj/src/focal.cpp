#include "hyperframe/focal.hpp"
#include "hyperframe/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace hyperframe {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

const FrameField& field_of(const CurveGeometry& g, SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Fh: return g.field(FieldKind::Fh);
    case SurfaceKind::Fd: return g.field(FieldKind::Fd);
    case SurfaceKind::DualEh: return g.field(FieldKind::DualEh);
    case SurfaceKind::DualEd: return g.field(FieldKind::DualEd);
  }
  return g.field(FieldKind::Fh);
}

// Empty when kind is defined at d.
std::string undefined_reason(const CurveGeometry& g, SurfaceKind kind, const FrenetData& d) {
  const double tau = g.tolerances().tau_sing;
  switch (kind) {
    case SurfaceKind::Fh:
      return g.hyperbolic_side(d) ? "" : "A^2 - M^2 <= tau_zero";
    case SurfaceKind::Fd:
      return g.de_sitter_side(d) ? "" : "M^2 - A^2 <= tau_zero";
    case SurfaceKind::DualEh:
      if (!g.hyperbolic_side(d)) return "A^2 - M^2 <= tau_zero";
      return d.sigmaF > tau ? "" : "sigma_F <= tau_sing";
    case SurfaceKind::DualEd:
      if (!g.de_sitter_side(d)) return "M^2 - A^2 <= tau_zero";
      return d.sigmaF < -tau ? "" : "sigma_F >= -tau_sing";
  }
  return "";
}

FrenetFrame checked_frame(const CurveGeometry& g, SurfaceKind kind, double t) {
  FrenetFrame fr;
  try {
    fr = g.frenet(t);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FrameDegenerate) throw;
    throw Error(ErrorKind::SurfaceUndefined, std::string(to_string(kind)) + " undefined: " + e.what());
  }
  const std::string why = undefined_reason(g, kind, fr.data);
  if (!why.empty())
    throw Error(ErrorKind::SurfaceUndefined,
                std::string(to_string(kind)) + " undefined at t=" + std::to_string(t) + ": " + why);
  return fr;
}

double lambda_from(const CurveGeometry& g, SurfaceKind kind, const FrenetData& d, double th) {
  const double o = g.model().orientation();
  switch (kind) {
    case SurfaceKind::Fh:
      return o * (std::cosh(th) * d.P - std::sinh(th) * d.Dh) / (d.A * d.A - d.M * d.M);
    case SurfaceKind::Fd:
      return o * (std::cos(th) * d.P - std::sin(th) * d.Dd) / (d.M * d.M - d.A * d.A);
    case SurfaceKind::DualEh:
      return o * std::sin(th) * std::sqrt(d.sigmaF) / (d.A * d.A - d.M * d.M);
    case SurfaceKind::DualEd:
      return -o * std::sinh(th) * std::sqrt(-d.sigmaF) / (d.M * d.M - d.A * d.A);
  }
  return 0.0;
}

double wrap_angle(double th) {
  th = std::fmod(th, kTwoPi);
  if (th < 0.0) th += kTwoPi;
  if (th >= kTwoPi) th = 0.0;
  return th;
}

}  // namespace

std::string surface_undefined_reason(const CurveGeometry& g, SurfaceKind kind, double t) {
  try {
    return undefined_reason(g, kind, g.frenet(t).data);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FrameDegenerate) throw;
    return "a^2 + b^2 <= tau_zero";
  }
}

SurfaceJet surface_jet(const CurveGeometry& g, SurfaceKind kind, double t, double theta) {
  return field_of(g, kind).surface(checked_frame(g, kind, t), theta);
}

MinkVec surface_partner(const CurveGeometry& g, SurfaceKind kind, double t) {
  const FrenetFrame fr = checked_frame(g, kind, t);
  if (kind == SurfaceKind::Fh || kind == SurfaceKind::Fd) return fr.mu;
  const FieldKind e = kind == SurfaceKind::DualEh ? FieldKind::Eh : FieldKind::Ed;
  return g.field(e).curve(fr)[0];
}

double lambda_closed(const CurveGeometry& g, SurfaceKind kind, double t, double theta) {
  return lambda_from(g, kind, checked_frame(g, kind, t).data, theta);
}

double lambda_determinant(const CurveGeometry& g, SurfaceKind kind, double t, double theta) {
  const SurfaceJet j = surface_jet(g, kind, t, theta);
  return det4(j.point, j.dt, j.dtheta, surface_partner(g, kind, t));
}

MinkVec focal_h_point(const CurveGeometry& g, double t, double theta) {
  return surface_jet(g, SurfaceKind::Fh, t, theta).point;
}

MinkVec focal_d_point(const CurveGeometry& g, double t, double theta) {
  return surface_jet(g, SurfaceKind::Fd, t, theta).point;
}

double lambda_h(const CurveGeometry& g, double t, double theta) {
  return lambda_closed(g, SurfaceKind::Fh, t, theta);
}

double lambda_d(const CurveGeometry& g, double t, double theta) {
  return lambda_closed(g, SurfaceKind::Fd, t, theta);
}

namespace {

struct LocusAtT {
  bool defined = false;
  bool whole = false;
  std::vector<SingularPointRecord> records;
};

SingularPointRecord base_record(const CurveGeometry& g, SurfaceKind kind, const FrenetData& d, double th) {
  SingularPointRecord r;
  r.surface = kind;
  r.t = d.t;
  r.theta = th;
  r.sigmaF = d.sigmaF;
  r.lambda = lambda_from(g, kind, d, th);
  return r;
}

LocusAtT locus_at(const CurveGeometry& g, SurfaceKind kind, double t) {
  LocusAtT out;
  FrenetData d;
  try {
    d = g.frenet(t).data;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::FrameDegenerate) return out;
    throw;
  }
  const bool hyp = kind == SurfaceKind::Fh;
  if (!(hyp ? g.hyperbolic_side(d) : g.de_sitter_side(d))) return out;
  out.defined = true;
  const Tolerances& tol = g.tolerances();
  const double D = hyp ? d.Dh : d.Dd;
  const double tau = g.threshold({d.M, d.A, d.dM, d.dA});
  if (std::abs(d.P) <= tau && std::abs(D) <= tau) {
    out.whole = true;
    const std::size_t n = hyp ? tol.fiber_samples : tol.circle_samples;
    for (std::size_t j = 0; j < n; ++j) {
      double th;
      if (hyp) {
        th = n == 1 ? 0.5 * (tol.fiber_min + tol.fiber_max)
                    : tol.fiber_min + (tol.fiber_max - tol.fiber_min) * static_cast<double>(j) /
                                          static_cast<double>(n - 1);
      } else {
        th = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
      }
      SingularPointRecord r = base_record(g, kind, d, th);
      r.whole_fiber = true;
      out.records.push_back(std::move(r));
    }
    return out;
  }
  if (hyp) {
    if (!(d.sigmaF > tol.tau_sing) || std::abs(d.P) >= std::abs(D)) return out;
    out.records.push_back(base_record(g, kind, d, std::atanh(d.P / D)));
  } else {
    const double th = wrap_angle(std::atan2(d.P, D));
    out.records.push_back(base_record(g, kind, d, th));
    SingularPointRecord r = base_record(g, kind, d, wrap_angle(th + M_PI));
    r.branch = 1;
    out.records.push_back(std::move(r));
  }
  return out;
}

double branch_jump(SurfaceKind kind, double a, double b) {
  const double d = std::abs(a - b);
  return kind == SurfaceKind::Fh ? d : std::min(d, kTwoPi - d);
}

std::vector<SingularPointRecord> locus(const CurveGeometry& g, SurfaceKind kind, std::span<const double> ts) {
  std::vector<SingularPointRecord> out;
  bool any_defined = false;
  std::optional<std::pair<double, double>> prev;  // (t, branch-0 theta)

  std::function<void(double, double, double, double, int)> refine =
      [&](double ta, double tha, double tb, double thb, int depth) {
        if (depth >= g.tolerances().max_refine || branch_jump(kind, tha, thb) <= M_PI / 2) return;
        const double tm = 0.5 * (ta + tb);
        LocusAtT mid = locus_at(g, kind, tm);
        if (mid.records.empty() || mid.whole) return;
        const double thm = mid.records.front().theta;
        for (auto& r : mid.records) out.push_back(std::move(r));
        refine(ta, tha, tm, thm, depth + 1);
        refine(tm, thm, tb, thb, depth + 1);
      };

  for (double t : ts) {
    LocusAtT here = locus_at(g, kind, t);
    any_defined = any_defined || here.defined;
    if (here.records.empty() || here.whole) {
      prev.reset();
    } else {
      const double th = here.records.front().theta;
      if (prev) refine(prev->first, prev->second, t, th, 0);
      prev = std::make_pair(t, th);
    }
    for (auto& r : here.records) out.push_back(std::move(r));
  }
  if (!any_defined && !ts.empty())
    throw Error(ErrorKind::SurfaceUndefined,
                std::string(to_string(kind)) + " is undefined on the whole grid");
  std::sort(out.begin(), out.end(), [](const SingularPointRecord& a, const SingularPointRecord& b) {
    return a.t != b.t ? a.t < b.t : a.theta < b.theta;
  });
  for (auto& r : out) {
    if (kind == SurfaceKind::Fh) classify_h(g, r);
    else classify_d(g, r);
  }
  return out;
}

std::vector<double> model_grid(const CurveGeometry& g) {
  std::vector<double> ts;
  for (const auto& s : g.model().samples()) ts.push_back(s.t);
  return ts;
}

// Shared classification for both focal surfaces; hyp selects the hyperbolic formulas.
SingularityType classify_focal(const CurveGeometry& g, SingularPointRecord& r, bool hyp) {
  const FrenetData d = g.frenet(r.t).data;
  const double o = g.model().orientation();
  const double th = r.theta;
  const double c = hyp ? std::cosh(th) : std::cos(th);
  const double s = hyp ? std::sinh(th) : std::sin(th);
  const double D = hyp ? d.Dh : d.Dd;
  const double dD = hyp ? d.dDh : d.dDd;
  const double ddD = hyp ? d.ddDh : d.ddDd;
  const double root = hyp ? d.sh : d.sd;
  const double R = hyp ? d.A * d.A - d.M * d.M : d.M * d.M - d.A * d.A;
  const double dR = (hyp ? 2.0 : -2.0) * (d.A * d.dA - d.M * d.dM);

  Diagnostics& diag = r.diagnostics;
  diag.clear();
  r.lambda = lambda_from(g, r.surface, d, th);
  const double num = c * d.P - s * D;
  const double lt = o * ((c * d.dP - s * dD) / R - num * dR / (R * R));
  const double lth = hyp ? o * (s * d.P - c * D) / R : o * (-s * d.P - c * D) / R;
  const double tau_l = g.threshold({(std::abs(c) + std::abs(s)) *
                                    (std::abs(d.P) + std::abs(D) + std::abs(d.dP) + std::abs(dD)) / R});
  r.nondegenerate = std::max(std::abs(lt), std::abs(lth)) > tau_l;
  diag["lambda"] = r.lambda;
  diag["lambda_t"] = lt;
  diag["lambda_theta"] = lth;
  diag["tau_lambda"] = tau_l;
  diag["P"] = d.P;
  diag["N"] = d.N;
  diag["D"] = D;
  diag["sigma_F"] = d.sigmaF;

  const double tau_pn = g.threshold({d.M, d.A, d.dM, d.dA});
  diag["tau_PN"] = tau_pn;
  const bool branch_b = std::abs(d.P) <= tau_pn && std::abs(d.N) <= tau_pn;
  diag["branch_b"] = branch_b ? 1.0 : 0.0;

  if (!branch_b) {
    EpsilonValues e;
    try {
      e = hyp ? g.epsilon_h(d) : g.epsilon_d(d);
    } catch (const Error&) {
      r.type = SingularityType::DegenerateUnclassified;
      return r.type;
    }
    const double tau_e = g.threshold({e.scale});
    diag["epsilon"] = e.eps;
    diag["epsilon_prime"] = e.deps;
    diag["tau_epsilon"] = tau_e;
    if (std::abs(e.eps) > tau_e) r.type = SingularityType::CuspidalEdge;
    else if (std::abs(e.deps) > tau_e) r.type = SingularityType::Swallowtail;
    else r.type = SingularityType::DegenerateUnclassified;
    return r.type;
  }

  const double c1 = c * d.dP - s * dD;
  const double c2 = hyp ? s * d.dP - c * dD : s * d.dP + c * dD;
  const double c3 = hyp ? (c * d.ddP - s * ddD) * root + 2.0 * d.M * d.N * (s * d.dP - c * dD)
                        : (c * d.ddP - s * ddD) * root - 2.0 * d.M * d.N * (s * d.dP + c * dD);
  const double tau_c = g.threshold({(std::abs(c) + std::abs(s)) *
                                    (std::abs(d.dP) + std::abs(dD) + std::abs(d.ddP) + std::abs(ddD)) *
                                    std::max(1.0, root)});
  diag["c1"] = c1;
  diag["c2"] = c2;
  diag["c3"] = c3;
  diag["tau_c"] = tau_c;
  if (std::abs(c1) > tau_c) r.type = SingularityType::CuspidalEdge;
  else if (std::abs(c2) > tau_c && std::abs(c3) > tau_c) r.type = SingularityType::CuspidalBeaks;
  else r.type = SingularityType::DegenerateUnclassified;
  return r.type;
}

}  // namespace

std::vector<SingularPointRecord> singular_locus_h(const CurveGeometry& g, std::span<const double> ts) {
  return locus(g, SurfaceKind::Fh, ts);
}

std::vector<SingularPointRecord> singular_locus_d(const CurveGeometry& g, std::span<const double> ts) {
  return locus(g, SurfaceKind::Fd, ts);
}

std::vector<SingularPointRecord> singular_locus_h(const CurveGeometry& g) {
  const auto ts = model_grid(g);
  return singular_locus_h(g, ts);
}

std::vector<SingularPointRecord> singular_locus_d(const CurveGeometry& g) {
  const auto ts = model_grid(g);
  return singular_locus_d(g, ts);
}

SingularityType classify_h(const CurveGeometry& g, SingularPointRecord& record) {
  record.surface = SurfaceKind::Fh;
  return classify_focal(g, record, true);
}

SingularityType classify_d(const CurveGeometry& g, SingularPointRecord& record) {
  record.surface = SurfaceKind::Fd;
  return classify_focal(g, record, false);
}

SurfaceGrid surface_grid(const CurveGeometry& g, SurfaceKind kind, std::span<const double> ts,
                         std::span<const double> thetas) {
  SurfaceGrid grid;
  grid.kind = kind;
  if (ts.empty() || thetas.empty()) return grid;
  grid.rows = ts.size();
  grid.cols = thetas.size();
  grid.points.reserve(grid.rows * grid.cols);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    FrenetFrame fr;
    try {
      fr = checked_frame(g, kind, ts[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), "grid row " + std::to_string(i) + ": " + e.what());
    }
    for (double th : thetas) grid.points.push_back(field_of(g, kind).surface(fr, th).point);
  }
  return grid;
}

}  // namespace hyperframe
