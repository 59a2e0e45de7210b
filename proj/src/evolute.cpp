#include "hyperframe/evolute.hpp"
#include "hyperframe/error.hpp"
#include "hyperframe/focal.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace hyperframe {

const char* to_string(CurvePointType c) {
  switch (c) {
    case CurvePointType::RegularPoint: return "RegularPoint";
    case CurvePointType::Cusp234: return "Cusp234";
    case CurvePointType::DegenerateUnclassified: return "DegenerateUnclassified";
  }
  return "?";
}

const char* to_string(LegStatus s) {
  switch (s) {
    case LegStatus::Pass: return "pass";
    case LegStatus::Fail: return "fail";
    case LegStatus::Skipped: return "skipped";
  }
  return "?";
}

namespace {

FrenetFrame evolute_frame(const CurveGeometry& g, double t, bool hyp) {
  FrenetFrame fr;
  try {
    fr = g.frenet(t);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FrameDegenerate) throw;
    throw Error(ErrorKind::EvoluteUndefined, e.what());
  }
  const FrenetData& d = fr.data;
  const double tau = g.tolerances().tau_sing;
  if (hyp && !(d.sigmaF > tau && g.hyperbolic_side(d)))
    throw Error(ErrorKind::EvoluteUndefined,
                "hyperbolic evolute needs sigma_F > tau_sing at t=" + std::to_string(t));
  if (!hyp && !(d.sigmaF < -tau && g.de_sitter_side(d)))
    throw Error(ErrorKind::EvoluteUndefined,
                "de Sitter evolute needs sigma_F < -tau_sing and M^2 > A^2 at t=" + std::to_string(t));
  return fr;
}

EvoluteSample evolute(const CurveGeometry& g, double t, bool hyp) {
  const FrenetFrame fr = evolute_frame(g, t, hyp);
  const std::vector<MinkVec> jet = g.field(hyp ? FieldKind::Eh : FieldKind::Ed).curve(fr);
  const EpsilonValues e = hyp ? g.epsilon_h(fr.data) : g.epsilon_d(fr.data);
  EvoluteSample s;
  s.t = t;
  s.point = jet[0];
  s.derivative = {jet[1], jet[2], jet[3]};
  s.epsilon = e.eps;
  s.epsilon_prime = e.deps;
  const double tau = g.threshold({e.scale});
  if (std::abs(e.eps) > tau) s.type = CurvePointType::RegularPoint;
  else if (std::abs(e.deps) > tau) s.type = CurvePointType::Cusp234;
  else s.type = CurvePointType::DegenerateUnclassified;

  Eigen::Matrix<double, 4, 2> m;
  for (int i = 0; i < 4; ++i) {
    m(i, 0) = jet[2][static_cast<std::size_t>(i)];
    m(i, 1) = jet[3][static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>>(m).singularValues();
  const double cut = g.tolerances().tau_rank * sv[0];
  s.diagnostics = {{"epsilon", e.eps},
                   {"epsilon_prime", e.deps},
                   {"epsilon_formula", e.eps_formula},
                   {"tau_epsilon", tau},
                   {"theta", e.theta},
                   {"speed", euclid_norm(jet[1])},
                   {"rank_d2_d3", static_cast<double>((sv[0] > cut ? 1 : 0) + (sv[1] > cut ? 1 : 0))},
                   {"sv_min_d2_d3", sv[1]}};
  return s;
}

PsiCheck psi_cross_check(const CurveGeometry& g, double t0, double delta, bool hyp) {
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidInput, "psi cross-check needs delta > 0");
  auto velocity = [&](double t) { return evolute(g, t, hyp).derivative[0]; };
  const double side = t0 + delta <= g.model().domain().t1 ? delta : -delta;
  const MinkVec v = velocity(t0 + side);
  const double norm = std::sqrt(std::abs(mink_dot(v, v)));
  if (!(norm > 0.0)) throw Error(ErrorKind::EvoluteUndefined, "evolute velocity vanishes near t0");
  const MinkVec x = v / norm;
  PsiCheck out;
  out.psi = -mink_dot(x, velocity(t0));
  const double lo = std::max(t0 - delta, g.model().domain().t0);
  const double hi = std::min(t0 + delta, g.model().domain().t1);
  out.psi_prime = -(mink_dot(x, velocity(hi)) - mink_dot(x, velocity(lo))) / (hi - lo);
  return out;
}

DualSurfaceRecord classify_dual(const CurveGeometry& g, double t0, bool hyp) {
  const FrenetFrame fr = evolute_frame(g, t0, hyp);
  const FrenetData& d = fr.data;
  const EpsilonValues e = hyp ? g.epsilon_h(d) : g.epsilon_d(d);
  DualSurfaceRecord r;
  r.surface = hyp ? SurfaceKind::DualEh : SurfaceKind::DualEd;
  r.t = t0;
  r.theta = 0.0;
  r.sigmaF = d.sigmaF;
  r.lambda = 0.0;
  const double R = hyp ? d.A * d.A - d.M * d.M : d.M * d.M - d.A * d.A;
  const double lth = std::sqrt(std::abs(d.sigmaF)) / R;
  r.nondegenerate = lth > g.tolerances().tau_sing;
  const double tau = g.threshold({e.scale});
  if (std::abs(e.eps_formula) > tau) r.type = SingularityType::CuspidalEdge;
  else if (std::abs(e.deps_formula) > tau) r.type = SingularityType::CuspidalCrossCap;
  else r.type = SingularityType::DegenerateUnclassified;
  r.diagnostics = {{"epsilon", e.eps_formula},
                   {"epsilon_prime", e.deps_formula},
                   {"tau_epsilon", tau},
                   {"lambda_theta", g.model().orientation() * (hyp ? lth : -lth)},
                   {"sigma_F", d.sigmaF}};
  const Domain& dom = g.model().domain();
  const double delta = 1e-4;
  if (t0 - delta >= dom.t0 && t0 + delta <= dom.t1) {
    try {
      const PsiCheck p = psi_cross_check(g, t0, delta, hyp);
      r.diagnostics["psi"] = p.psi;
      r.diagnostics["psi_prime"] = p.psi_prime;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EvoluteUndefined) throw;
    }
  }
  return r;
}

bool is_cusp(CurvePointType c) { return c == CurvePointType::Cusp234; }
bool is_regular(CurvePointType c) { return c == CurvePointType::RegularPoint; }

CorrespondenceLeg leg(const CurveGeometry& g, std::span<const double> ts, bool hyp) {
  CorrespondenceLeg out;
  out.name = hyp ? "hyperbolic" : "de_sitter";
  std::vector<SingularPointRecord> records;
  try {
    records = hyp ? singular_locus_h(g, ts) : singular_locus_d(g, ts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SurfaceUndefined) throw;
    out.reason = e.what();
    return out;
  }
  const double tau = g.tolerances().tau_sing;
  for (const SingularPointRecord& r : records) {
    if (r.whole_fiber || r.branch != 0 || !r.nondegenerate) continue;
    if (hyp ? !(r.sigmaF > tau) : !(r.sigmaF < -tau)) continue;
    const EvoluteSample ev = evolute(g, r.t, hyp);
    const DualSurfaceRecord dual = classify_dual(g, r.t, hyp);
    const MinkVec f = surface_jet(g, r.surface, r.t, r.theta).point;
    CorrespondenceEntry c;
    c.t = r.t;
    c.theta = r.theta;
    const double direct = euclid_norm(f - ev.point);
    const double flipped = euclid_norm(f + ev.point);
    c.antipodal = flipped < direct;
    c.distance = std::min(direct, flipped);
    c.focal = r.type;
    c.evolute = ev.type;
    c.dual = dual.type;
    const bool ce = r.type == SingularityType::CuspidalEdge;
    const bool sw = r.type == SingularityType::Swallowtail;
    const bool dce = dual.type == SingularityType::CuspidalEdge;
    const bool ccr = dual.type == SingularityType::CuspidalCrossCap;
    c.agreements = {{"image_coincidence", c.distance <= 1e-8},
                    {"focal_CE_iff_evolute_regular", ce == is_regular(ev.type)},
                    {"focal_SW_iff_evolute_cusp", sw == is_cusp(ev.type)},
                    {"dual_CE_iff_evolute_regular", dce == is_regular(ev.type)},
                    {"dual_CCR_iff_evolute_cusp", ccr == is_cusp(ev.type)},
                    {"focal_SW_iff_dual_CCR", sw == ccr},
                    {"focal_CE_iff_dual_CE", ce == dce}};
    out.max_distance = std::max(out.max_distance, c.distance);
    out.entries.push_back(std::move(c));
  }
  if (out.entries.empty()) {
    out.reason = hyp ? "no non-degenerate singular points with sigma_F > 0"
                     : "no non-degenerate singular points with sigma_F < 0";
    return out;
  }
  out.status = LegStatus::Pass;
  for (const auto& c : out.entries)
    for (const auto& [name, ok] : c.agreements)
      if (!ok) out.status = LegStatus::Fail;
  return out;
}

std::vector<double> model_grid(const CurveGeometry& g) {
  std::vector<double> ts;
  for (const auto& s : g.model().samples()) ts.push_back(s.t);
  return ts;
}

}  // namespace

EvoluteSample evolute_h(const CurveGeometry& g, double t) { return evolute(g, t, true); }
EvoluteSample evolute_d(const CurveGeometry& g, double t) { return evolute(g, t, false); }

MinkVec dual_of_evolute_h(const CurveGeometry& g, double t, double theta) {
  return surface_jet(g, SurfaceKind::DualEh, t, theta).point;
}

MinkVec dual_of_evolute_d(const CurveGeometry& g, double t, double theta) {
  return surface_jet(g, SurfaceKind::DualEd, t, theta).point;
}

double lambda_dual_h(const CurveGeometry& g, double t, double theta) {
  return lambda_closed(g, SurfaceKind::DualEh, t, theta);
}

double lambda_dual_d(const CurveGeometry& g, double t, double theta) {
  return lambda_closed(g, SurfaceKind::DualEd, t, theta);
}

PsiCheck psi_cross_check_h(const CurveGeometry& g, double t0, double delta) {
  return psi_cross_check(g, t0, delta, true);
}

PsiCheck psi_cross_check_d(const CurveGeometry& g, double t0, double delta) {
  return psi_cross_check(g, t0, delta, false);
}

DualSurfaceRecord classify_dual_h(const CurveGeometry& g, double t0) { return classify_dual(g, t0, true); }
DualSurfaceRecord classify_dual_d(const CurveGeometry& g, double t0) { return classify_dual(g, t0, false); }

CorrespondenceLeg correspondence_leg_h(const CurveGeometry& g, std::span<const double> ts) {
  return leg(g, ts, true);
}

CorrespondenceLeg correspondence_leg_d(const CurveGeometry& g, std::span<const double> ts) {
  return leg(g, ts, false);
}

CorrespondenceReport correspondence_check(const CurveGeometry& g) {
  const auto ts = model_grid(g);
  return {leg(g, ts, true), leg(g, ts, false)};
}

}  // namespace hyperframe
