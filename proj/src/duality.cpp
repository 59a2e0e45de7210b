#include "hyperframe/duality.hpp"
#include "hyperframe/error.hpp"
#include "hyperframe/focal.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace hyperframe {

std::array<double, 5> isotropy_residuals(const DualPairSample& s) {
  return {mink_dot(s.f, s.g), mink_dot(s.df_du, s.g), mink_dot(s.df_dv, s.g), mink_dot(s.f, s.dg_du),
          mink_dot(s.f, s.dg_dv)};
}

double max_isotropy_residual(const DualPairSample& s) {
  double m = 0.0;
  for (double r : isotropy_residuals(s)) m = std::max(m, std::abs(r));
  return m;
}

double leg_membership_residual(const DualPairSample& s) {
  const Quadric first = s.fibration == Fibration::Delta1 ? Quadric::H3 : Quadric::S31;
  return std::max(std::abs(membership_residual(s.f, first)), std::abs(membership_residual(s.g, Quadric::S31)));
}

const char* to_string(FrontVerdict v) {
  switch (v) {
    case FrontVerdict::Frontal: return "Frontal";
    case FrontVerdict::Front: return "Front";
    case FrontVerdict::NotIsotropic: return "NotIsotropic";
  }
  return "?";
}

const char* to_string(DualPairKind k) {
  switch (k) {
    case DualPairKind::FocalH: return "Fh_mu";
    case DualPairKind::FocalD: return "Fd_mu";
    case DualPairKind::EvoluteH: return "DualEh_Eh";
    case DualPairKind::EvoluteD: return "DualEd_Ed";
  }
  return "?";
}

double joint_rank_ratio(const DualPairSample& s) {
  Eigen::Matrix<double, 8, 2> m;
  for (int i = 0; i < 4; ++i) {
    const auto k = static_cast<std::size_t>(i);
    m(i, 0) = s.df_du[k];
    m(i + 4, 0) = s.dg_du[k];
    m(i, 1) = s.df_dv[k];
    m(i + 4, 1) = s.dg_dv[k];
  }
  const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix<double, 8, 2>>(m).singularValues();
  return sv[0] > 0.0 ? sv[1] / sv[0] : 0.0;
}

FrontVerdict front_verdict(std::span<const DualPairSample> samples, double tau_dual, double tau_rank) {
  bool immersive = true;
  for (const DualPairSample& s : samples) {
    if (max_isotropy_residual(s) > tau_dual) return FrontVerdict::NotIsotropic;
    if (!(joint_rank_ratio(s) > tau_rank)) immersive = false;
  }
  return immersive ? FrontVerdict::Front : FrontVerdict::Frontal;
}

DualPairSample dual_pair(const CurveGeometry& g, DualPairKind kind, double t, double theta) {
  DualPairSample s;
  switch (kind) {
    case DualPairKind::FocalH:
    case DualPairKind::FocalD: {
      const SurfaceKind sk = kind == DualPairKind::FocalH ? SurfaceKind::Fh : SurfaceKind::Fd;
      const SurfaceJet j = surface_jet(g, sk, t, theta);
      const FrenetFrame fr = g.frenet(t);
      s.f = j.point;
      s.df_du = j.dt;
      s.df_dv = j.dtheta;
      s.g = fr.mu;
      s.dg_du = fr.data.M * fr.gamma - fr.data.A * fr.n1;
      s.fibration = kind == DualPairKind::FocalH ? Fibration::Delta1 : Fibration::Delta5;
      return s;
    }
    case DualPairKind::EvoluteH:
    case DualPairKind::EvoluteD: {
      const bool hyp = kind == DualPairKind::EvoluteH;
      const SurfaceKind sk = hyp ? SurfaceKind::DualEh : SurfaceKind::DualEd;
      const SurfaceJet j = surface_jet(g, sk, t, theta);
      const std::vector<MinkVec> e = g.field(hyp ? FieldKind::Eh : FieldKind::Ed).curve(g.frenet(t));
      if (hyp) {
        s.f = e[0];
        s.df_du = e[1];
        s.g = j.point;
        s.dg_du = j.dt;
        s.dg_dv = j.dtheta;
        s.fibration = Fibration::Delta1;
      } else {
        s.f = j.point;
        s.df_du = j.dt;
        s.df_dv = j.dtheta;
        s.g = e[0];
        s.dg_du = e[1];
        s.fibration = Fibration::Delta5;
      }
      return s;
    }
  }
  return s;
}

}  // namespace hyperframe
