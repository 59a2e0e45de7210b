#pragma once

#include "hyperframe/expr.hpp"
#include "hyperframe/minkowski.hpp"

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace hyperframe {

using Mat4 = Eigen::Matrix4d;

struct CurvatureQuartet {
  Expr m, n, a, b;
};

CurvatureQuartet parse_quartet(std::string_view m, std::string_view n, std::string_view a,
                               std::string_view b);

struct FrameSample {
  double t = 0.0;
  MinkVec gamma, v1, v2, mu;
};

FrameSample standard_frame(double t0 = 0.0);

// det[gamma; v1; v2; mu], +1 or -1 for a valid frame.
double frame_orientation(const FrameSample& f);

// The ten pairings against diag(-1,1,1,1).
double pairing_residual(const FrameSample& f);
// Componentwise distance between mu and -o * gamma^v1^v2.
double wedge_residual(const FrameSample& f);
// Larger of the two.
double frame_residual(const FrameSample& f);

Mat4 frame_matrix(const FrameSample& f);
FrameSample frame_from_matrix(double t, const Mat4& m);

Mat4 coefficient_matrix(double m, double n, double a, double b);
Mat4 coefficient_matrix(const CurvatureQuartet& q, double t);

// Scaling and squaring with a Taylor kernel.
Mat4 matrix_exponential(const Mat4& x);

struct Domain {
  double t0 = 0.0;
  double t1 = 1.0;
  std::size_t samples = 2;

  double at(std::size_t i) const;
};

struct IntegrationStats {
  std::size_t steps = 0;
  std::size_t corrections = 0;
  double max_drift = 0.0;
  double worst_t = 0.0;
};

struct ScalarInvariants {
  Expr f, g, h, sigma;
};

ScalarInvariants scalar_invariants(const CurvatureQuartet& q);

// Symbolic Frenet type data; P = M A' - A M'.
struct FrenetExprs {
  Expr M, N, A, dM, dA, dN, P, dP, ddP, sigmaF;
  Expr sh, Dh, dDh, ddDh;
  Expr sd, Dd, dDd, ddDd;
};

FrenetExprs frenet_exprs(const CurvatureQuartet& q);

struct FrenetData {
  double t = 0.0;
  double M = 0.0, N = 0.0, A = 0.0, B = 0.0;
  double dM = 0.0, dA = 0.0, dN = 0.0;
  double P = 0.0, dP = 0.0, ddP = 0.0;
  double sigmaF = 0.0;
  // NaN unless A^2 > M^2 (resp. M^2 > A^2).
  double sh, Dh, dDh, ddDh;
  double sd, Dd, dDd, ddDd;
};

struct FrenetFrame {
  MinkVec gamma, n1, n2, mu;
  FrenetData data;
};

class FramedCurveModel {
 public:
  const CurvatureQuartet& quartet() const { return quartet_; }
  const Domain& domain() const { return domain_; }
  const FrameSample& initial() const { return samples_.front(); }
  const std::vector<FrameSample>& samples() const { return samples_; }
  double step() const { return step_; }
  double tol_frame() const { return tol_frame_; }
  double tau_zero() const { return tau_zero_; }
  double orientation() const { return orientation_; }
  const IntegrationStats& stats() const { return stats_; }
  const FrenetExprs& frenet() const { return tape_->frenet; }

  FrameSample frame_at(double t) const;
  std::array<double, 4> curvature_at(double t) const;

  // Throws FrameDegenerate when a^2 + b^2 <= tau_zero.
  FrenetData frenet_data(double t) const;

 private:
  friend FramedCurveModel integrate_frame(const CurvatureQuartet&, const Domain&, const FrameSample&,
                                          double, double, double);

  struct Tape {
    FrenetExprs frenet;
    Program coefficients;
    Program base;
    Program hyperbolic;
    Program de_sitter;
  };

  FrameSample advance(const FrameSample& from, double t, IntegrationStats* stats) const;

  CurvatureQuartet quartet_;
  Domain domain_;
  std::vector<FrameSample> samples_;
  double step_ = 1e-3;
  double tol_frame_ = 1e-9;
  double tau_zero_ = 1e-10;
  double orientation_ = 1.0;
  IntegrationStats stats_;
  std::shared_ptr<const Tape> tape_;
};

FramedCurveModel integrate_frame(const CurvatureQuartet& q, const Domain& domain,
                                 const FrameSample& initial, double step = 1e-3,
                                 double tol_frame = 1e-9, double tau_zero = 1e-10);

FrenetFrame frenet_convert(const FramedCurveModel& model, double t);

bool is_lorentz(const Mat4& motion, double tol = 1e-10);

double congruence_residual(const FramedCurveModel& a, const FramedCurveModel& b, const Mat4& motion);

}  // namespace hyperframe
