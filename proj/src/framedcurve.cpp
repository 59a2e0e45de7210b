#include "hyperframe/framedcurve.hpp"
#include "hyperframe/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hyperframe {

namespace {

const Mat4 kG = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MinkVec row(const Mat4& m, int i) { return {m(i, 0), m(i, 1), m(i, 2), m(i, 3)}; }

double drift(const Mat4& f) { return (f * kG * f.transpose() - kG).cwiseAbs().maxCoeff(); }

// Timelike row first, then the three spacelike rows.
Mat4 pseudo_gram_schmidt(const Mat4& f) {
  MinkVec e[4] = {row(f, 0), row(f, 1), row(f, 2), row(f, 3)};
  e[0] = e[0] / std::sqrt(-mink_dot(e[0], e[0]));
  for (int i = 1; i < 4; ++i) {
    e[i] += mink_dot(e[i], e[0]) * e[0];
    for (int j = 1; j < i; ++j) e[i] -= mink_dot(e[i], e[j]) * e[j];
    e[i] = e[i] / std::sqrt(mink_dot(e[i], e[i]));
  }
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = e[i][j];
  return out;
}

const double kC1 = 0.5 - std::sqrt(3.0) / 6.0;
const double kC2 = 0.5 + std::sqrt(3.0) / 6.0;
const double kA1 = 0.25 + std::sqrt(3.0) / 6.0;
const double kA2 = 0.25 - std::sqrt(3.0) / 6.0;

}  // namespace

CurvatureQuartet parse_quartet(std::string_view m, std::string_view n, std::string_view a,
                               std::string_view b) {
  return {parse_expr(m), parse_expr(n), parse_expr(a), parse_expr(b)};
}

FrameSample standard_frame(double t0) {
  return {t0, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
}

double frame_orientation(const FrameSample& f) {
  return det4(f.gamma, f.v1, f.v2, f.mu) >= 0.0 ? 1.0 : -1.0;
}

double pairing_residual(const FrameSample& f) {
  const MinkVec* e[4] = {&f.gamma, &f.v1, &f.v2, &f.mu};
  double r = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const double target = i != j ? 0.0 : (i == 0 ? -1.0 : 1.0);
      r = std::max(r, std::abs(mink_dot(*e[i], *e[j]) - target));
    }
  }
  return r;
}

double wedge_residual(const FrameSample& f) {
  const MinkVec w = -frame_orientation(f) * wedge3(f.gamma, f.v1, f.v2);
  return max_abs_diff(f.mu, w);
}

double frame_residual(const FrameSample& f) { return std::max(pairing_residual(f), wedge_residual(f)); }

Mat4 frame_matrix(const FrameSample& f) {
  Mat4 m;
  const MinkVec* e[4] = {&f.gamma, &f.v1, &f.v2, &f.mu};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = (*e[i])[j];
  return m;
}

FrameSample frame_from_matrix(double t, const Mat4& m) {
  return {t, row(m, 0), row(m, 1), row(m, 2), row(m, 3)};
}

Mat4 coefficient_matrix(double m, double n, double a, double b) {
  Mat4 c;
  c << 0, 0, 0, m,
       0, 0, n, a,
       0, -n, 0, b,
       m, -a, -b, 0;
  return c;
}

Mat4 coefficient_matrix(const CurvatureQuartet& q, double t) {
  return coefficient_matrix(eval_expr(q.m, t), eval_expr(q.n, t), eval_expr(q.a, t),
                            eval_expr(q.b, t));
}

Mat4 matrix_exponential(const Mat4& x) {
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.25) s = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Mat4 y = x / std::ldexp(1.0, s);
  Mat4 term = Mat4::Identity();
  Mat4 sum = Mat4::Identity();
  for (int k = 1; k <= 14; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

double Domain::at(std::size_t i) const {
  if (samples < 2) return t0;
  if (i + 1 == samples) return t1;
  return t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples - 1);
}

ScalarInvariants scalar_invariants(const CurvatureQuartet& q) {
  const Expr dm = diff_expr(q.m), da = diff_expr(q.a), db = diff_expr(q.b);
  const Expr ab2 = sym::pow(q.a, 2) + sym::pow(q.b, 2);
  ScalarInvariants s;
  s.f = q.a * db - da * q.b + q.n * ab2;
  s.g = q.m * db - dm * q.b + q.m * q.a * q.n;
  s.h = q.m * da - dm * q.a - q.m * q.b * q.n;
  s.sigma = sym::pow(s.f, 2) - sym::pow(s.g, 2) - sym::pow(s.h, 2);
  return s;
}

FrenetExprs frenet_exprs(const CurvatureQuartet& q) {
  FrenetExprs e;
  const Expr ab2 = sym::pow(q.a, 2) + sym::pow(q.b, 2);
  e.M = q.m;
  e.A = sym::sqrt(ab2);
  e.N = scalar_invariants(q).f / ab2;
  e.dM = diff_expr(e.M);
  e.dA = diff_expr(e.A);
  e.dN = diff_expr(e.N);
  e.P = e.M * e.dA - e.A * e.dM;
  e.dP = diff_expr(e.P);
  e.ddP = diff_expr(e.dP);
  const Expr A2 = sym::pow(e.A, 2), M2 = sym::pow(e.M, 2);
  e.sigmaF = A2 * sym::pow(e.N, 2) * (A2 - M2) - sym::pow(e.P, 2);
  e.sh = sym::sqrt(A2 - M2);
  e.Dh = e.A * e.N * e.sh;
  e.dDh = diff_expr(e.Dh);
  e.ddDh = diff_expr(e.dDh);
  e.sd = sym::sqrt(M2 - A2);
  e.Dd = e.A * e.N * e.sd;
  e.dDd = diff_expr(e.Dd);
  e.ddDd = diff_expr(e.dDd);
  return e;
}

FramedCurveModel integrate_frame(const CurvatureQuartet& q, const Domain& domain,
                                 const FrameSample& initial, double step, double tol_frame,
                                 double tau_zero) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidInput, "step must be positive");
  if (domain.samples < 2 || !(domain.t1 > domain.t0))
    throw Error(ErrorKind::InvalidInput, "domain needs t1 > t0 and at least 2 samples");
  if (!(frame_residual(initial) <= 1e-10))
    throw Error(ErrorKind::InvalidInput, "initial frame is not pseudo-orthonormal");

  FramedCurveModel model;
  model.quartet_ = q;
  model.domain_ = domain;
  model.step_ = step;
  model.tol_frame_ = tol_frame;
  model.tau_zero_ = tau_zero;
  model.orientation_ = frame_orientation(initial);

  auto tape = std::make_shared<FramedCurveModel::Tape>();
  tape->frenet = frenet_exprs(q);
  const FrenetExprs& f = tape->frenet;
  const Expr coeffs[] = {q.m, q.n, q.a, q.b};
  tape->coefficients = Program(coeffs);
  const Expr base[] = {f.M, f.N, f.A, f.dM, f.dA, f.dN, f.P, f.dP, f.ddP, f.sigmaF};
  tape->base = Program(base);
  const Expr hyp[] = {f.sh, f.Dh, f.dDh, f.ddDh};
  tape->hyperbolic = Program(hyp);
  const Expr des[] = {f.sd, f.Dd, f.dDd, f.ddDd};
  tape->de_sitter = Program(des);
  model.tape_ = std::move(tape);

  FrameSample start = initial;
  start.t = domain.t0;
  model.samples_.reserve(domain.samples);
  model.samples_.push_back(start);
  for (std::size_t i = 1; i < domain.samples; ++i) {
    FrameSample next = model.advance(model.samples_.back(), domain.at(i), &model.stats_);
    model.samples_.push_back(next);
  }
  return model;
}

FrameSample FramedCurveModel::advance(const FrameSample& from, double t, IntegrationStats* stats) const {
  const double span = t - from.t;
  const auto n = static_cast<std::size_t>(std::ceil(std::abs(span) / step_ - 1e-9));
  if (n == 0) {
    FrameSample s = from;
    s.t = t;
    return s;
  }
  const double h = span / static_cast<double>(n);
  Mat4 f = frame_matrix(from);
  std::array<double, 4> k1{}, k2{};
  for (std::size_t i = 0; i < n; ++i) {
    const double tn = from.t + h * static_cast<double>(i);
    tape_->coefficients.run(tn + kC1 * h, k1);
    tape_->coefficients.run(tn + kC2 * h, k2);
    const Mat4 c1 = coefficient_matrix(k1[0], k1[1], k1[2], k1[3]);
    const Mat4 c2 = coefficient_matrix(k2[0], k2[1], k2[2], k2[3]);
    f = matrix_exponential(h * (kA2 * c1 + kA1 * c2)) * matrix_exponential(h * (kA1 * c1 + kA2 * c2)) * f;
    const double tnext = i + 1 == n ? t : tn + h;
    double d = drift(f);
    if (d > tol_frame_ / 10.0) {
      f = pseudo_gram_schmidt(f);
      if (stats) ++stats->corrections;
      d = drift(f);
      if (d > tol_frame_) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "frame drift %.3e exceeds tol_frame at t=%.17g", d, tnext);
        throw Error(ErrorKind::IntegrationFailure, msg);
      }
    }
    if (stats) {
      if (d > stats->max_drift) {
        stats->max_drift = d;
        stats->worst_t = tnext;
      }
      ++stats->steps;
    }
  }
  return frame_from_matrix(t, f);
}

FrameSample FramedCurveModel::frame_at(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(domain_.t1 - domain_.t0));
  if (!(t >= domain_.t0 - slack && t <= domain_.t1 + slack))
    throw Error(ErrorKind::InvalidInput, "t=" + std::to_string(t) + " outside the model domain");
  const double u = (t - domain_.t0) / (domain_.t1 - domain_.t0) * static_cast<double>(domain_.samples - 1);
  const auto i = static_cast<std::size_t>(
      std::clamp(std::llround(u), 0LL, static_cast<long long>(samples_.size() - 1)));
  if (samples_[i].t == t) return samples_[i];
  return advance(samples_[i], t, nullptr);
}

std::array<double, 4> FramedCurveModel::curvature_at(double t) const {
  std::array<double, 4> k{};
  tape_->coefficients.run(t, k);
  return k;
}

FrenetData FramedCurveModel::frenet_data(double t) const {
  const auto k = curvature_at(t);
  if (!(k[2] * k[2] + k[3] * k[3] > tau_zero_))
    throw Error(ErrorKind::FrameDegenerate,
                "a^2+b^2 vanishes at t=" + std::to_string(t) + "; Frenet type frame undefined");
  std::array<double, 10> v{};
  tape_->base.run(t, v);
  FrenetData d;
  d.t = t;
  d.M = v[0];
  d.N = v[1];
  d.A = v[2];
  d.dM = v[3];
  d.dA = v[4];
  d.dN = v[5];
  d.P = v[6];
  d.dP = v[7];
  d.ddP = v[8];
  d.sigmaF = v[9];
  d.sh = d.Dh = d.dDh = d.ddDh = kNaN;
  d.sd = d.Dd = d.dDd = d.ddDd = kNaN;
  const double gap = d.A * d.A - d.M * d.M;
  std::array<double, 4> w{};
  if (gap > tau_zero_) {
    tape_->hyperbolic.run(t, w);
    d.sh = w[0];
    d.Dh = w[1];
    d.dDh = w[2];
    d.ddDh = w[3];
  } else if (-gap > tau_zero_) {
    tape_->de_sitter.run(t, w);
    d.sd = w[0];
    d.Dd = w[1];
    d.dDd = w[2];
    d.ddDd = w[3];
  }
  return d;
}

FrenetFrame frenet_convert(const FramedCurveModel& model, double t) {
  FrenetFrame out;
  out.data = model.frenet_data(t);
  const auto k = model.curvature_at(t);
  const FrameSample f = model.frame_at(t);
  const double A = std::sqrt(k[2] * k[2] + k[3] * k[3]);
  out.gamma = f.gamma;
  out.n1 = (k[2] * f.v1 + k[3] * f.v2) / A;
  out.n2 = (-k[3] * f.v1 + k[2] * f.v2) / A;
  out.mu = f.mu;
  return out;
}

bool is_lorentz(const Mat4& motion, double tol) {
  return (motion.transpose() * kG * motion - kG).cwiseAbs().maxCoeff() <= tol && motion.determinant() > 0.0;
}

double congruence_residual(const FramedCurveModel& a, const FramedCurveModel& b, const Mat4& motion) {
  if (!is_lorentz(motion)) throw Error(ErrorKind::InvalidInput, "motion is not in SO(1,3)");
  if (a.samples().size() != b.samples().size())
    throw Error(ErrorKind::InvalidInput, "models sampled on different grids");
  double r = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i) {
    const FrameSample& x = a.samples()[i];
    const FrameSample& y = b.samples()[i];
    if (std::abs(x.t - y.t) > 1e-12 * std::max(1.0, std::abs(x.t)))
      throw Error(ErrorKind::InvalidInput, "models sampled on different grids");
    const MinkVec* xs[3] = {&x.gamma, &x.v1, &x.v2};
    const MinkVec* ys[3] = {&y.gamma, &y.v1, &y.v2};
    for (int j = 0; j < 3; ++j) {
      const Eigen::Vector4d u = motion * Eigen::Vector4d((*xs[j])[0], (*xs[j])[1], (*xs[j])[2], (*xs[j])[3]);
      r = std::max(r, max_abs_diff({u[0], u[1], u[2], u[3]}, *ys[j]));
    }
  }
  return r;
}

}  // namespace hyperframe
