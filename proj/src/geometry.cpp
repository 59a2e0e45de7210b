#include "hyperframe/geometry.hpp"
#include "hyperframe/error.hpp"

#include <algorithm>
#include <cmath>

namespace hyperframe {

const char* to_string(SurfaceKind s) {
  switch (s) {
    case SurfaceKind::Fh: return "Fh";
    case SurfaceKind::Fd: return "Fd";
    case SurfaceKind::DualEh: return "DualEh";
    case SurfaceKind::DualEd: return "DualEd";
  }
  return "?";
}

const char* to_string(SingularityType s) {
  switch (s) {
    case SingularityType::Regular: return "Regular";
    case SingularityType::CuspidalEdge: return "CuspidalEdge";
    case SingularityType::Swallowtail: return "Swallowtail";
    case SingularityType::CuspidalBeaks: return "CuspidalBeaks";
    case SingularityType::CuspidalLips: return "CuspidalLips";
    case SingularityType::CuspidalCrossCap: return "CuspidalCrossCap";
    case SingularityType::DegenerateUnclassified: return "DegenerateUnclassified";
  }
  return "?";
}

void Tolerances::set(const std::string& name, double value) {
  auto positive = [&](double& slot) {
    if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError("tolerances." + name, "must be positive");
    slot = value;
  };
  auto count = [&](auto& slot, double lo) {
    if (!(value >= lo) || value != std::floor(value) || value > 1e7)
      throw ValidationError("tolerances." + name, "must be an integer >= " + std::to_string(static_cast<int>(lo)));
    slot = static_cast<std::remove_reference_t<decltype(slot)>>(value);
  };
  if (name == "step") positive(step);
  else if (name == "tol_frame") positive(tol_frame);
  else if (name == "tau_zero") positive(tau_zero);
  else if (name == "tau_sing") positive(tau_sing);
  else if (name == "tau_dual") positive(tau_dual);
  else if (name == "tau_rank") positive(tau_rank);
  else if (name == "fiber_min" || name == "fiber_max") {
    if (!std::isfinite(value)) throw ValidationError("tolerances." + name, "must be finite");
    (name == "fiber_min" ? fiber_min : fiber_max) = value;
  } else if (name == "fiber_samples") count(fiber_samples, 1);
  else if (name == "circle_samples") count(circle_samples, 1);
  else if (name == "max_refine") count(max_refine, 0);
  else throw ValidationError("tolerances." + name, "unknown tolerance");
}

FrameVecExpr frame_derivative(const FrameVecExpr& v, const FrenetExprs& fe) {
  // gamma' = M mu, n1' = N n2 + A mu, n2' = -N n1, mu' = M gamma - A n1.
  return {diff_expr(v[0]) + v[3] * fe.M,
          diff_expr(v[1]) - v[2] * fe.N - v[3] * fe.A,
          diff_expr(v[2]) + v[1] * fe.N,
          diff_expr(v[3]) + v[0] * fe.M + v[1] * fe.A};
}

namespace {

double fiber(FiberFn fn, double th) {
  switch (fn) {
    case FiberFn::One: return 1.0;
    case FiberFn::Cos: return std::cos(th);
    case FiberFn::Sin: return std::sin(th);
    case FiberFn::Cosh: return std::cosh(th);
    case FiberFn::Sinh: return std::sinh(th);
  }
  return 0.0;
}

double fiber_prime(FiberFn fn, double th) {
  switch (fn) {
    case FiberFn::One: return 0.0;
    case FiberFn::Cos: return -std::sin(th);
    case FiberFn::Sin: return std::cos(th);
    case FiberFn::Cosh: return std::sinh(th);
    case FiberFn::Sinh: return std::cosh(th);
  }
  return 0.0;
}

MinkVec ambient(const double* c, const FrenetFrame& b) {
  return c[0] * b.gamma + c[1] * b.n1 + c[2] * b.n2 + c[3] * b.mu;
}

}  // namespace

FrameField::FrameField(std::vector<FieldTerm> terms, const FrenetExprs& fe, int order) : order_(order) {
  std::vector<Expr> outputs;
  for (FieldTerm& term : terms) {
    fns_.push_back(term.fn);
    FrameVecExpr v = term.coeffs;
    for (int j = 0; j <= order; ++j) {
      outputs.insert(outputs.end(), v.begin(), v.end());
      if (j < order) v = frame_derivative(v, fe);
    }
  }
  program_ = Program(outputs);
}

SurfaceJet FrameField::surface(const FrenetFrame& basis, double theta) const {
  const std::vector<double> c = program_.run(basis.data.t);
  const std::size_t stride = 4 * static_cast<std::size_t>(order_ + 1);
  SurfaceJet jet;
  for (std::size_t k = 0; k < fns_.size(); ++k) {
    const double* v = c.data() + k * stride;
    const double phi = fiber(fns_[k], theta);
    jet.point += phi * ambient(v, basis);
    if (order_ >= 1) jet.dt += phi * ambient(v + 4, basis);
    jet.dtheta += fiber_prime(fns_[k], theta) * ambient(v, basis);
  }
  return jet;
}

std::vector<MinkVec> FrameField::curve(const FrenetFrame& basis) const {
  const std::vector<double> c = program_.run(basis.data.t);
  std::vector<MinkVec> out(static_cast<std::size_t>(order_ + 1));
  const std::size_t stride = 4 * out.size();
  for (std::size_t k = 0; k < fns_.size(); ++k)
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] += fiber(fns_[k], 0.0) * ambient(c.data() + k * stride + 4 * j, basis);
  return out;
}

CurveGeometry::CurveGeometry(FramedCurveModel model, Tolerances tol) {
  auto impl = std::make_shared<Impl>(Impl{std::move(model), tol, {}, {}, {}, {}});
  const FrenetExprs& e = impl->model.frenet();
  const Expr zero = Expr::literal(0.0), one = Expr::literal(1.0);
  const Expr A2 = sym::pow(e.A, 2), M2 = sym::pow(e.M, 2);

  const FrameVecExpr n2{zero, zero, one, zero};
  const FrameVecExpr mu{zero, zero, zero, one};
  auto& f = impl->fields;
  f[0] = FrameField({{FiberFn::Cosh, {e.A / e.sh, -(e.M / e.sh), zero, zero}}, {FiberFn::Sinh, n2}}, e, 1);
  f[1] = FrameField({{FiberFn::Cos, {e.A / e.sd, -(e.M / e.sd), zero, zero}}, {FiberFn::Sin, n2}}, e, 1);
  f[2] = FrameField({{FiberFn::Cos, mu}, {FiberFn::Sin, {-(e.M / e.sh), e.A / e.sh, zero, zero}}}, e, 1);
  f[3] = FrameField({{FiberFn::Cosh, mu}, {FiberFn::Sinh, {-(e.M / e.sd), e.A / e.sd, zero, zero}}}, e, 1);
  const FrameVecExpr ev{A2 * e.N, -(e.M * e.A * e.N), e.P, zero};
  const Expr rh = sym::sqrt(e.sigmaF), rd = sym::sqrt(-e.sigmaF);
  f[4] = FrameField({{FiberFn::One, {ev[0] / rh, ev[1] / rh, ev[2] / rh, zero}}}, e, 3);
  f[5] = FrameField({{FiberFn::One, {ev[0] / rd, ev[1] / rd, ev[2] / rd, zero}}}, e, 3);

  {
    const Expr theta_prime = diff_expr(sym::artanh(e.P / e.Dh));
    const Expr mns = e.M * e.N / e.sh;
    const Expr eps = theta_prime - mns;
    const Expr epsf = (e.Dh * e.dP - e.dDh * e.P) / e.sigmaF - mns;
    const Expr out[] = {theta_prime, mns, eps, diff_expr(eps), epsf, diff_expr(epsf)};
    impl->eps_h = Program(out);
  }
  const Expr mnd = e.M * e.N / e.sd;
  const Expr epsfd = (e.Dd * e.dP - e.dDd * e.P) / (sym::pow(e.P, 2) + A2 * sym::pow(e.N, 2) * (M2 - A2)) - mnd;
  const Expr depsfd = diff_expr(epsfd);
  for (int which = 0; which < 2; ++which) {
    const Expr theta = which == 0 ? sym::atan(e.P / e.Dd) : -sym::atan(e.Dd / e.P);
    const Expr theta_prime = diff_expr(theta);
    const Expr eps = theta_prime - mnd;
    const Expr out[] = {theta_prime, mnd, eps, diff_expr(eps), epsfd, depsfd};
    (which == 0 ? impl->eps_d_atan : impl->eps_d_acot) = Program(out);
  }
  impl_ = std::move(impl);
}

bool CurveGeometry::hyperbolic_side(const FrenetData& d) const {
  return d.A * d.A - d.M * d.M > impl_->tol.tau_zero;
}

bool CurveGeometry::de_sitter_side(const FrenetData& d) const {
  return d.M * d.M - d.A * d.A > impl_->tol.tau_zero;
}

double CurveGeometry::threshold(std::initializer_list<double> magnitudes) const {
  double m = 0.0;
  for (double v : magnitudes) m = std::max(m, std::abs(v));
  return impl_->tol.tau_sing * (1.0 + m);
}

EpsilonValues CurveGeometry::epsilon_h(const FrenetData& d) const {
  if (!(d.sigmaF > 0.0) || !hyperbolic_side(d))
    throw Error(ErrorKind::EvoluteUndefined, "hyperbolic evolute needs sigma_F > 0 and A^2 > M^2 at t=" +
                                                 std::to_string(d.t));
  const std::vector<double> v = impl_->eps_h.run(d.t);
  EpsilonValues r;
  r.theta = std::atanh(d.P / d.Dh);
  r.eps = v[2];
  r.deps = v[3];
  r.eps_formula = v[4];
  r.deps_formula = v[5];
  r.scale = std::abs(v[0]) + std::abs(v[1]);
  return r;
}

EpsilonValues CurveGeometry::epsilon_d(const FrenetData& d) const {
  if (!(d.sigmaF < 0.0) || !de_sitter_side(d))
    throw Error(ErrorKind::EvoluteUndefined, "de Sitter evolute needs sigma_F < 0 and M^2 > A^2 at t=" +
                                                 std::to_string(d.t));
  const Program& p = std::abs(d.Dd) >= std::abs(d.P) ? impl_->eps_d_atan : impl_->eps_d_acot;
  const std::vector<double> v = p.run(d.t);
  EpsilonValues r;
  r.theta = std::atan2(d.P, d.Dd);
  if (r.theta < 0.0) r.theta += 2.0 * M_PI;
  r.eps = v[2];
  r.deps = v[3];
  r.eps_formula = v[4];
  r.deps_formula = v[5];
  r.scale = std::abs(v[0]) + std::abs(v[1]);
  return r;
}

}  // namespace hyperframe
