#pragma once

#include "hyperframe/framedcurve.hpp"
#include "hyperframe/singularity.hpp"
#include "hyperframe/tolerances.hpp"

#include <array>
#include <memory>
#include <span>
#include <vector>

namespace hyperframe {

enum class FiberFn { One, Cos, Sin, Cosh, Sinh };

// Coordinates in the Frenet type frame (gamma, n1, n2, mu).
using FrameVecExpr = std::array<Expr, 4>;

// Derivative of sum v_i e_i along the curve, in the same frame.
FrameVecExpr frame_derivative(const FrameVecExpr& v, const FrenetExprs& fe);

struct FieldTerm {
  FiberFn fn;
  FrameVecExpr coeffs;
};

struct SurfaceJet {
  MinkVec point, dt, dtheta;
};

// F(t, theta) = sum_k fn_k(theta) V_k(t), with t-derivatives of the V_k up to a fixed order.
class FrameField {
 public:
  FrameField() = default;
  FrameField(std::vector<FieldTerm> terms, const FrenetExprs& fe, int order);

  int order() const { return order_; }
  SurfaceJet surface(const FrenetFrame& basis, double theta) const;
  // Derivatives 0..order of a theta-free field.
  std::vector<MinkVec> curve(const FrenetFrame& basis) const;

 private:
  std::vector<FiberFn> fns_;
  int order_ = 0;
  Program program_;
};

enum class FieldKind { Fh, Fd, DualEh, DualEd, Eh, Ed };

struct EpsilonValues {
  double theta = 0.0;
  double eps = 0.0;
  double deps = 0.0;
  double eps_formula = 0.0;
  double deps_formula = 0.0;
  // |theta'| + |MN/s|, the scale of the cancellation in eps.
  double scale = 0.0;
};

// Model plus compiled surface fields; immutable and shareable.
class CurveGeometry {
 public:
  explicit CurveGeometry(FramedCurveModel model, Tolerances tol = {});

  const FramedCurveModel& model() const { return impl_->model; }
  const Tolerances& tolerances() const { return impl_->tol; }

  FrenetFrame frenet(double t) const { return frenet_convert(impl_->model, t); }
  bool hyperbolic_side(const FrenetData& d) const;
  bool de_sitter_side(const FrenetData& d) const;

  const FrameField& field(FieldKind k) const { return impl_->fields[static_cast<std::size_t>(k)]; }

  // Requires sigma_F > 0 and A^2 > M^2 (resp. sigma_F < 0 and M^2 > A^2).
  EpsilonValues epsilon_h(const FrenetData& d) const;
  EpsilonValues epsilon_d(const FrenetData& d) const;

  // tau_sing * (1 + largest magnitude).
  double threshold(std::initializer_list<double> magnitudes) const;

 private:
  struct Impl {
    FramedCurveModel model;
    Tolerances tol;
    std::array<FrameField, 6> fields;
    Program eps_h;
    Program eps_d_atan;
    Program eps_d_acot;
  };
  std::shared_ptr<const Impl> impl_;
};

}  // namespace hyperframe
