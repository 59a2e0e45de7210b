#pragma once

#include "hyperframe/geometry.hpp"

#include <array>
#include <span>

namespace hyperframe {

enum class Fibration { Delta1, Delta5 };

struct DualPairSample {
  MinkVec f, g;
  MinkVec df_du, df_dv, dg_du, dg_dv;
  Fibration fibration = Fibration::Delta1;
};

// (<f,g>, <f_u,g>, <f_v,g>, <f,g_u>, <f,g_v>).
std::array<double, 5> isotropy_residuals(const DualPairSample& s);
double max_isotropy_residual(const DualPairSample& s);
double leg_membership_residual(const DualPairSample& s);

enum class FrontVerdict { Frontal, Front, NotIsotropic };

const char* to_string(FrontVerdict v);

FrontVerdict front_verdict(std::span<const DualPairSample> samples, double tau_dual = 1e-8,
                           double tau_rank = 1e-6);

// Smallest singular value over largest of the stacked 8x2 derivative matrix.
double joint_rank_ratio(const DualPairSample& s);

enum class DualPairKind { FocalH, FocalD, EvoluteH, EvoluteD };

const char* to_string(DualPairKind k);

// (F^h, mu) and (F^d_{E^h}, E^h) lie in Delta1, the other two in Delta5.
// The first leg is H^3-valued for Delta1 pairs.
DualPairSample dual_pair(const CurveGeometry& g, DualPairKind kind, double t, double theta);

}  // namespace hyperframe
