#pragma once

#include "hyperframe/geometry.hpp"

#include <span>
#include <string>
#include <vector>

namespace hyperframe {

// Empty when the surface is defined at t, otherwise the reason.
std::string surface_undefined_reason(const CurveGeometry& g, SurfaceKind kind, double t);

// Evaluation of any of the four surfaces; throws SurfaceUndefined outside its domain.
SurfaceJet surface_jet(const CurveGeometry& g, SurfaceKind kind, double t, double theta);
MinkVec surface_partner(const CurveGeometry& g, SurfaceKind kind, double t);
double lambda_closed(const CurveGeometry& g, SurfaceKind kind, double t, double theta);
// det(F, F_t, F_theta, partner).
double lambda_determinant(const CurveGeometry& g, SurfaceKind kind, double t, double theta);

MinkVec focal_h_point(const CurveGeometry& g, double t, double theta);
MinkVec focal_d_point(const CurveGeometry& g, double t, double theta);
double lambda_h(const CurveGeometry& g, double t, double theta);
double lambda_d(const CurveGeometry& g, double t, double theta);

// Records on the model grid, classified. Grid points where the surface is
// undefined are skipped; throws SurfaceUndefined when none is defined.
std::vector<SingularPointRecord> singular_locus_h(const CurveGeometry& g);
std::vector<SingularPointRecord> singular_locus_d(const CurveGeometry& g);
std::vector<SingularPointRecord> singular_locus_h(const CurveGeometry& g, std::span<const double> ts);
std::vector<SingularPointRecord> singular_locus_d(const CurveGeometry& g, std::span<const double> ts);

// Fill type, nondegenerate flag and diagnostics of a locus record.
SingularityType classify_h(const CurveGeometry& g, SingularPointRecord& record);
SingularityType classify_d(const CurveGeometry& g, SingularPointRecord& record);

struct SurfaceGrid {
  SurfaceKind kind = SurfaceKind::Fh;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<MinkVec> points;
};

SurfaceGrid surface_grid(const CurveGeometry& g, SurfaceKind kind, std::span<const double> ts,
                         std::span<const double> thetas);

}  // namespace hyperframe
