#pragma once

#include "hyperframe/geometry.hpp"

#include <array>
#include <string>
#include <vector>

namespace hyperframe {

enum class CurvePointType { RegularPoint, Cusp234, DegenerateUnclassified };

const char* to_string(CurvePointType c);

struct EvoluteSample {
  double t = 0.0;
  MinkVec point;
  std::array<MinkVec, 3> derivative;
  CurvePointType type = CurvePointType::DegenerateUnclassified;
  double epsilon = 0.0;
  double epsilon_prime = 0.0;
  Diagnostics diagnostics;
};

EvoluteSample evolute_h(const CurveGeometry& g, double t);
EvoluteSample evolute_d(const CurveGeometry& g, double t);

MinkVec dual_of_evolute_h(const CurveGeometry& g, double t, double theta);
MinkVec dual_of_evolute_d(const CurveGeometry& g, double t, double theta);
double lambda_dual_h(const CurveGeometry& g, double t, double theta);
double lambda_dual_d(const CurveGeometry& g, double t, double theta);

// psi(t) = -<X, E'(t)> with X the one-sided limit of E'/|E'| taken at t0 + delta
// (t0 - delta at the right end of the domain); psi_prime by differences clamped to the domain.
struct PsiCheck {
  double psi = 0.0;
  double psi_prime = 0.0;
};

PsiCheck psi_cross_check_h(const CurveGeometry& g, double t0, double delta = 1e-4);
PsiCheck psi_cross_check_d(const CurveGeometry& g, double t0, double delta = 1e-4);

// Diagnostics carry psi and psi_prime when the neighborhood is inside the domain.
DualSurfaceRecord classify_dual_h(const CurveGeometry& g, double t0);
DualSurfaceRecord classify_dual_d(const CurveGeometry& g, double t0);

struct CorrespondenceEntry {
  double t = 0.0;
  double theta = 0.0;
  double distance = 0.0;
  bool antipodal = false;
  SingularityType focal = SingularityType::DegenerateUnclassified;
  CurvePointType evolute = CurvePointType::DegenerateUnclassified;
  SingularityType dual = SingularityType::DegenerateUnclassified;
  std::vector<std::pair<std::string, bool>> agreements;
};

enum class LegStatus { Pass, Fail, Skipped };

const char* to_string(LegStatus s);

struct CorrespondenceLeg {
  std::string name;
  LegStatus status = LegStatus::Skipped;
  std::string reason;
  double max_distance = 0.0;
  std::vector<CorrespondenceEntry> entries;
};

struct CorrespondenceReport {
  CorrespondenceLeg hyperbolic;
  CorrespondenceLeg de_sitter;
};

CorrespondenceLeg correspondence_leg_h(const CurveGeometry& g, std::span<const double> ts);
CorrespondenceLeg correspondence_leg_d(const CurveGeometry& g, std::span<const double> ts);
CorrespondenceReport correspondence_check(const CurveGeometry& g);

}  // namespace hyperframe
