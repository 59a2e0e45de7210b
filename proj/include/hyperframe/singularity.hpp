#pragma once

#include <map>
#include <string>

namespace hyperframe {

enum class SurfaceKind { Fh, Fd, DualEh, DualEd };

enum class SingularityType {
  Regular,
  CuspidalEdge,
  Swallowtail,
  CuspidalBeaks,
  CuspidalLips,
  CuspidalCrossCap,
  DegenerateUnclassified,
};

const char* to_string(SurfaceKind s);
const char* to_string(SingularityType s);

using Diagnostics = std::map<std::string, double>;

struct SingularPointRecord {
  SurfaceKind surface = SurfaceKind::Fh;
  double t = 0.0;
  double theta = 0.0;
  double lambda = 0.0;
  double sigmaF = 0.0;
  SingularityType type = SingularityType::DegenerateUnclassified;
  bool nondegenerate = false;
  bool whole_fiber = false;
  // 0 is the branch whose image is the evolute; 1 its circle partner at theta + pi.
  int branch = 0;
  Diagnostics diagnostics;
};

using DualSurfaceRecord = SingularPointRecord;

}  // namespace hyperframe
