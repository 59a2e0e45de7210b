#pragma once

#include <cstddef>
#include <string>

namespace hyperframe {

struct Tolerances {
  double step = 1e-3;
  double tol_frame = 1e-9;
  double tau_zero = 1e-10;
  double tau_sing = 1e-8;
  double tau_dual = 1e-8;
  double tau_rank = 1e-6;
  // Window for whole-fiber records on non-compact fibers.
  double fiber_min = -3.0;
  double fiber_max = 3.0;
  std::size_t fiber_samples = 13;
  std::size_t circle_samples = 12;
  int max_refine = 6;

  // Throws ValidationError for unknown names or out-of-range values.
  void set(const std::string& name, double value);
};

}  // namespace hyperframe
