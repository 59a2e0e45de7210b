#pragma once

#include "hyperframe/evolute.hpp"
#include "hyperframe/focal.hpp"
#include "hyperframe/geometry.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

namespace hftest {

using namespace hyperframe;

inline FramedCurveModel model(const std::string& m, const std::string& n, const std::string& a, const std::string& b,
                              double t0 = 0.0, double t1 = 4.0, std::size_t samples = 81) {
  return integrate_frame(parse_quartet(m, n, a, b), Domain{t0, t1, samples}, standard_frame(t0));
}

inline CurveGeometry geometry(const std::string& m, const std::string& n, const std::string& a, const std::string& b,
                              double t0 = 0.0, double t1 = 4.0, std::size_t samples = 81) {
  return CurveGeometry(model(m, n, a, b, t0, t1, samples));
}

// Leibniz expansion over all 24 permutations.
inline double leibniz_det(const std::array<MinkVec, 4>& rows) {
  std::array<int, 4> p{0, 1, 2, 3};
  double total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j] ? 1 : 0;
    double term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < 4; ++i) term *= rows[i][static_cast<std::size_t>(p[i])];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

inline double dot(const MinkVec& a, const MinkVec& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline MinkVec random_vec(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng)};
}

// Central differences of a surface in t and theta.
template <class F>
std::array<MinkVec, 2> central_partials(F&& f, double t, double theta, double h = 1e-5) {
  return {(f(t + h, theta) - f(t - h, theta)) / (2 * h), (f(t, theta + h) - f(t, theta - h)) / (2 * h)};
}

}  // namespace hftest
