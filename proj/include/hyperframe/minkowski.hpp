#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace hyperframe {

// Point or vector of R^4_1 with signature (-,+,+,+).
struct MinkVec {
  std::array<double, 4> x{};

  constexpr MinkVec() = default;
  constexpr MinkVec(double x0, double x1, double x2, double x3) : x{x0, x1, x2, x3} {}

  constexpr double& operator[](std::size_t i) { return x[i]; }
  constexpr double operator[](std::size_t i) const { return x[i]; }

  MinkVec& operator+=(const MinkVec& o);
  MinkVec& operator-=(const MinkVec& o);
  MinkVec& operator*=(double s);
  bool is_finite() const;
};

MinkVec operator+(MinkVec a, const MinkVec& b);
MinkVec operator-(MinkVec a, const MinkVec& b);
MinkVec operator-(const MinkVec& a);
MinkVec operator*(double s, MinkVec a);
MinkVec operator*(MinkVec a, double s);
MinkVec operator/(MinkVec a, double s);

double mink_dot(const MinkVec& a, const MinkVec& b);
double euclid_norm(const MinkVec& a);
double max_abs_diff(const MinkVec& a, const MinkVec& b);

enum class CausalClass { Spacelike, Lightlike, Timelike };

const char* to_string(CausalClass c);

double causal_tolerance(const MinkVec& v);
CausalClass causal_character(const MinkVec& v);

// Satisfies <x0, wedge3(x1,x2,x3)> = det(x0,x1,x2,x3).
MinkVec wedge3(const MinkVec& a, const MinkVec& b, const MinkVec& c);

// Rows a, b, c, d.
double det4(const MinkVec& a, const MinkVec& b, const MinkVec& c, const MinkVec& d);

enum class Quadric { H3, S31, LC };

// H3: <x,x>+1 with x0 > 0 enforced by the caller; S31: <x,x>-1; LC: <x,x>.
double membership_residual(const MinkVec& x, Quadric q);

std::string to_string(const MinkVec& v);

}  // namespace hyperframe
