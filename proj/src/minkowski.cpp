#include "hyperframe/minkowski.hpp"
#include "hyperframe/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyperframe {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownIdentifier: return "unknown-identifier";
    case ErrorKind::NonIntegerExponent: return "non-integer-exponent";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::FrameDegenerate: return "frame-degenerate";
    case ErrorKind::SurfaceUndefined: return "surface-undefined";
    case ErrorKind::EvoluteUndefined: return "evolute-undefined";
    case ErrorKind::IntegrationFailure: return "integration-failure";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

MinkVec& MinkVec::operator+=(const MinkVec& o) {
  for (std::size_t i = 0; i < 4; ++i) x[i] += o.x[i];
  return *this;
}

MinkVec& MinkVec::operator-=(const MinkVec& o) {
  for (std::size_t i = 0; i < 4; ++i) x[i] -= o.x[i];
  return *this;
}

MinkVec& MinkVec::operator*=(double s) {
  for (auto& v : x) v *= s;
  return *this;
}

bool MinkVec::is_finite() const {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

MinkVec operator+(MinkVec a, const MinkVec& b) { return a += b; }
MinkVec operator-(MinkVec a, const MinkVec& b) { return a -= b; }
MinkVec operator-(const MinkVec& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
MinkVec operator*(double s, MinkVec a) { return a *= s; }
MinkVec operator*(MinkVec a, double s) { return a *= s; }
MinkVec operator/(MinkVec a, double s) { return a *= 1.0 / s; }

double mink_dot(const MinkVec& a, const MinkVec& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double euclid_norm(const MinkVec& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

double max_abs_diff(const MinkVec& a, const MinkVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Lightlike: return "lightlike";
    case CausalClass::Timelike: return "timelike";
  }
  return "unknown";
}

double causal_tolerance(const MinkVec& v) {
  double e = 0.0;
  for (double c : v.x) e += c * c;
  return 1e-12 * std::max(1.0, e);
}

CausalClass causal_character(const MinkVec& v) {
  if (!v.is_finite()) throw Error(ErrorKind::InvalidInput, "non-finite vector " + to_string(v));
  if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0 && v[3] == 0.0)
    throw Error(ErrorKind::InvalidInput, "causal character of the zero vector");
  const double q = mink_dot(v, v);
  const double tol = causal_tolerance(v);
  if (q > tol) return CausalClass::Spacelike;
  if (q < -tol) return CausalClass::Timelike;
  return CausalClass::Lightlike;
}

namespace {

double det3(double a, double b, double c,
            double d, double e, double f,
            double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

}  // namespace

// Cofactor expansion along a first row (-e0, e1, e2, e3).
MinkVec wedge3(const MinkVec& a, const MinkVec& b, const MinkVec& c) {
  const double m0 = det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
  const double m1 = det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
  const double m2 = det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
  const double m3 = det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
  return {-m0, -m1, m2, -m3};
}

double det4(const MinkVec& a, const MinkVec& b, const MinkVec& c, const MinkVec& d) {
  return mink_dot(a, wedge3(b, c, d));
}

double membership_residual(const MinkVec& x, Quadric q) {
  const double s = mink_dot(x, x);
  switch (q) {
    case Quadric::H3: return s + 1.0;
    case Quadric::S31: return s - 1.0;
    case Quadric::LC: return s;
  }
  return s;
}

std::string to_string(const MinkVec& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << v[0] << ", " << v[1] << ", " << v[2] << ", " << v[3] << ')';
  return os.str();
}

}  // namespace hyperframe
