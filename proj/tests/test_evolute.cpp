#include "hyperframe/error.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace hyperframe;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

// theta' - MN/sqrt(A^2 - M^2) with theta' from central differences of artanh(P/D^h).
double fd_epsilon_h(const CurveGeometry& g, double t) {
  auto theta = [&](double u) {
    const FrenetData d = g.model().frenet_data(u);
    return std::atanh(d.P / d.Dh);
  };
  const double h = 1e-5;
  const FrenetData d = g.model().frenet_data(t);
  return (theta(t + h) - theta(t - h)) / (2 * h) - d.M * d.N / d.sh;
}

double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST(EvoluteH, HelixPointAndType) {
  const auto g = hftest::geometry("1", "1", "2", "0");
  for (double t : {0.0, 1.0, 3.7}) {
    const FrenetFrame f = g.frenet(t);
    const EvoluteSample e = evolute_h(g, t);
    EXPECT_LE(max_abs_diff(e.point, (2.0 * f.gamma - f.n1) / std::sqrt(3.0)), 1e-12);
    EXPECT_EQ(e.type, CurvePointType::RegularPoint);
    EXPECT_NEAR(e.epsilon, -1.0 / std::sqrt(3.0), 1e-12);
  }
}

TEST(EvoluteH, OnHyperbolicSpaceAndDerivativeMatches) {
  const auto g = hftest::geometry("0.5 + 0.3*sin(t)", "1 + t/4", "2 + cos(t)/2", "t/5", 0.0, 2.0, 41);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 1.9);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng);
    const EvoluteSample e = evolute_h(g, t);
    EXPECT_NEAR(mink_dot(e.point, e.point), -1.0, 1e-9);
    const double h = 1e-5;
    const MinkVec fd = (evolute_h(g, t + h).point - evolute_h(g, t - h).point) / (2 * h);
    EXPECT_LE(max_abs_diff(fd, e.derivative[0]), 1e-6);
  }
}

TEST(EvoluteH, UndefinedCases) {
  const auto geo = hftest::geometry("1", "0", "0", "0", 0.0, 1.0, 5);
  EXPECT_EQ(kind_of([&] { evolute_h(geo, 0.5); }), ErrorKind::EvoluteUndefined);
  const auto ds = hftest::geometry("2", "1", "1", "0");
  EXPECT_EQ(kind_of([&] { evolute_h(ds, 0.5); }), ErrorKind::EvoluteUndefined);
  const auto hy = hftest::geometry("1", "1", "2", "0");
  EXPECT_EQ(kind_of([&] { evolute_d(hy, 0.5); }), ErrorKind::EvoluteUndefined);
}

TEST(EvoluteD, HelixPointAndType) {
  const auto g = hftest::geometry("2", "1", "1", "0");
  const FrenetFrame f = g.frenet(1.3);
  const EvoluteSample e = evolute_d(g, 1.3);
  EXPECT_LE(max_abs_diff(e.point, (f.gamma - 2.0 * f.n1) / std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(mink_dot(e.point, e.point), 1.0, 1e-9);
  EXPECT_EQ(e.type, CurvePointType::RegularPoint);
  EXPECT_NEAR(e.epsilon, -2.0 / std::sqrt(3.0), 1e-12);
}

TEST(EvoluteH, CuspAtSweptZero) {
  const auto g = hftest::geometry("0.5*t + 0.2", "1", "2", "0", -1.0, 0.2, 13);
  const double t0 = bisect([&](double t) { return fd_epsilon_h(g, t); }, -0.9, 0.1);
  EXPECT_NEAR(t0, -0.4, 1e-6);
  const EvoluteSample e = evolute_h(g, -0.4);
  EXPECT_EQ(e.type, CurvePointType::Cusp234);
  EXPECT_LE(euclid_norm(e.derivative[0]), 1e-10);
  EXPECT_EQ(e.diagnostics.at("rank_d2_d3"), 2.0);
  EXPECT_EQ(evolute_h(g, -0.3).type, CurvePointType::RegularPoint);
}

TEST(Epsilon, FormulaAndEvolutePathsAgree) {
  const auto gh = hftest::geometry("0.5 + 0.3*sin(t)", "1 + t/4", "2 + cos(t)/2", "t/5", 0.0, 2.0, 41);
  const auto gd = hftest::geometry("2 + 0.3*sin(t)", "1 + t/4", "1 + cos(t)/4", "t/5", 0.0, 2.0, 41);
  for (double t = 0.0; t <= 2.0; t += 0.05) {
    const auto eh = gh.epsilon_h(gh.model().frenet_data(t));
    EXPECT_NEAR(eh.eps, eh.eps_formula, 1e-8);
    EXPECT_NEAR(eh.eps, fd_epsilon_h(gh, t), 1e-7);
    const auto ed = gd.epsilon_d(gd.model().frenet_data(t));
    EXPECT_NEAR(ed.eps, ed.eps_formula, 1e-8);
  }
}

TEST(DualOfEvoluteH, SpecialFibers) {
  const auto g = hftest::geometry("1", "1", "2", "0");
  const FrenetFrame f = g.frenet(0.8);
  EXPECT_LE(max_abs_diff(dual_of_evolute_h(g, 0.8, 0.0), f.mu), 1e-15);
  const MinkVec q = dual_of_evolute_h(g, 0.8, M_PI / 2);
  EXPECT_LE(max_abs_diff(q, (-1.0 * f.gamma + 2.0 * f.n1) / std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(mink_dot(q, q), 1.0, 1e-9);
}

TEST(DualOfEvoluteD, OnDeSitterSpace) {
  const auto g = hftest::geometry("2", "1", "1", "0");
  EXPECT_LE(max_abs_diff(dual_of_evolute_d(g, 0.8, 0.0), g.frenet(0.8).mu), 1e-15);
  const MinkVec x = dual_of_evolute_d(g, 0.8, 1.0);
  EXPECT_NEAR(mink_dot(x, x), 1.0, 1e-9);
}

TEST(LambdaDual, HelixValuesAndDeterminantSign) {
  const auto gh = hftest::geometry("1", "1", "2", "0");
  EXPECT_EQ(lambda_dual_h(gh, 1.0, 0.0), 0.0);
  // Sign fixed by det(F, F_t, F_theta, E^h) for the standard orientation.
  EXPECT_NEAR(lambda_dual_h(gh, 1.0, M_PI / 2), std::sqrt(12.0) / 3, 1e-12);
  EXPECT_NEAR(lambda_determinant(gh, SurfaceKind::DualEh, 1.0, M_PI / 2), std::sqrt(12.0) / 3, 1e-9);

  const auto gd = hftest::geometry("2", "1", "1", "0");
  EXPECT_EQ(lambda_dual_d(gd, 1.0, 0.0), 0.0);
  EXPECT_NEAR(lambda_dual_d(gd, 1.0, 1.0), -std::sinh(1.0) * std::sqrt(3.0) / 3, 1e-12);
}

TEST(ClassifyDual, HelicesAreCuspidalEdges) {
  const auto gh = hftest::geometry("1", "1", "2", "0");
  const auto rh = classify_dual_h(gh, 1.0);
  EXPECT_EQ(rh.type, SingularityType::CuspidalEdge);
  EXPECT_EQ(rh.theta, 0.0);
  const auto gd = hftest::geometry("2", "1", "1", "0");
  EXPECT_EQ(classify_dual_d(gd, 1.0).type, SingularityType::CuspidalEdge);
  EXPECT_NEAR(classify_dual_d(gd, 1.0).diagnostics.at("epsilon"), evolute_d(gd, 1.0).epsilon, 1e-8);
}

TEST(ClassifyDual, CrossCapAtSweptZero) {
  const auto g = hftest::geometry("0.5*t + 0.2", "1", "2", "0", -1.0, 0.2, 13);
  const auto r = classify_dual_h(g, -0.4);
  EXPECT_EQ(r.type, SingularityType::CuspidalCrossCap);
  EXPECT_NEAR(r.diagnostics.at("epsilon"), evolute_h(g, -0.4).epsilon, 1e-8);
  EXPECT_EQ(classify_dual_h(g, -0.1).type, SingularityType::CuspidalEdge);
}

TEST(ClassifyDual, NeverCrossCapWhenPVanishes) {
  // m = c a with N != 0.
  const auto g = hftest::geometry("1.8*(1 + t/3)", "1 + t^2", "1 + t/3", "0", 0.0, 1.0, 21);
  for (const auto& s : g.model().samples()) EXPECT_NE(classify_dual_d(g, s.t).type, SingularityType::CuspidalCrossCap);
}

TEST(Correspondence, HyperbolicHelix) {
  const auto g = hftest::geometry("1", "1", "2", "0");
  const auto rep = correspondence_check(g);
  EXPECT_EQ(rep.hyperbolic.status, LegStatus::Pass);
  EXPECT_LE(rep.hyperbolic.max_distance, 1e-8);
  EXPECT_EQ(rep.de_sitter.status, LegStatus::Skipped);
  EXPECT_FALSE(rep.de_sitter.reason.empty());
  for (const auto& e : rep.hyperbolic.entries)
    for (const auto& [name, ok] : e.agreements) EXPECT_TRUE(ok) << name;
}

TEST(Correspondence, DeSitterHelix) {
  const auto g = hftest::geometry("2", "1", "1", "0");
  const auto rep = correspondence_check(g);
  EXPECT_EQ(rep.de_sitter.status, LegStatus::Pass);
  EXPECT_LE(rep.de_sitter.max_distance, 1e-8);
  EXPECT_EQ(rep.hyperbolic.status, LegStatus::Skipped);
}

TEST(Correspondence, DegenerateSkipsBothLegs) {
  const auto g = hftest::geometry("1", "0", "0", "0", 0.0, 1.0, 11);
  const auto rep = correspondence_check(g);
  EXPECT_EQ(rep.hyperbolic.status, LegStatus::Skipped);
  EXPECT_EQ(rep.de_sitter.status, LegStatus::Skipped);
  EXPECT_FALSE(rep.hyperbolic.reason.empty());
  EXPECT_FALSE(rep.de_sitter.reason.empty());
}

TEST(Correspondence, SweptFamilyAtZero) {
  const auto g = hftest::geometry("0.5*t + 0.2", "1", "2", "0", -1.0, 0.2, 13);
  const double ts[] = {-0.6, -0.4, -0.2};
  const auto leg = correspondence_leg_h(g, ts);
  ASSERT_EQ(leg.entries.size(), 3u);
  EXPECT_EQ(leg.status, LegStatus::Pass);
  EXPECT_EQ(leg.entries[1].focal, SingularityType::Swallowtail);
  EXPECT_EQ(leg.entries[1].evolute, CurvePointType::Cusp234);
  EXPECT_EQ(leg.entries[1].dual, SingularityType::CuspidalCrossCap);
}

TEST(EvoluteH, AgreesWithFrameInvariantForm) {
  // (f gamma - g v1 + h v2)/sqrt(sigma) in the original frame.
  const auto g = hftest::geometry("0.5 + 0.3*sin(t)", "1 + t/4", "2 + cos(t)/2", "t/5", 0.0, 2.0, 41);
  const auto s = scalar_invariants(g.model().quartet());
  for (double t = 0.0; t <= 2.0; t += 0.25) {
    const FrameSample fr = g.model().frame_at(t);
    const double f = eval_expr(s.f, t), gg = eval_expr(s.g, t), h = eval_expr(s.h, t);
    const MinkVec e = (f * fr.gamma - gg * fr.v1 + h * fr.v2) / std::sqrt(eval_expr(s.sigma, t));
    const MinkVec x = evolute_h(g, t).point;
    EXPECT_LE(max_abs_diff(e, x), 1e-9) << t;
  }
}

TEST(PsiCrossCheck, VanishesAtCrossCapWithEpsilonSlope) {
  const auto g = hftest::geometry("0.5*t + 0.2", "1", "2", "0", -1.0, 0.2, 13);
  const PsiCheck p = psi_cross_check_h(g, -0.4);
  const EvoluteSample e = evolute_h(g, -0.4);
  EXPECT_NEAR(p.psi, 0.0, 1e-10);
  EXPECT_NEAR(std::abs(p.psi_prime), std::abs(e.epsilon_prime), 1e-6);
  const auto r = classify_dual_h(g, -0.4);
  EXPECT_NEAR(r.diagnostics.at("psi"), 0.0, 1e-10);
  EXPECT_GT(std::abs(r.diagnostics.at("psi_prime")), 1e-3);
}

TEST(PsiCrossCheck, MagnitudeIsEpsilonAwayFromZero) {
  const auto gh = hftest::geometry("1", "1", "2", "0");
  EXPECT_NEAR(std::abs(psi_cross_check_h(gh, 1.0).psi), 1.0 / std::sqrt(3.0), 1e-7);
  const auto gd = hftest::geometry("2", "1", "1", "0");
  EXPECT_NEAR(std::abs(psi_cross_check_d(gd, 1.0).psi), 2.0 / std::sqrt(3.0), 1e-7);
  EXPECT_NEAR(std::abs(psi_cross_check_d(gd, 4.0).psi), 2.0 / std::sqrt(3.0), 1e-7);
}
