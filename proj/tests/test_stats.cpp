#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>

#include "cubic/errors.hpp"
#include "cubic/stats.hpp"
#include "oracles.hpp"

using namespace cubic;

TEST(Ks, AnalyticCases) {
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100.0);
  EXPECT_NEAR(ks_uniform(grid), 0.005, 1e-12);
  EXPECT_NEAR(ks_uniform(std::vector<double>(10, 0.5)), 0.5, 1e-12);
  EXPECT_THROW(ks_uniform({}), Empty);
}

TEST(Ks, PseudoRandomSample) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(10000);
  for (auto& x : s) x = u(rng);
  EXPECT_LT(ks_uniform(s), 0.025);
}

TEST(ChiSquare, ClosedForms) {
  std::vector<std::vector<double>> balanced;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 5; ++k) balanced.push_back({(i + 0.5) / 10, (j + 0.5) / 10});
  const auto b = chi_square_bins(balanced, 10);
  EXPECT_NEAR(b.stat, 0.0, 1e-12);
  EXPECT_EQ(b.dof, 99);

  std::vector<std::vector<double>> lump(1000, {0.01, 0.01});
  EXPECT_NEAR(chi_square_bins(lump, 10).stat, 1000.0 * 99.0, 1e-6);
  EXPECT_THROW(chi_square_bins(std::vector<std::vector<double>>(10, {0.1, 0.1}), 10),
               TooFewSamples);
}

TEST(ChiSquare, PseudoRandomSample) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(100000);
  for (auto& p : pts) p = {u(rng), u(rng)};
  const auto c = chi_square_bins(pts, 10);
  EXPECT_GE(c.stat, 60.0);
  EXPECT_LE(c.stat, 140.0);
}

TEST(Cusp, ExpectedMatchesQuadrature) {
  for (double y : {1.0, 2.0, 3.0, 5.0, 50.0}) {
    const auto c = cusp_fraction({}, y);
    EXPECT_NEAR(c.expected, oracle::cusp_share(y), 1e-6);
  }
  EXPECT_NEAR(cusp_fraction({}, 2.0).expected, 0.4775, 1e-4);
  EXPECT_LT(cusp_fraction({}, 1e9).expected, 1e-8);
  EXPECT_THROW(cusp_fraction({}, 0.5), PreconditionFailed);
}

TEST(Cusp, ObservedFractions) {
  std::vector<std::array<double, 2>> flat(100, {0.0, 1.0});
  EXPECT_EQ(cusp_fraction(flat, 2.0).observed, 0.0);
  // Haar-distributed sample of the standard domain by rejection.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::array<double, 2>> pts;
  while (pts.size() < 200000) {
    const double x = u(rng) - 0.5;
    const double y = std::sqrt(3.0) / 2.0 / u(rng);  // density ~ 1/y^2 above sqrt3/2
    if (x * x + y * y >= 1.0) pts.push_back({x, y});
  }
  for (double y : {2.0, 3.0, 5.0}) {
    const auto c = cusp_fraction(pts, y);
    EXPECT_NEAR(c.observed, c.expected, 0.005) << y;
  }
}

TEST(BadLu, MonotoneAndLinear) {
  const CubicPoly f(-1, -2, 1);
  const auto u = find_totally_positive_generators(f, 20);
  const auto g0 = basis_matrix_g0(f);
  const std::array<OrderElement, 3> principal{OrderElement::from_int(0, 0, 1),
                                              OrderElement::from_int(0, 1, 0),
                                              OrderElement::from_int(1, 0, 0)};
  const auto gl = basis_matrix_of(principal, u.roots);
  const auto scan = badlu_scan(gl, g0, u, 100, {0.0, 0.025, 0.05, 0.1, 0.2, 1.0, 10.0});
  EXPECT_EQ(scan[0].fraction, 0.0);
  for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
    EXPECT_LE(scan[i].fraction, scan[i + 1].fraction);
  }
  EXPECT_LE(scan[2].fraction / 0.05, 2.0 * scan[4].fraction / 0.2 + 0.1);
  EXPECT_THROW(badlu_scan(gl, g0, u, 0, {0.1}), PreconditionFailed);
}

TEST(BadLu, EntryAgainstMatrixProduct) {
  const CubicPoly f(-1, -2, 1);
  const auto u = find_totally_positive_generators(f, 20);
  const auto g0 = basis_matrix_g0(f);
  const auto inv = g0.inverse();
  for (double s1 : {0.1, 0.5, 0.9}) {
    for (double s2 : {0.2, 0.7}) {
      double want = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double l = s1 * u.logs[0][k] + s2 * u.logs[1][k];
        want += g0.m[0][k] * std::exp(l) * inv.m[k][0];
      }
      EXPECT_NEAR(badlu_entry(g0, inv, u, s1, s2), want, 1e-12);
    }
  }
  // at s = 0 the entry of g0 g0^-1 is 1
  EXPECT_NEAR(badlu_entry(g0, inv, u, 0.0, 0.0), 1.0, 1e-9);
}

TEST(Discrepancy, GridAndLump) {
  std::vector<std::array<double, 2>> grid;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) grid.push_back({(i + 0.5) / 64, (j + 0.5) / 64});
  EXPECT_NEAR(star_discrepancy_2d(grid), 0.0, 1e-12);
  std::vector<std::array<double, 2>> lump(50, {0.999, 0.999});
  // worst corner: x < 63/64, y < 1 holds no point but has area 63/64
  EXPECT_NEAR(star_discrepancy_2d(lump), 63.0 / 64.0, 1e-12);
  EXPECT_THROW(star_discrepancy_2d({}), Empty);
}

TEST(Report, JsonShape) {
  std::vector<IntersectionPoint> pts;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    IntersectionPoint p;
    p.s1 = u(rng);
    p.s2 = u(rng);
    p.c1 = u(rng);
    p.c2 = u(rng);
    p.zx = u(rng) - 0.5;
    p.zy = 1.0 + u(rng);
    pts.push_back(p);
  }
  const auto r = make_report(pts, 10, {2.0, 3.0});
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["n"], 1000);
  for (const char* k : {"s1", "s2", "c1", "c2"}) EXPECT_TRUE(j["ks"].contains(k));
  EXPECT_EQ(j["chi2"]["torus"]["dof"], 99);
  EXPECT_TRUE(j["chi2"]["joint"].is_null());  // 1000 < 5 * 256
  ASSERT_EQ(j["cusp"].size(), 2u);
  EXPECT_EQ(j["cusp"][0]["Y"], 2.0);
  EXPECT_TRUE(j.contains("badlu"));

  const auto empty = make_report({}, 10, {2.0});
  EXPECT_EQ(empty.n, 0u);
}
