#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "cubic/errors.hpp"
#include "cubic/intersection.hpp"
#include "oracles.hpp"

using namespace cubic;

namespace {

const CubicPoly kDefault(-1, -2, 1);

const UnitSystem& default_units() {
  static const UnitSystem u = find_totally_positive_generators(kDefault, 20);
  return u;
}

const IntMatrix kIdentityRows{{Integer(1), Integer(0), Integer(0)},
                              {Integer(0), Integer(1), Integer(0)},
                              {Integer(0), Integer(0), Integer(1)}};

ClassBasis principal() {
  return {{OrderElement::from_int(0, 0, 1), OrderElement::from_int(0, 1, 0),
           OrderElement::from_int(1, 0, 0)}};
}

std::array<double, 2> mobius(const Sl2& g, double x, double y) {
  const double a = g[0][0], b = g[0][1], c = g[1][0], d = g[1][1];
  const double den = (c * x + d) * (c * x + d) + c * c * y * y;
  return {((a * x + b) * (c * x + d) + a * c * y * y) / den, y / den};
}

double frac_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

}  // namespace

TEST(ReduceSl2, IdentityAtI) {
  const auto r = reduce_sl2(0.0, 1.0);
  EXPECT_DOUBLE_EQ(r.zx, 0.0);
  EXPECT_DOUBLE_EQ(r.zy, 1.0);
  EXPECT_EQ(r.gamma, (Sl2{{{1, 0}, {0, 1}}}));
}

TEST(ReduceSl2, PointOver13) {
  const auto r = reduce_sl2(-3.0 / 13.0, 1.0 / 13.0);
  const auto o = oracle::reduce_z(-3.0 / 13.0, 1.0 / 13.0);
  EXPECT_NEAR(r.zx, o[0], 1e-12);
  EXPECT_NEAR(r.zy, o[1], 1e-12);
  EXPECT_NEAR(r.zx, -0.1, 1e-12);
  EXPECT_NEAR(r.zy, 1.3, 1e-12);
}

TEST(ReduceSl2, HalfOpenConvention) {
  const auto r = reduce_sl2(0.5, 2.0);
  EXPECT_DOUBLE_EQ(r.zx, -0.5);
  EXPECT_DOUBLE_EQ(r.zy, 2.0);
  EXPECT_THROW(reduce_sl2(0.0, 0.0), PreconditionFailed);
}

TEST(ReduceSl2, GammaMapsInputToOutput) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(0.001, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double x = ux(rng), y = uy(rng);
    const auto r = reduce_sl2(x, y);
    const auto& g = r.gamma;
    EXPECT_EQ(g[0][0] * g[1][1] - g[0][1] * g[1][0], 1);
    EXPECT_TRUE(g[1][0] > 0 || (g[1][0] == 0 && g[1][1] > 0));
    const auto m = mobius(g, x, y);
    EXPECT_NEAR(m[0], r.zx, 1e-9);
    EXPECT_NEAR(m[1], r.zy, 1e-9);
    EXPECT_LE(std::abs(r.zx), 0.5 + 1e-12);
    EXPECT_GE(r.zx * r.zx + r.zy * r.zy, 1.0 - 1e-12);
  }
}

TEST(ReduceSl2, ExactAgreesWithFloat) {
  for (long m = 2; m <= 300; ++m) {
    for (long mu = 0; mu < m; mu += 7) {
      const auto e = reduce_sl2_exact(Rational(-mu, m), Rational(1, m));
      const auto d = reduce_sl2(-static_cast<double>(mu) / m, 1.0 / m);
      const double ex = e.x.get_d(), ey = e.y.get_d();
      EXPECT_NEAR(ey, d.zy, 1e-9);
      // On the boundary the float path may land on the mirrored point.
      const bool boundary = std::abs(std::abs(ex) - 0.5) < 1e-9 ||
                            std::abs(ex * ex + ey * ey - 1.0) < 1e-9;
      if (boundary) {
        EXPECT_NEAR(std::abs(ex), std::abs(d.zx), 1e-9);
      } else {
        EXPECT_NEAR(ex, d.zx, 1e-9);
      }
      EXPECT_GE(e.x, Rational(-1, 2));
      EXPECT_LT(e.x, Rational(1, 2));
      EXPECT_GE(e.x * e.x + e.y * e.y, 1);
    }
  }
}

TEST(AffineFiber, TrivialCases) {
  const std::array<std::array<double, 2>, 2> id{{{1.0, 0.0}, {0.0, 1.0}}};
  const Sl2 g{{{1, 0}, {0, 1}}};
  auto c = affine_fiber_coords({0.0, 0.0}, id, g);
  EXPECT_EQ(c[0], 0.0);
  EXPECT_EQ(c[1], 0.0);
  c = affine_fiber_coords({0.25, 0.5}, id, g);
  EXPECT_DOUBLE_EQ(c[0], 0.25);
  EXPECT_DOUBLE_EQ(c[1], 0.5);
  EXPECT_THROW(affine_fiber_coords({0.0, 0.0}, {{{1.0, 2.0}, {2.0, 4.0}}}, g), SingularM);
}

TEST(AffineFiber, InvariantUnderIntegralAffineMaps) {
  // (M, v) -> (g0 M, w M + v) with gamma -> gamma g0^-1 leaves c fixed mod 1.
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ur(-2.0, 2.0), up(0.3, 2.0);
  std::uniform_int_distribution<long> ui(-3, 3);
  const std::vector<Sl2> gens{Sl2{{{1, 1}, {0, 1}}}, Sl2{{{0, -1}, {1, 0}}},
                              Sl2{{{2, 1}, {1, 1}}}, Sl2{{{1, 0}, {-3, 1}}}};
  for (int trial = 0; trial < 200; ++trial) {
    const double p = up(rng), q = ur(rng);
    const std::array<std::array<double, 2>, 2> m{{{p, q}, {0.0, 1.0 / p}}};
    const std::array<double, 2> v{ur(rng), ur(rng)};
    const Sl2 g0 = gens[static_cast<std::size_t>(trial) % gens.size()];
    const Sl2 gamma = gens[static_cast<std::size_t>(trial + 1) % gens.size()];
    const long w0 = ui(rng), w1 = ui(rng);
    std::array<std::array<double, 2>, 2> m2{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m2[i][j] = g0[i][0] * m[0][j] + g0[i][1] * m[1][j];
    const std::array<double, 2> v2{w0 * m[0][0] + w1 * m[1][0] + v[0],
                                   w0 * m[0][1] + w1 * m[1][1] + v[1]};
    const Sl2 g0inv{{{g0[1][1], -g0[0][1]}, {-g0[1][0], g0[0][0]}}};
    Sl2 gamma2{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) gamma2[i][j] = gamma[i][0] * g0inv[0][j] + gamma[i][1] * g0inv[1][j];
    const auto c = affine_fiber_coords(v, m, gamma);
    const auto c2 = affine_fiber_coords(v2, m2, gamma2);
    EXPECT_LT(frac_distance(c[0], c2[0]), 1e-9);
    EXPECT_LT(frac_distance(c[1], c2[1]), 1e-9);
  }
}

TEST(IntersectionPointTest, WholeRing) {
  const auto& u = default_units();
  const auto xi = reduce_to_domain(OrderElement::from_int(1), u, kDefault).first;
  const auto p = intersection_point(xi, kIdentityRows, kDefault);
  EXPECT_EQ(p.norm, 1);
  EXPECT_EQ(p.m1, 1);
  EXPECT_EQ(p.m2, 1);
  EXPECT_DOUBLE_EQ(p.zx, 0.0);
  EXPECT_DOUBLE_EQ(p.zy, 1.0);
  EXPECT_EQ(p.c1, 0.0);
  EXPECT_EQ(p.c2, 0.0);
  EXPECT_EQ(p.t, 0.0);
}

TEST(IntersectionPointTest, PrimeOver13) {
  const auto& u = default_units();
  const auto pts = enumerate_domain(kDefault, u, principal().basis, 13);
  bool found = false;
  for (const auto& xi : pts) {
    const auto p = intersection_point(xi, kIdentityRows, kDefault);
    if (p.m2 != 13 || p.mu2 != 3) continue;
    found = true;
    EXPECT_EQ(p.m1, 1);
    EXPECT_NEAR(p.zx, -0.1, 1e-12);
    EXPECT_NEAR(p.zy, 1.3, 1e-12);
    EXPECT_NEAR(p.t, std::log(13.0) / 6.0, 1e-15);
  }
  EXPECT_TRUE(found);
}

TEST(IntersectionPointTest, UnitOrbitInvariance) {
  const auto& u = default_units();
  const auto pts = enumerate_domain(kDefault, u, principal().basis, 500);
  for (const auto& xi : pts) {
    const auto base = intersection_point(xi, kIdentityRows, kDefault);
    for (const auto& e : {u.eps1, u.eps2, inverse(u.eps1, kDefault)}) {
      DomainPoint moved = xi;
      moved.xi = mul(xi.xi, e, kDefault);
      const auto p = intersection_point(moved, kIdentityRows, kDefault);
      EXPECT_EQ(std::tie(p.norm, p.m1, p.mu1, p.m2, p.mu2, p.lambda),
                std::tie(base.norm, base.m1, base.mu1, base.m2, base.mu2, base.lambda));
      EXPECT_EQ(p.zx, base.zx);
      EXPECT_EQ(p.zy, base.zy);
      EXPECT_EQ(p.c1, base.c1);
      EXPECT_EQ(p.c2, base.c2);
      const auto again = reduce_to_domain(moved.xi, u, kDefault).first;
      EXPECT_EQ(again.xi, xi.xi);
    }
  }
}

TEST(Pipeline, MatchesIdealEnumeration) {
  const auto& u = default_units();
  const auto pts = run_pipeline(kDefault, u, {principal()}, 3000);
  const auto ideals = enumerate_ideal_tuples(kDefault, 3000);
  ASSERT_EQ(pts.size(), ideals.size());
  std::multiset<std::tuple<std::string, std::string, std::string, std::string, std::string>> a, b;
  for (const auto& p : pts)
    a.insert({p.m1.get_str(), p.mu1.get_str(), p.m2.get_str(), p.mu2.get_str(), p.lambda.get_str()});
  for (const auto& h : ideals)
    b.insert({h.m1.get_str(), h.mu1.get_str(), h.m2.get_str(), h.mu2.get_str(), h.lambda.get_str()});
  EXPECT_EQ(a, b);
}

TEST(Pipeline, PointInvariants) {
  const auto& u = default_units();
  const auto pts = run_pipeline(kDefault, u, {principal()}, 5000);
  for (const auto& p : pts) {
    EXPECT_EQ(p.norm, p.m1 * p.m1 * p.m2);
    EXPECT_EQ(gcd(gcd(p.m1, p.m2), Integer(p.mu1 - p.mu2)), 1);
    EXPECT_TRUE(divides(p.m1, kDefault(p.mu1)));
    EXPECT_TRUE(divides(p.m2, kDefault(p.mu2)));
    EXPECT_EQ(floor_mod(p.lambda - lambda_from_roots(p.mu1, p.m1, p.mu2, p.m2, kDefault),
                        p.m1 * p.m2),
              0);
    EXPECT_LE(std::abs(p.zx), 0.5 + 1e-12);
    EXPECT_GE(p.zx * p.zx + p.zy * p.zy, 1.0 - 1e-12);
    EXPECT_GE(p.c1, 0.0);
    EXPECT_LT(p.c1, 1.0);
    EXPECT_GE(p.c2, 0.0);
    EXPECT_LT(p.c2, 1.0);
    EXPECT_NEAR(p.t, std::log(p.norm.get_d()) / 6.0, 1e-12);
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) EXPECT_LE(pts[i].norm, pts[i + 1].norm);
}

TEST(Pipeline, FiberCoordinatesMatchGenericChart) {
  // The exact fiber coordinates agree with the floating point chart applied
  // to v = x M, the P0 translation of the intersection.
  const auto& u = default_units();
  for (const auto& p : run_pipeline(kDefault, u, {principal()}, 2000)) {
    const double m2 = p.m2.get_d(), m1 = p.m1.get_d(), mu2 = p.mu2.get_d();
    const double r = floor_mod(p.mu1 - 1, p.m1).get_d();
    const double x0 = r / m1, x1 = (r * mu2 + p.lambda.get_d()) / (m1 * m2);
    const std::array<std::array<double, 2>, 2> m{
        {{1.0 / std::sqrt(m2), -mu2 / std::sqrt(m2)}, {0.0, std::sqrt(m2)}}};
    const std::array<double, 2> v{x0 * m[0][0] + x1 * m[1][0], x0 * m[0][1] + x1 * m[1][1]};
    const auto g = reduce_sl2(-mu2 / m2, 1.0 / m2).gamma;
    const auto c = affine_fiber_coords(v, m, g);
    EXPECT_LT(frac_distance(c[0], p.c1), 1e-6);
    EXPECT_LT(frac_distance(c[1], p.c2), 1e-6);
  }
}
