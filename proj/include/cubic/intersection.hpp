#pragma once

// The map from totally positive xi to the point (torus chart, reduced
// hyperbolic point, affine fiber coordinates) it determines.

#include <array>
#include <cstdint>
#include <vector>

#include "cubic/ideal_hnf.hpp"
#include "cubic/units.hpp"

namespace cubic {

using Sl2 = std::array<std::array<long, 2>, 2>;

struct IntersectionPoint {
  Integer norm;  // N(xi) * N(I_l) = m1^2 m2
  double s1 = 0.0, s2 = 0.0;
  Integer m1, mu1, m2, mu2, lambda;
  double zx = 0.0, zy = 0.0;
  double c1 = 0.0, c2 = 0.0;
  double t = 0.0;
};

struct ReducedPoint {
  double zx = 0.0, zy = 0.0;
  Sl2 gamma{};
};

/// Translate zx into [-1/2, 1/2) and invert while |z| < 1; gamma z is the
/// result, with gamma's sign canonicalized. Throws NonConvergence after 10^4
/// steps or PreconditionFailed for zy <= 0.
ReducedPoint reduce_sl2(double zx, double zy);

/// The same reduction carried out exactly for z = x + i y with x, y
/// rational.
struct ExactReducedPoint {
  Rational x, y;
  Sl2 gamma{};
};
ExactReducedPoint reduce_sl2_exact(const Rational& x, const Rational& y);

/// c = v M^-1 gamma^-1 mod 1. Throws SingularM if det M <= 0.
std::array<double, 2> affine_fiber_coords(const std::array<double, 2>& v,
                                          const std::array<std::array<double, 2>, 2>& m,
                                          const Sl2& gamma);

/// Point attached to xi (a domain point of I_l^-1); `ideal_rows` is an
/// integral basis of I_l in (alpha^2, alpha, 1) coordinates. Throws
/// NotSublattice or InternalError when xi I_l is not a primitive ideal.
IntersectionPoint intersection_point(const DomainPoint& xi,
                                     const IntMatrix& ideal_rows,
                                     const CubicPoly& f);

/// One narrow ideal class representative, given by a basis of I_l.
struct ClassBasis {
  std::array<OrderElement, 3> basis;
};

/// Enumerates every class up to max_norm and returns the points ordered by
/// (norm, m1, mu1, m2, mu2, lambda).
std::vector<IntersectionPoint> run_pipeline(const CubicPoly& f,
                                            const UnitSystem& u,
                                            const std::vector<ClassBasis>& classes,
                                            std::int64_t max_norm);

}  // namespace cubic
