#include "cubic/intersection.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <tuple>

namespace cubic {

namespace {

constexpr int kMaxSteps = 10000;

Sl2 multiply(const Sl2& a, const Sl2& b) {
  Sl2 out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    }
  }
  return out;
}

void canonical_sign(Sl2& g) {
  if (g[1][0] < 0 || (g[1][0] == 0 && g[1][1] < 0)) {
    for (auto& row : g) {
      for (auto& v : row) v = -v;
    }
  }
}

constexpr Sl2 kIdentity{{{1, 0}, {0, 1}}};
constexpr Sl2 kInvert{{{0, -1}, {1, 0}}};

Sl2 translation(long n) { return Sl2{{{1, n}, {0, 1}}}; }

// floor(x + 1/2) for a rational x.
Integer nearest_floor(const Rational& x) {
  const Rational shifted = x + Rational(1, 2);
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return out;
}

}  // namespace

ReducedPoint reduce_sl2(double zx, double zy) {
  if (!(zy > 0)) throw PreconditionFailed("reduce_sl2 needs zy > 0");
  ReducedPoint out;
  out.gamma = kIdentity;
  for (int step = 0; step < kMaxSteps; ++step) {
    const double n = std::floor(zx + 0.5);
    if (n != 0.0) {
      zx -= n;
      out.gamma = multiply(translation(-static_cast<long>(n)), out.gamma);
    }
    const double r2 = zx * zx + zy * zy;
    if (r2 >= 1.0) {
      out.zx = zx;
      out.zy = zy;
      canonical_sign(out.gamma);
      return out;
    }
    zx = -zx / r2;
    zy = zy / r2;
    out.gamma = multiply(kInvert, out.gamma);
  }
  throw NonConvergence(fmt::format("no reduction after {} steps", kMaxSteps));
}

ExactReducedPoint reduce_sl2_exact(const Rational& x0, const Rational& y0) {
  if (y0 <= 0) throw PreconditionFailed("reduce_sl2 needs zy > 0");
  ExactReducedPoint out{x0, y0, kIdentity};
  for (int step = 0; step < kMaxSteps; ++step) {
    const Integer n = nearest_floor(out.x);
    if (n != 0) {
      out.x -= n;
      if (!n.fits_slong_p()) throw NonConvergence("translation out of range");
      out.gamma = multiply(translation(-n.get_si()), out.gamma);
    }
    const Rational r2 = out.x * out.x + out.y * out.y;
    if (r2 >= 1) {
      canonical_sign(out.gamma);
      return out;
    }
    out.x = -out.x / r2;
    out.y = out.y / r2;
    out.gamma = multiply(kInvert, out.gamma);
  }
  throw NonConvergence(fmt::format("no reduction after {} steps", kMaxSteps));
}

std::array<double, 2> affine_fiber_coords(
    const std::array<double, 2>& v,
    const std::array<std::array<double, 2>, 2>& m, const Sl2& gamma) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (!(det > 0)) throw SingularM("affine fiber chart needs det M > 0");
  // w = v M^-1
  const double w0 = (v[0] * m[1][1] - v[1] * m[1][0]) / det;
  const double w1 = (-v[0] * m[0][1] + v[1] * m[0][0]) / det;
  // gamma^-1 = [[d, -b], [-c, a]]
  const double a = gamma[0][0], b = gamma[0][1], c = gamma[1][0], d = gamma[1][1];
  const double c1 = w0 * d - w1 * c;
  const double c2 = -w0 * b + w1 * a;
  auto frac = [](double x) {
    const double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
  };
  return {frac(c1), frac(c2)};
}

IntersectionPoint intersection_point(const DomainPoint& xi,
                                     const IntMatrix& ideal_rows,
                                     const CubicPoly& f) {
  IntMatrix rows;
  for (const auto& r : ideal_rows) {
    rows.push_back(coordinates_of(mul(xi.xi, element_of(r), f)));
  }
  const IdealHNF h = hnf_reduce(rows, f);
  if (h.a != 1) {
    throw InternalError(fmt::format("xi = {} is not primitive (content {})",
                                    xi.xi.to_string(), h.a.get_str()));
  }
  IntersectionPoint p;
  p.norm = h.norm();
  p.s1 = xi.s1;
  p.s2 = xi.s2;
  p.m1 = h.m1;
  p.mu1 = h.mu1;
  p.m2 = h.m2;
  p.mu2 = h.mu2;
  p.lambda = h.lambda;

  // z = M i = (-mu2 + i) / m2, reduced exactly.
  const auto z = reduce_sl2_exact(Rational(-h.mu2, h.m2), Rational(1, h.m2));
  p.zx = z.x.get_d();
  p.zy = z.y.get_d();

  // The P0 part of (m1^2 m2)^(-1/3) B a(-t), B the HNF basis, has
  // translation v = ((mu1+a1)/(m1 sqrt m2), lambda/(m1 sqrt m2)), so
  // x = v M^-1 = ((mu1+a1)/m1, ((mu1+a1) mu2 + lambda)/(m1 m2)) is rational
  // and c = x gamma^-1 mod 1 is computed exactly.
  const Integer shift = floor_mod(h.mu1 + f.a1(), h.m1);
  const Rational x0(shift, h.m1);
  const Rational x1(shift * h.mu2 + h.lambda, h.m1 * h.m2);
  const auto& g = z.gamma;
  // gamma^-1 = [[d, -b], [-c, a]]
  auto frac = [](const Rational& r) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(r - fl).get_d();
  };
  p.c1 = frac(x0 * g[1][1] - x1 * g[1][0]);
  p.c2 = frac(-x0 * g[0][1] + x1 * g[0][0]);
  p.t = std::log(Integer(h.m1 * h.m1 * h.m2).get_d()) / 6.0;
  return p;
}

std::vector<IntersectionPoint> run_pipeline(const CubicPoly& f,
                                            const UnitSystem& u,
                                            const std::vector<ClassBasis>& classes,
                                            std::int64_t max_norm) {
  std::vector<IntersectionPoint> out;
  for (const auto& cls : classes) {
    IntMatrix ideal_rows;
    for (const auto& b : cls.basis) ideal_rows.push_back(coordinates_of(b));
    const Rational index = lattice_index(cls.basis);
    if (index == 0) throw Singular("class basis is degenerate");
    const Integer ideal_norm = index.get_num();
    const auto inverse = inverse_ideal_basis(cls.basis, f);
    for (const auto& xi : enumerate_domain(f, u, inverse, max_norm, ideal_norm)) {
      out.push_back(intersection_point(xi, ideal_rows, f));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const IntersectionPoint& l, const IntersectionPoint& r) {
              return std::tie(l.norm, l.m1, l.mu1, l.m2, l.mu2, l.lambda) <
                     std::tie(r.norm, r.m1, r.mu1, r.m2, r.mu2, r.lambda);
            });
  return out;
}

}  // namespace cubic
