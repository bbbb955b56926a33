#include "cubic/units.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "cubic/ideal_hnf.hpp"

namespace cubic {

namespace {

constexpr double kSnap = 1e-9;
constexpr double kIndependent = 1e-6;

double det2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

double snap(double s) {
  const double r = std::round(s);
  return std::abs(s - r) < kSnap ? r : s;
}

struct Unit {
  OrderElement value;
  Vec3 log{};
  Vec2 plane{};
  unsigned signs = 0;  // bit k set iff embedding k+1 is negative; first > 0
};

Unit make_unit(OrderElement value, const EmbeddingTriple& roots) {
  Unit u;
  auto e = value.embed(roots);
  if (e[0] < 0) {
    value = -value;
    for (auto& v : e.values) v = -v;
  }
  u.value = std::move(value);
  for (int i = 0; i < 3; ++i) u.log[i] = std::log(std::abs(e[i]));
  u.plane = plane_coords(u.log);
  u.signs = (e[1] < 0 ? 1u : 0u) | (e[2] < 0 ? 2u : 0u);
  return u;
}

Unit combine(const Unit& a, long ea, const Unit& b, long eb,
             const CubicPoly& f, const EmbeddingTriple& roots) {
  Unit out = make_unit(mul(power(a.value, ea, f), power(b.value, eb, f), f),
                       roots);
  // Logs are linear in the exponents; this avoids cancellation in embed().
  for (int i = 0; i < 3; ++i) {
    out.log[i] = static_cast<double>(ea) * a.log[i] +
                 static_cast<double>(eb) * b.log[i];
  }
  out.plane = plane_coords(out.log);
  return out;
}

// Coordinates of p in the basis (b1, b2).
Vec2 coords_in(const Vec2& p, const Vec2& b1, const Vec2& b2) {
  const double d = det2(b1, b2);
  return {det2(p, b2) / d, det2(b1, p) / d};
}

// Lagrange reduction of the pair, applied to the units exactly.
void gauss_reduce(Unit& a, Unit& b, const CubicPoly& f,
                  const EmbeddingTriple& roots) {
  auto norm2 = [](const Vec2& v) { return v[0] * v[0] + v[1] * v[1]; };
  if (norm2(a.plane) > norm2(b.plane)) std::swap(a, b);
  for (int guard = 0; guard < 200; ++guard) {
    const double mu =
        (a.plane[0] * b.plane[0] + a.plane[1] * b.plane[1]) / norm2(a.plane);
    const long k = std::lround(mu);
    if (k != 0) b = combine(b, 1, a, -k, f, roots);
    if (norm2(b.plane) >= norm2(a.plane) * (1.0 - 1e-12)) return;
    std::swap(a, b);
  }
  throw NonConvergence("Gauss reduction of the unit lattice did not settle");
}

UnitSystem finish(const CubicPoly& f, const EmbeddingTriple& roots, Unit e1,
                  Unit e2) {
  if (det2(e1.plane, e2.plane) < 0) {
    e2 = combine(e2, -1, e2, 0, f, roots);
  }
  UnitSystem u;
  u.roots = roots;
  u.eps1 = e1.value;
  u.eps2 = e2.value;
  u.logs = {e1.log, e2.log};
  u.log_m = {e1.plane, e2.plane};
  u.regulator = det2(e1.plane, e2.plane);
  if (!(u.regulator > kIndependent)) {
    throw PreconditionFailed("unit logs are linearly dependent");
  }
  for (int i = 0; i < 3; ++i) {
    const double corners[4] = {0.0, e1.log[i], e2.log[i],
                               e1.log[i] + e2.log[i]};
    u.bounds[i] = std::exp(*std::max_element(corners, corners + 4));
  }
  return u;
}

}  // namespace

Vec2 plane_coords(const Vec3& v) {
  static const double ra = 1.0 / std::sqrt(2.0);
  static const double rb = 1.0 / std::sqrt(6.0);
  return {(v[0] - v[1]) * ra, (v[0] + v[1] - 2.0 * v[2]) * rb};
}

Vec2 UnitSystem::solve(const Vec2& p) const {
  // p = s1 * row1 + s2 * row2.
  return coords_in(p, log_m[0], log_m[1]);
}

bool is_totally_positive(const OrderElement& x, const EmbeddingTriple& roots) {
  const auto e = x.embed(roots);
  for (double v : e.values) {
    if (v <= e.error_bound) return false;
  }
  return true;
}

Vec3 log_embedding(const OrderElement& x, const EmbeddingTriple& roots) {
  const auto e = x.embed(roots);
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    if (!(e[i] > 0)) {
      throw NotTotallyPositive(fmt::format(
          "embedding {} of {} is {}", i + 1, x.to_string(), e[i]));
    }
    out[i] = std::log(e[i]);
  }
  return out;
}

UnitSystem find_totally_positive_generators(const CubicPoly& f,
                                            long height_bound) {
  if (!maximality_check(f).empty()) {
    throw PreconditionFailed("unit search needs a maximal order");
  }
  const EmbeddingTriple roots = real_roots(f);
  std::vector<Unit> found;
  const long h = height_bound;
  for (long c2 = -h; c2 <= h; ++c2) {
    for (long c1 = -h; c1 <= h; ++c1) {
      for (long c0 = -h; c0 <= h; ++c0) {
        double approx = 1.0;
        bool positive_first = true;
        for (int i = 0; i < 3; ++i) {
          const double r = roots[i];
          const double v = c0 + c1 * r + c2 * r * r;
          if (i == 0) positive_first = v > 0;
          approx *= v;
        }
        if (!positive_first || std::abs(std::abs(approx) - 1.0) > 0.5) continue;
        const auto x = OrderElement::from_int(c0, c1, c2);
        const Rational n = norm(x, f);
        if (n != 1 && n != -1) continue;
        if (c1 == 0 && c2 == 0) continue;  // +-1
        found.push_back(make_unit(x, roots));
      }
    }
  }
  // Pair of minimal |det| among independent pairs.
  std::size_t bi = 0, bj = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = i + 1; j < found.size(); ++j) {
      const double d = std::abs(det2(found[i].plane, found[j].plane));
      if (d > kIndependent && (best == 0.0 || d < best - 1e-9)) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  if (best == 0.0) {
    throw SearchExhausted(fmt::format(
        "fewer than two independent units with height <= {}", height_bound));
  }
  Unit b1 = found[bi], b2 = found[bj];
  // Refine until every found unit is an integral combination of (b1, b2).
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& w : found) {
      const Vec2 n = coords_in(w.plane, b1.plane, b2.plane);
      const long k1 = std::lround(n[0]), k2 = std::lround(n[1]);
      const double r1 = n[0] - k1, r2 = n[1] - k2;
      if (std::abs(r1) < kIndependent && std::abs(r2) < kIndependent) continue;
      Unit rest = combine(w, 1, b1, -k1, f, roots);
      rest = combine(rest, 1, b2, -k2, f, roots);
      if (std::abs(r2) > kIndependent) {
        b2 = rest;  // |det(b1, rest)| = |r2| det
      } else {
        b1 = rest;
      }
      changed = true;
      break;
    }
  }
  // Kernel of the sign map Z^2 -> (Z/2)^2.
  const unsigned s1 = b1.signs, s2 = b2.signs;
  std::vector<std::pair<long, long>> kernel;
  if (s1 == 0 && s2 == 0) {
    kernel = {{1, 0}, {0, 1}};
  } else if (s1 == 0) {
    kernel = {{1, 0}, {0, 2}};
  } else if (s2 == 0) {
    kernel = {{2, 0}, {0, 1}};
  } else if (s1 == s2) {
    kernel = {{1, 1}, {0, 2}};
  } else {
    kernel = {{2, 0}, {0, 2}};
  }
  Unit t1 = combine(b1, kernel[0].first, b2, kernel[0].second, f, roots);
  Unit t2 = combine(b1, kernel[1].first, b2, kernel[1].second, f, roots);
  if (t1.signs != 0 || t2.signs != 0) {
    throw InternalError("sign kernel produced a unit that is not totally positive");
  }
  gauss_reduce(t1, t2, f, roots);
  return finish(f, roots, std::move(t1), std::move(t2));
}

UnitSystem verify_generators(const CubicPoly& f, const OrderElement& eps1,
                             const OrderElement& eps2) {
  const EmbeddingTriple roots = real_roots(f);
  for (const auto* e : {&eps1, &eps2}) {
    if (!e->is_integral()) {
      throw PreconditionFailed(fmt::format("{} is not in Z[alpha]", e->to_string()));
    }
    const Rational n = norm(*e, f);
    if (n != 1) {
      throw PreconditionFailed(fmt::format("{} has norm {}, not 1",
                                           e->to_string(), n.get_str()));
    }
    log_embedding(*e, roots);  // throws NotTotallyPositive
  }
  Unit u1 = make_unit(eps1, roots), u2 = make_unit(eps2, roots);
  return finish(f, roots, std::move(u1), std::move(u2));
}

Vec2 chart_coords(const OrderElement& x, const UnitSystem& u) {
  const Vec2 s = u.solve(plane_coords(log_embedding(x, u.roots)));
  return {snap(s[0]), snap(s[1])};
}

bool in_domain(const OrderElement& x, const UnitSystem& u) {
  const Vec2 s = chart_coords(x, u);
  return s[0] >= 0.0 && s[0] < 1.0 && s[1] >= 0.0 && s[1] < 1.0;
}

std::pair<DomainPoint, OrderElement> reduce_to_domain(const OrderElement& xi,
                                                      const UnitSystem& u,
                                                      const CubicPoly& f) {
  const Vec2 s = chart_coords(xi, u);
  const long n1 = static_cast<long>(std::floor(s[0]));
  const long n2 = static_cast<long>(std::floor(s[1]));
  const OrderElement unit = mul(power(u.eps1, -n1, f), power(u.eps2, -n2, f), f);
  DomainPoint p;
  p.xi = mul(xi, unit, f);
  p.s1 = s[0] - static_cast<double>(n1);
  p.s2 = s[1] - static_cast<double>(n2);
  p.norm = norm(xi, f);
  return {std::move(p), unit};
}

std::vector<DomainPoint> enumerate_domain(
    const CubicPoly& f, const UnitSystem& u,
    const std::array<OrderElement, 3>& basis, std::int64_t max_norm,
    const Integer& ideal_norm) {
  std::vector<DomainPoint> out;
  if (max_norm < 1) return out;
  // Triangular basis beta1, beta2, beta3 = q of the lattice over a common
  // denominator.
  Integer den = 1;
  for (const auto& b : basis) den = lcm(den, b.den());
  IntMatrix scaled;
  for (const auto& b : basis) {
    const auto c = b.power_coordinates();
    IntRow row;
    for (int k = 0; k < 3; ++k) {
      const Rational v = c[k] * den;
      row[k] = v.get_num();
    }
    scaled.push_back(row);
  }
  const auto h = hnf3(scaled);
  const double dd = den.get_d();
  Vec3 b1{}, b2{};
  for (int i = 0; i < 3; ++i) {
    const double r = u.roots[i];
    b1[i] = (h[0][0].get_d() * r * r + h[0][1].get_d() * r + h[0][2].get_d()) / dd;
    b2[i] = (h[1][1].get_d() * r + h[1][2].get_d()) / dd;
  }
  const double q = h[2][2].get_d() / dd;

  const Rational bound = Rational(Integer(static_cast<long>(max_norm))) /
                         Rational(ideal_norm);
  const double xn = bound.get_d();
  const double margin = 1.0 + 1e-9;
  const double root = std::cbrt(xn);
  Vec3 big{};
  for (int i = 0; i < 3; ++i) big[i] = u.bounds[i] * root * margin;

  // Differences u_i - u_j do not depend on c3 and lie in (-B_j, B_i).
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {1, 2}, {0, 2}}};
  auto diff = [&](const Vec3& v, int i, int j) { return v[i] - v[j]; };
  const double a11 = diff(b1, 0, 1), a12 = diff(b2, 0, 1);
  const double a21 = diff(b1, 1, 2), a22 = diff(b2, 1, 2);
  const double det = a11 * a22 - a12 * a21;
  double c1_lo = 1e300, c1_hi = -1e300;
  for (double d12 : {-big[1], big[0]}) {
    for (double d23 : {-big[2], big[1]}) {
      const double c1 = (d12 * a22 - a12 * d23) / det;
      c1_lo = std::min(c1_lo, c1);
      c1_hi = std::max(c1_hi, c1);
    }
  }
  const long c1_first = static_cast<long>(std::floor(c1_lo)) - 1;
  const long c1_last = static_cast<long>(std::ceil(c1_hi)) + 1;

  for (long c1 = c1_first; c1 <= c1_last; ++c1) {
    double c2_lo = -1e300, c2_hi = 1e300;
    for (const auto& [i, j] : pairs) {
      const double a = c1 * diff(b1, i, j);
      const double b = diff(b2, i, j);
      double lo = (-big[j] - a) / b, hi = (big[i] - a) / b;
      if (lo > hi) std::swap(lo, hi);
      c2_lo = std::max(c2_lo, lo);
      c2_hi = std::min(c2_hi, hi);
    }
    if (c2_lo > c2_hi + 1.0) continue;
    const long c2_first = static_cast<long>(std::floor(c2_lo)) - 1;
    const long c2_last = static_cast<long>(std::ceil(c2_hi)) + 1;
    for (long c2 = c2_first; c2 <= c2_last; ++c2) {
      Vec3 w{};
      double lo = -1e300, hi = 1e300;
      for (int i = 0; i < 3; ++i) {
        w[i] = c1 * b1[i] + c2 * b2[i];
        lo = std::max(lo, -w[i] / q);
        hi = std::min(hi, (big[i] - w[i]) / q);
      }
      if (lo > hi) continue;
      const long c3_first = static_cast<long>(std::floor(lo));
      const long c3_last = static_cast<long>(std::floor(hi)) + 1;
      const long g12 = std::gcd(c1, c2);
      for (long c3 = c3_first; c3 <= c3_last; ++c3) {
        Vec3 v{};
        bool positive = true;
        for (int i = 0; i < 3; ++i) {
          v[i] = w[i] + c3 * q;
          positive = positive && v[i] > 0;
        }
        if (!positive) continue;
        const double n = v[0] * v[1] * v[2];
        if (n > xn * margin) break;  // increasing in c3 on the positive range
        if (std::gcd(g12, c3) != 1) continue;
        const Vec2 s = u.solve(plane_coords({std::log(v[0]), std::log(v[1]),
                                             std::log(v[2])}));
        const double s1 = snap(s[0]), s2 = snap(s[1]);
        if (!(s1 >= 0.0 && s1 < 1.0 && s2 >= 0.0 && s2 < 1.0)) continue;
        IntRow row;
        for (int k = 0; k < 3; ++k) {
          row[k] = Integer(c1) * h[0][k] + Integer(c2) * h[1][k] +
                   Integer(c3) * h[2][k];
        }
        DomainPoint p;
        p.xi = OrderElement(row[2], row[1], row[0], den);
        p.norm = norm(p.xi, f);
        if (p.norm > bound || p.norm <= 0) continue;
        p.s1 = s1;
        p.s2 = s2;
        out.push_back(std::move(p));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const DomainPoint& l, const DomainPoint& r) {
    if (l.norm != r.norm) return l.norm < r.norm;
    for (int k = 2; k >= 0; --k) {
      if (l.xi.coeff(k) != r.xi.coeff(k)) return l.xi.coeff(k) < r.xi.coeff(k);
    }
    return false;
  });
  return out;
}

}  // namespace cubic
