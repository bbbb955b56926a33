#include "cubic/field_core.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cubic/parse.hpp"

namespace cubic {

namespace {

using Mat3 = std::array<std::array<Integer, 3>, 3>;

Integer det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

int sign_at(const CubicPoly& f, double x) {
  const Rational v = f(Rational(x));
  return sgn(v);
}

// Trial division up to the cube root of |n|; the cofactor left over has at
// most two prime factors, so it carries a square factor only if it is a
// perfect square.
std::vector<Integer> primes_with_square_dividing(Integer n) {
  std::vector<Integer> out;
  n = abs(n);
  if (n == 0) return out;
  Integer limit;
  mpz_root(limit.get_mpz_t(), n.get_mpz_t(), 3);
  limit += 1;
  for (Integer p = 2; p <= limit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (!divides(p, n)) continue;
    int e = 0;
    while (divides(p, n)) {
      n /= p;
      ++e;
    }
    if (e >= 2) out.push_back(p);
  }
  if (n > 1 && mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    out.push_back(r);
  }
  return out;
}

// Repeated roots of F mod p: residues r with F(r) = F'(r) = 0 mod p.
std::vector<Integer> multiple_roots_mod(const CubicPoly& f, const Integer& p) {
  std::vector<Integer> out;
  if (p < 1000) {
    for (Integer r = 0; r < p; ++r) {
      if (divides(p, f(r)) && divides(p, f.derivative(r))) out.push_back(r);
    }
    return out;
  }
  // p > 3: gcd(F, F') over F_p is (x - r) or (x - r)^2.
  using Poly = std::vector<Integer>;  // low degree first
  auto trim = [&](Poly& a) {
    for (auto& c : a) c = floor_mod(c, p);
    while (!a.empty() && a.back() == 0) a.pop_back();
  };
  auto inv = [&](const Integer& a) {
    Integer r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
  };
  Poly a{f.a3(), f.a2(), f.a1(), Integer(1)};
  Poly b{f.a2(), 2 * f.a1(), Integer(3)};
  trim(a);
  trim(b);
  while (!b.empty()) {
    const Integer lead_inv = inv(b.back());
    while (a.size() >= b.size()) {
      const Integer q = floor_mod(a.back() * lead_inv, p);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (a.size() == 2) {
    out.push_back(floor_mod(-a[0] * inv(a[1]), p));
  } else if (a.size() == 3) {
    out.push_back(floor_mod(-a[1] * inv(2 * a[2]), p));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- CubicPoly

CubicPoly::CubicPoly(Integer a1, Integer a2, Integer a3)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)) {
  disc_ = 18 * a1_ * a2_ * a3_ - 4 * a1_ * a1_ * a1_ * a3_ +
          a1_ * a1_ * a2_ * a2_ - 4 * a2_ * a2_ * a2_ - 27 * a3_ * a3_;
}

CubicPoly CubicPoly::parse(std::string_view text) {
  auto v = parse_integer_list(text, 3);
  return CubicPoly(v[0], v[1], v[2]);
}

Integer CubicPoly::operator()(const Integer& x) const {
  return ((x + a1_) * x + a2_) * x + a3_;
}

Rational CubicPoly::operator()(const Rational& x) const {
  return ((x + Rational(a1_)) * x + Rational(a2_)) * x + Rational(a3_);
}

Integer CubicPoly::derivative(const Integer& x) const {
  return (3 * x + 2 * a1_) * x + a2_;
}

double CubicPoly::operator()(double x) const {
  return ((x + a1_.get_d()) * x + a2_.get_d()) * x + a3_.get_d();
}

std::string CubicPoly::to_string() const {
  return fmt::format("{},{},{}", a1_.get_str(), a2_.get_str(), a3_.get_str());
}

Integer discriminant(const CubicPoly& f) { return f.disc(); }

bool is_irreducible(const CubicPoly& f) {
  const Integer n = abs(f.a3());
  if (n == 0) return false;
  auto is_root = [&](const Integer& r) { return f(r) == 0 || f(Integer(-r)) == 0; };
  for (Integer d = 1; d * d <= n; ++d) {
    if (!divides(d, n)) continue;
    if (is_root(d) || is_root(n / d)) return false;
  }
  return true;
}

std::vector<Integer> maximality_check(const CubicPoly& f) {
  // For a cubic, a repeated irreducible factor mod p is necessarily linear,
  // so Dedekind's criterion reduces to: p is bad iff some repeated root r of
  // F mod p has F(r) = 0 mod p^2 (independent of the lift of r).
  std::vector<Integer> bad;
  for (const auto& p : primes_with_square_dividing(f.disc())) {
    for (const auto& r : multiple_roots_mod(f, p)) {
      if (divides(p * p, f(r))) {
        bad.push_back(p);
        break;
      }
    }
  }
  return bad;
}

EmbeddingTriple real_roots(const CubicPoly& f, double eps) {
  if (f.disc() <= 0) {
    throw NotTotallyReal(fmt::format("disc({}) = {} is not positive",
                                     f.to_string(), f.disc().get_str()));
  }
  const double a1 = f.a1().get_d();
  const double a2 = f.a2().get_d();
  const double bound =
      1.0 + std::max({std::abs(a1), std::abs(a2), std::abs(f.a3().get_d())});
  const double root_of_derivative = std::sqrt(a1 * a1 - 3.0 * a2);
  const double crit_lo = (-a1 - root_of_derivative) / 3.0;  // local maximum
  const double crit_hi = (-a1 + root_of_derivative) / 3.0;  // local minimum

  const std::array<std::pair<double, double>, 3> brackets{
      {{crit_hi, bound}, {crit_lo, crit_hi}, {-bound, crit_lo}}};
  EmbeddingTriple out;
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    double lo = brackets[k].first;
    double hi = brackets[k].second;
    const int slo = sign_at(f, lo);
    const int shi = sign_at(f, hi);
    if (slo == 0) {
      out.values[k] = lo;
      continue;
    }
    if (shi == 0) {
      out.values[k] = hi;
      continue;
    }
    if (slo == shi) {
      throw InternalError(fmt::format(
          "no sign change bracketing root {} of {}", k + 1, f.to_string()));
    }
    while (hi - lo > eps) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      const int s = sign_at(f, mid);
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      (s == slo ? lo : hi) = mid;
    }
    // Newton polish, accepted only if it stays inside the certified bracket.
    long double x = 0.5L * (static_cast<long double>(lo) + hi);
    for (int it = 0; it < 4; ++it) {
      const long double fx =
          ((x + static_cast<long double>(a1)) * x + a2) * x + f.a3().get_d();
      const long double dfx = (3.0L * x + 2.0L * a1) * x + a2;
      if (dfx == 0) break;
      const long double next = x - fx / dfx;
      if (next < lo || next > hi) break;
      x = next;
    }
    const double root = static_cast<double>(x);
    double err = std::max(root - lo, hi - root);
    // Tighten the bound with an exact sign change around the polished root.
    double delta = 4.0 * std::max(std::abs(root), 1.0) *
                   std::numeric_limits<double>::epsilon();
    while (delta < err) {
      const int l = sign_at(f, root - delta);
      const int r = sign_at(f, root + delta);
      if (l != r && root - delta >= lo && root + delta <= hi) {
        err = delta;
        break;
      }
      delta *= 4.0;
    }
    out.values[k] = root;
    worst = std::max(worst, err);
  }
  out.error_bound = worst;
  return out;
}

// ------------------------------------------------------------- OrderElement

OrderElement::OrderElement(Integer c0, Integer c1, Integer c2, Integer den)
    : c_{std::move(c0), std::move(c1), std::move(c2)}, den_(std::move(den)) {
  normalize();
}

void OrderElement::normalize() {
  if (den_ == 0) throw Singular("order element with zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : c_) c = -c;
  }
  if (den_ == 1) return;
  Integer g = gcd(gcd(c_[0], c_[1]), gcd(c_[2], den_));
  if (g != 1) {
    for (auto& c : c_) c /= g;
    den_ /= g;
  }
}

OrderElement OrderElement::parse(std::string_view text) {
  Integer den = 1;
  std::string_view body = text;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    den = parse_integer(text.substr(slash + 1));
    body = text.substr(0, slash);
  }
  auto v = parse_integer_list(body, 3);
  return OrderElement(v[0], v[1], v[2], den);
}

std::array<Rational, 3> OrderElement::power_coordinates() const {
  return {Rational(c_[2], den_), Rational(c_[1], den_), Rational(c_[0], den_)};
}

EmbeddingTriple OrderElement::embed(const EmbeddingTriple& roots) const {
  EmbeddingTriple out;
  const long double c0 = c_[0].get_d();
  const long double c1 = c_[1].get_d();
  const long double c2 = c_[2].get_d();
  const long double d = den_.get_d();
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const long double r = roots.values[i];
    const long double v = (c0 + c1 * r + c2 * r * r) / d;
    out.values[i] = static_cast<double>(v);
    const long double magnitude =
        std::abs(c0) + std::abs(c1 * r) + std::abs(c2 * r * r);
    const long double propagated =
        (std::abs(c1) + 2.0L * std::abs(c2 * r)) * roots.error_bound;
    const long double rounding =
        8.0L * magnitude * std::numeric_limits<double>::epsilon();
    worst = std::max(worst, static_cast<double>((propagated + rounding) / d));
  }
  out.error_bound = worst;
  return out;
}

std::string OrderElement::to_string() const {
  auto s = fmt::format("{},{},{}", c_[0].get_str(), c_[1].get_str(),
                       c_[2].get_str());
  if (den_ != 1) s += "/" + den_.get_str();
  return s;
}

OrderElement operator+(const OrderElement& x, const OrderElement& y) {
  return OrderElement(x.c_[0] * y.den_ + y.c_[0] * x.den_,
                      x.c_[1] * y.den_ + y.c_[1] * x.den_,
                      x.c_[2] * y.den_ + y.c_[2] * x.den_, x.den_ * y.den_);
}

OrderElement operator-(const OrderElement& x) {
  return OrderElement(-x.c_[0], -x.c_[1], -x.c_[2], x.den_);
}

OrderElement operator-(const OrderElement& x, const OrderElement& y) {
  return x + (-y);
}

OrderElement operator*(const Integer& k, const OrderElement& x) {
  return OrderElement(k * x.c_[0], k * x.c_[1], k * x.c_[2], x.den_);
}

OrderElement mul(const OrderElement& x, const OrderElement& y,
                 const CubicPoly& f) {
  std::array<Integer, 5> p;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) p[i + j] += x.coeff(i) * y.coeff(j);
  }
  for (int k = 4; k >= 3; --k) {
    const Integer c = p[k];
    if (c == 0) continue;
    p[k - 1] -= f.a1() * c;
    p[k - 2] -= f.a2() * c;
    p[k - 3] -= f.a3() * c;
  }
  return OrderElement(p[0], p[1], p[2], x.den() * y.den());
}

OrderElement power(const OrderElement& x, long k, const CubicPoly& f) {
  if (k < 0) return power(inverse(x, f), -k, f);
  OrderElement result = OrderElement::from_int(1);
  OrderElement base = x;
  while (k > 0) {
    if (k & 1) result = mul(result, base, f);
    k >>= 1;
    if (k > 0) base = mul(base, base, f);
  }
  return result;
}

std::array<std::array<Integer, 3>, 3> multiplication_matrix(
    const OrderElement& x, const CubicPoly& f) {
  Mat3 m;
  const OrderElement numerator(x.coeff(0), x.coeff(1), x.coeff(2));
  OrderElement column = numerator;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) m[i][j] = column.coeff(i);
    if (j < 2) column = mul(column, OrderElement::alpha(), f);
  }
  return m;
}

OrderElement inverse(const OrderElement& x, const CubicPoly& f) {
  if (x.is_zero()) throw Singular("inverse of zero");
  const Mat3 m = multiplication_matrix(x, f);
  const Integer det = det3(m);
  // First column of the adjugate solves M y = (1, 0, 0).
  const Integer y0 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const Integer y1 = -(m[1][0] * m[2][2] - m[1][2] * m[2][0]);
  const Integer y2 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  return OrderElement(x.den() * y0, x.den() * y1, x.den() * y2, det);
}

NormTrace norm_trace(const OrderElement& x, const CubicPoly& f) {
  const Mat3 m = multiplication_matrix(x, f);
  const Integer d3 = x.den() * x.den() * x.den();
  return {Rational(det3(m), d3), Rational(m[0][0] + m[1][1] + m[2][2], x.den())};
}

// -------------------------------------------------------------- BasisMatrix

double BasisMatrix::determinant() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool BasisMatrix::determinant_within(double eps) const {
  double cofactor_sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto& a = m[(i + 1) % 3];
      const auto& b = m[(i + 2) % 3];
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      cofactor_sum += std::abs(a[j1] * b[j2] - a[j2] * b[j1]);
    }
  }
  const double det_error =
      error_bound * cofactor_sum + 1e-14 * std::max(1.0, cofactor_sum);
  return std::abs(determinant() - 1.0) + det_error < eps;
}

BasisMatrix BasisMatrix::inverse() const {
  const double det = determinant();
  if (det == 0.0) throw Singular("singular basis matrix");
  BasisMatrix out;
  out.role = Role::inverse;
  double largest = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // inverse[i][j] = cofactor(j, i) / det
      const auto& a = m[(j + 1) % 3];
      const auto& b = m[(j + 2) % 3];
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      out.m[i][j] = (a[i1] * b[i2] - a[i2] * b[i1]) / det;
      largest = std::max(largest, std::abs(out.m[i][j]));
    }
  }
  out.error_bound = 9.0 * error_bound * largest * largest;
  return out;
}

BasisMatrix basis_matrix_from_roots(const EmbeddingTriple& roots,
                                    const CubicPoly& f) {
  if (f.disc() <= 0) throw NotTotallyReal("g0 needs a positive discriminant");
  const double scale = std::pow(f.disc().get_d(), -1.0 / 6.0);
  BasisMatrix out;
  out.role = BasisMatrix::Role::g0;
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double r = roots.values[j];
    out.m[0][j] = r * r * scale;
    out.m[1][j] = r * scale;
    out.m[2][j] = scale;
    worst = std::max(worst, (2.0 * std::abs(r) + roots.error_bound) *
                                roots.error_bound * scale);
  }
  out.error_bound = worst;
  return out;
}

BasisMatrix basis_matrix_g0(const CubicPoly& f, double eps) {
  return basis_matrix_from_roots(real_roots(f, eps), f);
}

BasisMatrix basis_matrix_of(const std::array<OrderElement, 3>& basis,
                            const EmbeddingTriple& roots) {
  BasisMatrix out;
  out.role = BasisMatrix::Role::gl;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto e = basis[i].embed(roots);
    out.m[i] = e.values;
    worst = std::max(worst, e.error_bound);
  }
  const double det = out.determinant();
  if (det == 0.0) throw Singular("ideal basis is degenerate");
  const double scale = (det > 0 ? 1.0 : -1.0) * std::cbrt(1.0 / std::abs(det));
  for (auto& row : out.m) {
    for (auto& v : row) v *= scale;
  }
  out.error_bound = worst * std::abs(scale);
  return out;
}

}  // namespace cubic
