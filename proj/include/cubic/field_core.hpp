#pragma once

// Exact arithmetic in the monogenic cubic order Z[alpha] and its real
// embeddings.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "cubic/errors.hpp"
#include "cubic/integer.hpp"

namespace cubic {

/// Monic cubic F(X) = X^3 + a1 X^2 + a2 X + a3 with its cached discriminant.
class CubicPoly {
 public:
  CubicPoly(Integer a1, Integer a2, Integer a3);
  CubicPoly(long a1, long a2, long a3)
      : CubicPoly(Integer(a1), Integer(a2), Integer(a3)) {}

  /// Parses "a1,a2,a3".
  static CubicPoly parse(std::string_view text);

  const Integer& a1() const { return a1_; }
  const Integer& a2() const { return a2_; }
  const Integer& a3() const { return a3_; }
  const Integer& disc() const { return disc_; }

  Integer operator()(const Integer& x) const;
  Rational operator()(const Rational& x) const;
  Integer derivative(const Integer& x) const;
  double operator()(double x) const;

  std::string to_string() const;

  friend bool operator==(const CubicPoly& l, const CubicPoly& r) {
    return l.a1_ == r.a1_ && l.a2_ == r.a2_ && l.a3_ == r.a3_;
  }

 private:
  Integer a1_, a2_, a3_, disc_;
};

Integer discriminant(const CubicPoly& f);

/// True iff F has no rational root. For a monic integer cubic, any rational
/// root is an integer dividing a3.
bool is_irreducible(const CubicPoly& f);

/// Primes p with p^2 | disc(F) at which Dedekind's criterion fails. Empty
/// iff Z[alpha] is the maximal order.
std::vector<Integer> maximality_check(const CubicPoly& f);

/// Images of an algebraic number under the three real embeddings, with an
/// absolute error bound valid for every component.
struct EmbeddingTriple {
  std::array<double, 3> values{};
  double error_bound = 0.0;

  double operator[](std::size_t i) const { return values[i]; }
};

/// Real roots alpha^(1) > alpha^(2) > alpha^(3), each certified by an exact
/// sign change to lie within the stored error bound of a true root.
/// Throws NotTotallyReal if disc(F) <= 0.
EmbeddingTriple real_roots(const CubicPoly& f, double eps = 1e-12);

/// Element (c0 + c1 alpha + c2 alpha^2) / den of Q(alpha). The denominator
/// is positive and the representation is kept in lowest terms.
class OrderElement {
 public:
  OrderElement() : OrderElement(Integer(0)) {}
  explicit OrderElement(Integer c0, Integer c1 = 0, Integer c2 = 0,
                        Integer den = 1);

  static OrderElement from_int(long c0, long c1 = 0, long c2 = 0) {
    return OrderElement(Integer(c0), Integer(c1), Integer(c2));
  }
  static OrderElement alpha() { return from_int(0, 1, 0); }
  /// Parses "c0,c1,c2" or "c0,c1,c2/den".
  static OrderElement parse(std::string_view text);

  /// Coefficient of alpha^k (numerator), k in {0,1,2}.
  const Integer& coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
  const Integer& den() const { return den_; }
  bool is_integral() const { return den_ == 1; }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }

  /// Exact coordinates with respect to (alpha^2, alpha, 1).
  std::array<Rational, 3> power_coordinates() const;

  EmbeddingTriple embed(const EmbeddingTriple& roots) const;

  std::string to_string() const;

  friend bool operator==(const OrderElement& l, const OrderElement& r) {
    return l.den_ == r.den_ && l.c_ == r.c_;
  }

  friend OrderElement operator+(const OrderElement& x, const OrderElement& y);
  friend OrderElement operator-(const OrderElement& x, const OrderElement& y);
  friend OrderElement operator-(const OrderElement& x);
  friend OrderElement operator*(const Integer& k, const OrderElement& x);

 private:
  void normalize();

  std::array<Integer, 3> c_;
  Integer den_;
};

/// Exact product reduced by alpha^3 = -a1 alpha^2 - a2 alpha - a3.
OrderElement mul(const OrderElement& x, const OrderElement& y,
                 const CubicPoly& f);

OrderElement power(const OrderElement& x, long k, const CubicPoly& f);

/// Exact inverse; throws Singular for x = 0.
OrderElement inverse(const OrderElement& x, const CubicPoly& f);

/// Matrix of multiplication by the numerator of x on the basis (1, alpha,
/// alpha^2); column j holds the coordinates of x*alpha^j.
std::array<std::array<Integer, 3>, 3> multiplication_matrix(
    const OrderElement& x, const CubicPoly& f);

struct NormTrace {
  Rational norm;
  Rational trace;
};

NormTrace norm_trace(const OrderElement& x, const CubicPoly& f);

inline Rational norm(const OrderElement& x, const CubicPoly& f) {
  return norm_trace(x, f).norm;
}

/// Real 3x3 matrix whose columns are indexed by the embeddings.
struct BasisMatrix {
  enum class Role { g0, gl, inverse };

  std::array<std::array<double, 3>, 3> m{};
  double error_bound = 0.0;
  Role role = Role::g0;

  double determinant() const;
  /// |det - 1| < eps, counting the propagated entry error.
  bool determinant_within(double eps) const;
  BasisMatrix inverse() const;
};

/// Rows (alpha^2, alpha, 1) at the descending roots, rescaled by
/// disc^(-1/6) so that det = +1.
BasisMatrix basis_matrix_g0(const CubicPoly& f, double eps = 1e-12);

BasisMatrix basis_matrix_from_roots(const EmbeddingTriple& roots,
                                    const CubicPoly& f);

/// Rows are the embeddings of a Z-basis of an ideal, rescaled to det = +1.
BasisMatrix basis_matrix_of(const std::array<OrderElement, 3>& basis,
                            const EmbeddingTriple& roots);

}  // namespace cubic
