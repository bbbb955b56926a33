#pragma once

// Ideals of Z[alpha] in Hermite normal form. With coordinates taken with
// respect to (alpha^2, alpha, 1), every ideal has a basis
//
//     a * [ 1  (mu1+a1) mod m1  lambda ]
//         [ 0  m1         -mu2 * m1 ]
//         [ 0  0          m1 * m2   ]
//
// with F(mu_j) = 0 mod m_j and lambda fixed mod m1*m2 by (mu1, mu2).

#include <array>
#include <compare>
#include <vector>

#include "cubic/field_core.hpp"

namespace cubic {

using IntRow = std::array<Integer, 3>;
/// Rows are lattice vectors in (alpha^2, alpha, 1) coordinates.
using IntMatrix = std::vector<IntRow>;

/// Row-style Hermite normal form of an arbitrary integer matrix: positive
/// pivots, entries above each pivot reduced into [0, pivot), zero rows
/// dropped.
std::vector<std::vector<Integer>> hermite_normal_form(
    std::vector<std::vector<Integer>> rows);

/// Upper triangular HNF of a rank-3 lattice; throws Singular otherwise.
std::array<IntRow, 3> hnf3(const IntMatrix& rows);

struct IdealHNF {
  Integer a{1};
  Integer m1{1};
  Integer mu1{0};
  Integer m2{1};
  Integer mu2{0};
  Integer lambda{0};

  Integer norm() const { return a * a * a * m1 * m1 * m2; }
  /// Canonical rows a * (1, (mu1 + a1) mod m1, lambda), ...
  std::array<IntRow, 3> rows(const CubicPoly& f) const;
  std::array<OrderElement, 3> basis(const CubicPoly& f) const;

  friend bool operator==(const IdealHNF&, const IdealHNF&) = default;
};

/// Canonical order: norm, then (m1, mu1, m2, mu2, lambda, a).
bool canonical_less(const IdealHNF& l, const IdealHNF& r);

/// Reads (a; m1, mu1, m2, mu2, lambda) off the HNF of the lattice spanned
/// by `rows`. Throws Singular for rank < 3 and NotSublattice when the HNF
/// does not have the ideal shape.
IdealHNF hnf_reduce(const IntMatrix& rows, const CubicPoly& f);

/// lambda from the congruence roots. Throws PreconditionFailed if
/// F(mu_j) != 0 mod m_j and NoSolution if no ideal has these roots.
/// When kappa is not unique mod gcd(m1, m2) (possible only for non-maximal
/// orders) the smallest kappa is used; lambda_candidates lists them all.
Integer lambda_from_roots(const Integer& mu1, const Integer& m1,
                          const Integer& mu2, const Integer& m2,
                          const CubicPoly& f);

std::vector<Integer> lambda_candidates(const Integer& mu1, const Integer& m1,
                                       const Integer& mu2, const Integer& m2,
                                       const CubicPoly& f);

/// The gcd criterion: roots valid, gcd(m1, m2, mu1 - mu2) = 1 and lambda as
/// forced by the roots. Equivalent to closure under alpha when Z[alpha] is
/// maximal.
bool is_ideal(const IdealHNF& ideal, const CubicPoly& f);

/// Direct test that alpha * (each basis row) lies in the row span.
bool is_closed_under_alpha(const IntMatrix& rows, const CubicPoly& f);

/// Lattice spanned by the nine pairwise products of the two bases.
IntMatrix product_rows(const IntMatrix& lhs, const IntMatrix& rhs,
                       const CubicPoly& f);

IdealHNF ideal_product(const IdealHNF& lhs, const IdealHNF& rhs,
                       const CubicPoly& f);

/// Builds I1 = [[1,0,-mu^2],[0,1,-mu],[0,0,p]] and
/// I2 = [[1, mu+a1, mu^2+a1 mu+a2],[0,p,0],[0,0,p]] and checks I1 I2 = p I1
/// by exact multiplication. Requires F(mu) = 0 mod p^2, F'(mu) = 0 mod p.
bool verify_obstruction(const CubicPoly& f, const Integer& p,
                        const Integer& mu);

/// All content-1 ideals with m1^2 m2 <= max_norm, canonically sorted.
/// Requires Z[alpha] maximal.
std::vector<IdealHNF> enumerate_ideal_tuples(const CubicPoly& f,
                                             std::int64_t max_norm);

IntRow coordinates_of(const OrderElement& x);
OrderElement element_of(const IntRow& row);

/// Z-basis of I^{-1} = {x : x I in Z[alpha]} for an integral ideal I given
/// by a Z-basis.
std::array<OrderElement, 3> inverse_ideal_basis(
    const std::array<OrderElement, 3>& ideal_basis, const CubicPoly& f);

/// Rows of xi * I; throws NotSublattice if the product is not integral.
IntMatrix scaled_ideal_rows(const OrderElement& xi,
                            const std::array<OrderElement, 3>& ideal_basis,
                            const CubicPoly& f);

/// |det| of the basis coordinates: the index of the lattice in Z[alpha].
Rational lattice_index(const std::array<OrderElement, 3>& basis);

}  // namespace cubic
