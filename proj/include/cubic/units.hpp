#pragma once

// Totally positive units, the log-lattice fundamental domain D and the
// enumeration of totally positive elements of a fractional ideal in the
// cone over D.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "cubic/field_core.hpp"

namespace cubic {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Mat2 = std::array<Vec2, 2>;

/// Coordinates of the trace-zero part of v in the orthonormal basis
/// (1,-1,0)/sqrt2, (1,1,-2)/sqrt6.
Vec2 plane_coords(const Vec3& v);

struct UnitSystem {
  EmbeddingTriple roots;
  OrderElement eps1, eps2;
  /// Full log vectors of the generators (components sum to 0).
  std::array<Vec3, 2> logs{};
  /// Rows are plane_coords(logs[i]); det > 0.
  Mat2 log_m{};
  double regulator = 0.0;
  /// exp of the largest value of coordinate i of s1*l1 + s2*l2 on [0,1]^2.
  Vec3 bounds{};

  /// Chart coordinates s with plane_coords(l) = s1 * row1 + s2 * row2.
  Vec2 solve(const Vec2& p) const;
};

/// Componentwise log of the embeddings. Throws NotTotallyPositive.
Vec3 log_embedding(const OrderElement& x, const EmbeddingTriple& roots);

bool is_totally_positive(const OrderElement& x, const EmbeddingTriple& roots);

/// Scans |c_i| <= height_bound for units, extracts a basis of the unit
/// lattice (the pair of minimal |det|), takes the kernel of the sign map and
/// returns a Gauss-reduced totally positive pair. Throws SearchExhausted.
UnitSystem find_totally_positive_generators(const CubicPoly& f,
                                            long height_bound);

/// Builds the system from supplied generators after checking that both are
/// totally positive units with independent logs. Throws PreconditionFailed
/// or NotTotallyPositive.
UnitSystem verify_generators(const CubicPoly& f, const OrderElement& eps1,
                             const OrderElement& eps2);

struct DomainPoint {
  OrderElement xi;
  double s1 = 0.0;
  double s2 = 0.0;
  Rational norm;
};

/// Chart coordinates of x before reduction mod 1, with values within 1e-9
/// of an integer snapped onto it.
Vec2 chart_coords(const OrderElement& x, const UnitSystem& u);

/// xi * u lies in the cone over D, with u = eps1^-n1 eps2^-n2.
std::pair<DomainPoint, OrderElement> reduce_to_domain(const OrderElement& xi,
                                                      const UnitSystem& u,
                                                      const CubicPoly& f);

bool in_domain(const OrderElement& x, const UnitSystem& u);

/// All totally positive xi of the lattice spanned by `basis` in the cone
/// over D with N(xi) * ideal_norm <= max_norm that are primitive: xi is not
/// k * eta with eta in the lattice and k > 1. Sorted by (norm, coordinates).
std::vector<DomainPoint> enumerate_domain(
    const CubicPoly& f, const UnitSystem& u,
    const std::array<OrderElement, 3>& basis, std::int64_t max_norm,
    const Integer& ideal_norm = Integer(1));

}  // namespace cubic
