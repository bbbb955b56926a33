#include "cubic/ideal_hnf.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "cubic/congruence.hpp"

namespace cubic {

namespace {

// alpha * (x alpha^2 + y alpha + z) in (alpha^2, alpha, 1) coordinates.
IntRow times_alpha(const IntRow& v, const CubicPoly& f) {
  return {v[1] - f.a1() * v[0], v[2] - f.a2() * v[0], -f.a3() * v[0]};
}

// Membership of v in the lattice of an upper triangular basis.
bool in_triangular_lattice(IntRow v, const std::array<IntRow, 3>& h) {
  for (int k = 0; k < 3; ++k) {
    if (!divides(h[k][k], v[k])) return false;
    const Integer c = v[k] / h[k][k];
    for (int j = k; j < 3; ++j) v[j] -= c * h[k][j];
  }
  return true;
}

Integer lambda_for_kappa(const Integer& mu1, const Integer& m1,
                         const Integer& mu2, const Integer& m2,
                         const Integer& bar_m1, const Integer& bar_m2,
                         const Integer& g, const Integer& kappa,
                         const CubicPoly& f) {
  const Integer mod = m1 * m2;
  const Integer first = (mu1 * mu1 + f.a1() * mu1 + f.a2()) * bar_m2 * (m2 / g);
  const Integer second =
      (mu2 * mu2 + mu1 * mu2 + f.a1() * mu2) * bar_m1 * (m1 / g);
  // The congruences describe the row (1, mu1 + a1, lambda); the stored row
  // has its middle entry reduced mod m1, which costs k * (0, m1, -mu2 m1).
  const Integer k = (floor_mod(mu1 + f.a1(), m1) - (mu1 + f.a1())) / m1;
  return floor_mod(first - second + kappa * (mod / g) - k * mu2 * m1, mod);
}

struct KappaSolutions {
  Integer bar_m1, bar_m2, g;
  std::vector<Integer> kappas;  // all solutions mod g, ascending
};

KappaSolutions solve_kappa(const Integer& mu1, const Integer& m1,
                           const Integer& mu2, const Integer& m2,
                           const CubicPoly& f, long bezout_shift) {
  if (m1 <= 0 || m2 <= 0) throw PreconditionFailed("moduli must be positive");
  const Integer f1 = f(mu1), f2 = f(mu2);
  if (!divides(m1, f1) || !divides(m2, f2)) {
    throw PreconditionFailed(fmt::format(
        "F(mu1) = {} mod {} or F(mu2) = {} mod {} is nonzero", f1.get_str(),
        m1.get_str(), f2.get_str(), m2.get_str()));
  }
  KappaSolutions out;
  out.g = gcd(m1, m2);
  const Integer& g = out.g;
  const Integer cond = mu1 * mu1 + mu1 * mu2 + mu2 * mu2 +
                       f.a1() * (mu1 + mu2) + f.a2();
  if (!divides(g, cond)) {
    throw NoSolution(fmt::format(
        "mu1^2 + mu1 mu2 + mu2^2 + a1(mu1+mu2) + a2 = {} is nonzero mod {}",
        cond.get_str(), g.get_str()));
  }
  const Integer u1 = m1 / g, u2 = m2 / g;
  Integer x, y;
  extended_gcd(u1, u2, x, y);
  out.bar_m1 = x + bezout_shift * u2;
  out.bar_m2 = y - bezout_shift * u1;

  const Integer coef = mu2 - mu1;
  const Integer rhs = (f1 / m1) * out.bar_m2 + (f2 / m2) * out.bar_m1;
  const Integer d = gcd(coef, g);  // gcd(0, g) = g
  if (!divides(d, rhs)) {
    throw NoSolution(fmt::format(
        "({})*kappa = {} mod {} has no solution", coef.get_str(),
        floor_mod(rhs, g).get_str(), g.get_str()));
  }
  const Integer step = g / d;
  Integer base = 0;
  if (step > 1) {
    Integer inv;
    const Integer reduced = floor_mod(coef / d, step);
    mpz_invert(inv.get_mpz_t(), reduced.get_mpz_t(), step.get_mpz_t());
    base = floor_mod((rhs / d) * inv, step);
  }
  for (Integer k = base; k < g; k += step) out.kappas.push_back(k);
  return out;
}

}  // namespace

std::vector<std::vector<Integer>> hermite_normal_form(
    std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.size();
  const std::size_t cols = rows.front().size();
  auto combine = [](std::vector<Integer>& r, std::vector<Integer>& s,
                    std::size_t col) {
    // Unimodular 2x2 step leaving gcd in r[col] and zero in s[col].
    Integer x, y;
    const Integer a = r[col], b = s[col];
    const Integer g = extended_gcd(a, b, x, y);
    const Integer ag = a / g, bg = b / g;
    for (std::size_t j = col; j < r.size(); ++j) {
      const Integer rj = r[j];
      r[j] = x * rj + y * s[j];
      s[j] = ag * s[j] - bg * rj;
    }
  };
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < n; ++col) {
    std::size_t first = pivot_row;
    while (first < n && rows[first][col] == 0) ++first;
    if (first == n) continue;
    std::swap(rows[pivot_row], rows[first]);
    for (std::size_t i = pivot_row + 1; i < n; ++i) {
      if (rows[i][col] != 0) combine(rows[pivot_row], rows[i], col);
    }
    auto& piv = rows[pivot_row];
    if (piv[col] < 0) {
      for (auto& v : piv) v = -v;
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      const Integer q = floor_div(rows[i][col], piv[col]);
      if (q == 0) continue;
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= q * piv[j];
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

std::array<IntRow, 3> hnf3(const IntMatrix& rows) {
  std::vector<std::vector<Integer>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back({r[0], r[1], r[2]});
  auto h = hermite_normal_form(std::move(m));
  if (h.size() != 3 || h[0][0] == 0 || h[1][1] == 0 || h[2][2] == 0) {
    throw Singular("lattice does not have full rank");
  }
  return {IntRow{h[0][0], h[0][1], h[0][2]}, IntRow{h[1][0], h[1][1], h[1][2]},
          IntRow{h[2][0], h[2][1], h[2][2]}};
}

std::array<IntRow, 3> IdealHNF::rows(const CubicPoly& f) const {
  return {IntRow{a, a * floor_mod(mu1 + f.a1(), m1), a * lambda},
          IntRow{Integer(0), a * m1, -a * mu2 * m1},
          IntRow{Integer(0), Integer(0), a * m1 * m2}};
}

std::array<OrderElement, 3> IdealHNF::basis(const CubicPoly& f) const {
  const auto r = rows(f);
  return {element_of(r[0]), element_of(r[1]), element_of(r[2])};
}

bool canonical_less(const IdealHNF& l, const IdealHNF& r) {
  const Integer ln = l.norm(), rn = r.norm();
  return std::tie(ln, l.m1, l.mu1, l.m2, l.mu2, l.lambda, l.a) <
         std::tie(rn, r.m1, r.mu1, r.m2, r.mu2, r.lambda, r.a);
}

IdealHNF hnf_reduce(const IntMatrix& rows, const CubicPoly& f) {
  auto h = hnf3(rows);
  IdealHNF out;
  out.a = h[0][0];
  for (const auto& r : h) {
    for (const auto& v : r) {
      if (!divides(out.a, v)) {
        throw NotSublattice("HNF entries are not divisible by the content");
      }
    }
  }
  for (auto& r : h) {
    for (auto& v : r) v /= out.a;
  }
  out.m1 = h[1][1];
  if (!divides(out.m1, h[2][2])) {
    throw NotSublattice("HNF diagonal is not of the form (d, d m1, d m1 m2)");
  }
  out.m2 = h[2][2] / out.m1;
  if (!divides(out.m1, h[1][2])) {
    throw NotSublattice("HNF entry (2,3) is not a multiple of m1");
  }
  out.mu2 = floor_mod(-(h[1][2] / out.m1), out.m2);
  // The HNF already has h[0][1] in [0, m1); only row 3 may shift lambda.
  out.mu1 = floor_mod(h[0][1] - f.a1(), out.m1);
  out.lambda = floor_mod(h[0][2], out.m1 * out.m2);
  return out;
}

Integer lambda_from_roots(const Integer& mu1, const Integer& m1,
                          const Integer& mu2, const Integer& m2,
                          const CubicPoly& f) {
  const auto sol = solve_kappa(mu1, m1, mu2, m2, f, 0);
  const Integer lambda =
      lambda_for_kappa(mu1, m1, mu2, m2, sol.bar_m1, sol.bar_m2, sol.g,
                       sol.kappas.front(), f);
  if (sol.kappas.size() == 1) {
    // The result must not depend on the Bezout pair.
    const auto other = solve_kappa(mu1, m1, mu2, m2, f, 1);
    const Integer check =
        lambda_for_kappa(mu1, m1, mu2, m2, other.bar_m1, other.bar_m2, other.g,
                         other.kappas.front(), f);
    if (check != lambda) {
      throw InternalError(fmt::format(
          "lambda depends on the Bezout pair: {} vs {}", lambda.get_str(),
          check.get_str()));
    }
  }
  return lambda;
}

std::vector<Integer> lambda_candidates(const Integer& mu1, const Integer& m1,
                                       const Integer& mu2, const Integer& m2,
                                       const CubicPoly& f) {
  std::vector<Integer> out;
  KappaSolutions sol;
  try {
    sol = solve_kappa(mu1, m1, mu2, m2, f, 0);
  } catch (const NoSolution&) {
    return out;
  }
  for (const auto& k : sol.kappas) {
    out.push_back(lambda_for_kappa(mu1, m1, mu2, m2, sol.bar_m1, sol.bar_m2,
                                   sol.g, k, f));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_ideal(const IdealHNF& ideal, const CubicPoly& f) {
  if (ideal.a <= 0 || ideal.m1 <= 0 || ideal.m2 <= 0) return false;
  if (!divides(ideal.m1, f(ideal.mu1)) || !divides(ideal.m2, f(ideal.mu2))) {
    return false;
  }
  if (gcd(gcd(ideal.m1, ideal.m2), ideal.mu1 - ideal.mu2) != 1) return false;
  try {
    const Integer expected =
        lambda_from_roots(ideal.mu1, ideal.m1, ideal.mu2, ideal.m2, f);
    return floor_mod(ideal.lambda - expected, ideal.m1 * ideal.m2) == 0;
  } catch (const NoSolution&) {
    return false;
  }
}

bool is_closed_under_alpha(const IntMatrix& rows, const CubicPoly& f) {
  const auto h = hnf3(rows);
  for (const auto& r : h) {
    if (!in_triangular_lattice(times_alpha(r, f), h)) return false;
  }
  return true;
}

IntRow coordinates_of(const OrderElement& x) {
  if (!x.is_integral()) {
    throw NotSublattice(fmt::format("{} is not in Z[alpha]", x.to_string()));
  }
  return {x.coeff(2), x.coeff(1), x.coeff(0)};
}

OrderElement element_of(const IntRow& row) {
  return OrderElement(row[2], row[1], row[0]);
}

IntMatrix product_rows(const IntMatrix& lhs, const IntMatrix& rhs,
                       const CubicPoly& f) {
  IntMatrix out;
  out.reserve(lhs.size() * rhs.size());
  for (const auto& x : lhs) {
    for (const auto& y : rhs) {
      out.push_back(coordinates_of(mul(element_of(x), element_of(y), f)));
    }
  }
  return out;
}

IdealHNF ideal_product(const IdealHNF& lhs, const IdealHNF& rhs,
                       const CubicPoly& f) {
  const auto l = lhs.rows(f);
  const auto r = rhs.rows(f);
  return hnf_reduce(product_rows(IntMatrix(l.begin(), l.end()),
                                 IntMatrix(r.begin(), r.end()), f),
                    f);
}

bool verify_obstruction(const CubicPoly& f, const Integer& p,
                        const Integer& mu) {
  if (!p.fits_slong_p() || !is_prime(p.get_si())) {
    throw NotPrime(fmt::format("{} is not prime", p.get_str()));
  }
  const Integer value = f(mu);
  if (!divides(p * p, value)) {
    throw PreconditionFailed(fmt::format("F({}) = {} is not 0 mod {}^2",
                                         mu.get_str(), value.get_str(),
                                         p.get_str()));
  }
  const Integer slope = f.derivative(mu);
  if (!divides(p, slope)) {
    throw PreconditionFailed(fmt::format("F'({}) = {} is not 0 mod {}",
                                         mu.get_str(), slope.get_str(),
                                         p.get_str()));
  }
  const IntMatrix i1{IntRow{Integer(1), Integer(0), -mu * mu},
                     IntRow{Integer(0), Integer(1), -mu},
                     IntRow{Integer(0), Integer(0), p}};
  const IntMatrix i2{
      IntRow{Integer(1), mu + f.a1(), mu * mu + f.a1() * mu + f.a2()},
      IntRow{Integer(0), p, Integer(0)}, IntRow{Integer(0), Integer(0), p}};
  IntMatrix p_i1;
  for (const auto& r : i1) p_i1.push_back({p * r[0], p * r[1], p * r[2]});
  return hnf3(product_rows(i1, i2, f)) == hnf3(p_i1);
}

std::vector<IdealHNF> enumerate_ideal_tuples(const CubicPoly& f,
                                             std::int64_t max_norm) {
  if (max_norm < 1) return {};
  if (const auto bad = maximality_check(f); !bad.empty()) {
    throw PreconditionFailed(fmt::format("Z[alpha] is not maximal at {}",
                                         bad.front().get_str()));
  }
  const RootTable table(f, max_norm);
  std::vector<IdealHNF> out;
  for (std::int64_t m1 = 1; m1 * m1 <= max_norm; ++m1) {
    if (table.count(m1) == 0) continue;
    const Integer big_m1(static_cast<long>(m1));
    for (std::int64_t m2 = 1; m1 * m1 * m2 <= max_norm; ++m2) {
      if (table.count(m2) == 0) continue;
      const Integer big_m2(static_cast<long>(m2));
      const std::int64_t g = std::gcd(m1, m2);
      for (auto it1 = table.begin(m1); it1 != table.end(m1); ++it1) {
        for (auto it2 = table.begin(m2); it2 != table.end(m2); ++it2) {
          if (std::gcd(g, std::abs(*it1 - *it2)) != 1) continue;
          IdealHNF t;
          t.m1 = big_m1;
          t.mu1 = Integer(static_cast<long>(*it1));
          t.m2 = big_m2;
          t.mu2 = Integer(static_cast<long>(*it2));
          t.lambda = lambda_from_roots(t.mu1, t.m1, t.mu2, t.m2, f);
          out.push_back(std::move(t));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

Rational lattice_index(const std::array<OrderElement, 3>& basis) {
  std::array<std::array<Rational, 3>, 3> m;
  for (int i = 0; i < 3; ++i) m[i] = basis[i].power_coordinates();
  const Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return abs(det);
}

std::array<OrderElement, 3> inverse_ideal_basis(
    const std::array<OrderElement, 3>& ideal_basis, const CubicPoly& f) {
  const Rational index = lattice_index(ideal_basis);
  if (index == 0) throw Singular("ideal basis is degenerate");
  if (index.get_den() != 1) throw NotSublattice("ideal must be integral");
  const Integer n = index.get_num();
  // I^{-1} = (1/n) {y in Z[alpha] : y * beta_k = 0 mod n for every k}.
  // Kernel via HNF of [ A | I3 ; n I9 | 0 ], A_j = coords of e_j * beta_k.
  const std::array<OrderElement, 3> power{
      OrderElement::from_int(0, 0, 1), OrderElement::alpha(),
      OrderElement::from_int(1)};
  std::vector<std::vector<Integer>> m;
  for (int j = 0; j < 3; ++j) {
    std::vector<Integer> row(12, 0);
    for (int k = 0; k < 3; ++k) {
      const auto c = coordinates_of(mul(power[j], ideal_basis[k], f));
      for (int t = 0; t < 3; ++t) row[3 * k + t] = c[t];
    }
    row[9 + j] = 1;
    m.push_back(std::move(row));
  }
  for (int i = 0; i < 9; ++i) {
    std::vector<Integer> row(12, 0);
    row[i] = n;
    m.push_back(std::move(row));
  }
  const auto h = hermite_normal_form(std::move(m));
  std::vector<IntRow> kernel;
  for (const auto& row : h) {
    bool leading_zero = true;
    for (int i = 0; i < 9; ++i) leading_zero = leading_zero && row[i] == 0;
    if (leading_zero) kernel.push_back({row[9], row[10], row[11]});
  }
  if (kernel.size() != 3) throw InternalError("inverse ideal kernel rank");
  std::array<OrderElement, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = OrderElement(kernel[i][2], kernel[i][1], kernel[i][0], n);
  }
  return out;
}

IntMatrix scaled_ideal_rows(const OrderElement& xi,
                            const std::array<OrderElement, 3>& ideal_basis,
                            const CubicPoly& f) {
  IntMatrix out;
  out.reserve(3);
  for (const auto& b : ideal_basis) out.push_back(coordinates_of(mul(xi, b, f)));
  return out;
}

}  // namespace cubic
