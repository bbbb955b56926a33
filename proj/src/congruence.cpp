#include "cubic/congruence.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace cubic {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<u128>(a) * static_cast<u128>(b) %
                                   static_cast<u128>(m));
}

std::int64_t reduce(const Integer& v, std::int64_t m) {
  return to_int64(floor_mod(v, Integer(static_cast<long>(m))));
}

// F mod m with coefficients pre-reduced into [0, m).
struct ModPoly {
  std::int64_t m, c1, c2, c3;

  ModPoly(const CubicPoly& f, std::int64_t mod)
      : m(mod), c1(reduce(f.a1(), mod)), c2(reduce(f.a2(), mod)),
        c3(reduce(f.a3(), mod)) {}

  std::int64_t value(std::int64_t x) const {
    std::int64_t v = (x + c1) % m;
    v = (mulmod(v, x, m) + c2) % m;
    v = (mulmod(v, x, m) + c3) % m;
    return v;
  }
  std::int64_t derivative(std::int64_t x) const {
    std::int64_t v = (mulmod(3 % m, x, m) + mulmod(2 % m, c1, m)) % m;
    v = (mulmod(v, x, m) + c2) % m;
    return v;
  }
};

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  Integer r;
  const Integer aa(static_cast<long>(a)), mm(static_cast<long>(m));
  if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()) == 0) {
    throw InternalError(fmt::format("{} not invertible mod {}", a, m));
  }
  return to_int64(r);
}

std::int64_t checked_pow(std::int64_t p, int k) {
  std::int64_t out = 1;
  for (int i = 0; i < k; ++i) {
    if (out > (std::int64_t{1} << 62) / p) {
      throw PreconditionFailed(fmt::format("{}^{} exceeds 2^62", p, k));
    }
    out *= p;
  }
  return out;
}

std::vector<std::int64_t> crt_combine(const std::vector<std::int64_t>& r1,
                                      std::int64_t m1,
                                      const std::vector<std::int64_t>& r2,
                                      std::int64_t m2) {
  std::vector<std::int64_t> out;
  out.reserve(r1.size() * r2.size());
  const std::int64_t m = m1 * m2;
  const std::int64_t m1_inv = inverse_mod(m1 % m2, m2);
  for (auto a : r1) {
    for (auto b : r2) {
      const std::int64_t t = mulmod(((b - a) % m2 + m2) % m2, m1_inv, m2);
      out.push_back((a + static_cast<std::int64_t>(static_cast<i128>(m1) * t)) % m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}


// Dense polynomials over F_p, lowest degree first, no trailing zeros.
using PolyP = std::vector<std::int64_t>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP poly_mod(PolyP a, const PolyP& b, std::int64_t p) {
  trim(a);
  const std::int64_t lead_inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::int64_t q = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[i + shift] = (a[i + shift] + p - mulmod(q, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m,
                  std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(out), m, p);
}

PolyP poly_powmod(PolyP base, std::int64_t e, const PolyP& m, std::int64_t p) {
  PolyP result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    e >>= 1;
    if (e > 0) base = poly_mulmod(base, base, m, p);
  }
  return result;
}

PolyP poly_gcd(PolyP a, PolyP b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::int64_t inv = inverse_mod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

// Splits a monic squarefree product of distinct linear factors over F_p
// (p odd) with gcd((x + shift)^((p-1)/2) - 1, g), trying shifts 0, 1, ...
void split_linear(const PolyP& g, std::int64_t p, std::vector<std::int64_t>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back((p - g[0]) % p);
    return;
  }
  for (std::int64_t shift = 0;; ++shift) {
    PolyP h = poly_powmod(PolyP{shift % p, 1}, (p - 1) / 2, g, p);
    if (h.empty()) h = {0};
    h[0] = (h[0] + p - 1) % p;
    PolyP d = poly_gcd(h, g, p);
    if (d.size() > 1 && d.size() < g.size()) {
      PolyP quotient;
      // g / d by long division; d is monic.
      PolyP rem = g;
      quotient.assign(g.size() - d.size() + 1, 0);
      for (std::size_t i = quotient.size(); i-- > 0;) {
        const std::int64_t q = rem[i + d.size() - 1];
        quotient[i] = q;
        for (std::size_t j = 0; j < d.size(); ++j) {
          rem[i + j] = (rem[i + j] + p - mulmod(q, d[j], p)) % p;
        }
      }
      split_linear(d, p, out);
      split_linear(quotient, p, out);
      return;
    }
  }
}

constexpr std::int64_t kScanBelow = 64;

std::vector<std::int64_t> roots_mod_prime(const CubicPoly& f, std::int64_t p) {
  std::vector<std::int64_t> out;
  const ModPoly mod_p(f, p);
  if (p < kScanBelow) {
    for (std::int64_t r = 0; r < p; ++r) {
      if (mod_p.value(r) == 0) out.push_back(r);
    }
    return out;
  }
  const PolyP fp{mod_p.c3, mod_p.c2, mod_p.c1, 1};
  PolyP xp = poly_powmod(PolyP{0, 1}, p, fp, p);
  xp.resize(std::max<std::size_t>(xp.size(), 2), 0);
  xp[1] = (xp[1] + p - 1) % p;
  const PolyP g = poly_gcd(xp, fp, p);
  split_linear(g, p, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> prime_power_roots(const CubicPoly& f, std::int64_t p,
                                            int k) {
  std::vector<std::int64_t> current = roots_mod_prime(f, p);
  const ModPoly mod_p(f, p);
  std::int64_t pj = p;
  for (int j = 1; j < k; ++j) {
    const std::int64_t next_mod = pj * p;
    const ModPoly f_next(f, next_mod);
    std::vector<std::int64_t> lifted;
    for (auto r : current) {
      const std::int64_t d = mod_p.derivative(r % p);
      if (d != 0) {
        // Unique lift r + t p^j with t = -(F(r)/p^j) / F'(r) mod p.
        const std::int64_t q = f_next.value(r) / pj;
        const std::int64_t t = mulmod((p - q % p) % p, inverse_mod(d, p), p);
        lifted.push_back(r + t * pj);
      } else {
        for (std::int64_t t = 0; t < p; ++t) {
          const std::int64_t cand = r + t * pj;
          if (f_next.value(cand) == 0) lifted.push_back(cand);
        }
      }
    }
    std::sort(lifted.begin(), lifted.end());
    current = std::move(lifted);
    pj = next_mod;
  }
  return current;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

RootSet roots_mod_prime_power(const CubicPoly& f, std::int64_t p, int k) {
  if (!is_prime(p)) throw NotPrime(fmt::format("{} is not prime", p));
  if (k < 1) throw PreconditionFailed("prime power exponent must be >= 1");
  const std::int64_t top = checked_pow(p, k);
  return {top, prime_power_roots(f, p, k)};
}

RootSet roots_mod_m(const CubicPoly& f, std::int64_t m) {
  if (m < 1) throw PreconditionFailed("modulus must be positive");
  RootSet out{1, {0}};
  for (const auto& [p, e] : factorize(m)) {
    const RootSet part = roots_mod_prime_power(f, p, e);
    out.roots = crt_combine(out.roots, out.m, part.roots, part.m);
    out.m *= part.m;
    if (out.roots.empty()) {
      out.m = m;
      break;
    }
  }
  return out;
}

RootTable::RootTable(const CubicPoly& f, std::int64_t limit)
    : limit_(std::max<std::int64_t>(limit, 1)) {
  std::vector<std::int64_t> spf(static_cast<std::size_t>(limit_ + 1), 0);
  for (std::int64_t i = 2; i <= limit_; ++i) {
    if (spf[i]) continue;
    for (std::int64_t j = i; j <= limit_; j += i) {
      if (!spf[j]) spf[j] = i;
    }
  }
  offsets_.assign(static_cast<std::size_t>(limit_ + 2), 0);
  data_.clear();
  offsets_[0] = 0;
  offsets_[1] = 0;
  data_.push_back(0);  // m = 1
  offsets_[2] = 1;
  for (std::int64_t m = 2; m <= limit_; ++m) {
    const std::int64_t p = spf[m];
    std::int64_t pk = 1;
    int e = 0;
    for (std::int64_t r = m; r % p == 0; r /= p) {
      pk *= p;
      ++e;
    }
    const std::int64_t rest = m / pk;
    std::vector<std::int64_t> rs;
    if (rest == 1) {
      rs = prime_power_roots(f, p, e);
    } else if (count(pk) != 0 && count(rest) != 0) {
      rs = crt_combine(roots(pk), pk, roots(rest), rest);
    }
    data_.insert(data_.end(), rs.begin(), rs.end());
    offsets_[m + 1] = data_.size();
  }
}

}  // namespace cubic
