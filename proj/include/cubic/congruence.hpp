#pragma once

// Roots mu mod m of the congruence F(mu) = 0 mod m.

#include <cstdint>
#include <utility>
#include <vector>

#include "cubic/field_core.hpp"

namespace cubic {

/// Complete, sorted, duplicate-free set of roots of F modulo m.
struct RootSet {
  std::int64_t m = 1;
  std::vector<std::int64_t> roots;

  friend bool operator==(const RootSet&, const RootSet&) = default;
};

bool is_prime(std::int64_t n);

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Exhaustive scan mod p, then lifting to p^k: Hensel steps for simple
/// roots, a scan over the p lifts where F'(mu) = 0 mod p. Throws NotPrime.
RootSet roots_mod_prime_power(const CubicPoly& f, std::int64_t p, int k);

/// CRT combination over the prime-power factors of m; {0} for m = 1.
RootSet roots_mod_m(const CubicPoly& f, std::int64_t m);

/// Roots for every modulus 1..limit, built multiplicatively from a
/// smallest-prime-factor sieve. Used by enumerations that touch every m.
class RootTable {
 public:
  RootTable(const CubicPoly& f, std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  std::size_t count(std::int64_t m) const {
    return offsets_[m + 1] - offsets_[m];
  }
  std::vector<std::int64_t> roots(std::int64_t m) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(offsets_[m]),
            data_.begin() + static_cast<std::ptrdiff_t>(offsets_[m + 1])};
  }
  const std::int64_t* begin(std::int64_t m) const {
    return data_.data() + offsets_[m];
  }
  const std::int64_t* end(std::int64_t m) const {
    return data_.data() + offsets_[m + 1];
  }

 private:
  std::int64_t limit_;
  std::vector<std::size_t> offsets_;
  std::vector<std::int64_t> data_;
};

}  // namespace cubic
