#pragma once

// The finite ring O / m: canonical coset representatives, units, inverses.
//
// Representatives are x + y*w with 0 <= x < a, 0 <= y < c for the HNF basis
// {a, b + c*w} of m.  Coordinates are kept in 64-bit integers; moduli are
// limited by the enumeration budget.

#include "hpoincare/ideals.hpp"

#include <cstdint>
#include <vector>

namespace hpoincare {

inline constexpr std::uint64_t kDefaultResidueBudget = 10000000;

struct Residue {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const Residue& o) const { return x == o.x && y == o.y; }
};

class ResidueRing {
 public:
  // Throws BudgetExceeded if N(m) exceeds the budget.
  explicit ResidueRing(const Ideal& m, std::uint64_t budget = kDefaultResidueBudget);

  const Ideal& modulus() const { return m_; }
  std::uint64_t size() const { return static_cast<std::uint64_t>(a_ * c_); }

  Residue reduce(const OElement& x) const;
  Residue reduce(__int128 x, __int128 y) const;
  OElement to_element(const Residue& r) const { return {r.x, r.y, m_.basis()}; }
  Residue mul(const Residue& u, const Residue& v) const;
  bool is_unit(const Residue& r) const;
  bool is_unit(const OElement& x) const { return is_unit(reduce(x)); }
  // Throws NotInvertible.
  Residue inverse(const Residue& r) const;
  OElement inverse(const OElement& x) const { return to_element(inverse(reduce(x))); }

  std::vector<OElement> reps() const;
  std::vector<OElement> unit_reps() const;
  std::uint64_t unit_count() const;

  // Calls f(x, x^{-1}) for every unit x in representative order.  For m = O
  // the single call is f(0, 0).
  template <class Fn>
  void for_each_unit(Fn&& f) const {
    for (std::int64_t y = 0; y < c_; ++y) {
      for (std::int64_t x = 0; x < a_; ++x) {
        Residue r{x, y};
        if (!is_unit(r)) continue;
        f(r, inverse(r));
      }
    }
  }

 private:
  struct PrimeBox {
    std::int64_t a, b, c;
  };
  bool in_prime(const PrimeBox& p, std::int64_t x, std::int64_t y) const;
  Residue inverse_lattice(const Residue& r) const;

  Ideal m_;
  std::int64_t a_, b_, c_;
  std::int64_t t_, n_;
  std::vector<PrimeBox> primes_;
};

// Scan-based inverse used as a test oracle.
OElement inverse_by_scan(const ResidueRing& R, const OElement& x);

}  // namespace hpoincare
