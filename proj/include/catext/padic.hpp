#pragma once

// Units of Z/p^k standing in for p-adic units at precision k.

#include <algorithm>
#include <string>
#include <vector>

#include "catext/error.hpp"
#include "catext/integer.hpp"

namespace catext {

// Raised when a question needs more p-adic precision than the data carries.
class PrecisionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class UnitModPk {
 public:
  UnitModPk(unsigned p, unsigned k, const Integer& residue) : p_(p), k_(k) {
    if (!is_prime(p)) throw PreconditionError("p must be prime");
    if (k < 1) throw PreconditionError("precision k must be at least 1");
    mod_ = pow_int(p, k);
    r_ = mod_floor(residue, mod_);
    if (r_ % p == 0) throw PreconditionError("residue " + to_string(residue) + " is not a unit mod p");
  }

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  const Integer& residue() const { return r_; }
  const Integer& modulus() const { return mod_; }

  UnitModPk pow(const Integer& n) const { return UnitModPk(p_, k_, pow_mod(r_, n, mod_)); }
  UnitModPk inverse() const { return UnitModPk(p_, k_, xgcd(r_, mod_).x); }

  // Reduction to a lower precision.
  UnitModPk at_level(unsigned m) const {
    if (m > k_) throw PrecisionError("cannot raise precision from " + std::to_string(k_) + " to " + std::to_string(m));
    return UnitModPk(p_, m, r_);
  }

  friend UnitModPk operator*(const UnitModPk& a, const UnitModPk& b) {
    if (a.p_ != b.p_ || a.k_ != b.k_) throw PreconditionError("units of different p or precision");
    return UnitModPk(a.p_, a.k_, a.r_ * b.r_);
  }
  friend bool operator==(const UnitModPk& a, const UnitModPk& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.r_ == b.r_;
  }
  friend bool operator<(const UnitModPk& a, const UnitModPk& b) { return a.r_ < b.r_; }

 private:
  unsigned p_, k_;
  Integer mod_, r_;
};

// u == 1 mod p^m.
inline bool gamma_membership(const UnitModPk& u, unsigned m) {
  if (m > u.k()) throw PrecisionError("membership in level " + std::to_string(m) + " needs precision at least " +
                                      std::to_string(m) + ", have " + std::to_string(u.k()));
  if (m == 0) return true;
  return mod_floor(u.residue() - 1, pow_int(u.p(), m)) == 0;
}

// The (p-1)-st root of unity congruent to a mod p, as a^(p^(k-1)).
inline UnitModPk teichmuller(const Integer& a, unsigned p, unsigned k) {
  if (p == 2) throw PreconditionError("Teichmuller lifts are for odd p; use torsion_units for p = 2");
  UnitModPk u(p, k, a);
  return u.pow(pow_int(p, k - 1));
}

// Image of the torsion of Z_p^x at precision k.
inline std::vector<UnitModPk> torsion_units(unsigned p, unsigned k) {
  std::vector<UnitModPk> out;
  if (p == 2) {
    out.emplace_back(2, k, 1);
    UnitModPk m(2, k, -1);
    if (!(m == out.front())) out.push_back(m);
    return out;
  }
  for (unsigned a = 1; a < p; ++a) out.push_back(teichmuller(a, p, k));
  std::sort(out.begin(), out.end());
  return out;
}

// Least n >= 1 with u^n == 1 mod p^m.
inline Integer class_order(const UnitModPk& u, unsigned m) {
  UnitModPk v = u.at_level(std::max(m, 1u));
  if (m == 0) return 1;
  Integer n = 1;
  UnitModPk x = v;
  while (x.residue() != 1) {
    x = x * v;
    ++n;
  }
  return n;
}

// All units mod p^k in increasing order.
inline std::vector<UnitModPk> all_units(unsigned p, unsigned k) {
  std::vector<UnitModPk> out;
  Integer mod = pow_int(p, k);
  for (Integer r = 1; r < mod; ++r)
    if (r % p != 0) out.emplace_back(p, k, r);
  return out;
}

}  // namespace catext
