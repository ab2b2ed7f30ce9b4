#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace catext {

using Integer = boost::multiprecision::cpp_int;
using IntVec = std::vector<Integer>;

// Least nonnegative residue; m must be positive.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

// Reduce modulo m when m > 0; m == 0 means no reduction (free coordinate).
inline Integer reduce_mod(const Integer& a, const Integer& m) {
  return m > 0 ? mod_floor(a, m) : a;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd_int(Integer a, Integer b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

// g = x*a + y*b with g = gcd(a, b) >= 0.
struct Xgcd {
  Integer g, x, y;
};

inline Xgcd xgcd(const Integer& a, const Integer& b) {
  if (a != 0 && b % a == 0) return {abs_int(a), Integer(a < 0 ? -1 : 1), Integer(0)};
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline Integer pow_int(Integer base, unsigned e) {
  Integer r = 1;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

inline Integer pow_mod(Integer base, Integer e, const Integer& m) {
  Integer r = 1 % m;
  base = mod_floor(base, m);
  while (e > 0) {
    if ((e & 1) != 0) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

inline bool fits_int64(const Integer& a) {
  return a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer& a) { return a.convert_to<std::int64_t>(); }

inline std::string to_string(const Integer& a) { return a.str(); }

inline IntVec int_vec(std::initializer_list<long long> xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline bool is_zero_vec(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace catext
