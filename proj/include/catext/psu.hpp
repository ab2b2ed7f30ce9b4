#pragma once

// Monomial matrices with entries in the p^K-th roots of unity, the subgroups of
// U(2p) built from the clock and shift matrices A and B, and the image of
// their determinant-one part modulo the p-part of the centre of SU(2p).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "catext/extension.hpp"

namespace catext {

// Entry (i, perm[i]) is w^exps[i] for a fixed primitive p^K-th root of unity w.
class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  MonomialMatrix(unsigned p, unsigned k, std::vector<std::size_t> perm, std::vector<std::int64_t> exps)
      : p_(p), k_(k), mod_(pow_int(p, k).convert_to<std::int64_t>()), perm_(std::move(perm)), exps_(std::move(exps)) {
    if (perm_.size() != exps_.size()) throw MalformedInput("permutation and exponents differ in length");
    std::vector<bool> seen(perm_.size(), false);
    for (auto j : perm_) {
      if (j >= perm_.size() || seen[j]) throw MalformedInput("not a permutation");
      seen[j] = true;
    }
    for (auto& e : exps_) e = ((e % mod_) + mod_) % mod_;
  }

  static MonomialMatrix identity(std::size_t n, unsigned p, unsigned k) { return scalar(n, p, k, 0); }

  static MonomialMatrix scalar(std::size_t n, unsigned p, unsigned k, std::int64_t e) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    return MonomialMatrix(p, k, std::move(perm), std::vector<std::int64_t>(n, e));
  }

  static MonomialMatrix diagonal(unsigned p, unsigned k, std::vector<std::int64_t> exps) {
    std::vector<std::size_t> perm(exps.size());
    std::iota(perm.begin(), perm.end(), 0);
    return MonomialMatrix(p, k, std::move(perm), std::move(exps));
  }

  std::size_t size() const { return perm_.size(); }
  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  std::int64_t modulus() const { return mod_; }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<std::int64_t>& exps() const { return exps_; }

  friend MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.size() != b.size() || a.p_ != b.p_ || a.k_ != b.k_) throw PreconditionError("incompatible monomial matrices");
    std::vector<std::size_t> perm(a.size());
    std::vector<std::int64_t> exps(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      perm[i] = b.perm_[a.perm_[i]];
      exps[i] = a.exps_[i] + b.exps_[a.perm_[i]];
    }
    return MonomialMatrix(a.p_, a.k_, std::move(perm), std::move(exps));
  }

  MonomialMatrix inverse() const {
    std::vector<std::size_t> perm(size());
    std::vector<std::int64_t> exps(size());
    for (std::size_t i = 0; i < size(); ++i) {
      perm[perm_[i]] = i;
      exps[perm_[i]] = -exps_[i];
    }
    return MonomialMatrix(p_, k_, std::move(perm), std::move(exps));
  }

  MonomialMatrix pow(std::size_t n) const {
    MonomialMatrix r = identity(size(), p_, k_);
    for (std::size_t i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  bool is_identity() const { return *this == identity(size(), p_, k_); }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (perm_[i] != i) return false;
    return true;
  }

  // det = sign * w^exponent.
  struct Det {
    int sign = 1;
    std::int64_t exponent = 0;
    bool is_one() const { return sign == 1 && exponent == 0; }
  };

  Det det() const {
    Det d;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = perm_[j]) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) d.sign = -d.sign;
    }
    for (auto e : exps_) d.exponent = (d.exponent + e) % mod_;
    return d;
  }

  friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) {
    return a.perm_ == b.perm_ && a.exps_ == b.exps_ && a.p_ == b.p_ && a.k_ == b.k_;
  }
  friend bool operator<(const MonomialMatrix& a, const MonomialMatrix& b) {
    return a.perm_ != b.perm_ ? a.perm_ < b.perm_ : a.exps_ < b.exps_;
  }

 private:
  unsigned p_ = 0, k_ = 0;
  std::int64_t mod_ = 1;
  std::vector<std::size_t> perm_;
  std::vector<std::int64_t> exps_;
};

inline MonomialMatrix commutator(const MonomialMatrix& a, const MonomialMatrix& b) {
  return a * b * a.inverse() * b.inverse();
}

namespace detail {

inline void check_psu_params(unsigned p, unsigned k) {
  if (p == 2) throw PreconditionError("p = 2 is not supported here; p must be an odd prime");
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  if (k < 1) throw PreconditionError("K must be at least 1");
  if (pow_int(p, k) > (Integer(1) << 30)) throw PreconditionError("p^K too large");
}

// Exponent of zeta = w^(p^(K-1)), a primitive p-th root of unity.
inline std::int64_t zeta_exp(unsigned p, unsigned k) { return pow_int(p, k - 1).convert_to<std::int64_t>(); }

}  // namespace detail

// A = diag(1, zeta, ..., zeta^(p-1)).
inline MonomialMatrix build_A(unsigned p, unsigned k) {
  detail::check_psu_params(p, k);
  std::vector<std::int64_t> e(p);
  for (unsigned i = 0; i < p; ++i) e[i] = static_cast<std::int64_t>(i) * detail::zeta_exp(p, k);
  return MonomialMatrix::diagonal(p, k, std::move(e));
}

// Cyclic shift. With forward = true, e_i -> e_{i+1}, which gives [A, B] = zeta I;
// the opposite direction gives zeta^{-1} I.
inline MonomialMatrix build_B(unsigned p, unsigned k, bool forward = true) {
  detail::check_psu_params(p, k);
  std::vector<std::size_t> perm(p);
  // Row r holds the single entry of the column mapped onto e_r.
  for (unsigned r = 0; r < p; ++r) perm[r] = forward ? (r + p - 1) % p : (r + 1) % p;
  return MonomialMatrix(p, k, std::move(perm), std::vector<std::int64_t>(p, 0));
}

// I^{(x) slot} (x) M (x) I^{(x) (factors - slot - 1)}, slots counted from 0.
inline MonomialMatrix tensor_slot(const MonomialMatrix& m, std::size_t slot, std::size_t factors) {
  if (slot >= factors) throw PreconditionError("tensor slot out of range");
  const std::size_t q = m.size();
  std::size_t n = 1;
  for (std::size_t i = 0; i < factors; ++i) n *= q;
  std::size_t stride = 1;
  for (std::size_t i = slot + 1; i < factors; ++i) stride *= q;
  std::vector<std::size_t> perm(n);
  std::vector<std::int64_t> exps(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t digit = (idx / stride) % q;
    perm[idx] = idx - digit * stride + m.perm()[digit] * stride;
    exps[idx] = m.exps()[digit];
  }
  return MonomialMatrix(m.p(), m.k(), std::move(perm), std::move(exps));
}

inline MonomialMatrix block_diag(const MonomialMatrix& a, const MonomialMatrix& b) {
  std::vector<std::size_t> perm(a.perm());
  std::vector<std::int64_t> exps(a.exps());
  for (std::size_t i = 0; i < b.size(); ++i) {
    perm.push_back(a.size() + b.perm()[i]);
    exps.push_back(b.exps()[i]);
  }
  return MonomialMatrix(a.p(), a.k(), std::move(perm), std::move(exps));
}

// diag(w^a I, w^b I) in U(2p).
inline MonomialMatrix block_scalar(unsigned p, unsigned k, std::int64_t a, std::int64_t b) {
  std::vector<std::int64_t> e(2 * p);
  for (unsigned i = 0; i < p; ++i) {
    e[i] = a;
    e[p + i] = b;
  }
  return MonomialMatrix::diagonal(p, k, std::move(e));
}

struct QGenerators {
  MonomialMatrix A1, A2, B1, B2;
  std::vector<MonomialMatrix> scalar_gens;  // diag(uI, vI) with u^p v^p = 1
  std::size_t scalar_order = 0;
};

inline QGenerators build_Q(unsigned p, unsigned k) {
  MonomialMatrix a = build_A(p, k), b = build_B(p, k), i = MonomialMatrix::identity(p, p, k);
  QGenerators q{block_diag(a, i), block_diag(i, a), block_diag(b, i), block_diag(i, b), {}, 0};
  q.scalar_gens.push_back(block_scalar(p, k, 1, -1));
  q.scalar_gens.push_back(block_scalar(p, k, detail::zeta_exp(p, k), 0));
  // pairs (a, b) mod p^K with p(a + b) = 0 mod p^K
  q.scalar_order = pow_int(p, k + 1).convert_to<std::size_t>();
  return q;
}

// Torus element diag(w^a I, w^{-a} I).
inline MonomialMatrix torus_element(unsigned p, unsigned k, std::int64_t a) { return block_scalar(p, k, a, -a); }

// Coset of a monomial matrix modulo <zeta I>, stored as the representative
// whose first exponent has top p-adic digit zero.
class PSUElement {
 public:
  PSUElement() = default;
  explicit PSUElement(const MonomialMatrix& m) : m_(canonical(m)) {}

  const MonomialMatrix& matrix() const { return m_; }
  bool is_identity() const { return m_.is_identity(); }

  friend PSUElement operator*(const PSUElement& a, const PSUElement& b) { return PSUElement(a.m_ * b.m_); }
  PSUElement inverse() const { return PSUElement(m_.inverse()); }
  friend bool operator==(const PSUElement& a, const PSUElement& b) { return a.m_ == b.m_; }
  friend bool operator<(const PSUElement& a, const PSUElement& b) { return a.m_ < b.m_; }

 private:
  static MonomialMatrix canonical(const MonomialMatrix& m) {
    if (m.size() == 0) return m;
    const std::int64_t z = detail::zeta_exp(m.p(), m.k());
    const std::int64_t top = m.exps()[0] / z;
    if (top == 0) return m;
    std::vector<std::int64_t> e(m.exps());
    for (auto& x : e) x -= top * z;
    return MonomialMatrix(m.p(), m.k(), m.perm(), std::move(e));
  }
  MonomialMatrix m_;
};

inline PSUElement project_psu(const MonomialMatrix& m) { return PSUElement(m); }

inline PSUElement commutator(const PSUElement& a, const PSUElement& b) { return a * b * a.inverse() * b.inverse(); }

struct RelationCheck {
  std::string name;
  std::size_t i = 0, j = 0;
  bool holds = false;
};

// [A_i, A_j] = [B_i, B_j] = 1, [A_i, B_j] = 1 for i != j, [A_i, B_i] = zeta I, A_i^p = B_i^p = 1.
inline std::vector<RelationCheck> tensor_relations(unsigned p, unsigned k, std::size_t factors) {
  MonomialMatrix a = build_A(p, k), b = build_B(p, k);
  std::vector<MonomialMatrix> as, bs;
  for (std::size_t i = 0; i < factors; ++i) {
    as.push_back(tensor_slot(a, i, factors));
    bs.push_back(tensor_slot(b, i, factors));
  }
  const std::size_t n = as.front().size();
  const MonomialMatrix zeta = MonomialMatrix::scalar(n, p, k, detail::zeta_exp(p, k));
  std::vector<RelationCheck> out;
  for (std::size_t i = 0; i < factors; ++i) {
    out.push_back({"A^p", i, i, as[i].pow(p).is_identity()});
    out.push_back({"B^p", i, i, bs[i].pow(p).is_identity()});
    for (std::size_t j = 0; j < factors; ++j) {
      if (i < j) {
        out.push_back({"[A_i,A_j]", i, j, commutator(as[i], as[j]).is_identity()});
        out.push_back({"[B_i,B_j]", i, j, commutator(bs[i], bs[j]).is_identity()});
      }
      if (i != j) out.push_back({"[A_i,B_j]", i, j, commutator(as[i], bs[j]).is_identity()});
    }
    out.push_back({"[A_i,B_i]", i, i, commutator(as[i], bs[i]) == zeta});
  }
  return out;
}

struct XY {
  PSUElement x, y;
};

// X = A1 B2, Y = B1 A2 in the image of Q.
inline XY build_xy(unsigned p, unsigned k) {
  QGenerators q = build_Q(p, k);
  return {project_psu(q.A1 * q.B2), project_psu(q.B1 * q.A2)};
}

inline PSUElement xy_commutator(unsigned p, unsigned k) {
  XY g = build_xy(p, k);
  return commutator(g.x, g.y);
}

struct NoSectionReport {
  std::size_t checked_pairs = 0;
  bool all_nontrivial = true;
  bool all_equal_reference = true;
  PSUElement reference;  // [X, Y]
};

// [X U, Y V] for every pair of level-K torus elements U, V.
inline NoSectionReport no_section_check(unsigned p, unsigned k, bool split_control = false) {
  detail::check_psu_params(p, k);
  PSUElement x, y;
  if (split_control) {
    QGenerators q = build_Q(p, k);
    x = project_psu(q.A1);
    y = project_psu(q.A2);
  } else {
    XY g = build_xy(p, k);
    x = g.x;
    y = g.y;
  }
  NoSectionReport rep;
  rep.reference = commutator(x, y);
  const std::int64_t m = pow_int(p, k).convert_to<std::int64_t>();
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = 0; b < m; ++b) {
      PSUElement c = commutator(x * project_psu(torus_element(p, k, a)), y * project_psu(torus_element(p, k, b)));
      ++rep.checked_pairs;
      if (c.is_identity()) rep.all_nontrivial = false;
      if (!(c == rep.reference)) rep.all_equal_reference = false;
    }
  return rep;
}

// Closure of a generating set under multiplication, with the multiplication table.
template <class T>
struct ClosedGroup {
  std::vector<T> elements;  // elements[0] is the identity
  FiniteGroup table;

  std::size_t index_of(const T& x) const {
    auto it = std::find(elements.begin(), elements.end(), x);
    if (it == elements.end()) throw PreconditionError("element not in the group");
    return static_cast<std::size_t>(it - elements.begin());
  }
};

template <class T>
ClosedGroup<T> close_group(const T& identity, const std::vector<T>& gens, std::size_t limit = 4096) {
  std::vector<T> el{identity};
  std::map<T, std::size_t> index{{identity, 0}};
  for (std::size_t i = 0; i < el.size(); ++i)
    for (const auto& g : gens) {
      T y = el[i] * g;
      if (index.emplace(y, el.size()).second) {
        el.push_back(y);
        if (el.size() > limit) throw ResourceRefusal("generated group exceeds the size limit", el.size(), limit);
      }
    }
  const std::size_t n = el.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(el[a] * el[b]);
      if (it == index.end()) throw Error("generated set is not closed");
      t[a][b] = it->second;
    }
  return {std::move(el), FiniteGroup(std::move(t))};
}

struct ObstructionReport {
  std::size_t group_order = 0;       // |<X, Y, torus>|
  IntVec quotient_invariants;        // invariants of the quotient by the torus
  IntVec h2_invariants;              // H^2(quotient, torus)
  IntVec class_coords;
  Integer class_order;
  bool is_zero = true;
  bool extension_valid = false;
};

// The class of torus -> <X, Y, torus> -> <x, y> in H^2(<x, y>, Z/p^K).
inline ObstructionReport restricted_class_obstruction(unsigned p, unsigned k, bool split_control = false,
                                                      const CobarLimits& lim = {}) {
  detail::check_psu_params(p, k);
  PSUElement x, y;
  if (split_control) {
    QGenerators q = build_Q(p, k);
    x = project_psu(q.A1);
    y = project_psu(q.A2);
  } else {
    XY g = build_xy(p, k);
    x = g.x;
    y = g.y;
  }
  PSUElement tau = project_psu(torus_element(p, k, 1));
  PSUElement one = project_psu(MonomialMatrix::identity(2 * p, p, k));
  auto g = close_group(one, std::vector<PSUElement>{x, y, tau});
  ObstructionReport rep;
  rep.group_order = g.elements.size();
  GroupExtensionData d = extension_from_group(g.table, PresentedAbGroup::cyclic(pow_int(p, k)), {g.index_of(tau)});
  rep.extension_valid = validate_extension(d.ext).empty();
  CohomologyClass c = extension_class(d.ext, lim);
  rep.h2_invariants = c.h->invariants();
  rep.class_coords = c.coords;
  rep.class_order = c.order();
  rep.is_zero = c.is_zero();
  // invariants of the abelian quotient
  FiniteGroup q = d.quotient;
  std::vector<std::size_t> all(q.order());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> gens{d.coset_of[g.index_of(x)], d.coset_of[g.index_of(y)]};
  std::vector<IntVec> rels;
  // words from a breadth-first spanning tree; each edge gives a relation
  std::vector<std::optional<IntVec>> word(q.order());
  word[q.identity()] = IntVec(gens.size());
  std::queue<std::size_t> todo;
  todo.push(q.identity());
  while (!todo.empty()) {
    std::size_t a = todo.front();
    todo.pop();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::size_t b = q.mul(a, gens[i]);
      IntVec w = *word[a];
      w[i] += 1;
      if (!word[b]) {
        word[b] = w;
        todo.push(b);
      } else {
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= (*word[b])[j];
        if (!is_zero_vec(w)) rels.push_back(w);
      }
    }
  }
  if (q.is_abelian())
    rep.quotient_invariants = PresentedAbGroup(gens.size(), IntMatrix::from_columns(rels, gens.size())).invariant_factors();
  return rep;
}

namespace detail {

// Coset modulo scalar matrices, normalized by forcing the first exponent to zero.
struct ScalarCoset {
  MonomialMatrix m;
  static MonomialMatrix norm(const MonomialMatrix& x) {
    std::vector<std::int64_t> e(x.exps());
    const std::int64_t s = e[0];
    for (auto& v : e) v -= s;
    return MonomialMatrix(x.p(), x.k(), x.perm(), std::move(e));
  }
  friend ScalarCoset operator*(const ScalarCoset& u, const ScalarCoset& v) { return {norm(u.m * v.m)}; }
  friend bool operator<(const ScalarCoset& u, const ScalarCoset& v) { return u.m < v.m; }
  friend bool operator==(const ScalarCoset& u, const ScalarCoset& v) { return u.m == v.m; }
};

}  // namespace detail

struct QuotientStructure {
  std::size_t group_order = 0;     // |<A_i, B_i, w I>| at level K
  std::size_t quotient_order = 0;  // modulo the scalars
  bool abelian = false;
  IntVec invariants;               // when abelian
};

// Structure of <A_i, B_i, scalars> / scalars on (C^p)^{(x) factors}, from the tables.
inline QuotientStructure gamma_quotient_structure(unsigned p, unsigned k, std::size_t factors,
                                                  std::size_t limit = 1u << 16) {
  detail::check_psu_params(p, k);
  MonomialMatrix a = build_A(p, k), b = build_B(p, k);
  std::vector<MonomialMatrix> gens;
  for (std::size_t i = 0; i < factors; ++i) gens.push_back(tensor_slot(a, i, factors));
  for (std::size_t i = 0; i < factors; ++i) gens.push_back(tensor_slot(b, i, factors));
  const std::size_t n = gens.front().size();
  QuotientStructure rep;
  auto full = close_group(MonomialMatrix::identity(n, p, k),
                          [&] {
                            auto g = gens;
                            g.push_back(MonomialMatrix::scalar(n, p, k, 1));
                            return g;
                          }(),
                          limit);
  rep.group_order = full.elements.size();
  using Coset = detail::ScalarCoset;
  std::vector<Coset> cg;
  for (const auto& g : gens) cg.push_back({Coset::norm(g)});
  auto quot = close_group(Coset{MonomialMatrix::identity(n, p, k)}, cg, limit);
  rep.quotient_order = quot.elements.size();
  rep.abelian = quot.table.is_abelian();
  if (rep.abelian) {
    std::vector<IntVec> rels;
    for (std::size_t i = 0; i < cg.size(); ++i) {
      IntVec r(cg.size());
      r[i] = static_cast<long>(quot.table.element_order(quot.index_of(cg[i])));
      rels.push_back(r);
    }
    // order relations generate all relations here when the product of orders equals the group order
    PresentedAbGroup g(cg.size(), IntMatrix::from_columns(rels, cg.size()));
    if (g.order() && *g.order() == rep.quotient_order) rep.invariants = g.invariant_factors();
    else throw Error("quotient is not the direct product of the generator subgroups");
  }
  return rep;
}

}  // namespace catext
