#pragma once

// Finitely generated abelian groups Z^n / (column span of a relation matrix)
// and homomorphisms between them.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "catext/lattice.hpp"
#include "catext/snf.hpp"

namespace catext {

class PresentedAbGroup {
 public:
  PresentedAbGroup() : PresentedAbGroup(0, IntMatrix(0, 0)) {}

  // relations has ngens rows; each column is a relator. A positive exponent_hint
  // promises that hint * Z^ngens lies in the relation span (keeps entries small).
  PresentedAbGroup(std::size_t ngens, IntMatrix relations, const Integer& exponent_hint = 0) {
    if (relations.rows() != ngens && !(relations.cols() == 0))
      throw MalformedInput("relation matrix must have ngens rows");
    if (relations.cols() == 0) relations = IntMatrix(ngens, 0);
    auto d = std::make_shared<Data>();
    d->ngens = ngens;
    d->rel = std::move(relations);
    build(*d, exponent_hint);
    d_ = std::move(d);
  }

  static PresentedAbGroup cyclic(const Integer& n) {
    if (n == 0) return free(1);
    return PresentedAbGroup(1, IntMatrix::from_rows({{abs_int(n)}}));
  }

  static PresentedAbGroup free(std::size_t r) { return PresentedAbGroup(r, IntMatrix(r, 0)); }

  // One generator per entry; 0 entries stay free.
  static PresentedAbGroup from_invariants(const IntVec& d) {
    std::vector<IntVec> cols;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) {
        IntVec c(d.size());
        c[i] = abs_int(d[i]);
        cols.push_back(std::move(c));
      }
    return PresentedAbGroup(d.size(), IntMatrix::from_columns(cols, d.size()));
  }

  static PresentedAbGroup direct_sum(const PresentedAbGroup& a, const PresentedAbGroup& b) {
    const std::size_t n = a.ngens() + b.ngens();
    IntMatrix rel(n, a.relations().cols() + b.relations().cols());
    for (std::size_t j = 0; j < a.relations().cols(); ++j)
      for (std::size_t i = 0; i < a.ngens(); ++i) rel(i, j) = a.relations()(i, j);
    for (std::size_t j = 0; j < b.relations().cols(); ++j)
      for (std::size_t i = 0; i < b.ngens(); ++i) rel(a.ngens() + i, a.relations().cols() + j) = b.relations()(i, j);
    return PresentedAbGroup(n, std::move(rel));
  }

  std::size_t ngens() const { return d_->ngens; }
  const IntMatrix& relations() const { return d_->rel; }

  // Invariant factors d1 | d2 | ..., units dropped, 0 for each free summand.
  const IntVec& invariant_factors() const { return d_->inv; }

  // Number of canonical coordinates (one per invariant factor).
  std::size_t canonical_rank() const { return d_->inv.size(); }

  // Coordinates in (+) Z/d_i, least nonnegative residues.
  IntVec to_canonical(const IntVec& x) const {
    check_size(x);
    IntVec c = d_->P * x;
    lattice::reduce_in_place(c, d_->inv);
    return c;
  }

  // Reduced generator vector for canonical coordinates c.
  IntVec from_canonical(const IntVec& c) const {
    if (c.size() != canonical_rank()) throw PreconditionError("canonical coordinate vector has wrong length");
    return reduce(d_->Q * c);
  }

  // Unique reduced representative of x modulo the relations.
  IntVec reduce(const IntVec& x) const {
    check_size(x);
    return lattice::lex_least(d_->rel_echelon, x);
  }

  bool is_zero(const IntVec& x) const { return is_zero_vec(to_canonical(x)); }
  bool equal(const IntVec& x, const IntVec& y) const { return to_canonical(x) == to_canonical(y); }

  IntVec add(const IntVec& x, const IntVec& y) const {
    check_size(x);
    check_size(y);
    IntVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return reduce(z);
  }

  IntVec scale(const Integer& k, const IntVec& x) const {
    IntVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = k * x[i];
    return reduce(z);
  }

  IntVec neg(const IntVec& x) const { return scale(-1, x); }
  IntVec zero() const { return IntVec(ngens()); }

  bool is_finite() const {
    for (const auto& d : d_->inv)
      if (d == 0) return false;
    return true;
  }

  std::optional<Integer> order() const {
    if (!is_finite()) return std::nullopt;
    Integer n = 1;
    for (const auto& d : d_->inv) n *= d;
    return n;
  }

  // Exponent (0 when infinite; 1 for the trivial group).
  Integer exponent() const {
    Integer e = 1;
    for (const auto& d : d_->inv) {
      if (d == 0) return 0;
      e = lcm_int(e, d);
    }
    return e;
  }

  // Order of the element x (0 when infinite).
  Integer element_order(const IntVec& x) const {
    IntVec c = to_canonical(x);
    Integer o = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (d_->inv[i] == 0) return 0;
      o = lcm_int(o, d_->inv[i] / gcd_int(c[i], d_->inv[i]));
    }
    return o;
  }

  // All elements in canonical lexicographic order (first coordinate slowest).
  std::vector<IntVec> elements(std::size_t limit = 1u << 20) const {
    auto n = order();
    if (!n) throw PreconditionError("cannot enumerate an infinite group");
    if (*n > limit) throw ResourceRefusal("group too large to enumerate", n->convert_to<std::uint64_t>(), limit);
    std::vector<IntVec> out;
    const std::size_t total = n->convert_to<std::size_t>();
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) out.push_back(element(idx));
    return out;
  }

  // Position of x in elements().
  std::size_t element_index(const IntVec& x) const {
    IntVec c = to_canonical(x);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (d_->inv[i] == 0) throw PreconditionError("element index of infinite group");
      idx = idx * d_->inv[i].convert_to<std::size_t>() + c[i].convert_to<std::size_t>();
    }
    return idx;
  }

  IntVec element(std::size_t idx) const {
    IntVec c(canonical_rank());
    for (std::size_t i = c.size(); i-- > 0;) {
      if (d_->inv[i] == 0) throw PreconditionError("element of infinite group by index");
      const std::size_t m = d_->inv[i].convert_to<std::size_t>();
      c[i] = idx % m;
      idx /= m;
    }
    return from_canonical(c);
  }

  // P: generators -> canonical coordinates; Q: canonical coordinates -> generators.
  const IntMatrix& to_canonical_matrix() const { return d_->P; }
  const IntMatrix& from_canonical_matrix() const { return d_->Q; }

  friend bool operator==(const PresentedAbGroup& a, const PresentedAbGroup& b) {
    return a.d_ == b.d_ || (a.ngens() == b.ngens() && a.relations() == b.relations());
  }

 private:
  struct Data {
    std::size_t ngens = 0;
    IntMatrix rel;
    IntVec inv;
    IntMatrix P, Q;
    lattice::Echelon rel_echelon;
  };

  void check_size(const IntVec& x) const {
    if (x.size() != ngens()) throw PreconditionError("element has wrong number of coordinates");
  }

  static void build(Data& d, const Integer& hint) {
    const std::size_t n = d.ngens;
    // With a hint the relation lattice contains hint * Z^n, so echelon reduction may work modulo it.
    IntVec moduli(n, hint > 0 ? hint : Integer(0));
    d.rel_echelon = lattice::echelon_basis(d.rel.columns(), moduli);
    IntMatrix work = IntMatrix::from_columns(d.rel_echelon.cols, n);
    detail::SmithWork w(work, true, true, false);
    w.run();
    const IntMatrix& U = w.U;
    IntVec diag(n);
    for (std::size_t i = 0; i < std::min(n, w.A.cols()); ++i) diag[i] = w.A(i, i);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
      if (diag[i] != 1) keep.push_back(i);
    d.inv.clear();
    d.P = IntMatrix(keep.size(), n);
    d.Q = IntMatrix(n, keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
      const std::size_t i = keep[a];
      d.inv.push_back(diag[i]);
      for (std::size_t j = 0; j < n; ++j) {
        d.P(a, j) = reduce_mod(U(i, j), diag[i]);
        d.Q(j, a) = w.Uinv(j, i);
      }
    }
  }

  std::shared_ptr<const Data> d_;
};

inline PresentedAbGroup truncated_torus(unsigned p, unsigned k, std::size_t r) {
  return PresentedAbGroup::from_invariants(IntVec(r, pow_int(p, k)));
}

inline bool isomorphic(const PresentedAbGroup& a, const PresentedAbGroup& b) {
  return a.invariant_factors() == b.invariant_factors();
}

inline IntVec invariant_factors(const PresentedAbGroup& g) { return g.invariant_factors(); }

class AbHom {
 public:
  AbHom() = default;
  AbHom(PresentedAbGroup src, PresentedAbGroup dst, IntMatrix m)
      : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(m)) {
    if (m_.rows() != dst_.ngens() || m_.cols() != src_.ngens())
      throw MalformedInput("hom matrix must be dst.ngens x src.ngens");
    for (std::size_t j = 0; j < src_.relations().cols(); ++j)
      if (!dst_.is_zero(m_ * src_.relations().column(j)))
        throw PreconditionError("hom is not well defined: a relator maps to a nonzero element");
  }

  static AbHom identity(const PresentedAbGroup& g) { return AbHom(g, g, IntMatrix::identity(g.ngens())); }
  static AbHom zero(const PresentedAbGroup& a, const PresentedAbGroup& b) {
    return AbHom(a, b, IntMatrix(b.ngens(), a.ngens()));
  }
  static AbHom scalar(const PresentedAbGroup& g, const Integer& k) {
    IntMatrix m(g.ngens(), g.ngens());
    for (std::size_t i = 0; i < g.ngens(); ++i) m(i, i) = k;
    return AbHom(g, g, std::move(m));
  }

  const PresentedAbGroup& src() const { return src_; }
  const PresentedAbGroup& dst() const { return dst_; }
  const IntMatrix& matrix() const { return m_; }

  IntVec operator()(const IntVec& x) const { return dst_.reduce(m_ * x); }

  // Matrix between canonical coordinates, entries reduced modulo the target invariants.
  IntMatrix canonical_matrix() const {
    IntMatrix c = dst_.to_canonical_matrix() * m_ * src_.from_canonical_matrix();
    const IntVec& inv = dst_.invariant_factors();
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = reduce_mod(c(i, j), inv[i]);
    return c;
  }

  // Equality as maps between the same groups.
  bool equals(const AbHom& o) const {
    if (!(src_ == o.src_) || !(dst_ == o.dst_)) return false;
    for (std::size_t j = 0; j < src_.ngens(); ++j)
      if (!dst_.equal(m_.column(j), o.m_.column(j))) return false;
    return true;
  }

  bool is_identity() const { return src_ == dst_ && equals(identity(src_)); }

 private:
  PresentedAbGroup src_, dst_;
  IntMatrix m_;
};

// g after f.
inline AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(g.src() == f.dst())) throw PreconditionError("compose: groups do not match");
  return AbHom(f.src(), g.dst(), g.matrix() * f.matrix());
}

inline AbHom add(const AbHom& f, const AbHom& g) {
  if (!(f.src() == g.src()) || !(f.dst() == g.dst())) throw PreconditionError("add: homs between different groups");
  IntMatrix m = f.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += g.matrix()(i, j);
  return AbHom(f.src(), f.dst(), std::move(m));
}

struct Subgroup {
  PresentedAbGroup group;
  AbHom inclusion;
};

struct Quotient {
  PresentedAbGroup group;
  AbHom projection;
};

inline Subgroup kernel(const AbHom& f) {
  const auto& A = f.src();
  const auto& inv_a = A.invariant_factors();
  lattice::Echelon e =
      lattice::kernel_lattice(SparseMatrix::from_dense(f.canonical_matrix()), inv_a, f.dst().invariant_factors());
  const std::size_t t = e.cols.size();
  std::vector<IntVec> rels;
  for (std::size_t i = 0; i < inv_a.size(); ++i) {
    if (inv_a[i] == 0) continue;
    IntVec v(inv_a.size());
    v[i] = inv_a[i];
    auto w = lattice::echelon_solve(e, v);
    if (!w) throw Error("kernel: internal inconsistency");
    rels.push_back(std::move(*w));
  }
  PresentedAbGroup k(t, IntMatrix::from_columns(rels, t), A.exponent());
  IntMatrix basis = IntMatrix::from_columns(e.cols, inv_a.size());
  return {k, AbHom(k, A, A.from_canonical_matrix() * basis)};
}

inline Quotient cokernel(const AbHom& f) {
  const auto& B = f.dst();
  PresentedAbGroup q(B.ngens(), B.relations().hcat(f.matrix()), B.exponent());
  return {q, AbHom(B, q, IntMatrix::identity(B.ngens()))};
}

// Lexicographically least solution in the canonical coordinates of the source,
// returned as a reduced generator vector. y is reduced silently.
inline std::optional<IntVec> solve(const AbHom& f, const IntVec& y) {
  IntVec yc = f.dst().to_canonical(y);
  auto c = lattice::solve_affine(SparseMatrix::from_dense(f.canonical_matrix()), f.src().invariant_factors(),
                                 f.dst().invariant_factors(), yc);
  if (!c) return std::nullopt;
  return f.src().from_canonical(*c);
}

}  // namespace catext
