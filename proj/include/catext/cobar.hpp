#pragma once

// Cobar cochain complex of a finite category with coefficients in an
// abelian-group-valued functor, and its cohomology.
//
// An n-cochain assigns to every n-chain c0, ..., c_{n-1} (c0 applied first)
// an element of Phi at the chain's target. The differential on a chain
// (c0, ..., c_{L-1}) of length L >= 2 is
//   u(c1, ...) + sum_{i=1}^{L-1} (-1)^i u(..., c_i c_{i-1}, ...) + (-1)^L Phi(c_{L-1}) u(c0, ..., c_{L-2})
// and in degree 0, (du)(c) = Phi(c) u(X0) - u(X1).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catext/fincat.hpp"

namespace catext {

struct CobarLimits {
  std::size_t max_degree = 3;
  std::uint64_t max_cells = 10'000'000;
};

// Canonical coordinates of the n-cochains: one block per n-chain.
struct CochainSpace {
  AbFunctorPtr coeff;
  std::size_t degree = 0;
  std::shared_ptr<const ChainList> chains;
  std::vector<std::size_t> offset;  // chains->size() + 1 entries
  IntVec moduli;

  std::size_t dim() const { return moduli.size(); }
  ObjId target(std::size_t i) const { return chain_target(*coeff->base(), (*chains)[i]); }
};

inline CochainSpace make_cochain_space(const AbFunctorPtr& phi, std::size_t n) {
  CochainSpace s;
  s.coeff = phi;
  s.degree = n;
  s.chains = std::make_shared<const ChainList>(*phi->base(), n);
  s.offset.reserve(s.chains->size() + 1);
  s.offset.push_back(0);
  for (std::size_t i = 0; i < s.chains->size(); ++i) {
    const auto& inv = phi->on_obj(s.target(i)).invariant_factors();
    s.moduli.insert(s.moduli.end(), inv.begin(), inv.end());
    s.offset.push_back(s.moduli.size());
  }
  return s;
}

class Cochain {
 public:
  Cochain() = default;
  Cochain(AbFunctorPtr coeff, std::size_t degree, std::shared_ptr<const ChainList> chains, std::vector<IntVec> values)
      : coeff_(std::move(coeff)), degree_(degree), chains_(std::move(chains)), values_(std::move(values)) {
    if (chains_->degree() != degree_) throw PreconditionError("chain list has the wrong degree");
    if (values_.size() != chains_->size()) throw MalformedInput("cochain must have one value per chain");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = group_at(i).reduce(values_[i]);
  }

  static Cochain zero(const AbFunctorPtr& phi, std::size_t n) {
    auto ch = std::make_shared<const ChainList>(*phi->base(), n);
    return zero(phi, ch);
  }

  static Cochain zero(const AbFunctorPtr& phi, const std::shared_ptr<const ChainList>& ch) {
    std::vector<IntVec> v;
    v.reserve(ch->size());
    for (const auto& c : ch->all()) v.push_back(phi->on_obj(chain_target(*phi->base(), c)).zero());
    return Cochain(phi, ch->degree(), ch, std::move(v));
  }

  const AbFunctorPtr& coeff() const { return coeff_; }
  const FinCat& base() const { return *coeff_->base(); }
  std::size_t degree() const { return degree_; }
  const std::shared_ptr<const ChainList>& chain_list() const { return chains_; }
  const std::vector<IntVec>& values() const { return values_; }
  const IntVec& value(std::size_t i) const { return values_[i]; }
  const IntVec& at(const std::vector<MorId>& chain) const { return values_[chains_->index_of_mors(chain)]; }
  const IntVec& at_object(ObjId x) const { return values_[chains_->index_of(Chain{{}, x})]; }

  const PresentedAbGroup& group_at(std::size_t i) const {
    return coeff_->on_obj(chain_target(base(), (*chains_)[i]));
  }

  void set(std::size_t i, const IntVec& v) { values_[i] = group_at(i).reduce(v); }

  bool is_zero() const {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!group_at(i).is_zero(values_[i])) return false;
    return true;
  }

  // Concatenated canonical coordinates, in chain order.
  IntVec flatten() const {
    IntVec out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      IntVec c = group_at(i).to_canonical(values_[i]);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  static Cochain unflatten(const CochainSpace& s, const IntVec& flat) {
    if (flat.size() != s.dim()) throw PreconditionError("flat cochain has the wrong length");
    std::vector<IntVec> v;
    v.reserve(s.chains->size());
    for (std::size_t i = 0; i < s.chains->size(); ++i) {
      IntVec c(flat.begin() + static_cast<std::ptrdiff_t>(s.offset[i]),
               flat.begin() + static_cast<std::ptrdiff_t>(s.offset[i + 1]));
      lattice::reduce_in_place(c, IntVec(s.moduli.begin() + static_cast<std::ptrdiff_t>(s.offset[i]),
                                         s.moduli.begin() + static_cast<std::ptrdiff_t>(s.offset[i + 1])));
      v.push_back(s.coeff->on_obj(s.target(i)).from_canonical(c));
    }
    return Cochain(s.coeff, s.degree, s.chains, std::move(v));
  }

  friend bool same_space(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && (a.coeff_ == b.coeff_ || *a.coeff_ == *b.coeff_);
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    if (!same_space(a, b)) return false;
    for (std::size_t i = 0; i < a.values_.size(); ++i)
      if (!a.group_at(i).equal(a.values_[i], b.values_[i])) return false;
    return true;
  }

  friend Cochain operator+(const Cochain& a, const Cochain& b) {
    if (!same_space(a, b)) throw PreconditionError("adding cochains of different spaces");
    Cochain r = a;
    for (std::size_t i = 0; i < r.values_.size(); ++i) r.values_[i] = r.group_at(i).add(a.values_[i], b.values_[i]);
    return r;
  }

  friend Cochain operator*(const Integer& k, const Cochain& a) {
    Cochain r = a;
    for (std::size_t i = 0; i < r.values_.size(); ++i) r.values_[i] = r.group_at(i).scale(k, a.values_[i]);
    return r;
  }

  friend Cochain operator-(const Cochain& a) { return Integer(-1) * a; }
  friend Cochain operator-(const Cochain& a, const Cochain& b) { return a + (-b); }

 private:
  AbFunctorPtr coeff_;
  std::size_t degree_ = 0;
  std::shared_ptr<const ChainList> chains_;
  std::vector<IntVec> values_;
};

// One term of the differential evaluated on a chain.
struct Face {
  int sign = 1;
  Chain chain;
  std::optional<MorId> apply;
};

// Terms of (du)(c) for a chain c of length L >= 1.
inline std::vector<Face> cobar_faces(const FinCat& cat, const Chain& c) {
  const auto& m = c.mors;
  const std::size_t len = m.size();
  std::vector<Face> out;
  if (len == 0) throw PreconditionError("faces of a 0-chain");
  if (len == 1) {
    out.push_back({1, Chain{{}, cat.src(m[0])}, m[0]});
    out.push_back({-1, Chain{{}, cat.dst(m[0])}, std::nullopt});
    return out;
  }
  out.push_back({1, Chain{std::vector<MorId>(m.begin() + 1, m.end()), 0}, std::nullopt});
  for (std::size_t i = 1; i < len; ++i) {
    std::vector<MorId> f;
    f.reserve(len - 1);
    for (std::size_t j = 0; j < len; ++j) {
      if (j == i - 1) continue;
      f.push_back(j == i ? cat.compose(m[i], m[i - 1]) : m[j]);
    }
    out.push_back({i % 2 == 0 ? 1 : -1, Chain{std::move(f), 0}, std::nullopt});
  }
  out.push_back({len % 2 == 0 ? 1 : -1, Chain{std::vector<MorId>(m.begin(), m.end() - 1), 0}, m.back()});
  return out;
}

inline Cochain differential(const Cochain& u, const std::shared_ptr<const ChainList>& next = nullptr) {
  const FinCat& cat = u.base();
  auto ch = next ? next : std::make_shared<const ChainList>(cat, u.degree() + 1);
  Cochain r = Cochain::zero(u.coeff(), ch);
  for (std::size_t i = 0; i < ch->size(); ++i) {
    const PresentedAbGroup& g = r.group_at(i);
    IntVec acc = g.zero();
    for (const Face& f : cobar_faces(cat, (*ch)[i])) {
      IntVec v = u.value(u.chain_list()->index_of(f.chain));
      if (f.apply) v = u.coeff()->on_mor(*f.apply)(v);
      for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += f.sign * v[t];
    }
    r.set(i, acc);
  }
  return r;
}

inline bool is_cocycle(const Cochain& u) { return differential(u).is_zero(); }

namespace detail {

inline void check_limits(const AbFunctor& phi, std::size_t n, const CobarLimits& lim) {
  std::size_t maxrank = 0;
  for (const auto& g : phi.objects()) maxrank = std::max(maxrank, g.canonical_rank());
  const std::uint64_t a = count_chains(*phi.base(), n) * maxrank;
  const std::uint64_t b = count_chains(*phi.base(), n + 1) * maxrank;
  const std::uint64_t cells = a * std::max<std::uint64_t>(b, 1);
  if (n > lim.max_degree)
    throw ResourceRefusal("cohomology degree " + std::to_string(n) + " exceeds the maximum " +
                              std::to_string(lim.max_degree),
                          cells, lim.max_cells);
  if (cells > lim.max_cells)
    throw ResourceRefusal("cobar matrix in degree " + std::to_string(n) + " too large", cells, lim.max_cells);
}

}  // namespace detail

// Matrix of d: C^n -> C^{n+1} in canonical coordinates.
inline SparseMatrix differential_matrix(const CochainSpace& src, const CochainSpace& dst) {
  const FinCat& cat = *src.coeff->base();
  const AbFunctor& phi = *src.coeff;
  std::vector<std::optional<IntMatrix>> canon(cat.num_morphisms());
  SparseMatrix m{dst.dim(), src.dim(), std::vector<SparseRow>(dst.dim())};
  for (std::size_t r = 0; r < dst.chains->size(); ++r) {
    const std::size_t rank = dst.offset[r + 1] - dst.offset[r];
    if (rank == 0) continue;
    std::vector<std::vector<std::pair<std::size_t, Integer>>> rows(rank);
    for (const Face& f : cobar_faces(cat, (*dst.chains)[r])) {
      const std::size_t j = src.chains->index_of(f.chain);
      const std::size_t off = src.offset[j], w = src.offset[j + 1] - off;
      if (!f.apply) {
        for (std::size_t a = 0; a < rank; ++a) rows[a].emplace_back(off + a, f.sign);
      } else {
        auto& cm = canon[*f.apply];
        if (!cm) cm = phi.on_mor(*f.apply).canonical_matrix();
        for (std::size_t a = 0; a < rank; ++a)
          for (std::size_t b = 0; b < w; ++b)
            if ((*cm)(a, b) != 0) rows[a].emplace_back(off + b, f.sign * (*cm)(a, b));
      }
    }
    for (std::size_t a = 0; a < rank; ++a) m.data[dst.offset[r] + a] = merge_sparse(std::move(rows[a]));
  }
  return m;
}

// H^n together with the data needed to name classes.
class Cohomology {
 public:
  Cohomology(const AbFunctorPtr& phi, std::size_t n, const CobarLimits& lim = {}) : n_(n) {
    detail::check_limits(*phi, n, lim);
    here_ = make_cochain_space(phi, n);
    next_ = make_cochain_space(phi, n + 1);
    d_ = differential_matrix(here_, next_);
    kernel_ = lattice::kernel_lattice(d_, here_.moduli, next_.moduli);
    const std::size_t t = kernel_.cols.size();
    std::vector<IntVec> rels;
    for (std::size_t i = 0; i < here_.dim(); ++i) {
      if (here_.moduli[i] == 0) continue;
      IntVec v(here_.dim());
      v[i] = here_.moduli[i];
      rels.push_back(solve_in_kernel(v));
    }
    if (n > 0) {
      prev_ = make_cochain_space(phi, n - 1);
      d_prev_ = differential_matrix(prev_, here_);
      for (auto& col : d_prev_.dense_columns()) {
        lattice::reduce_in_place(col, here_.moduli);
        if (!is_zero_vec(col)) rels.push_back(solve_in_kernel(col));
      }
    }
    Integer hint = 1;
    for (const auto& m : here_.moduli) {
      if (m == 0) {
        hint = 0;
        break;
      }
      hint = lcm_int(hint, m);
    }
    group_ = PresentedAbGroup(t, IntMatrix::from_columns(rels, t), hint);
  }

  std::size_t degree() const { return n_; }
  const PresentedAbGroup& group() const { return group_; }
  const IntVec& invariants() const { return group_.invariant_factors(); }
  const CochainSpace& space() const { return here_; }
  const AbFunctorPtr& coeff() const { return here_.coeff; }

  // Z^n presented on the kernel basis.
  PresentedAbGroup cocycle_group() const {
    std::vector<IntVec> rels;
    const std::size_t t = kernel_.cols.size();
    for (std::size_t i = 0; i < here_.dim(); ++i) {
      if (here_.moduli[i] == 0) continue;
      IntVec v(here_.dim());
      v[i] = here_.moduli[i];
      rels.push_back(solve_in_kernel(v));
    }
    return PresentedAbGroup(t, IntMatrix::from_columns(rels, t));
  }

  // Order of Z^n (0 when infinite).
  Integer cocycle_count() const {
    auto o = cocycle_group().order();
    return o ? *o : Integer(0);
  }

  // The cocycle with coordinates w in the kernel basis.
  Cochain cocycle(const IntVec& w) const {
    IntVec flat(here_.dim());
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] != 0)
        for (std::size_t i = 0; i < flat.size(); ++i) flat[i] += w[j] * kernel_.cols[j][i];
    lattice::reduce_in_place(flat, here_.moduli);
    return Cochain::unflatten(here_, flat);
  }

  // Canonical coordinates in group() of the class of a cocycle.
  IntVec class_of(const Cochain& z) const {
    if (z.degree() != n_) throw PreconditionError("cochain degree does not match");
    IntVec v = z.flatten();
    auto w = lattice::echelon_solve(kernel_, v);
    if (!w) throw PreconditionError("cochain is not a cocycle");
    return group_.to_canonical(*w);
  }

  // A cocycle representing the class with the given canonical coordinates.
  Cochain representative(const IntVec& canonical) const { return cocycle(group_.from_canonical(canonical)); }

  // Representatives of the canonical generators of H^n.
  std::vector<Cochain> generators() const {
    std::vector<Cochain> out;
    for (std::size_t i = 0; i < group_.canonical_rank(); ++i) {
      IntVec e(group_.canonical_rank());
      e[i] = 1;
      out.push_back(representative(e));
    }
    return out;
  }

  // Lexicographically least u (canonical coordinates) with du = target, if any.
  std::optional<Cochain> preimage(const Cochain& target) const {
    if (n_ == 0) {
      if (target.is_zero()) return Cochain::zero(here_.coeff, 0);
      return std::nullopt;
    }
    auto x = lattice::solve_affine(d_prev_, prev_.moduli, here_.moduli, target.flatten());
    if (!x) return std::nullopt;
    return Cochain::unflatten(prev_, *x);
  }

 private:
  IntVec solve_in_kernel(const IntVec& v) const {
    auto w = lattice::echelon_solve(kernel_, v);
    if (!w) throw Error("cohomology: vector outside the cocycle lattice");
    return *w;
  }

  std::size_t n_;
  CochainSpace prev_, here_, next_;
  SparseMatrix d_prev_, d_;
  lattice::Echelon kernel_;
  PresentedAbGroup group_;
};

inline Cohomology cohomology(const AbFunctorPtr& phi, std::size_t n, const CobarLimits& lim = {}) {
  return Cohomology(phi, n, lim);
}

struct CohomologyClass {
  std::shared_ptr<const Cohomology> h;
  IntVec coords;
  Cochain representative;

  bool is_zero() const { return is_zero_vec(coords); }
  Integer order() const { return h->group().element_order(h->group().from_canonical(coords)); }
  friend bool operator==(const CohomologyClass& a, const CohomologyClass& b) { return a.coords == b.coords; }
};

inline CohomologyClass class_of(const std::shared_ptr<const Cohomology>& h, const Cochain& z) {
  return {h, h->class_of(z), z};
}

inline CohomologyClass scalar_action_on_class(const CohomologyClass& x, const Integer& zeta) {
  Cochain r = zeta * x.representative;
  return {x.h, x.h->class_of(r), r};
}

// Witness u with z' - z = du, or nothing.
inline std::optional<Cochain> cohomologous(const Cochain& z, const Cochain& z2, const CobarLimits& lim = {}) {
  if (!same_space(z, z2)) throw PreconditionError("cohomologous: cochains of different degree or coefficients");
  if (z.degree() == 0) {
    if (z == z2) return Cochain::zero(z.coeff(), 0);
    return std::nullopt;
  }
  detail::check_limits(*z.coeff(), z.degree() - 1, lim);
  CochainSpace prev = make_cochain_space(z.coeff(), z.degree() - 1);
  CochainSpace here = make_cochain_space(z.coeff(), z.degree());
  SparseMatrix d = differential_matrix(prev, here);
  auto x = lattice::solve_affine(d, prev.moduli, here.moduli, (z2 - z).flatten());
  if (!x) return std::nullopt;
  return Cochain::unflatten(prev, *x);
}

// Regular 2-cochains vanish whenever either morphism is an identity.
inline bool is_regular_2cochain(const Cochain& z) {
  if (z.degree() != 2) throw PreconditionError("regularity is defined for 2-cochains");
  const FinCat& c = z.base();
  const auto& ch = *z.chain_list();
  for (std::size_t i = 0; i < ch.size(); ++i) {
    const auto& m = ch[i].mors;
    if ((c.is_identity(m[0]) || c.is_identity(m[1])) && !z.group_at(i).is_zero(z.value(i))) return false;
  }
  return true;
}

struct Regularized {
  Cochain z;
  Cochain u;
};

// z + du is regular for u(c) = -z(1_Y, 1_Y), c: X -> Y.
inline Regularized regularize_2cocycle(const Cochain& z) {
  if (z.degree() != 2) throw PreconditionError("regularize: expected a 2-cochain");
  if (!is_cocycle(z)) throw PreconditionError("regularize: input is not a cocycle");
  const FinCat& c = z.base();
  auto ch1 = std::make_shared<const ChainList>(c, 1);
  Cochain u = Cochain::zero(z.coeff(), ch1);
  for (std::size_t i = 0; i < ch1->size(); ++i) {
    ObjId y = c.dst((*ch1)[i].mors[0]);
    MorId id = c.identity(y);
    u.set(i, u.group_at(i).neg(z.at({id, id})));
  }
  return {z + differential(u, z.chain_list()), u};
}

}  // namespace catext
