#pragma once

// Truncated discrete p-toral groups S: an extension of a finite p-group pi by
// T_k = (Z/p^k)^r, encoded by the action of pi on T_k and a regular 2-cocycle.
// Elements are pairs (t, x) with
//   (t, x)(t', x') = (t + x.t' + coc(x, x'), x x').
// A normal Adams automorphism of degree zeta is (t, x) -> (zeta t + d(x), x).

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catext/extension.hpp"
#include "catext/padic.hpp"

namespace catext {

struct PToralData {
  unsigned p = 2;
  unsigned k = 1;
  std::size_t r = 1;
  FiniteGroup pi;
  std::vector<IntMatrix> action;            // r x r per element of pi
  std::vector<std::vector<IntVec>> coc;     // coc[x][y] in T_k

  Integer modulus() const { return pow_int(p, k); }
  PresentedAbGroup torus() const { return truncated_torus(p, k, r); }
  std::size_t torus_order() const { return pow_int(modulus(), static_cast<unsigned>(r)).convert_to<std::size_t>(); }
  std::size_t order() const { return torus_order() * pi.order(); }

  IntVec act(std::size_t x, const IntVec& t) const { return lattice::reduced(action[x] * t, IntVec(r, modulus())); }

  // Index of (t, x) is x * |T| + index of t.
  std::size_t index(const IntVec& t, std::size_t x) const { return x * torus_order() + torus().element_index(t); }
  std::pair<IntVec, std::size_t> element(std::size_t i) const {
    return {torus().element(i % torus_order()), i / torus_order()};
  }

  std::pair<IntVec, std::size_t> mul(const std::pair<IntVec, std::size_t>& a,
                                     const std::pair<IntVec, std::size_t>& b) const {
    IntVec t = act(a.second, b.first);
    for (std::size_t i = 0; i < r; ++i) t[i] += a.first[i] + coc[a.second][b.second][i];
    return {lattice::reduced(t, IntVec(r, modulus())), pi.mul(a.second, b.second)};
  }
};

// Split datum T_k x| pi with the given action.
inline PToralData split_ptoral(unsigned p, unsigned k, const FiniteGroup& pi, const std::vector<IntMatrix>& action) {
  PToralData s;
  s.p = p;
  s.k = k;
  s.r = action.empty() ? 0 : action.front().rows();
  s.pi = pi;
  s.action = action;
  s.coc.assign(pi.order(), std::vector<IntVec>(pi.order(), IntVec(s.r)));
  return s;
}

inline Violations validate_ptoral(const PToralData& s) {
  Violations v;
  const std::size_t n = s.pi.order();
  const Integer m = s.modulus();
  if (s.action.size() != n) {
    v.push_back({"action_shape", "one matrix per element of pi required", {}});
    return v;
  }
  for (std::size_t x = 0; x < n; ++x)
    if (s.action[x].rows() != s.r || s.action[x].cols() != s.r)
      v.push_back({"action_shape", "action matrix has the wrong size", {wit(x)}});
  if (s.coc.size() != n) {
    v.push_back({"coc_shape", "cocycle table has the wrong size", {}});
    return v;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (s.coc[x].size() != n) v.push_back({"coc_shape", "cocycle table has the wrong size", {wit(x)}});
    for (const auto& c : s.coc[x])
      if (c.size() != s.r) v.push_back({"coc_shape", "cocycle value has the wrong length", {wit(x)}});
  }
  if (!v.empty()) return v;
  auto eqm = [&](const IntMatrix& a, const IntMatrix& b) {
    for (std::size_t i = 0; i < s.r; ++i)
      for (std::size_t j = 0; j < s.r; ++j)
        if (mod_floor(a(i, j) - b(i, j), m) != 0) return false;
    return true;
  };
  if (!eqm(s.action[s.pi.identity()], IntMatrix::identity(s.r)))
    v.push_back({"action_identity", "identity of pi does not act trivially", {wit(s.pi.identity())}});
  for (std::size_t x = 0; x < n; ++x) {
    if (gcd_int(mod_floor(determinant(s.action[x]), m), s.p) != 1)
      v.push_back({"action_invertible", "action matrix is not invertible mod p^k", {wit(x)}});
    for (std::size_t y = 0; y < n; ++y)
      if (!eqm(s.action[s.pi.mul(x, y)], s.action[x] * s.action[y]))
        v.push_back({"action_homomorphism", "action(xy) != action(x) action(y)", {wit(x), wit(y)}});
  }
  const IntVec mods(s.r, m);
  const std::size_t e = s.pi.identity();
  for (std::size_t x = 0; x < n; ++x)
    if (!is_zero_vec(lattice::reduced(s.coc[e][x], mods)) || !is_zero_vec(lattice::reduced(s.coc[x][e], mods)))
      v.push_back({"coc_regular", "cocycle is nonzero on a pair containing the identity", {wit(x)}});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        // coc(x,y) + coc(xy,z) = x.coc(y,z) + coc(x,yz)
        IntVec lhs = s.coc[x][y], rhs = s.act(x, s.coc[y][z]);
        for (std::size_t i = 0; i < s.r; ++i) {
          lhs[i] += s.coc[s.pi.mul(x, y)][z][i];
          rhs[i] += s.coc[x][s.pi.mul(y, z)][i];
        }
        if (lattice::reduced(lhs, mods) != lattice::reduced(rhs, mods))
          v.push_back({"coc_identity", "cocycle identity fails", {wit(x), wit(y), wit(z)}});
      }
  return v;
}

// Phi on B(pi): the torus with the action.
inline AbFunctorPtr ptoral_functor(const PToralData& s) {
  auto c = std::make_shared<const FinCat>(one_object_cat(s.pi));
  PresentedAbGroup t = s.torus();
  std::vector<AbHom> m;
  for (const auto& a : s.action) m.emplace_back(t, t, a);
  return std::make_shared<const AbFunctor>(c, std::vector<PresentedAbGroup>{t}, std::move(m));
}

// The cobar 2-cochain of the datum: its value on the chain (c0, c1) is coc(c1, c0).
inline Cochain ptoral_cochain(const PToralData& s, const AbFunctorPtr& phi) {
  auto ch = std::make_shared<const ChainList>(*phi->base(), 2);
  std::vector<IntVec> v;
  for (const auto& c : ch->all()) v.push_back(s.coc[c.mors[1]][c.mors[0]]);
  return Cochain(phi, 2, ch, std::move(v));
}

// The full multiplication table of S.
inline FiniteGroup ptoral_group(const PToralData& s, std::size_t limit = 4096) {
  const std::size_t n = s.order();
  if (n > limit) throw ResourceRefusal("p-toral group too large to tabulate", n, limit);
  std::vector<std::pair<IntVec, std::size_t>> el;
  for (std::size_t i = 0; i < n; ++i) el.push_back(s.element(i));
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto c = s.mul(el[a], el[b]);
      t[a][b] = s.index(c.first, c.second);
    }
  return FiniteGroup(std::move(t));
}

// Datum from a raw group table: basis lists elements of G generating a normal
// subgroup isomorphic to (Z/p^k)^r; the cocycle comes from least coset representatives.
inline PToralData ptoral_from_group(const FiniteGroup& g, unsigned p, unsigned k, const std::vector<std::size_t>& basis) {
  PresentedAbGroup t = truncated_torus(p, k, basis.size());
  GroupExtensionData d = extension_from_group(g, t, basis);
  Cochain z = extension_cocycle(d.ext, canonical_section(d.ext));
  PToralData s;
  s.p = p;
  s.k = k;
  s.r = basis.size();
  s.pi = d.quotient;
  for (std::size_t x = 0; x < s.pi.order(); ++x) s.action.push_back(d.ext.coeff->on_mor(x).matrix());
  s.coc.assign(s.pi.order(), std::vector<IntVec>(s.pi.order()));
  for (std::size_t x = 0; x < s.pi.order(); ++x)
    for (std::size_t y = 0; y < s.pi.order(); ++y) s.coc[x][y] = z.at({y, x});
  return s;
}

struct ClassOrder {
  Integer order;  // p^m
  unsigned m = 0;
};

inline ClassOrder extension_class_order(const PToralData& s, const CobarLimits& lim = {}) {
  auto phi = ptoral_functor(s);
  auto h = std::make_shared<const Cohomology>(phi, 2, lim);
  Integer o = class_of(h, ptoral_cochain(s, phi)).order();
  ClassOrder out{o, 0};
  Integer x = o;
  while (x > 1) {
    if (x % s.p != 0) throw Error("class order is not a power of p");
    x /= s.p;
    ++out.m;
  }
  return out;
}

struct AdamsAut {
  Integer zeta;            // residue mod p^k
  std::vector<IntVec> d;   // d[x] in T_k

  friend bool operator==(const AdamsAut& a, const AdamsAut& b) { return a.zeta == b.zeta && a.d == b.d; }
  friend bool operator<(const AdamsAut& a, const AdamsAut& b) {
    return a.zeta != b.zeta ? a.zeta < b.zeta : a.d < b.d;
  }
};

inline AdamsAut adams_identity(const PToralData& s) { return {1, std::vector<IntVec>(s.pi.order(), IntVec(s.r))}; }

// a o b.
inline AdamsAut compose(const PToralData& s, const AdamsAut& a, const AdamsAut& b) {
  AdamsAut c{mod_floor(a.zeta * b.zeta, s.modulus()), {}};
  const IntVec mods(s.r, s.modulus());
  for (std::size_t x = 0; x < s.pi.order(); ++x) {
    IntVec v(s.r);
    for (std::size_t i = 0; i < s.r; ++i) v[i] = a.zeta * b.d[x][i] + a.d[x][i];
    c.d.push_back(lattice::reduced(v, mods));
  }
  return c;
}

inline AdamsAut power(const PToralData& s, const AdamsAut& a, const Integer& n) {
  AdamsAut r = adams_identity(s);
  for (Integer i = 0; i < n; ++i) r = compose(s, a, r);
  return r;
}

// (t, x) -> (zeta t + d(x), x) applied to an element.
inline std::pair<IntVec, std::size_t> apply(const PToralData& s, const AdamsAut& a,
                                            const std::pair<IntVec, std::size_t>& e) {
  IntVec t(s.r);
  for (std::size_t i = 0; i < s.r; ++i) t[i] = a.zeta * e.first[i] + a.d[e.second][i];
  return {lattice::reduced(t, IntVec(s.r, s.modulus())), e.second};
}

// d = (zeta - 1) coc up to the cobar differential: (zeta-1) coc(x,y) = d(x) + x.d(y) - d(xy).
inline bool is_adams(const PToralData& s, const AdamsAut& a) {
  if (gcd_int(a.zeta, s.p) != 1) return false;
  const IntVec mods(s.r, s.modulus());
  for (std::size_t x = 0; x < s.pi.order(); ++x)
    for (std::size_t y = 0; y < s.pi.order(); ++y) {
      IntVec lhs(s.r), rhs = s.act(x, a.d[y]);
      for (std::size_t i = 0; i < s.r; ++i) {
        lhs[i] = (a.zeta - 1) * s.coc[x][y][i];
        rhs[i] += a.d[x][i] - a.d[s.pi.mul(x, y)][i];
      }
      if (lattice::reduced(lhs, mods) != lattice::reduced(rhs, mods)) return false;
    }
  return true;
}

namespace detail {

inline std::vector<IntVec> cochain_to_d(const Cochain& u, std::size_t n) {
  std::vector<IntVec> d(n);
  for (std::size_t x = 0; x < n; ++x) d[x] = u.at({x});
  return d;
}

}  // namespace detail

// The degree-zeta automorphism with least d, if any.
inline std::optional<AdamsAut> adams_of_degree(const PToralData& s, const UnitModPk& zeta, const CobarLimits& lim = {}) {
  if (zeta.p() != s.p || zeta.k() != s.k) throw PreconditionError("degree must be a unit at the datum's precision");
  auto phi = ptoral_functor(s);
  Cochain z = ptoral_cochain(s, phi);
  auto u = cohomologous(Cochain::zero(phi, z.chain_list()), Integer(zeta.residue() - 1) * z, lim);
  if (!u) return std::nullopt;
  return AdamsAut{zeta.residue(), detail::cochain_to_d(*u, s.pi.order())};
}

// All normal Adams automorphisms, ordered by (zeta, d).
inline std::vector<AdamsAut> enumerate_ad(const PToralData& s, std::uint64_t bound = 1u << 16,
                                          const CobarLimits& lim = {}) {
  if (s.order() > bound) throw ResourceRefusal("group too large for exhaustive enumeration", s.order(), bound);
  auto phi = ptoral_functor(s);
  Cohomology h1(phi, 1, lim);
  PresentedAbGroup zg = h1.cocycle_group();
  std::vector<std::vector<IntVec>> z1;
  for (const auto& w : zg.elements(bound)) z1.push_back(detail::cochain_to_d(h1.cocycle(w), s.pi.order()));
  std::vector<AdamsAut> out;
  const IntVec mods(s.r, s.modulus());
  for (const auto& u : all_units(s.p, s.k)) {
    auto a = adams_of_degree(s, u, lim);
    if (!a) continue;
    for (const auto& c : z1) {
      AdamsAut b{a->zeta, {}};
      for (std::size_t x = 0; x < s.pi.order(); ++x) {
        IntVec v = a->d[x];
        for (std::size_t i = 0; i < s.r; ++i) v[i] += c[x][i];
        b.d.push_back(lattice::reduced(v, mods));
      }
      out.push_back(std::move(b));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Conjugations by torus elements: d_t(x) = t - x.t.
inline std::vector<AdamsAut> aut_T(const PToralData& s) {
  std::set<AdamsAut> out;
  PresentedAbGroup t = s.torus();
  const IntVec mods(s.r, s.modulus());
  for (const auto& e : t.elements()) {
    AdamsAut a{1, {}};
    for (std::size_t x = 0; x < s.pi.order(); ++x) {
      IntVec v = s.act(x, e);
      for (std::size_t i = 0; i < s.r; ++i) v[i] = e[i] - v[i];
      a.d.push_back(lattice::reduced(v, mods));
    }
    out.insert(std::move(a));
  }
  return {out.begin(), out.end()};
}

// H^n(G, M) for a finite group acting on M by the given matrices.
inline Cohomology group_cohomology_full(const FiniteGroup& g, const PresentedAbGroup& m,
                                       const std::vector<IntMatrix>& action, std::size_t n,
                                       const CobarLimits& lim = {}) {
  if (action.size() != g.order()) throw MalformedInput("one action matrix per group element required");
  auto c = std::make_shared<const FinCat>(one_object_cat(g));
  std::vector<AbHom> homs;
  for (const auto& a : action) homs.emplace_back(m, m, a);
  auto phi = std::make_shared<const AbFunctor>(c, std::vector<PresentedAbGroup>{m}, std::move(homs));
  return Cohomology(phi, n, lim);
}

inline PresentedAbGroup group_cohomology(const FiniteGroup& g, const PresentedAbGroup& m,
                                         const std::vector<IntMatrix>& action, std::size_t n,
                                         const CobarLimits& lim = {}) {
  return PresentedAbGroup::from_invariants(group_cohomology_full(g, m, action, n, lim).invariants());
}

// Invariants of the image of H^n(Phi) -> H^n(Phi') under a natural map given per object.
inline IntVec cohomology_image(const Cohomology& a, const Cohomology& b, const std::vector<AbHom>& comps) {
  const auto& pb = b.coeff();
  PresentedAbGroup src = PresentedAbGroup::from_invariants(a.invariants());
  PresentedAbGroup dst = PresentedAbGroup::from_invariants(b.invariants());
  IntMatrix m(dst.ngens(), src.ngens());
  const auto gens = a.generators();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const Cochain& z = gens[j];
    std::vector<IntVec> v;
    for (std::size_t i = 0; i < z.values().size(); ++i) {
      ObjId x = chain_target(z.base(), (*z.chain_list())[i]);
      v.push_back(comps[x](z.value(i)));
    }
    Cochain w(pb, z.degree(), b.space().chains, std::move(v));
    IntVec c = b.class_of(w);
    for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
  }
  AbHom f(src, dst, std::move(m));
  Subgroup k = kernel(f);
  return cokernel(k.inclusion).group.invariant_factors();
}

struct TorusCohomology {
  IntVec at_level;   // H^n(G, T_k)
  IntVec stable;     // image of H^n(G, T_k) in H^n(G, T_{k+1})
};

// H^n(G, T) read off at level k through the inclusion T_k -> T_{k+1}, t -> p t.
inline TorusCohomology torus_cohomology(const FiniteGroup& g, const std::vector<IntMatrix>& action, unsigned p,
                                        unsigned k, std::size_t n, const CobarLimits& lim = {}) {
  const std::size_t r = action.empty() ? 0 : action.front().rows();
  PresentedAbGroup tk = truncated_torus(p, k, r), tk1 = truncated_torus(p, k + 1, r);
  Cohomology a = group_cohomology_full(g, tk, action, n, lim);
  Cohomology b = group_cohomology_full(g, tk1, action, n, lim);
  IntMatrix inc = IntMatrix::identity(r);
  for (std::size_t i = 0; i < r; ++i) inc(i, i) = p;
  return {a.invariants(), cohomology_image(a, b, {AbHom(tk, tk1, inc)})};
}

inline Integer p_primary(const Integer& d, unsigned p) {
  if (d == 0) return 0;
  Integer q = 1, x = d;
  while (x % p == 0) {
    x /= p;
    q *= p;
  }
  return q;
}

inline IntVec p_primary_invariants(const IntVec& inv, unsigned p) {
  IntVec parts;
  for (const auto& d : inv) {
    Integer q = p_primary(d, p);
    if (q != 1) parts.push_back(q);
  }
  return PresentedAbGroup::from_invariants(parts).invariant_factors();
}

struct DimensionShiftReport {
  std::size_t n = 0;
  IntVec lattice_invariants;              // H^n(G, Z^r)
  IntVec lattice_p_part;
  std::vector<std::pair<unsigned, IntVec>> torus_levels;  // (k, stable image of H^{n-1}(G, T_k))
  std::optional<unsigned> stabilized_at;
  bool agree = false;
  bool conclusive = false;
};

// Compares H^n(G, L) with H^{n-1}(G, T) for the lattice L = Z^r and T = L (x) Z/p^inf.
inline DimensionShiftReport dimension_shift_check(const FiniteGroup& g, const std::vector<IntMatrix>& action, unsigned p,
                                                  std::size_t n, unsigned k_start = 1, unsigned k_max = 6,
                                                  const CobarLimits& lim = {}) {
  if (n < 2 || n > 3) throw PreconditionError("dimension shift is checked for 2 <= n <= 3");
  const std::size_t r = action.empty() ? 0 : action.front().rows();
  DimensionShiftReport rep;
  rep.n = n;
  rep.lattice_invariants = group_cohomology_full(g, PresentedAbGroup::free(r), action, n, lim).invariants();
  rep.lattice_p_part = p_primary_invariants(rep.lattice_invariants, p);
  std::optional<IntVec> prev;
  for (unsigned k = k_start; k <= k_max; ++k) {
    IntVec s = torus_cohomology(g, action, p, k, n - 1, lim).stable;
    rep.torus_levels.emplace_back(k, s);
    if (prev && *prev == s) {
      rep.stabilized_at = k - 1;
      break;
    }
    prev = s;
  }
  rep.conclusive = rep.stabilized_at.has_value();
  rep.agree = rep.conclusive && rep.torus_levels.back().second == rep.lattice_p_part;
  return rep;
}

// Least r in [0, k] with psi1^(p^r) = psi2^(p^r).
inline unsigned power_stabilize(const PToralData& s, const AdamsAut& a, const AdamsAut& b) {
  if (a.zeta != b.zeta) throw PreconditionError("power_stabilize: degrees differ");
  UnitModPk z(s.p, s.k, a.zeta);
  if (!gamma_membership(z, 1)) throw PreconditionError("power_stabilize: degree is not 1 mod p");
  if (gamma_membership(z, s.k))
    throw PrecisionError("power_stabilize: degree is 1 at precision k; cannot tell it from the identity");
  if (!is_adams(s, a) || !is_adams(s, b)) throw PreconditionError("power_stabilize: not Adams automorphisms");
  AdamsAut x = a, y = b;
  for (unsigned r = 0; r <= s.k; ++r) {
    if (x == y) return r;
    x = power(s, x, s.p);
    y = power(s, y, s.p);
  }
  throw Error("power_stabilize: no stabilization within precision");
}

// Least n >= 1 with g^n = h^n, for gN = hN.
inline std::size_t coset_power(const FiniteGroup& g, std::size_t a, std::size_t b, const std::vector<std::size_t>& n) {
  if (!g.is_normal(n)) throw PreconditionError("coset_power: subgroup is not normal");
  std::size_t q = g.mul(g.inverse(a), b);
  if (!std::binary_search(n.begin(), n.end(), q) && std::find(n.begin(), n.end(), q) == n.end())
    throw PreconditionError("coset_power: elements lie in different cosets");
  std::size_t x = a, y = b;
  for (std::size_t k = 1;; ++k) {
    if (x == y) return k;
    x = g.mul(x, a);
    y = g.mul(y, b);
  }
}

// Degree of an automorphism of S (as a permutation of element indices) that is a
// normal Adams automorphism, or nothing.
inline std::optional<Integer> adams_degree_of(const PToralData& s, const std::vector<std::size_t>& perm) {
  const std::size_t nt = s.torus_order();
  const std::size_t e = s.pi.identity();
  PresentedAbGroup t = s.torus();
  for (std::size_t i = 0; i < s.order(); ++i)
    if (s.element(perm[i]).second != s.element(i).second) return std::nullopt;
  const Integer m = s.modulus();
  for (Integer z = 1; z < m; ++z) {
    if (z % s.p == 0) continue;
    bool ok = true;
    for (std::size_t j = 0; j < nt && ok; ++j) {
      IntVec tj = t.element(j);
      auto img = s.element(perm[s.index(tj, e)]);
      ok = img.second == e && img.first == t.scale(z, tj);
    }
    if (ok) return z;
  }
  return std::nullopt;
}

// Degrees of the listed automorphisms that are normal Adams, closed under products.
inline std::vector<Integer> degree_image_given_auts(const PToralData& s, const std::vector<std::vector<std::size_t>>& auts) {
  FiniteGroup g = ptoral_group(s);
  std::set<Integer> deg{1};
  for (const auto& f : auts) {
    if (f.size() != g.order()) throw PreconditionError("automorphism has the wrong length");
    std::vector<bool> hit(g.order(), false);
    for (auto x : f) {
      if (x >= g.order() || hit[x]) throw PreconditionError("listed map is not a bijection");
      hit[x] = true;
    }
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t b = 0; b < g.order(); ++b)
        if (f[g.mul(a, b)] != g.mul(f[a], f[b])) throw PreconditionError("listed map is not a homomorphism");
    if (auto z = adams_degree_of(s, f)) deg.insert(*z);
  }
  const Integer m = s.modulus();
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Integer> cur(deg.begin(), deg.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (deg.insert(mod_floor(a * b, m)).second) grew = true;
  }
  return {deg.begin(), deg.end()};
}

struct WeylH1Report {
  bool p_odd = false;
  bool scalars_nontrivial = false;
  bool cond_i = false;
  IntVec quotient_h1;        // H^1(W/D, T^D) at level k
  bool cond_ii = false;
  std::vector<std::size_t> pseudo_reflections;
  bool generated_by_pseudo_reflections = false;
  TorusCohomology h1;        // H^1(W, T)
  bool h1_vanishes = false;
};

// rank of (w - 1) over Z/p^k counted by invariant factors not divisible by p^k.
inline std::size_t rank_mod(const IntMatrix& a, const Integer& m) {
  IntVec d = smith_diagonal(smith_normal_form(a).D);
  std::size_t n = 0;
  for (const auto& x : d)
    if (mod_floor(x, m) != 0) ++n;
  return n;
}

inline WeylH1Report h1_weyl_vanishing(const FiniteGroup& w, const std::vector<IntMatrix>& action,
                                      const std::vector<std::size_t>& scalars, unsigned p, unsigned k,
                                      const CobarLimits& lim = {}) {
  const std::size_t r = action.empty() ? 0 : action.front().rows();
  const Integer m = pow_int(p, k);
  WeylH1Report rep;
  std::vector<std::size_t> d = w.subgroup_generated(scalars);
  if (!w.is_normal(d)) throw PreconditionError("scalar subgroup is not normal");
  for (auto x : d)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (i != j ? mod_floor(action[x](i, j), m) != 0 : mod_floor(action[x](i, i) - action[x](0, 0), m) != 0)
          throw PreconditionError("listed element does not act by a scalar");
  rep.p_odd = p != 2;
  rep.scalars_nontrivial = d.size() > 1;
  rep.cond_i = rep.p_odd && rep.scalars_nontrivial;

  // T^D as the kernel of t -> (a_x t - t)_{x in D}.
  PresentedAbGroup t = truncated_torus(p, k, r);
  PresentedAbGroup big = t;
  for (std::size_t i = 1; i < d.size(); ++i) big = PresentedAbGroup::direct_sum(big, t);
  IntMatrix f(r * d.size(), r);
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) f(a * r + i, j) = action[d[a]](i, j) - (i == j ? 1 : 0);
  Subgroup fixed = kernel(AbHom(t, big, f));
  // W/D acting on T^D.
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> coset_of(w.order(), none), rep_of;
  auto add_coset = [&](std::size_t x0) {
    for (auto n : d) coset_of[w.mul(x0, n)] = rep_of.size();
    rep_of.push_back(x0);
  };
  add_coset(w.identity());
  for (std::size_t x = 0; x < w.order(); ++x)
    if (coset_of[x] == none) add_coset(x);
  std::vector<std::vector<std::size_t>> qt(rep_of.size(), std::vector<std::size_t>(rep_of.size()));
  for (std::size_t a = 0; a < rep_of.size(); ++a)
    for (std::size_t b = 0; b < rep_of.size(); ++b) qt[a][b] = coset_of[w.mul(rep_of[a], rep_of[b])];
  FiniteGroup quot(std::move(qt));
  std::vector<IntMatrix> qact;
  const PresentedAbGroup& fg = fixed.group;
  for (std::size_t q = 0; q < rep_of.size(); ++q) {
    IntMatrix qa(fg.ngens(), fg.ngens());
    for (std::size_t j = 0; j < fg.ngens(); ++j) {
      IntVec e(fg.ngens());
      e[j] = 1;
      IntVec img = t.reduce(action[rep_of[q]] * fixed.inclusion(e));
      auto pre = solve(fixed.inclusion, img);
      if (!pre) throw Error("fixed points not preserved");
      for (std::size_t i = 0; i < pre->size(); ++i) qa(i, j) = (*pre)[i];
    }
    qact.push_back(std::move(qa));
  }
  rep.quotient_h1 = group_cohomology_full(quot, fg, qact, 1, lim).invariants();
  rep.cond_ii = rep.quotient_h1.empty();

  for (std::size_t x = 0; x < w.order(); ++x) {
    IntMatrix a = action[x];
    for (std::size_t i = 0; i < r; ++i) a(i, i) -= 1;
    if (rank_mod(a, m) == 1) rep.pseudo_reflections.push_back(x);
  }
  rep.generated_by_pseudo_reflections = w.subgroup_generated(rep.pseudo_reflections).size() == w.order();
  rep.h1 = torus_cohomology(w, action, p, k, 1, lim);
  rep.h1_vanishes = rep.h1.stable.empty();
  return rep;
}

}  // namespace catext
