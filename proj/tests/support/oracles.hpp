#pragma once

// Brute-force oracles. They work from composition tables and element lists only
// and do not call the cobar machinery.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "catext/catext.hpp"

namespace oracle {

using namespace catext;

// ---------------------------------------------------------------- extension morphisms

// All functors F: total -> total' over psi with F(<g>) = <eta_X(g)>, as morphism maps.
// eta[X] maps element index of Phi(X) to element index of Phi'(psi X).
// Objects of a total category are identified with base objects by index.
inline std::vector<std::vector<MorId>> ext_morphisms(const Extension& e, const Extension& e2,
                                                     const std::vector<MorId>& psi_mor,
                                                     const std::vector<ObjId>& psi_obj,
                                                     const std::vector<std::vector<std::size_t>>& eta,
                                                     std::size_t max_results = SIZE_MAX) {
  const FinCat& t = *e.total;
  const FinCat& t2 = *e2.total;
  const FinCat& b = *e.base;
  const std::size_t nb = b.num_morphisms();
  // fibers of the projection
  std::vector<std::vector<MorId>> fiber(nb);
  for (MorId m = 0; m < t.num_morphisms(); ++m) fiber[e.proj.mor(m)].push_back(m);
  std::vector<std::vector<MorId>> fiber2(e2.base->num_morphisms());
  for (MorId m = 0; m < t2.num_morphisms(); ++m) fiber2[e2.proj.mor(m)].push_back(m);
  // elements of fiber(c) as <g> l_c with l_c the least id
  std::vector<MorId> lead(nb);
  std::vector<std::vector<std::pair<MorId, std::size_t>>> decomp(nb);  // (morphism, element index)
  for (MorId c = 0; c < nb; ++c) {
    lead[c] = fiber[c].front();
    ObjId y = b.dst(c);
    for (std::size_t g = 0; g < e.delta[y].size(); ++g) decomp[c].push_back({t.compose(e.delta[y][g], lead[c]), g});
  }
  std::vector<std::vector<MorId>> out;
  std::vector<MorId> f(t.num_morphisms(), static_cast<MorId>(-1));
  std::vector<bool> assigned(nb, false);

  auto consistent = [&](MorId c) {
    for (MorId d = 0; d < nb; ++d) {
      if (!assigned[d]) continue;
      for (auto [x, y] : {std::pair{c, d}, std::pair{d, c}}) {
        // x then y
        if (b.dst(x) != b.src(y)) continue;
        for (MorId m0 : fiber[x])
          for (MorId m1 : fiber[y]) {
            MorId comp = t.compose(m1, m0);
            if (!assigned[e.proj.mor(comp)]) continue;
            if (f[comp] != t2.compose(f[m1], f[m0])) return false;
          }
      }
    }
    return true;
  };

  std::function<void(MorId)> rec = [&](MorId c) {
    if (out.size() >= max_results) return;
    if (c == nb) {
      for (MorId m0 = 0; m0 < t.num_morphisms(); ++m0)
        for (MorId m1 : t.out_of(t.dst(m0)))
          if (f[t.compose(m1, m0)] != t2.compose(f[m1], f[m0])) return;
      out.push_back(f);
      return;
    }
    const MorId target = psi_mor[c];
    for (MorId cand : fiber2[target]) {
      if (t2.src(cand) != psi_obj[b.src(c)] || t2.dst(cand) != psi_obj[b.dst(c)]) continue;
      ObjId y = b.dst(c);
      ObjId y2 = psi_obj[y];
      bool ok = true;
      for (auto [m, g] : decomp[c]) f[m] = t2.compose(e2.delta[y2][eta[y][g]], cand);
      if (b.is_identity(c)) ok = f[t.identity(b.src(c))] == t2.identity(psi_obj[b.src(c)]);
      assigned[c] = true;
      if (ok && consistent(c)) rec(c + 1);
      assigned[c] = false;
    }
    for (auto [m, g] : decomp[c]) f[m] = static_cast<MorId>(-1);
  };
  rec(0);
  return out;
}

// Identity psi and eta between extensions with the same base and coefficients.
inline std::vector<std::vector<MorId>> ext_morphisms_identity(const Extension& e, const Extension& e2,
                                                              std::size_t max_results = SIZE_MAX) {
  std::vector<MorId> pm(e.base->num_morphisms());
  std::iota(pm.begin(), pm.end(), 0);
  std::vector<ObjId> po(e.base->num_objects());
  std::iota(po.begin(), po.end(), 0);
  std::vector<std::vector<std::size_t>> eta(e.base->num_objects());
  for (ObjId x = 0; x < eta.size(); ++x) {
    eta[x].resize(e.delta[x].size());
    std::iota(eta[x].begin(), eta[x].end(), 0);
  }
  return ext_morphisms(e, e2, pm, po, eta, max_results);
}

// Element-index form of a natural transformation's components.
inline std::vector<std::vector<std::size_t>> eta_indices(const NatTrans& eta) {
  std::vector<std::vector<std::size_t>> out;
  const AbFunctor& from = *eta.from_f();
  const AbFunctor& to = *eta.to_f();
  for (ObjId x = 0; x < from.objects().size(); ++x) {
    std::vector<std::size_t> row;
    for (const auto& g : from.on_obj(x).elements()) row.push_back(to.on_obj(x).element_index(eta.component(x)(g)));
    out.push_back(std::move(row));
  }
  return out;
}

// Distinct inner automorphisms d -> <u(Y)> d <-u(X)>, over all choices of u.
inline std::set<std::vector<MorId>> inner_automorphisms(const Extension& e) {
  const FinCat& t = *e.total;
  const std::size_t no = t.num_objects();
  std::set<std::vector<MorId>> out;
  std::vector<std::size_t> u(no, 0);
  auto neg = [&](ObjId x, std::size_t i) {
    // inverse of delta[x][i] inside the group of delta[x]
    for (std::size_t j = 0; j < e.delta[x].size(); ++j)
      if (t.compose(e.delta[x][i], e.delta[x][j]) == t.identity(x)) return j;
    throw Error("oracle: delta is not a group");
  };
  while (true) {
    std::vector<MorId> f(t.num_morphisms());
    for (MorId d = 0; d < t.num_morphisms(); ++d)
      f[d] = t.compose(e.delta[t.dst(d)][u[t.dst(d)]], t.compose(d, e.delta[t.src(d)][neg(t.src(d), u[t.src(d)])]));
    out.insert(f);
    std::size_t x = 0;
    while (x < no && ++u[x] == e.delta[x].size()) u[x++] = 0;
    if (x == no) break;
  }
  return out;
}

// ---------------------------------------------------------------- group cohomology

// Z/m-module (Z/m)^r with an automorphism a of order dividing n, for the cyclic group of order n.
struct CyclicModule {
  std::size_t n;
  Integer m;
  IntMatrix a;
  std::size_t r() const { return a.rows(); }
};

inline std::vector<IntVec> module_elements(const Integer& m, std::size_t r) {
  std::vector<IntVec> out;
  IntVec v(r, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < r && ++v[i] == m) v[i++] = 0;
    if (i == r) break;
  }
  return out;
}

inline IntVec reduce(IntVec v, const Integer& m) {
  for (auto& x : v) x = mod_floor(x, m);
  return v;
}

inline IntVec apply(const IntMatrix& a, const IntVec& v, const Integer& m) { return reduce(a * v, m); }

// |H^deg(Z/n, M)| from the periodic resolution: H^0 = M^G, H^even = M^G / N M, H^odd = ker N / (g-1) M.
// With a second module level (m2 = m * p, inclusion t -> p t) also the order of the image
// of H^deg(M_m) -> H^deg(M_m2).
struct CyclicH {
  std::set<IntVec> cocycles, coboundaries;
};

inline CyclicH cyclic_complex(const CyclicModule& mod, std::size_t deg) {
  auto elems = module_elements(mod.m, mod.r());
  auto gm1 = [&](const IntVec& v) {
    IntVec w = apply(mod.a, v, mod.m);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = mod_floor(w[i] - v[i], mod.m);
    return w;
  };
  auto norm = [&](const IntVec& v) {
    IntVec acc(v.size(), 0), x = v;
    for (std::size_t i = 0; i < mod.n; ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) acc[j] += x[j];
      x = apply(mod.a, x, mod.m);
    }
    return reduce(acc, mod.m);
  };
  CyclicH h;
  const IntVec zero(mod.r(), 0);
  for (const auto& v : elems) {
    bool cyc = (deg % 2 == 0) ? gm1(v) == zero : norm(v) == zero;
    if (cyc) h.cocycles.insert(v);
    if (deg > 0) h.coboundaries.insert(deg % 2 == 0 ? norm(v) : gm1(v));
  }
  if (deg == 0) h.coboundaries.insert(zero);
  return h;
}

inline std::size_t cyclic_h_order(const CyclicModule& mod, std::size_t deg) {
  CyclicH h = cyclic_complex(mod, deg);
  return h.cocycles.size() / h.coboundaries.size();
}

// Order of the image of H^deg(M_m) in H^deg(M_{m p}) under t -> p t.
inline std::size_t cyclic_h_image_order(const CyclicModule& mod, unsigned p, std::size_t deg) {
  CyclicModule big{mod.n, mod.m * p, mod.a};
  CyclicH lo = cyclic_complex(mod, deg), hi = cyclic_complex(big, deg);
  std::set<IntVec> sum;
  for (const auto& z : lo.cocycles)
    for (const auto& b : hi.coboundaries) {
      IntVec w = z;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = mod_floor(w[i] * p + b[i], big.m);
      sum.insert(w);
    }
  return sum.size() / hi.coboundaries.size();
}

inline Integer order_of_invariants(const IntVec& inv) {
  Integer o = 1;
  for (const auto& d : inv) o *= d;
  return o;
}

// H^2(BG, trivial Z/m) by counting all inhomogeneous 2-cochains.
inline std::size_t h2_trivial_bruteforce(const FiniteGroup& g, std::size_t m) {
  const std::size_t n = g.order();
  const std::size_t cells = n * n;
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= m;
  std::size_t cocycles = 0;
  std::vector<std::size_t> z(cells);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < cells; ++i) {
      z[i] = c % m;
      c /= m;
    }
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        for (std::size_t d = 0; d < n && ok; ++d)
          ok = (z[b * n + d] + z[a * n + g.mul(b, d)]) % m == (z[g.mul(a, b) * n + d] + z[a * n + b]) % m;
    if (ok) ++cocycles;
  }
  std::set<std::vector<std::size_t>> cob;
  std::size_t t1 = 1;
  for (std::size_t i = 0; i < n; ++i) t1 *= m;
  for (std::size_t code = 0; code < t1; ++code) {
    std::vector<std::size_t> u(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = c % m;
      c /= m;
    }
    std::vector<std::size_t> du(cells);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) du[a * n + b] = (u[a] + u[b] + m - u[g.mul(a, b)]) % m;
    cob.insert(du);
  }
  return cocycles / cob.size();
}

// ---------------------------------------------------------------- groups

// All automorphisms of g as permutations of element indices.
inline std::vector<std::vector<std::size_t>> group_automorphisms(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> gens;
  std::vector<std::size_t> span{g.identity()};
  for (std::size_t x = 0; x < n && span.size() < n; ++x) {
    if (std::find(span.begin(), span.end(), x) != span.end()) continue;
    gens.push_back(x);
    span = g.subgroup_generated(gens);
  }
  std::vector<std::vector<std::size_t>> cands(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t y = 0; y < n; ++y)
      if (g.element_order(y) == g.element_order(gens[i])) cands[i].push_back(y);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(gens.size(), 0);
  if (gens.empty()) return {{0}};
  while (true) {
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> f(n, none);
    f[g.identity()] = g.identity();
    std::vector<std::size_t> queue{g.identity()};
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q) {
      std::size_t x = queue[q];
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        std::size_t y = g.mul(x, gens[i]);
        std::size_t fy = g.mul(f[x], cands[i][pick[i]]);
        if (f[y] == none) {
          f[y] = fy;
          queue.push_back(y);
        } else if (f[y] != fy) {
          ok = false;
        }
      }
    }
    if (ok) {
      std::vector<std::size_t> s(f);
      std::sort(s.begin(), s.end());
      ok = std::adjacent_find(s.begin(), s.end()) == s.end();
      for (std::size_t a = 0; a < n && ok; ++a)
        for (std::size_t b = 0; b < n && ok; ++b) ok = f[g.mul(a, b)] == g.mul(f[a], f[b]);
    }
    if (ok) out.push_back(f);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == cands[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

// Degree of an automorphism of S that is the identity on S/T and a scalar on T, else nothing.
inline std::optional<Integer> adams_degree_bruteforce(const PToralData& s, const std::vector<std::size_t>& f) {
  const Integer mod = s.modulus();
  for (std::size_t i = 0; i < s.order(); ++i)
    if (s.element(f[i]).second != s.element(i).second) return std::nullopt;
  // scalar on T
  for (Integer z = 1; z < mod; ++z) {
    if (z % s.p == 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < s.torus_order() && ok; ++i) {
      IntVec t = s.element(i).first;
      IntVec zt = t;
      for (auto& x : zt) x = mod_floor(x * z, mod);
      ok = s.element(f[s.index(t, 0)]).first == zt;
    }
    if (ok) return z;
  }
  return std::nullopt;
}

// |Z^1(pi, T_k)| by enumerating all maps pi -> T.
inline std::size_t z1_bruteforce(const PToralData& s) {
  const std::size_t n = s.pi.order(), tt = s.torus_order();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= tt;
  PresentedAbGroup t = s.torus();
  std::size_t count = 0;
  std::vector<IntVec> d(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = t.element(c % tt);
      c /= tt;
    }
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        IntVec rhs = s.act(x, d[y]);
        for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] += d[x][j];
        ok = reduce(rhs, s.modulus()) == d[s.pi.mul(x, y)];
      }
    if (ok) ++count;
  }
  return count;
}

// Permutation of S for (t, x) -> (zeta t + d(x), x).
inline std::vector<std::size_t> adams_permutation(const PToralData& s, const AdamsAut& a) {
  std::vector<std::size_t> f(s.order());
  for (std::size_t i = 0; i < s.order(); ++i) {
    auto [t, x] = s.element(i);
    IntVec v = t;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = mod_floor(v[j] * a.zeta + a.d[x][j], s.modulus());
    f[i] = s.index(v, x);
  }
  return f;
}

inline std::vector<std::size_t> compose_perm(const std::vector<std::size_t>& f, const std::vector<std::size_t>& g) {
  std::vector<std::size_t> h(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) h[i] = f[g[i]];
  return h;
}

inline std::vector<std::size_t> perm_power(const std::vector<std::size_t>& f, std::size_t n) {
  std::vector<std::size_t> r(f.size());
  std::iota(r.begin(), r.end(), 0);
  for (std::size_t i = 0; i < n; ++i) r = compose_perm(f, r);
  return r;
}

// ---------------------------------------------------------------- random data

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline Cochain random_cochain(std::mt19937_64& rng, const AbFunctorPtr& phi, std::size_t n) {
  Cochain u = Cochain::zero(phi, n);
  std::uniform_int_distribution<int> d(-50, 50);
  for (std::size_t i = 0; i < u.values().size(); ++i) {
    IntVec v(u.group_at(i).ngens());
    for (auto& x : v) x = d(rng);
    u.set(i, v);
  }
  return u;
}

}  // namespace oracle
