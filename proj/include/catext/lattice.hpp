#pragma once

// Lattice routines on "moduli spaces": Z^s with a modulus per coordinate
// (0 marks a free coordinate). A space with moduli m stands for the group
// (+) Z/m_i, and every lattice handled here contains the vectors m_i e_i.

#include <cstddef>
#include <optional>
#include <vector>

#include "catext/matrix.hpp"

namespace catext::lattice {

inline void reduce_in_place(IntVec& v, const IntVec& moduli) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (moduli[i] > 0) v[i] = mod_floor(v[i], moduli[i]);
}

inline IntVec reduced(IntVec v, const IntVec& moduli) {
  reduce_in_place(v, moduli);
  return v;
}

// Column echelon basis: column j has zeros above pivot row pivots[j], a positive
// entry there, and pivots increase strictly.
struct Echelon {
  std::size_t dim = 0;
  std::vector<IntVec> cols;
  std::vector<std::size_t> pivots;
};

namespace detail {

// x <- a*x + b*y, y <- c*x + d*y (simultaneously), from index `from` on.
inline void combine(IntVec& x, IntVec& y, const Integer& a, const Integer& b, const Integer& c, const Integer& d,
                    std::size_t from) {
  for (std::size_t i = from; i < x.size(); ++i) {
    if (x[i] == 0 && y[i] == 0) continue;
    Integer nx = a * x[i] + b * y[i];
    Integer ny = c * x[i] + d * y[i];
    x[i] = std::move(nx);
    y[i] = std::move(ny);
  }
}

inline void reduce_tail(IntVec& v, const IntVec& moduli, std::size_t from) {
  for (std::size_t i = from; i < v.size(); ++i)
    if (moduli[i] > 0 && (v[i] < 0 || v[i] >= moduli[i])) v[i] = mod_floor(v[i], moduli[i]);
}

}  // namespace detail

// Echelon basis of the lattice spanned by gens together with all m_i e_i.
inline Echelon echelon_basis(std::vector<IntVec> gens, const IntVec& moduli) {
  const std::size_t s = moduli.size();
  Echelon out;
  out.dim = s;
  for (auto& g : gens) reduce_in_place(g, moduli);
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const IntVec& g) { return is_zero_vec(g); }), gens.end());

  for (std::size_t r = 0; r < s; ++r) {
    std::optional<IntVec> pivot;
    std::vector<IntVec> rest;
    rest.reserve(gens.size());
    for (auto& g : gens) {
      if (g[r] == 0) {
        rest.push_back(std::move(g));
        continue;
      }
      if (!pivot) {
        pivot = std::move(g);
        continue;
      }
      Xgcd e = xgcd((*pivot)[r], g[r]);
      Integer a = (*pivot)[r] / e.g, b = g[r] / e.g;
      // new pivot = x*p + y*g ; new g = -b*p + a*g  (determinant 1)
      detail::combine(*pivot, g, e.x, e.y, -b, a, r);
      detail::reduce_tail(*pivot, moduli, r + 1);
      detail::reduce_tail(g, moduli, r + 1);
      if (!is_zero_vec(g)) rest.push_back(std::move(g));
    }
    if (moduli[r] > 0) {
      if (!pivot) {
        IntVec v(s);
        v[r] = moduli[r];
        pivot = std::move(v);
      } else {
        // Fold in the implicit vector m_r e_r: (p, m_r e_r) -> (x p + y m_r e_r, -(m_r/g) p + (p_r/g) m_r e_r).
        Xgcd e = xgcd((*pivot)[r], moduli[r]);
        IntVec other(s);
        for (std::size_t i = r + 1; i < s; ++i) other[i] = -(moduli[r] / e.g) * (*pivot)[i];
        if (e.x != 1)
          for (std::size_t i = r + 1; i < s; ++i) (*pivot)[i] *= e.x;
        (*pivot)[r] = e.g;
        detail::reduce_tail(other, moduli, r + 1);
        if (!is_zero_vec(other)) rest.push_back(std::move(other));
      }
    }
    gens = std::move(rest);
    if (pivot) {
      if ((*pivot)[r] < 0)
        for (auto& x : *pivot) x = -x;
      detail::reduce_tail(*pivot, moduli, r + 1);
      out.cols.push_back(std::move(*pivot));
      out.pivots.push_back(r);
    }
  }
  return out;
}

// Exact coordinates of v in the echelon basis, or nothing if v is outside the lattice.
inline std::optional<IntVec> echelon_solve(const Echelon& e, IntVec v) {
  IntVec w(e.cols.size());
  std::size_t next = 0;
  for (std::size_t r = 0; r < e.dim; ++r) {
    if (next < e.pivots.size() && e.pivots[next] == r) {
      const IntVec& c = e.cols[next];
      if (v[r] % c[r] != 0) return std::nullopt;
      Integer q = v[r] / c[r];
      if (q != 0)
        for (std::size_t i = r; i < e.dim; ++i)
          if (c[i] != 0) v[i] -= q * c[i];
      w[next] = std::move(q);
      ++next;
    } else if (v[r] != 0) {
      return std::nullopt;
    }
  }
  return w;
}

// Least representative of x + lattice, lexicographically, coordinates at pivots in [0, pivot).
inline IntVec lex_least(const Echelon& e, IntVec x, std::size_t first_col = 0) {
  for (std::size_t j = first_col; j < e.cols.size(); ++j) {
    const std::size_t r = e.pivots[j];
    const IntVec& c = e.cols[j];
    Integer q = floor_div(x[r], c[r]);
    if (q != 0)
      for (std::size_t i = r; i < e.dim; ++i)
        if (c[i] != 0) x[i] -= q * c[i];
  }
  return x;
}

// Kernel of the map (+)Z/m_src -> (+)Z/m_dst given by F (rows index dst coordinates).
// F must be well defined, i.e. F(m_j e_j) = 0 in the target.
inline Echelon kernel_lattice(const SparseMatrix& f, const IntVec& m_src, const IntVec& m_dst) {
  const std::size_t s = m_src.size();
  std::vector<IntVec> k(s, IntVec(s));
  for (std::size_t j = 0; j < s; ++j) k[j][j] = 1;
  std::vector<Integer> v;
  for (std::size_t i = 0; i < f.rows; ++i) {
    const Integer& mod = m_dst[i];
    if (mod == 1 || f.data[i].empty()) continue;
    v.assign(k.size(), Integer(0));
    bool any = false;
    for (std::size_t j = 0; j < k.size(); ++j) {
      Integer acc = 0;
      for (const auto& [col, a] : f.data[i])
        if (k[j][col] != 0) acc += a * k[j][col];
      if (mod > 0) acc = mod_floor(acc, mod);
      if (acc != 0) any = true;
      v[j] = std::move(acc);
    }
    if (!any) continue;
    std::size_t p = k.size();
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (v[j] == 0) continue;
      if (p == k.size()) {
        p = j;
        continue;
      }
      Xgcd e = xgcd(v[p], v[j]);
      Integer a = v[p] / e.g, b = v[j] / e.g;
      detail::combine(k[p], k[j], e.x, e.y, -b, a, 0);
      detail::reduce_tail(k[p], m_src, 0);
      detail::reduce_tail(k[j], m_src, 0);
      v[p] = e.g;
      v[j] = 0;
    }
    if (mod == 0) {
      k.erase(k.begin() + static_cast<std::ptrdiff_t>(p));
    } else {
      Integer factor = mod / gcd_int(v[p], mod);
      if (factor != 1) {
        for (auto& x : k[p]) x *= factor;
        detail::reduce_tail(k[p], m_src, 0);
      }
    }
  }
  return echelon_basis(std::move(k), m_src);
}

// Lexicographically least x (coordinates reduced) with F x = y in the target, if any.
inline std::optional<IntVec> solve_affine(const SparseMatrix& f, const IntVec& m_src, const IntVec& m_dst,
                                          const IntVec& y) {
  const std::size_t s = m_src.size();
  Integer exponent = 1;
  for (const auto& m : m_dst) {
    if (m == 0) {
      exponent = 0;
      break;
    }
    exponent = lcm_int(exponent, m);
  }
  // Unknowns (t, x); rows express F x - t y.
  SparseMatrix aug{f.rows, s + 1, std::vector<SparseRow>(f.rows)};
  for (std::size_t i = 0; i < f.rows; ++i) {
    Integer yi = reduce_mod(y[i], m_dst[i]);
    if (yi != 0) aug.data[i].emplace_back(0, -yi);
    for (const auto& [j, a] : f.data[i]) aug.data[i].emplace_back(j + 1, a);
  }
  IntVec m_aug(s + 1);
  m_aug[0] = exponent;
  for (std::size_t j = 0; j < s; ++j) m_aug[j + 1] = m_src[j];
  Echelon e = kernel_lattice(aug, m_aug, m_dst);
  if (e.pivots.empty() || e.pivots[0] != 0 || e.cols[0][0] != 1) return std::nullopt;
  IntVec x = lex_least(e, e.cols[0], 1);
  IntVec out(x.begin() + 1, x.end());
  reduce_in_place(out, m_src);
  return out;
}

}  // namespace catext::lattice
