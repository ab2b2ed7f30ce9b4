#pragma once

#include <cstddef>
#include <optional>

#include "catext/matrix.hpp"

namespace catext {

// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., zeros last.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

namespace detail {

// Elimination state; the inverse of U is kept alongside when requested so that
// presented groups can map canonical coordinates back to generators.
class SmithWork {
 public:
  SmithWork(IntMatrix a, bool track_u, bool track_uinv, bool track_v)
      : A(std::move(a)), tu_(track_u), tui_(track_uinv), tv_(track_v) {
    if (tu_) U = IntMatrix::identity(A.rows());
    if (tui_) Uinv = IntMatrix::identity(A.rows());
    if (tv_) V = IntMatrix::identity(A.cols());
  }

  void run() {
    const std::size_t n = A.rows(), m = A.cols();
    for (std::size_t t = 0; t < std::min(n, m); ++t) {
      if (!move_min_to(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < n; ++i) {
          if (A(i, t) == 0) continue;
          Integer q = A(i, t) / A(t, t);
          if (q != 0) row_add(i, t, -q);
          if (A(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < m; ++j) {
          if (A(t, j) == 0) continue;
          Integer q = A(t, j) / A(t, t);
          if (q != 0) col_add(j, t, -q);
          if (A(t, j) != 0) clean = false;
        }
        if (!clean) {
          swap_in_smaller_remainder(t);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < n && !fixed; ++i)
          for (std::size_t j = t + 1; j < m; ++j)
            if (A(i, j) % A(t, t) != 0) {
              row_add(t, i, 1);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (A(t, t) < 0) col_negate(t);
    }
  }

  IntMatrix A, U, Uinv, V;

 private:
  bool move_min_to(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < A.rows(); ++i)
      for (std::size_t j = t; j < A.cols(); ++j) {
        if (A(i, j) == 0) continue;
        Integer a = abs_int(A(i, j));
        if (!best || a < best_abs) {
          best = {i, j};
          best_abs = a;
          if (best_abs == 1) goto found;
        }
      }
  found:
    if (!best) return false;
    row_swap(t, best->first);
    col_swap(t, best->second);
    return true;
  }

  void swap_in_smaller_remainder(std::size_t t) {
    std::size_t bi = t, bj = t;
    Integer best = abs_int(A(t, t));
    for (std::size_t i = t + 1; i < A.rows(); ++i)
      if (A(i, t) != 0 && abs_int(A(i, t)) < best) {
        best = abs_int(A(i, t));
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < A.cols(); ++j)
      if (A(t, j) != 0 && abs_int(A(t, j)) < best) {
        best = abs_int(A(t, j));
        bi = t;
        bj = j;
      }
    if (bi != t) row_swap(t, bi);
    if (bj != t) col_swap(t, bj);
  }

  void row_add(std::size_t dst, std::size_t src, const Integer& q) {
    A.add_row_multiple(dst, src, q);
    if (tu_) U.add_row_multiple(dst, src, q);
    if (tui_) Uinv.add_col_multiple(src, dst, -q);
  }
  void row_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    A.swap_rows(a, b);
    if (tu_) U.swap_rows(a, b);
    if (tui_) Uinv.swap_cols(a, b);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& q) {
    A.add_col_multiple(dst, src, q);
    if (tv_) V.add_col_multiple(dst, src, q);
  }
  void col_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    A.swap_cols(a, b);
    if (tv_) V.swap_cols(a, b);
  }
  void col_negate(std::size_t j) {
    A.negate_col(j);
    if (tv_) V.negate_col(j);
  }

  bool tu_, tui_, tv_;
};

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& m) {
  detail::SmithWork w(m, true, false, true);
  w.run();
  return {std::move(w.U), std::move(w.A), std::move(w.V)};
}

// Diagonal of a Smith form padded with zeros up to the row count.
inline IntVec smith_diagonal(const IntMatrix& d) {
  IntVec diag(d.rows());
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) diag[i] = d(i, i);
  return diag;
}

}  // namespace catext
