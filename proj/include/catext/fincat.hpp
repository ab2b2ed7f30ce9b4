#pragma once

// Finite categories with explicit composition tables, finite groups given by
// multiplication tables, functors, abelian-group-valued functors and natural
// transformations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catext/abgrp.hpp"

namespace catext {

using ObjId = std::size_t;
using MorId = std::size_t;

inline std::int64_t wit(std::size_t x) { return static_cast<std::int64_t>(x); }

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<std::size_t>>{{0}}) {}

  // Validates the table: closure, associativity, identity, inverses.
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table) : t_(std::move(table)) {
    const std::size_t n = t_.size();
    if (n == 0) throw PreconditionError("not a group: empty table");
    for (std::size_t a = 0; a < n; ++a) {
      if (t_[a].size() != n) throw PreconditionError("not a group: table is not square");
      for (std::size_t b = 0; b < n; ++b)
        if (t_[a][b] >= n)
          throw PreconditionError("not a group: closure fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    std::optional<std::size_t> e;
    for (std::size_t a = 0; a < n && !e; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < n && ok; ++b) ok = t_[a][b] == b && t_[b][a] == b;
      if (ok) e = a;
    }
    if (!e) throw PreconditionError("not a group: no identity element");
    e_ = *e;
    inv_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (t_[a][b] == e_ && t_[b][a] == e_) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] == n) throw PreconditionError("not a group: element " + std::to_string(a) + " has no inverse");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (t_[t_[a][b]][c] != t_[a][t_[b][c]])
            throw PreconditionError("not a group: associativity fails at (" + std::to_string(a) + "," +
                                    std::to_string(b) + "," + std::to_string(c) + ")");
  }

  static FiniteGroup trivial() { return FiniteGroup(); }

  static FiniteGroup cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
  }

  // Element (g, h) has index g * |H| + h.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const std::size_t m = h.order(), n = g.order() * m;
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
    return FiniteGroup(std::move(t));
  }

  // Dihedral group of order 2n; r^i s^j has index i + n*j.
  static FiniteGroup dihedral(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(2 * n, std::vector<std::size_t>(2 * n));
    for (std::size_t x = 0; x < 2 * n; ++x)
      for (std::size_t y = 0; y < 2 * n; ++y) {
        std::size_t i = x % n, a = x / n, k = y % n, b = y / n;
        std::size_t r = a == 0 ? (i + k) % n : (i + n - k) % n;
        t[x][y] = r + n * ((a + b) % 2);
      }
    return FiniteGroup(std::move(t));
  }

  // Symmetric group on 3 letters; elements are permutations in lexicographic
  // order, product (a*b)(x) = a(b(x)).
  static FiniteGroup symmetric3() {
    std::vector<std::vector<int>> perms;
    std::vector<int> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b) {
        std::vector<int> c(3);
        for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
        t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
      }
    return FiniteGroup(std::move(t));
  }

  std::size_t order() const { return t_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return t_[a][b]; }
  std::size_t identity() const { return e_; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return t_; }

  std::size_t power(std::size_t a, std::size_t n) const {
    std::size_t r = e_;
    for (std::size_t i = 0; i < n; ++i) r = t_[r][a];
    return r;
  }

  std::size_t element_order(std::size_t a) const {
    std::size_t n = 1, x = a;
    while (x != e_) {
      x = t_[x][a];
      ++n;
    }
    return n;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < order(); ++b)
        if (t_[a][b] != t_[b][a]) return false;
    return true;
  }

  // Sorted element list of the subgroup generated by gens.
  std::vector<std::size_t> subgroup_generated(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(order(), false);
    std::vector<std::size_t> todo{e_};
    in[e_] = true;
    while (!todo.empty()) {
      std::size_t x = todo.back();
      todo.pop_back();
      for (std::size_t g : gens) {
        std::size_t y = t_[x][g];
        if (!in[y]) {
          in[y] = true;
          todo.push_back(y);
        }
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < order(); ++x)
      if (in[x]) out.push_back(x);
    return out;
  }

  bool is_subgroup(const std::vector<std::size_t>& s) const {
    std::vector<bool> in(order(), false);
    for (auto x : s) {
      if (x >= order()) return false;
      in[x] = true;
    }
    if (!in[e_]) return false;
    for (auto a : s)
      for (auto b : s)
        if (!in[t_[a][b]]) return false;
    return true;
  }

  bool is_normal(const std::vector<std::size_t>& s) const {
    if (!is_subgroup(s)) return false;
    std::vector<bool> in(order(), false);
    for (auto x : s) in[x] = true;
    for (std::size_t g = 0; g < order(); ++g)
      for (auto n : s)
        if (!in[t_[t_[g][n]][inv_[g]]]) return false;
    return true;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.t_ == b.t_; }

 private:
  std::vector<std::vector<std::size_t>> t_;
  std::size_t e_ = 0;
  std::vector<std::size_t> inv_;
};

struct MorphismData {
  ObjId src = 0;
  ObjId dst = 0;
};

struct CompEntry {
  MorId g = 0, f = 0, gf = 0;
};

class FinCat {
 public:
  FinCat() = default;

  // Ids out of range raise MalformedInput; the categorical laws are checked by validate_category.
  FinCat(std::vector<std::string> objects, std::vector<MorphismData> morphisms, std::vector<MorId> identity,
         const std::vector<CompEntry>& comp)
      : objects_(std::move(objects)), mors_(std::move(morphisms)), id_(std::move(identity)) {
    const std::size_t no = objects_.size(), nm = mors_.size();
    if (id_.size() != no) throw MalformedInput("identity map must list one morphism per object");
    for (const auto& m : mors_)
      if (m.src >= no || m.dst >= no) throw MalformedInput("morphism endpoint out of range");
    for (auto i : id_)
      if (i >= nm) throw MalformedInput("identity morphism id out of range");
    comp_.assign(nm * nm, kNone);
    for (const auto& e : comp) {
      if (e.g >= nm || e.f >= nm || e.gf >= nm) throw MalformedInput("composition entry id out of range");
      if (mors_[e.f].dst != mors_[e.g].src) {
        stray_.push_back(e);
        continue;
      }
      std::size_t& slot = comp_[e.g * nm + e.f];
      if (slot != kNone && slot != e.gf) {
        conflicts_.push_back(e);
        continue;
      }
      slot = e.gf;
    }
    hom_.assign(no * no, {});
    for (MorId f = 0; f < nm; ++f) hom_[mors_[f].src * no + mors_[f].dst].push_back(f);
    out_.assign(no, {});
    for (MorId f = 0; f < nm; ++f) out_[mors_[f].src].push_back(f);
  }

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return mors_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<MorphismData>& morphisms() const { return mors_; }
  ObjId src(MorId f) const { return mors_[f].src; }
  ObjId dst(MorId f) const { return mors_[f].dst; }
  MorId identity(ObjId x) const { return id_[x]; }
  const std::vector<MorId>& identities() const { return id_; }
  bool is_identity(MorId f) const { return id_[mors_[f].src] == f; }

  std::optional<MorId> try_compose(MorId g, MorId f) const {
    std::size_t v = comp_[g * mors_.size() + f];
    if (v == kNone) return std::nullopt;
    return v;
  }

  // g after f.
  MorId compose(MorId g, MorId f) const {
    std::size_t v = comp_[g * mors_.size() + f];
    if (v == kNone)
      throw PreconditionError("composition undefined for (" + std::to_string(g) + "," + std::to_string(f) + ")");
    return v;
  }

  const std::vector<MorId>& hom(ObjId x, ObjId y) const { return hom_[x * objects_.size() + y]; }
  const std::vector<MorId>& out_of(ObjId x) const { return out_[x]; }

  // Entries that were supplied for non-composable pairs or conflicted with earlier ones.
  const std::vector<CompEntry>& stray_entries() const { return stray_; }
  const std::vector<CompEntry>& conflicting_entries() const { return conflicts_; }

  std::vector<CompEntry> comp_entries() const {
    std::vector<CompEntry> out;
    const std::size_t nm = mors_.size();
    for (MorId g = 0; g < nm; ++g)
      for (MorId f = 0; f < nm; ++f)
        if (comp_[g * nm + f] != kNone) out.push_back({g, f, comp_[g * nm + f]});
    return out;
  }

  friend bool operator==(const FinCat& a, const FinCat& b) {
    if (a.objects_ != b.objects_ || a.id_ != b.id_ || a.comp_ != b.comp_ || a.mors_.size() != b.mors_.size())
      return false;
    for (std::size_t i = 0; i < a.mors_.size(); ++i)
      if (a.mors_[i].src != b.mors_[i].src || a.mors_[i].dst != b.mors_[i].dst) return false;
    return true;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::string> objects_;
  std::vector<MorphismData> mors_;
  std::vector<MorId> id_;
  std::vector<std::size_t> comp_;
  std::vector<std::vector<MorId>> hom_;
  std::vector<std::vector<MorId>> out_;
  std::vector<CompEntry> stray_, conflicts_;
};

using CatPtr = std::shared_ptr<const FinCat>;

inline Violations validate_category(const FinCat& c) {
  Violations v;
  const std::size_t nm = c.num_morphisms();
  for (const auto& e : c.stray_entries())
    v.push_back({"comp_on_noncomposable", "composition given for a non-composable pair", {wit(e.g), wit(e.f), wit(e.gf)}});
  for (const auto& e : c.conflicting_entries())
    v.push_back({"comp_conflict", "two different composites given for one pair", {wit(e.g), wit(e.f), wit(e.gf)}});
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    MorId i = c.identity(x);
    if (c.src(i) != x || c.dst(i) != x)
      v.push_back({"identity_endpoints", "identity morphism is not an endomorphism of its object", {wit(x), wit(i)}});
  }
  for (MorId g = 0; g < nm; ++g)
    for (MorId f = 0; f < nm; ++f) {
      if (c.dst(f) != c.src(g)) continue;
      auto gf = c.try_compose(g, f);
      if (!gf) {
        v.push_back({"comp_missing", "composition undefined for a composable pair", {wit(g), wit(f)}});
        continue;
      }
      if (c.src(*gf) != c.src(f) || c.dst(*gf) != c.dst(g))
        v.push_back({"comp_endpoints", "composite has wrong source or target", {wit(g), wit(f), wit(*gf)}});
    }
  if (!v.empty()) return v;
  for (MorId f = 0; f < nm; ++f) {
    if (c.compose(c.identity(c.dst(f)), f) != f)
      v.push_back({"left_identity", "id_Y o f != f", {wit(c.identity(c.dst(f))), wit(f)}});
    if (c.compose(f, c.identity(c.src(f))) != f)
      v.push_back({"right_identity", "f o id_X != f", {wit(f), wit(c.identity(c.src(f)))}});
  }
  for (MorId f = 0; f < nm; ++f)
    for (MorId g : c.out_of(c.dst(f)))
      for (MorId h : c.out_of(c.dst(g)))
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
          v.push_back({"associativity", "h o (g o f) != (h o g) o f", {wit(h), wit(g), wit(f)}});
  return v;
}

// BG: one object, one morphism per group element, composition g o f = g * f.
inline FinCat one_object_cat(const FiniteGroup& g) {
  std::vector<MorphismData> mors(g.order(), MorphismData{0, 0});
  std::vector<CompEntry> comp;
  comp.reserve(g.order() * g.order());
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) comp.push_back({a, b, g.mul(a, b)});
  return FinCat({"*"}, std::move(mors), {g.identity()}, comp);
}

// Poset category on objects 0..n-1 from a relation list (reflexive-transitive closure taken).
inline FinCat poset_cat(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : less) le[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  std::vector<MorphismData> mors;
  std::vector<std::vector<std::size_t>> id_of(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le[i][j]) {
        id_of[i][j] = mors.size();
        mors.push_back({i, j});
      }
  std::vector<MorId> ident(n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    ident[i] = id_of[i][i];
    names[i] = std::to_string(i);
  }
  std::vector<CompEntry> comp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (le[i][j] && le[j][k]) comp.push_back({id_of[j][k], id_of[i][j], id_of[i][k]});
  return FinCat(std::move(names), std::move(mors), std::move(ident), comp);
}

// Full subcategory on the listed objects (in the given order); morphisms are
// renumbered by increasing original id. old_ids receives the original ids.
inline FinCat full_subcategory(const FinCat& c, const std::vector<ObjId>& objs, std::vector<MorId>* old_ids = nullptr) {
  if (objs.empty()) throw PreconditionError("full subcategory needs at least one object");
  std::vector<std::size_t> pos(c.num_objects(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (objs[i] >= c.num_objects()) throw PreconditionError("object out of range");
    if (pos[objs[i]] != static_cast<std::size_t>(-1)) throw PreconditionError("object listed twice");
    pos[objs[i]] = i;
  }
  std::vector<MorId> keep;
  std::vector<std::size_t> new_id(c.num_morphisms(), static_cast<std::size_t>(-1));
  std::vector<MorphismData> mors;
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    if (pos[c.src(f)] != static_cast<std::size_t>(-1) && pos[c.dst(f)] != static_cast<std::size_t>(-1)) {
      new_id[f] = keep.size();
      keep.push_back(f);
      mors.push_back({pos[c.src(f)], pos[c.dst(f)]});
    }
  std::vector<std::string> names;
  std::vector<MorId> ident;
  for (ObjId x : objs) {
    names.push_back(c.objects()[x]);
    ident.push_back(new_id[c.identity(x)]);
  }
  std::vector<CompEntry> comp;
  for (MorId f : keep)
    for (MorId g : c.out_of(c.dst(f)))
      if (new_id[g] != static_cast<std::size_t>(-1)) comp.push_back({new_id[g], new_id[f], new_id[c.compose(g, f)]});
  if (old_ids) *old_ids = keep;
  return FinCat(std::move(names), std::move(mors), std::move(ident), comp);
}

// An n-chain X0 -> ... -> Xn; for n = 0 only `object` is meaningful.
struct Chain {
  std::vector<MorId> mors;
  ObjId object = 0;
};

inline ObjId chain_target(const FinCat& c, const Chain& ch) {
  return ch.mors.empty() ? ch.object : c.dst(ch.mors.back());
}

inline ObjId chain_source(const FinCat& c, const Chain& ch) {
  return ch.mors.empty() ? ch.object : c.src(ch.mors.front());
}

// All n-chains, lexicographic in morphism ids; 0-chains are the objects in order.
inline std::vector<Chain> chains(const FinCat& c, std::size_t n) {
  std::vector<Chain> out;
  if (n == 0) {
    for (ObjId x = 0; x < c.num_objects(); ++x) out.push_back({{}, x});
    return out;
  }
  std::vector<MorId> cur;
  cur.reserve(n);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == n) {
      out.push_back({cur, c.dst(cur.back())});
      return;
    }
    if (cur.empty()) {
      for (MorId f = 0; f < c.num_morphisms(); ++f) {
        cur.push_back(f);
        self(self);
        cur.pop_back();
      }
    } else {
      for (MorId f : c.out_of(c.dst(cur.back()))) {
        cur.push_back(f);
        self(self);
        cur.pop_back();
      }
    }
  };
  rec(rec);
  return out;
}

// Number of n-chains without materializing them.
inline std::uint64_t count_chains(const FinCat& c, std::size_t n) {
  if (n == 0) return c.num_objects();
  // ending[x] = number of chains of the current length ending at x
  std::vector<std::uint64_t> ending(c.num_objects(), 0);
  for (MorId f = 0; f < c.num_morphisms(); ++f) ending[c.dst(f)] += 1;
  for (std::size_t len = 1; len < n; ++len) {
    std::vector<std::uint64_t> next(c.num_objects(), 0);
    for (MorId f = 0; f < c.num_morphisms(); ++f) next[c.dst(f)] += ending[c.src(f)];
    ending = std::move(next);
  }
  return std::accumulate(ending.begin(), ending.end(), std::uint64_t{0});
}

// Chains of one degree with index lookup.
class ChainList {
 public:
  ChainList(const FinCat& c, std::size_t n) : n_(n), nm_(c.num_morphisms()), list_(chains(c, n)) {
    for (std::size_t i = 0; i < list_.size(); ++i) index_.emplace(key(list_[i]), i);
  }
  std::size_t degree() const { return n_; }
  std::size_t size() const { return list_.size(); }
  const Chain& operator[](std::size_t i) const { return list_[i]; }
  const std::vector<Chain>& all() const { return list_; }

  std::size_t index_of(const Chain& ch) const {
    auto it = index_.find(key(ch));
    if (it == index_.end()) throw PreconditionError("not a chain of this category");
    return it->second;
  }
  std::size_t index_of_mors(const std::vector<MorId>& mors) const { return index_of(Chain{mors, 0}); }

 private:
  std::uint64_t key(const Chain& ch) const {
    if (n_ == 0) return ch.object;
    std::uint64_t k = 0;
    for (MorId f : ch.mors) k = k * (nm_ + 1) + f + 1;
    return k;
  }
  std::size_t n_, nm_;
  std::vector<Chain> list_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

class CatFunctor {
 public:
  CatFunctor() = default;
  CatFunctor(CatPtr src, CatPtr dst, std::vector<ObjId> obj_map, std::vector<MorId> mor_map)
      : src_(std::move(src)), dst_(std::move(dst)), obj_(std::move(obj_map)), mor_(std::move(mor_map)) {
    if (obj_.size() != src_->num_objects() || mor_.size() != src_->num_morphisms())
      throw MalformedInput("functor maps have wrong length");
    for (auto x : obj_)
      if (x >= dst_->num_objects()) throw MalformedInput("functor object image out of range");
    for (auto f : mor_)
      if (f >= dst_->num_morphisms()) throw MalformedInput("functor morphism image out of range");
  }

  static CatFunctor identity(CatPtr c) {
    std::vector<ObjId> o(c->num_objects());
    std::iota(o.begin(), o.end(), 0);
    std::vector<MorId> m(c->num_morphisms());
    std::iota(m.begin(), m.end(), 0);
    return CatFunctor(c, c, std::move(o), std::move(m));
  }

  const CatPtr& src() const { return src_; }
  const CatPtr& dst() const { return dst_; }
  ObjId obj(ObjId x) const { return obj_[x]; }
  MorId mor(MorId f) const { return mor_[f]; }
  const std::vector<ObjId>& obj_map() const { return obj_; }
  const std::vector<MorId>& mor_map() const { return mor_; }

  friend bool operator==(const CatFunctor& a, const CatFunctor& b) {
    return a.obj_ == b.obj_ && a.mor_ == b.mor_ && *a.src_ == *b.src_ && *a.dst_ == *b.dst_;
  }

 private:
  CatPtr src_, dst_;
  std::vector<ObjId> obj_;
  std::vector<MorId> mor_;
};

inline Violations validate_functor(const CatFunctor& f) {
  Violations v;
  const FinCat& a = *f.src();
  const FinCat& b = *f.dst();
  for (MorId m = 0; m < a.num_morphisms(); ++m)
    if (b.src(f.mor(m)) != f.obj(a.src(m)) || b.dst(f.mor(m)) != f.obj(a.dst(m)))
      v.push_back({"functor_endpoints", "image of a morphism has wrong endpoints", {wit(m), wit(f.mor(m))}});
  for (ObjId x = 0; x < a.num_objects(); ++x)
    if (f.mor(a.identity(x)) != b.identity(f.obj(x)))
      v.push_back({"functor_identity", "identity not sent to identity", {wit(x)}});
  if (!v.empty()) return v;
  for (MorId m = 0; m < a.num_morphisms(); ++m)
    for (MorId g : a.out_of(a.dst(m)))
      if (f.mor(a.compose(g, m)) != b.compose(f.mor(g), f.mor(m)))
        v.push_back({"functor_composition", "F(g o f) != F(g) o F(f)", {wit(g), wit(m)}});
  return v;
}

// g after f.
inline CatFunctor compose(const CatFunctor& g, const CatFunctor& f) {
  if (!(*f.dst() == *g.src())) throw PreconditionError("compose: functors not composable");
  std::vector<ObjId> o(f.src()->num_objects());
  for (ObjId x = 0; x < o.size(); ++x) o[x] = g.obj(f.obj(x));
  std::vector<MorId> m(f.src()->num_morphisms());
  for (MorId a = 0; a < m.size(); ++a) m[a] = g.mor(f.mor(a));
  return CatFunctor(f.src(), g.dst(), std::move(o), std::move(m));
}

class AbFunctor {
 public:
  AbFunctor() = default;
  AbFunctor(CatPtr base, std::vector<PresentedAbGroup> on_obj, std::vector<AbHom> on_mor)
      : base_(std::move(base)), obj_(std::move(on_obj)), mor_(std::move(on_mor)) {
    if (obj_.size() != base_->num_objects() || mor_.size() != base_->num_morphisms())
      throw MalformedInput("functor data has wrong length");
    for (MorId f = 0; f < mor_.size(); ++f)
      if (!(mor_[f].src() == obj_[base_->src(f)]) || !(mor_[f].dst() == obj_[base_->dst(f)]))
        throw MalformedInput("hom for morphism " + std::to_string(f) + " does not match its endpoint groups");
  }

  // The same group at every object, identity on every morphism.
  static AbFunctor constant(CatPtr base, const PresentedAbGroup& g) {
    std::vector<PresentedAbGroup> o(base->num_objects(), g);
    std::vector<AbHom> m(base->num_morphisms(), AbHom::identity(g));
    return AbFunctor(std::move(base), std::move(o), std::move(m));
  }

  const CatPtr& base() const { return base_; }
  const PresentedAbGroup& on_obj(ObjId x) const { return obj_[x]; }
  const AbHom& on_mor(MorId f) const { return mor_[f]; }
  const std::vector<PresentedAbGroup>& objects() const { return obj_; }
  const std::vector<AbHom>& morphisms() const { return mor_; }

  friend bool operator==(const AbFunctor& a, const AbFunctor& b) {
    if (!(*a.base_ == *b.base_) || !(a.obj_ == b.obj_)) return false;
    for (std::size_t f = 0; f < a.mor_.size(); ++f)
      if (!a.mor_[f].equals(b.mor_[f])) return false;
    return true;
  }

 private:
  CatPtr base_;
  std::vector<PresentedAbGroup> obj_;
  std::vector<AbHom> mor_;
};

using AbFunctorPtr = std::shared_ptr<const AbFunctor>;

inline Violations validate_abfunctor(const AbFunctor& phi) {
  Violations v;
  const FinCat& c = *phi.base();
  for (ObjId x = 0; x < c.num_objects(); ++x)
    if (!phi.on_mor(c.identity(x)).is_identity())
      v.push_back({"abfunctor_identity", "identity morphism not sent to the identity hom", {wit(x)}});
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (MorId g : c.out_of(c.dst(f)))
      if (!phi.on_mor(c.compose(g, f)).equals(compose(phi.on_mor(g), phi.on_mor(f))))
        v.push_back({"abfunctor_composition", "Phi(g o f) != Phi(g) Phi(f)", {wit(g), wit(f)}});
  return v;
}

// Phi' o psi as a functor on psi's source.
inline AbFunctor pullback(const AbFunctor& phi, const CatFunctor& psi) {
  if (!(*psi.dst() == *phi.base())) throw PreconditionError("pullback: functor target is not the coefficient base");
  std::vector<PresentedAbGroup> o;
  for (ObjId x = 0; x < psi.src()->num_objects(); ++x) o.push_back(phi.on_obj(psi.obj(x)));
  std::vector<AbHom> m;
  for (MorId f = 0; f < psi.src()->num_morphisms(); ++f) m.push_back(phi.on_mor(psi.mor(f)));
  return AbFunctor(psi.src(), std::move(o), std::move(m));
}

class NatTrans {
 public:
  NatTrans() = default;
  NatTrans(AbFunctorPtr from, AbFunctorPtr to, std::vector<AbHom> components)
      : from_(std::move(from)), to_(std::move(to)), comp_(std::move(components)) {
    if (!(*from_->base() == *to_->base())) throw PreconditionError("natural transformation between different bases");
    if (comp_.size() != from_->base()->num_objects()) throw MalformedInput("one component per object required");
    for (ObjId x = 0; x < comp_.size(); ++x)
      if (!(comp_[x].src() == from_->on_obj(x)) || !(comp_[x].dst() == to_->on_obj(x)))
        throw MalformedInput("component groups do not match the functors");
  }

  static NatTrans identity(const AbFunctorPtr& phi) {
    std::vector<AbHom> c;
    for (const auto& g : phi->objects()) c.push_back(AbHom::identity(g));
    return NatTrans(phi, phi, std::move(c));
  }

  const AbFunctorPtr& from_f() const { return from_; }
  const AbFunctorPtr& to_f() const { return to_; }
  const AbHom& component(ObjId x) const { return comp_[x]; }
  const std::vector<AbHom>& components() const { return comp_; }

  bool equals(const NatTrans& o) const {
    if (comp_.size() != o.comp_.size()) return false;
    for (std::size_t x = 0; x < comp_.size(); ++x)
      if (!comp_[x].equals(o.comp_[x])) return false;
    return true;
  }

 private:
  AbFunctorPtr from_, to_;
  std::vector<AbHom> comp_;
};

inline Violations validate_nat_trans(const NatTrans& eta) {
  Violations v;
  const FinCat& c = *eta.from_f()->base();
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    AbHom lhs = compose(eta.to_f()->on_mor(f), eta.component(c.src(f)));
    AbHom rhs = compose(eta.component(c.dst(f)), eta.from_f()->on_mor(f));
    if (!lhs.equals(rhs)) v.push_back({"naturality", "naturality square does not commute", {wit(f)}});
  }
  return v;
}

inline NatTrans scalar_nat_trans(const AbFunctorPtr& phi, const Integer& zeta) {
  std::vector<AbHom> c;
  for (const auto& g : phi->objects()) c.push_back(AbHom::scalar(g, zeta));
  return NatTrans(phi, phi, std::move(c));
}

// Vertical composite: b after a.
inline NatTrans compose(const NatTrans& b, const NatTrans& a) {
  std::vector<AbHom> c;
  for (std::size_t x = 0; x < a.components().size(); ++x) c.push_back(compose(b.component(x), a.component(x)));
  return NatTrans(a.from_f(), b.to_f(), std::move(c));
}

}  // namespace catext
