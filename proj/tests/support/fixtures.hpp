#pragma once

// Small categories, functors, extensions and p-toral data shared by the tests.

#include <memory>
#include <string>
#include <vector>

#include "catext/catext.hpp"

namespace fx {

using namespace catext;

inline CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }
inline AbFunctorPtr share(AbFunctor f) { return std::make_shared<const AbFunctor>(std::move(f)); }

// Product of two categories; morphism (f, g) has id f * |Mor D| + g.
inline FinCat product_category(const FinCat& c, const FinCat& d) {
  const std::size_t nd = d.num_morphisms(), od = d.num_objects();
  std::vector<std::string> objs;
  for (const auto& a : c.objects())
    for (const auto& b : d.objects()) objs.push_back(a + "," + b);
  std::vector<MorphismData> mors;
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (MorId g = 0; g < nd; ++g) mors.push_back({c.src(f) * od + d.src(g), c.dst(f) * od + d.dst(g)});
  std::vector<MorId> ids;
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (ObjId y = 0; y < od; ++y) ids.push_back(c.identity(x) * nd + d.identity(y));
  std::vector<CompEntry> comp;
  for (MorId f1 = 0; f1 < c.num_morphisms(); ++f1)
    for (MorId f0 = 0; f0 < c.num_morphisms(); ++f0) {
      auto f = c.try_compose(f1, f0);
      if (!f) continue;
      for (MorId g1 = 0; g1 < nd; ++g1)
        for (MorId g0 = 0; g0 < nd; ++g0) {
          auto g = d.try_compose(g1, g0);
          if (g) comp.push_back({f1 * nd + g1, f0 * nd + g0, *f * nd + *g});
        }
    }
  return FinCat(std::move(objs), std::move(mors), std::move(ids), comp);
}

inline FinCat bgroup(std::size_t n) { return one_object_cat(FiniteGroup::cyclic(n)); }

// [0 < 1] x B(Z/2): two objects, an involution on each, two arrows 0 -> 1.
inline FinCat arrow_times_bz2() { return product_category(poset_cat(2, {{0, 1}}), bgroup(2)); }

// Constant functor.
inline AbFunctorPtr constant(const FinCat& c, const PresentedAbGroup& g) {
  return share(AbFunctor::constant(share(c), g));
}

// Group G acting on (Z/m)^r through matrices, as a functor on BG.
inline AbFunctorPtr module_functor(const FiniteGroup& g, const Integer& m, const std::vector<IntMatrix>& action) {
  const std::size_t r = action.front().rows();
  PresentedAbGroup a = PresentedAbGroup::from_invariants(IntVec(r, m));
  std::vector<AbHom> homs;
  for (const auto& x : action) homs.emplace_back(a, a, x);
  return share(AbFunctor(share(one_object_cat(g)), {a}, std::move(homs)));
}

inline std::vector<IntMatrix> negation(std::size_t r) {
  IntMatrix n = IntMatrix::identity(r);
  for (std::size_t i = 0; i < r; ++i) n(i, i) = -1;
  return {IntMatrix::identity(r), n};
}

// On [0 < 1] x B(Z/2): Phi(0, *) = Z/2, Phi(1, *) = Z/4, the arrow maps by 2, the involution acts trivially.
inline AbFunctorPtr arrow_functor() {
  CatPtr c = share(arrow_times_bz2());
  PresentedAbGroup z2 = PresentedAbGroup::cyclic(2), z4 = PresentedAbGroup::cyclic(4);
  std::vector<PresentedAbGroup> objs{z2, z4};
  std::vector<AbHom> homs;
  for (MorId m = 0; m < c->num_morphisms(); ++m) {
    const PresentedAbGroup& s = objs[c->src(m)];
    const PresentedAbGroup& t = objs[c->dst(m)];
    homs.emplace_back(s, t, int_matrix({{c->src(m) == c->dst(m) ? 1 : 2}}));
  }
  return share(AbFunctor(c, objs, std::move(homs)));
}

// Group extensions N -> G -> G/N with N cyclic of order m generated by element b.
inline Extension group_ext(const FiniteGroup& g, const Integer& m, std::size_t b) {
  return extension_from_group(g, PresentedAbGroup::cyclic(m), {b}).ext;
}

inline Extension ext_bz4() { return group_ext(FiniteGroup::cyclic(4), 2, 2); }
inline Extension ext_split22() {
  return group_ext(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)), 2, 1);
}
inline Extension ext_z9() { return group_ext(FiniteGroup::cyclic(9), 3, 3); }
inline Extension ext_split33() {
  return group_ext(FiniteGroup::direct_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)), 3, 1);
}
inline Extension ext_z16_z4() { return group_ext(FiniteGroup::cyclic(16), 4, 4); }
// D_4 over Z/2 x Z/2 by its centre.
inline Extension ext_d4() { return group_ext(FiniteGroup::dihedral(4), 2, 2); }
// S_3 = D_3 over Z/2 by the rotations, acting by negation.
inline Extension ext_s3() { return group_ext(FiniteGroup::dihedral(3), 3, 1); }
// Quaternion-free nonabelian: D_4 over Z/2 by the rotations Z/4.
inline Extension ext_d4_rot() { return group_ext(FiniteGroup::dihedral(4), 4, 1); }

// Regular 2-cochains with prescribed values on the non-identity pairs, enumerated exhaustively.
inline std::vector<Cochain> regular_cocycles(const AbFunctorPtr& phi) {
  auto ch = std::make_shared<const ChainList>(*phi->base(), 2);
  const FinCat& c = *phi->base();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < ch->size(); ++i) {
    const auto& m = (*ch)[i].mors;
    if (!c.is_identity(m[0]) && !c.is_identity(m[1])) free.push_back(i);
  }
  std::vector<std::vector<IntVec>> choices;
  for (auto i : free) choices.push_back(phi->on_obj(chain_target(c, (*ch)[i])).elements());
  std::vector<Cochain> out;
  std::vector<std::size_t> idx(free.size(), 0);
  while (true) {
    Cochain z = Cochain::zero(phi, ch);
    for (std::size_t t = 0; t < free.size(); ++t) z.set(free[t], choices[t][idx[t]]);
    if (is_cocycle(z)) out.push_back(z);
    std::size_t t = 0;
    while (t < idx.size() && ++idx[t] == choices[t].size()) idx[t++] = 0;
    if (t == idx.size()) break;
  }
  return out;
}

// p-toral data from small groups.
inline PToralData ptoral_z8() { return ptoral_from_group(FiniteGroup::cyclic(8), 2, 2, {2}); }
inline PToralData ptoral_z16() { return ptoral_from_group(FiniteGroup::cyclic(16), 2, 2, {4}); }
// Precision 3 variants, where 5 is not 1 mod p^k.
inline PToralData ptoral_z32_z8() { return ptoral_from_group(FiniteGroup::cyclic(32), 2, 3, {4}); }
inline PToralData ptoral_z16_z8() { return ptoral_from_group(FiniteGroup::cyclic(16), 2, 3, {2}); }
inline PToralData ptoral_split_trivial(unsigned p, unsigned k, std::size_t n) {
  return split_ptoral(p, k, FiniteGroup::cyclic(n), std::vector<IntMatrix>(n, IntMatrix::identity(1)));
}
inline PToralData ptoral_split_negation(unsigned p, unsigned k) {
  return split_ptoral(p, k, FiniteGroup::cyclic(2), negation(1));
}
inline PToralData ptoral_z9() { return ptoral_from_group(FiniteGroup::cyclic(9), 3, 1, {3}); }
inline PToralData ptoral_z27() { return ptoral_from_group(FiniteGroup::cyclic(27), 3, 2, {3}); }
// D_8 (order 16) over its rotation subgroup Z/8 with T = Z/4, not split.
inline PToralData ptoral_dihedral() { return ptoral_from_group(FiniteGroup::dihedral(8), 2, 2, {2}); }

inline std::vector<std::pair<std::string, PToralData>> all_ptoral() {
  return {{"Z/8", ptoral_z8()},
          {"Z/16 over Z/4", ptoral_z16()},
          {"Z/32 over Z/4, T=Z/8", ptoral_z32_z8()},
          {"Z/16 over Z/2, T=Z/8", ptoral_z16_z8()},
          {"split Z/4 x Z/2", ptoral_split_trivial(2, 2, 2)},
          {"split Z/8 x Z/4", ptoral_split_trivial(2, 3, 4)},
          {"split Z/4 x| Z/2", ptoral_split_negation(2, 2)},
          {"split Z/9 x| Z/2", ptoral_split_negation(3, 2)},
          {"Z/9", ptoral_z9()},
          {"Z/27", ptoral_z27()},
          {"D_16 over Z/4", ptoral_dihedral()}};
}

}  // namespace fx
