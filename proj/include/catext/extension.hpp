#pragma once

// Extensions of a finite category C by a functor Phi: C -> Ab. The total
// category D has the objects of C, a projection D -> C that is the identity on
// objects, and for every object X an injective action <.>: Phi(X) -> Aut_D(X).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catext/cobar.hpp"

namespace catext {

struct Extension {
  CatPtr total;
  CatPtr base;
  AbFunctorPtr coeff;
  CatFunctor proj;
  // delta[X][i] is the endomorphism of X in D attached to the i-th element of Phi(X).
  std::vector<std::vector<MorId>> delta;

  const PresentedAbGroup& group(ObjId x) const { return coeff->on_obj(x); }

  // <g> o d, with g in Phi(dst d).
  MorId act(const IntVec& g, MorId d) const {
    ObjId y = total->dst(d);
    return total->compose(delta[y][group(y).element_index(g)], d);
  }

  MorId bracket(ObjId x, const IntVec& g) const { return delta[x][group(x).element_index(g)]; }
};

using ExtensionPtr = std::shared_ptr<const Extension>;

namespace detail {

inline void append(Violations& out, const Violations& more, const std::string& prefix) {
  for (auto v : more) {
    v.kind = prefix + v.kind;
    out.push_back(std::move(v));
  }
}

}  // namespace detail

inline Violations validate_extension(const Extension& e) {
  Violations v;
  detail::append(v, validate_category(*e.total), "total.");
  detail::append(v, validate_category(*e.base), "base.");
  if (!v.empty()) return v;
  detail::append(v, validate_abfunctor(*e.coeff), "coeff.");
  detail::append(v, validate_functor(e.proj), "proj.");
  if (!v.empty()) return v;
  const FinCat& d = *e.total;
  const FinCat& c = *e.base;
  if (d.num_objects() != c.num_objects()) {
    v.push_back({"object_sets", "total and base have different object sets", {}});
    return v;
  }
  for (ObjId x = 0; x < d.num_objects(); ++x)
    if (e.proj.obj(x) != x) v.push_back({"proj_objects", "projection is not the identity on objects", {wit(x)}});
  if (e.delta.size() != d.num_objects()) {
    v.push_back({"delta_shape", "one action map per object required", {}});
    return v;
  }
  if (!v.empty()) return v;

  for (ObjId x = 0; x < d.num_objects(); ++x) {
    const auto& g = e.group(x);
    auto n = g.order();
    if (!n || *n != e.delta[x].size()) {
      v.push_back({"delta_shape", "action map must list every element of Phi(X)", {wit(x)}});
      continue;
    }
    std::vector<bool> seen(d.num_morphisms(), false);
    for (std::size_t i = 0; i < e.delta[x].size(); ++i) {
      MorId m = e.delta[x][i];
      if (m >= d.num_morphisms() || d.src(m) != x || d.dst(m) != x) {
        v.push_back({"delta_endpoint", "action element is not an endomorphism of X", {wit(x), wit(i)}});
        continue;
      }
      if (seen[m]) v.push_back({"delta_injective", "two elements of Phi(X) act by the same morphism", {wit(x), wit(m)}});
      seen[m] = true;
      if (!c.is_identity(e.proj.mor(m)))
        v.push_back({"delta_kernel", "action element does not project to the identity", {wit(x), wit(i)}});
    }
  }
  if (!v.empty()) return v;

  for (ObjId x = 0; x < d.num_objects(); ++x) {
    const auto& g = e.group(x);
    const std::size_t n = e.delta[x].size();
    if (e.delta[x][0] != d.identity(x))
      v.push_back({"delta_homomorphism", "zero element does not act by the identity", {wit(x)}});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t ab = g.element_index(g.add(g.element(a), g.element(b)));
        if (d.compose(e.delta[x][a], e.delta[x][b]) != e.delta[x][ab])
          v.push_back({"delta_homomorphism", "<g + h> != <g> o <h>", {wit(x), wit(a), wit(b)}});
      }
  }
  if (!v.empty()) return v;

  // Free action with the fibres of the projection as orbits.
  for (ObjId x = 0; x < d.num_objects(); ++x)
    for (ObjId y = 0; y < d.num_objects(); ++y) {
      for (MorId f : c.hom(x, y)) {
        std::size_t fibre = 0;
        for (MorId m : d.hom(x, y))
          if (e.proj.mor(m) == f) ++fibre;
        if (fibre == 0) v.push_back({"proj_surjective", "base morphism has no lift", {wit(f)}});
        else if (fibre != e.delta[y].size())
          v.push_back({"orbit_size", "fibre size differs from |Phi(Y)|", {wit(f), wit(fibre)}});
      }
      for (MorId m : d.hom(x, y)) {
        std::vector<MorId> orbit;
        for (MorId a : e.delta[y]) orbit.push_back(d.compose(a, m));
        std::sort(orbit.begin(), orbit.end());
        if (std::adjacent_find(orbit.begin(), orbit.end()) != orbit.end())
          v.push_back({"free_action", "Phi(Y) does not act freely on the morphism", {wit(m)}});
      }
    }
  if (!v.empty()) return v;

  for (MorId m = 0; m < d.num_morphisms(); ++m) {
    ObjId x = d.src(m), y = d.dst(m);
    const AbHom& phi_m = e.coeff->on_mor(e.proj.mor(m));
    for (std::size_t i = 0; i < e.delta[x].size(); ++i) {
      IntVec g = e.group(x).element(i);
      MorId lhs = d.compose(m, e.delta[x][i]);
      MorId rhs = d.compose(e.bracket(y, phi_m(g)), m);
      if (lhs != rhs) v.push_back({"compatibility", "d o <g> != <Phi([d]) g> o d", {wit(m), wit(i)}});
    }
  }
  return v;
}

struct Section {
  std::vector<MorId> lift;  // indexed by base morphism
};

inline bool is_section(const Extension& e, const Section& s) {
  if (s.lift.size() != e.base->num_morphisms()) return false;
  for (MorId c = 0; c < s.lift.size(); ++c)
    if (s.lift[c] >= e.total->num_morphisms() || e.proj.mor(s.lift[c]) != c) return false;
  return true;
}

inline bool is_regular(const Extension& e, const Section& s) {
  for (ObjId x = 0; x < e.base->num_objects(); ++x)
    if (s.lift[e.base->identity(x)] != e.total->identity(x)) return false;
  return true;
}

// Least-id lift of every base morphism; identities lift to identities.
inline Section canonical_section(const Extension& e) {
  const std::size_t none = static_cast<std::size_t>(-1);
  Section s{std::vector<MorId>(e.base->num_morphisms(), none)};
  for (MorId m = 0; m < e.total->num_morphisms(); ++m) {
    MorId c = e.proj.mor(m);
    if (s.lift[c] == none) s.lift[c] = m;
  }
  for (ObjId x = 0; x < e.base->num_objects(); ++x) s.lift[e.base->identity(x)] = e.total->identity(x);
  for (auto l : s.lift)
    if (l == none) throw PreconditionError("projection is not surjective");
  return s;
}

// Every morphism of D written uniquely as <g> o sigma(c).
struct SectionCoords {
  std::vector<std::size_t> elem;  // index of g in Phi(dst)
  std::vector<MorId> base;        // c
};

inline SectionCoords section_coords(const Extension& e, const Section& s) {
  const std::size_t none = static_cast<std::size_t>(-1);
  const std::size_t nm = e.total->num_morphisms();
  SectionCoords out{std::vector<std::size_t>(nm, none), std::vector<MorId>(nm, none)};
  for (MorId c = 0; c < s.lift.size(); ++c) {
    ObjId y = e.base->dst(c);
    for (std::size_t i = 0; i < e.delta[y].size(); ++i) {
      MorId d = e.total->compose(e.delta[y][i], s.lift[c]);
      if (out.elem[d] != none) throw PreconditionError("action is not free: extension is invalid");
      out.elem[d] = i;
      out.base[d] = c;
    }
  }
  for (MorId d = 0; d < nm; ++d)
    if (out.elem[d] == none) throw PreconditionError("action is not transitive on fibres: extension is invalid");
  return out;
}

// z(c0, c1) with sigma(c1) o sigma(c0) = <z(c0, c1)> o sigma(c1 c0).
inline Cochain extension_cocycle(const Extension& e, const Section& s) {
  if (!is_section(e, s)) throw PreconditionError("not a section of the projection");
  if (!is_regular(e, s)) throw PreconditionError("section is not regular");
  SectionCoords sc = section_coords(e, s);
  auto ch = std::make_shared<const ChainList>(*e.base, 2);
  Cochain z = Cochain::zero(e.coeff, ch);
  for (std::size_t i = 0; i < ch->size(); ++i) {
    MorId c0 = (*ch)[i].mors[0], c1 = (*ch)[i].mors[1];
    MorId d = e.total->compose(s.lift[c1], s.lift[c0]);
    if (sc.base[d] != e.base->compose(c1, c0)) throw PreconditionError("projection is not a functor");
    z.set(i, e.group(e.base->dst(c1)).element(sc.elem[d]));
  }
  return z;
}

inline CohomologyClass extension_class(const Extension& e, const CobarLimits& lim = {}) {
  auto h = std::make_shared<const Cohomology>(e.coeff, 2, lim);
  return class_of(h, extension_cocycle(e, canonical_section(e)));
}

// Total category Phi(Y) x C(X, Y) with (g1, c1) o (g0, c0) = (g1 + Phi(c1) g0 + z(c0, c1), c1 c0).
// Morphism ids run over base morphisms, then over element indices of Phi(dst).
inline Extension build_from_cocycle(const AbFunctorPtr& phi, const Cochain& z) {
  if (z.degree() != 2) throw PreconditionError("build_from_cocycle: expected a 2-cochain");
  if (!is_regular_2cochain(z)) throw PreconditionError("cocycle is not regular; regularize it first");
  if (!is_cocycle(z)) throw PreconditionError("build_from_cocycle: not a cocycle");
  const FinCat& c = *phi->base();
  std::vector<std::size_t> offset(c.num_morphisms() + 1, 0);
  std::vector<std::vector<IntVec>> elems(c.num_objects());
  for (ObjId x = 0; x < c.num_objects(); ++x) elems[x] = phi->on_obj(x).elements();
  for (MorId f = 0; f < c.num_morphisms(); ++f) offset[f + 1] = offset[f] + elems[c.dst(f)].size();
  const std::size_t nm = offset.back();
  std::vector<MorphismData> mors(nm);
  std::vector<MorId> proj(nm);
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (std::size_t i = offset[f]; i < offset[f + 1]; ++i) {
      mors[i] = {c.src(f), c.dst(f)};
      proj[i] = f;
    }
  std::vector<CompEntry> comp;
  comp.reserve(nm * nm / std::max<std::size_t>(1, c.num_objects()));
  for (MorId c0 = 0; c0 < c.num_morphisms(); ++c0)
    for (MorId c1 : c.out_of(c.dst(c0))) {
      const auto& g = phi->on_obj(c.dst(c1));
      const AbHom& a = phi->on_mor(c1);
      const IntVec& zz = z.at({c0, c1});
      MorId c10 = c.compose(c1, c0);
      for (std::size_t i0 = 0; i0 < elems[c.dst(c0)].size(); ++i0) {
        IntVec base = g.add(a(elems[c.dst(c0)][i0]), zz);
        for (std::size_t i1 = 0; i1 < elems[c.dst(c1)].size(); ++i1) {
          std::size_t k = g.element_index(g.add(elems[c.dst(c1)][i1], base));
          comp.push_back({offset[c1] + i1, offset[c0] + i0, offset[c10] + k});
        }
      }
    }
  std::vector<MorId> ident(c.num_objects());
  std::vector<std::vector<MorId>> delta(c.num_objects());
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    ident[x] = offset[c.identity(x)];
    for (std::size_t i = 0; i < elems[x].size(); ++i) delta[x].push_back(offset[c.identity(x)] + i);
  }
  auto total = std::make_shared<const FinCat>(c.objects(), std::move(mors), std::move(ident), comp);
  std::vector<ObjId> objs(c.num_objects());
  std::iota(objs.begin(), objs.end(), 0);
  Extension e{total, phi->base(), phi, CatFunctor(total, phi->base(), std::move(objs), std::move(proj)),
              std::move(delta)};
  return e;
}

struct ExtMorphism {
  ExtensionPtr src, dst;
  CatFunctor functor;       // total -> total'
  CatFunctor base_functor;  // base -> base'
  NatTrans eta;             // Phi -> Phi' o base_functor
};

namespace detail {

// Psi(<g> o sigma(c)) = <eta(g) + u(c)> o sigma'(psi c).
inline CatFunctor assemble_functor(const Extension& e, const Extension& e2, const CatFunctor& psi,
                                   const NatTrans& eta, const Cochain& u) {
  Section s = canonical_section(e), s2 = canonical_section(e2);
  SectionCoords sc = section_coords(e, s);
  std::vector<MorId> mor(e.total->num_morphisms());
  for (MorId d = 0; d < mor.size(); ++d) {
    MorId c = sc.base[d];
    ObjId y = e.base->dst(c);
    ObjId y2 = psi.obj(y);
    const auto& g2 = e2.group(y2);
    IntVec h = g2.add(eta.component(y)(e.group(y).element(sc.elem[d])), u.at({c}));
    mor[d] = e2.total->compose(e2.bracket(y2, h), s2.lift[psi.mor(c)]);
  }
  return CatFunctor(e.total, e2.total, psi.obj_map(), std::move(mor));
}

inline ExtensionPtr share(const Extension& e) { return std::make_shared<const Extension>(e); }

}  // namespace detail

// A morphism of extensions over (psi, eta) exists iff eta_* z - psi^* z' is a coboundary.
inline std::optional<ExtMorphism> morphism_exists(const Extension& e, const Extension& e2, const CatFunctor& psi,
                                                  const NatTrans& eta, const CobarLimits& lim = {}) {
  if (!(*psi.src() == *e.base) || !(*psi.dst() == *e2.base))
    throw PreconditionError("psi must go from the base of E to the base of E'");
  if (!validate_functor(psi).empty()) throw PreconditionError("psi is not a functor");
  AbFunctor pb = pullback(*e2.coeff, psi);
  if (!(*eta.from_f() == *e.coeff) || !(*eta.to_f() == pb))
    throw PreconditionError("eta must go from Phi to Phi' o psi");
  if (!validate_nat_trans(eta).empty()) throw PreconditionError("eta is not natural");
  auto pbp = std::make_shared<const AbFunctor>(pb);
  Cochain z = extension_cocycle(e, canonical_section(e));
  Cochain z2 = extension_cocycle(e2, canonical_section(e2));
  auto ch = z.chain_list();
  std::vector<IntVec> lhs, rhs;
  for (std::size_t i = 0; i < ch->size(); ++i) {
    const auto& m = (*ch)[i].mors;
    lhs.push_back(eta.component(e.base->dst(m[1]))(z.value(i)));
    rhs.push_back(z2.at({psi.mor(m[0]), psi.mor(m[1])}));
  }
  Cochain a(pbp, 2, ch, std::move(lhs)), b(pbp, 2, ch, std::move(rhs));
  auto u = cohomologous(Cochain::zero(pbp, ch), a - b, lim);
  if (!u) return std::nullopt;
  NatTrans eta2(e.coeff, pbp, eta.components());
  return ExtMorphism{detail::share(e), detail::share(e2), detail::assemble_functor(e, e2, psi, eta2, *u), psi, eta2};
}

// An equivalence over the identity of C and Phi, when the classes agree.
inline std::optional<ExtMorphism> are_equivalent(const Extension& e, const Extension& e2, const CobarLimits& lim = {}) {
  if (!(*e.base == *e2.base) || !(*e.coeff == *e2.coeff))
    throw PreconditionError("equivalence needs the same base category and coefficient functor");
  return morphism_exists(e, e2, CatFunctor::identity(e.base), NatTrans::identity(e.coeff), lim);
}

// Functorial section s(c) = <u(c)> o sigma(c) with du = -z_sigma, when the class vanishes.
inline std::optional<CatFunctor> is_split(const Extension& e, const CobarLimits& lim = {}) {
  Section s = canonical_section(e);
  Cochain z = extension_cocycle(e, s);
  auto u = cohomologous(Cochain::zero(e.coeff, z.chain_list()), -z, lim);
  if (!u) return std::nullopt;
  std::vector<MorId> mor(e.base->num_morphisms());
  for (MorId c = 0; c < mor.size(); ++c) mor[c] = e.total->compose(e.bracket(e.base->dst(c), u->at({c})), s.lift[c]);
  std::vector<ObjId> obj(e.base->num_objects());
  std::iota(obj.begin(), obj.end(), 0);
  return CatFunctor(e.base, e.total, std::move(obj), std::move(mor));
}

// Base functor induced by a functor of totals compatible with the projections.
inline CatFunctor induced_base_functor(const Extension& e, const Extension& e2, const CatFunctor& big) {
  Section s = canonical_section(e);
  std::vector<MorId> mor(e.base->num_morphisms());
  for (MorId c = 0; c < mor.size(); ++c) mor[c] = e2.proj.mor(big.mor(s.lift[c]));
  for (MorId d = 0; d < e.total->num_morphisms(); ++d)
    if (e2.proj.mor(big.mor(d)) != mor[e.proj.mor(d)])
      throw PreconditionError("functor does not cover a base functor");
  return CatFunctor(e.base, e2.base, big.obj_map(), std::move(mor));
}

// eta with <eta_X(g)> = Psi(<g>).
inline NatTrans eta_of(const Extension& e, const Extension& e2, const CatFunctor& big, const CatFunctor& psi) {
  auto pbp = std::make_shared<const AbFunctor>(pullback(*e2.coeff, psi));
  std::vector<AbHom> comps;
  for (ObjId x = 0; x < e.base->num_objects(); ++x) {
    const auto& gx = e.group(x);
    ObjId x2 = psi.obj(x);
    const auto& g2 = e2.group(x2);
    std::map<MorId, std::size_t> back;
    for (std::size_t i = 0; i < e2.delta[x2].size(); ++i) back[e2.delta[x2][i]] = i;
    auto image = [&](const IntVec& g) {
      auto it = back.find(big.mor(e.bracket(x, g)));
      if (it == back.end()) throw PreconditionError("functor does not send <g> into the image of the action");
      return g2.element(it->second);
    };
    IntMatrix m(g2.ngens(), gx.ngens());
    for (std::size_t j = 0; j < gx.ngens(); ++j) {
      IntVec ej(gx.ngens());
      ej[j] = 1;
      IntVec col = image(gx.reduce(ej));
      for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
    }
    AbHom h(gx, g2, std::move(m));
    for (std::size_t i = 0; i < e.delta[x].size(); ++i) {
      IntVec g = gx.element(i);
      if (!g2.equal(h(g), image(g))) throw PreconditionError("functor is not additive on the action");
    }
    comps.push_back(std::move(h));
  }
  NatTrans eta(e.coeff, pbp, std::move(comps));
  if (!validate_nat_trans(eta).empty()) throw PreconditionError("induced eta is not natural");
  return eta;
}

inline NatTrans eta_of(const ExtMorphism& m) { return eta_of(*m.src, *m.dst, m.functor, m.base_functor); }

// tau_u(d) = <u(Y)> o d o <u(X)>^{-1}.
inline ExtMorphism inner_automorphism(const Extension& e, const std::vector<IntVec>& u) {
  if (u.size() != e.base->num_objects()) throw PreconditionError("one element per object required");
  std::vector<MorId> mor(e.total->num_morphisms());
  for (MorId d = 0; d < mor.size(); ++d) {
    ObjId x = e.total->src(d), y = e.total->dst(d);
    MorId t = e.total->compose(e.bracket(y, e.group(y).reduce(u[y])), d);
    mor[d] = e.total->compose(t, e.bracket(x, e.group(x).neg(u[x])));
  }
  auto ep = detail::share(e);
  CatFunctor big(e.total, e.total, CatFunctor::identity(e.total).obj_map(), std::move(mor));
  auto id = CatFunctor::identity(e.base);
  return {ep, ep, big, id, eta_of(e, e, big, id)};
}

// alpha_z(d) = <z([d])> o d for a 1-cocycle z.
inline CatFunctor alpha_automorphism(const Extension& e, const Cochain& z) {
  if (z.degree() != 1 || !is_cocycle(z)) throw PreconditionError("alpha needs a 1-cocycle");
  std::vector<MorId> mor(e.total->num_morphisms());
  for (MorId d = 0; d < mor.size(); ++d) mor[d] = e.act(z.at({e.proj.mor(d)}), d);
  return CatFunctor(e.total, e.total, CatFunctor::identity(e.total).obj_map(), std::move(mor));
}

// The 1-cocycle z with F(d) = <z([d])> o d for an automorphism covering the identity with eta = id.
inline Cochain cocycle_of_automorphism(const Extension& e, const CatFunctor& f) {
  auto ch = std::make_shared<const ChainList>(*e.base, 1);
  Section s = canonical_section(e);
  SectionCoords sc = section_coords(e, s);
  Cochain z = Cochain::zero(e.coeff, ch);
  for (std::size_t i = 0; i < ch->size(); ++i) {
    MorId c = (*ch)[i].mors[0];
    MorId img = f.mor(s.lift[c]);
    if (sc.base[img] != c) throw PreconditionError("functor does not cover the identity");
    z.set(i, e.group(e.base->dst(c)).element(sc.elem[img]));
  }
  return z;
}

struct AutModInner {
  std::shared_ptr<const Cohomology> h1;
  std::vector<CatFunctor> generators;  // alpha_z for the canonical generators of H^1
};

inline AutModInner aut_id_id_mod_inner(const Extension& e, const CobarLimits& lim = {}) {
  auto h = std::make_shared<const Cohomology>(e.coeff, 1, lim);
  AutModInner out{h, {}};
  for (const auto& z : h->generators()) out.generators.push_back(alpha_automorphism(e, z));
  return out;
}

// The restriction of Phi to a full subcategory (objects in the given order).
inline AbFunctor restrict_functor(const AbFunctor& phi, const std::vector<ObjId>& objs) {
  std::vector<MorId> old;
  auto sub = std::make_shared<const FinCat>(full_subcategory(*phi.base(), objs, &old));
  std::vector<PresentedAbGroup> o;
  for (ObjId x : objs) o.push_back(phi.on_obj(x));
  std::vector<AbHom> m;
  for (MorId f : old) m.push_back(phi.on_mor(f));
  return AbFunctor(sub, std::move(o), std::move(m));
}

// Restriction of a cochain along the inclusion of a full subcategory.
inline Cochain restrict_cochain(const Cochain& z, const AbFunctorPtr& sub_phi, const std::vector<ObjId>& objs) {
  std::vector<MorId> old;
  full_subcategory(z.base(), objs, &old);
  auto ch = std::make_shared<const ChainList>(*sub_phi->base(), z.degree());
  std::vector<IntVec> v;
  for (const auto& c : ch->all()) {
    if (c.mors.empty()) {
      v.push_back(z.at_object(objs[c.object]));
      continue;
    }
    std::vector<MorId> m;
    for (MorId f : c.mors) m.push_back(old[f]);
    v.push_back(z.at(m));
  }
  return Cochain(sub_phi, z.degree(), ch, std::move(v));
}

inline Extension restrict_extension(const Extension& e, const std::vector<ObjId>& objs) {
  if (objs.empty()) throw PreconditionError("restriction needs at least one object");
  std::vector<MorId> old_total, old_base;
  auto total = std::make_shared<const FinCat>(full_subcategory(*e.total, objs, &old_total));
  auto phi = std::make_shared<const AbFunctor>(restrict_functor(*e.coeff, objs));
  full_subcategory(*e.base, objs, &old_base);
  std::map<MorId, MorId> base_new;
  for (MorId i = 0; i < old_base.size(); ++i) base_new[old_base[i]] = i;
  std::map<MorId, MorId> total_new;
  for (MorId i = 0; i < old_total.size(); ++i) total_new[old_total[i]] = i;
  std::vector<MorId> proj;
  for (MorId f : old_total) proj.push_back(base_new.at(e.proj.mor(f)));
  std::vector<std::vector<MorId>> delta;
  for (ObjId x : objs) {
    std::vector<MorId> dx;
    for (MorId f : e.delta[x]) dx.push_back(total_new.at(f));
    delta.push_back(std::move(dx));
  }
  std::vector<ObjId> ident(objs.size());
  std::iota(ident.begin(), ident.end(), 0);
  return Extension{total, phi->base(), phi, CatFunctor(total, phi->base(), std::move(ident), std::move(proj)),
                   std::move(delta)};
}

// The one-object extension B(N) -> B(G) -> B(G/N) for an abelian normal subgroup N.
// basis[i] is the element of G attached to generator i of a; the induced map a -> N
// must be a bijection. Cosets are numbered by their least element, the identity
// coset first; each coset is represented by its least element (the identity for N).
struct GroupExtensionData {
  Extension ext;
  FiniteGroup quotient;
  std::vector<std::size_t> coset_of;  // element of G -> coset index
  std::vector<std::size_t> rep;       // coset index -> representative in G
};

inline GroupExtensionData extension_from_group(const FiniteGroup& g, const PresentedAbGroup& a,
                                               const std::vector<std::size_t>& basis) {
  if (basis.size() != a.ngens()) throw PreconditionError("one basis element per generator required");
  auto elems = a.elements();
  std::vector<std::size_t> to_g(elems.size());
  std::vector<std::size_t> from_g(g.order(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::size_t x = g.identity();
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Integer c = elems[i][j];
      if (c < 0) throw PreconditionError("unexpected negative coordinate");
      x = g.mul(x, g.power(basis[j], c.convert_to<std::size_t>()));
    }
    if (from_g[x] != static_cast<std::size_t>(-1)) throw PreconditionError("basis map is not injective");
    from_g[x] = i;
    to_g[i] = x;
  }
  std::vector<std::size_t> n_elems(to_g.begin(), to_g.end());
  std::sort(n_elems.begin(), n_elems.end());
  if (!g.is_normal(n_elems)) throw PreconditionError("subgroup is not normal");
  for (auto x : n_elems)
    for (auto y : n_elems)
      if (g.mul(x, y) != g.mul(y, x)) throw PreconditionError("subgroup is not abelian");

  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> coset_of(g.order(), none), rep;
  auto add_coset = [&](std::size_t r) {
    std::size_t q = rep.size();
    rep.push_back(r);
    for (auto n : n_elems) coset_of[g.mul(r, n)] = q;
  };
  add_coset(g.identity());
  for (std::size_t x = 0; x < g.order(); ++x)
    if (coset_of[x] == none) add_coset(x);
  const std::size_t nq = rep.size();
  std::vector<std::vector<std::size_t>> qt(nq, std::vector<std::size_t>(nq));
  for (std::size_t a1 = 0; a1 < nq; ++a1)
    for (std::size_t b1 = 0; b1 < nq; ++b1) qt[a1][b1] = coset_of[g.mul(rep[a1], rep[b1])];
  FiniteGroup quot(std::move(qt));

  auto base = std::make_shared<const FinCat>(one_object_cat(quot));
  auto total = std::make_shared<const FinCat>(one_object_cat(g));
  std::vector<AbHom> acts;
  for (std::size_t q = 0; q < nq; ++q) {
    IntMatrix m(a.ngens(), a.ngens());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      std::size_t conj = g.mul(g.mul(rep[q], basis[j]), g.inverse(rep[q]));
      const IntVec& col = elems[from_g[conj]];
      for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
    }
    acts.emplace_back(a, a, std::move(m));
  }
  auto phi = std::make_shared<const AbFunctor>(base, std::vector<PresentedAbGroup>{a}, std::move(acts));
  Extension e{total, base, phi, CatFunctor(total, base, {0}, coset_of), {to_g}};
  return {std::move(e), std::move(quot), std::move(coset_of), std::move(rep)};
}

}  // namespace catext
