#pragma once

// JSON reading and writing for the library's data types.
//
// Integers are JSON numbers when they fit in 64 bits and decimal strings otherwise.
// Objects are referenced by name or by index. Keys that encode vectors, such as
// group elements or (x, y) pairs, are JSON array texts like "[1,0]".

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "catext/adams.hpp"
#include "catext/extension.hpp"
#include "json.hpp"

namespace catext::json_io {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
  throw MalformedInput(where + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::size_t as_index(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) bad(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline json parse_key(const std::string& key, const std::string& where) {
  try {
    return json::parse(key);
  } catch (const json::parse_error&) {
    bad(where, "key \"" + key + "\" is not JSON array text");
  }
}

}  // namespace detail

inline Integer read_integer(const json& j, const std::string& where = "integer") {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) detail::bad(where, "empty integer string");
    for (std::size_t t = i; t < s.size(); ++t)
      if (s[t] < '0' || s[t] > '9') detail::bad(where, "invalid integer string \"" + s + "\"");
    return Integer(s);
  }
  detail::bad(where, "expected an integer");
}

inline json write_integer(const Integer& x) {
  if (fits_int64(x)) return to_int64(x);
  return to_string(x);
}

inline IntVec read_vector(const json& j, const std::string& where = "vector") {
  if (!j.is_array()) detail::bad(where, "expected an array");
  IntVec v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(read_integer(x, where));
  return v;
}

inline json write_vector(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(write_integer(x));
  return a;
}

// Matrices are arrays of rows.
inline IntMatrix read_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where = "matrix") {
  if (!j.is_array() || j.size() != rows) detail::bad(where, "expected " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    IntVec row = read_vector(j[r], where);
    if (row.size() != cols) detail::bad(where, "expected " + std::to_string(cols) + " columns");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

inline IntMatrix read_square_matrix(const json& j, const std::string& where = "matrix") {
  if (!j.is_array()) detail::bad(where, "expected an array of rows");
  return read_matrix(j, j.size(), j.size(), where);
}

inline json write_matrix(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    IntVec row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m(r, c);
    a.push_back(write_vector(row));
  }
  return a;
}

inline std::string vector_key(const IntVec& v) { return write_vector(v).dump(); }

// {"ngens": n, "relations": [[column], ...]}, or the shorthand {"invariants": [...]}.
inline PresentedAbGroup read_group(const json& j, const std::string& where = "group") {
  if (j.is_object() && j.contains("invariants")) return PresentedAbGroup::from_invariants(read_vector(j["invariants"], where));
  const std::size_t n = detail::as_index(detail::field(j, "ngens", where), where + ".ngens");
  std::vector<IntVec> cols;
  if (j.contains("relations")) {
    const json& rel = j["relations"];
    if (!rel.is_array()) detail::bad(where, "relations must be an array of columns");
    for (const auto& c : rel) {
      IntVec v = read_vector(c, where + ".relations");
      if (v.size() != n) detail::bad(where, "relation column must have ngens entries");
      cols.push_back(std::move(v));
    }
  }
  return PresentedAbGroup(n, IntMatrix::from_columns(cols, n));
}

inline json write_group(const PresentedAbGroup& g) {
  json rel = json::array();
  for (std::size_t c = 0; c < g.relations().cols(); ++c) rel.push_back(write_vector(g.relations().column(c)));
  return {{"ngens", g.ngens()}, {"relations", rel}, {"invariants", write_vector(g.invariant_factors())}};
}

// A finite group as a multiplication table with identity at index 0.
inline FiniteGroup read_finite_group(const json& j, const std::string& where = "group table") {
  if (!j.is_array()) detail::bad(where, "expected a multiplication table");
  std::vector<std::vector<std::size_t>> t;
  for (const auto& row : j) {
    if (!row.is_array()) detail::bad(where, "table rows must be arrays");
    std::vector<std::size_t> r;
    for (const auto& x : row) r.push_back(detail::as_index(x, where));
    t.push_back(std::move(r));
  }
  try {
    return FiniteGroup(std::move(t));
  } catch (const PreconditionError& e) {
    detail::bad(where, e.what());
  }
}

inline json write_finite_group(const FiniteGroup& g) { return g.table(); }

namespace detail {

inline ObjId read_object_ref(const json& j, const std::map<std::string, ObjId>& names, std::size_t count,
                             const std::string& where) {
  if (j.is_string()) {
    auto it = names.find(j.get<std::string>());
    if (it == names.end()) bad(where, "unknown object \"" + j.get<std::string>() + "\"");
    return it->second;
  }
  std::size_t i = as_index(j, where);
  if (i >= count) bad(where, "object index out of range");
  return i;
}

inline ObjId object_from_key(const std::string& key, const std::map<std::string, ObjId>& names, std::size_t count,
                             const std::string& where) {
  auto it = names.find(key);
  if (it != names.end()) return it->second;
  bool digits = !key.empty();
  for (char ch : key) digits = digits && ch >= '0' && ch <= '9';
  if (digits && std::stoull(key) < count) return std::stoull(key);
  bad(where, "unknown object \"" + key + "\"");
}

inline std::map<std::string, ObjId> object_names(const FinCat& c) {
  std::map<std::string, ObjId> m;
  for (std::size_t i = 0; i < c.num_objects(); ++i) m.emplace(c.objects()[i], i);
  return m;
}

}  // namespace detail

// {"objects": [...], "morphisms": [{"id", "src", "dst"}], "identity": {obj: id}, "comp": [[g, f, gf], ...]}
// or the shorthand {"group_table": table} for the one-object category of a group.
inline FinCat read_category(const json& j, const std::string& where = "category") {
  if (j.is_object() && j.contains("group_table")) return one_object_cat(read_finite_group(j["group_table"], where));
  const json& objs = detail::field(j, "objects", where);
  if (!objs.is_array()) detail::bad(where, "objects must be an array");
  std::vector<std::string> names;
  std::map<std::string, ObjId> index;
  for (const auto& o : objs) {
    std::string name = o.is_string() ? o.get<std::string>() : o.dump();
    if (!index.emplace(name, names.size()).second) detail::bad(where, "duplicate object \"" + name + "\"");
    names.push_back(name);
  }
  const json& mors = detail::field(j, "morphisms", where);
  if (!mors.is_array()) detail::bad(where, "morphisms must be an array");
  std::vector<MorphismData> md(mors.size());
  std::vector<bool> seen(mors.size(), false);
  for (const auto& m : mors) {
    std::size_t id = detail::as_index(detail::field(m, "id", where + ".morphisms"), where + ".morphisms.id");
    if (id >= md.size() || seen[id]) detail::bad(where, "morphism ids must be 0..n-1 without repeats");
    seen[id] = true;
    md[id].src = detail::read_object_ref(detail::field(m, "src", where), index, names.size(), where + ".src");
    md[id].dst = detail::read_object_ref(detail::field(m, "dst", where), index, names.size(), where + ".dst");
  }
  const json& ids = detail::field(j, "identity", where);
  std::vector<MorId> identity(names.size(), 0);
  std::vector<bool> have(names.size(), false);
  if (ids.is_object()) {
    for (auto it = ids.begin(); it != ids.end(); ++it) {
      ObjId x = detail::object_from_key(it.key(), index, names.size(), where + ".identity");
      identity[x] = detail::as_index(it.value(), where + ".identity");
      have[x] = true;
    }
  } else if (ids.is_array() && ids.size() == names.size()) {
    for (std::size_t x = 0; x < names.size(); ++x) {
      identity[x] = detail::as_index(ids[x], where + ".identity");
      have[x] = true;
    }
  } else {
    detail::bad(where, "identity must map every object to a morphism id");
  }
  for (std::size_t x = 0; x < names.size(); ++x)
    if (!have[x]) detail::bad(where, "no identity given for object \"" + names[x] + "\"");
  std::vector<CompEntry> comp;
  if (j.contains("comp")) {
    for (const auto& e : j["comp"]) {
      if (!e.is_array() || e.size() != 3) detail::bad(where, "comp entries are [g, f, gf]");
      comp.push_back({detail::as_index(e[0], where + ".comp"), detail::as_index(e[1], where + ".comp"),
                      detail::as_index(e[2], where + ".comp")});
    }
  }
  return FinCat(std::move(names), std::move(md), std::move(identity), comp);
}

inline json write_category(const FinCat& c) {
  json mors = json::array();
  for (std::size_t m = 0; m < c.num_morphisms(); ++m)
    mors.push_back({{"id", m}, {"src", c.objects()[c.src(m)]}, {"dst", c.objects()[c.dst(m)]}});
  json ids = json::object();
  for (std::size_t x = 0; x < c.num_objects(); ++x) ids[c.objects()[x]] = c.identity(x);
  json comp = json::array();
  for (const auto& e : c.comp_entries()) comp.push_back({e.g, e.f, e.gf});
  return {{"objects", c.objects()}, {"morphisms", mors}, {"identity", ids}, {"comp", comp}};
}

// {"category": cat, "objects": {obj: group}, "morphisms": {id: matrix}}; identity
// morphisms default to identity matrices. {"category": cat, "constant": group} is
// the constant functor.
inline AbFunctor read_abfunctor(const json& j, const std::string& where = "functor") {
  auto cat = std::make_shared<const FinCat>(read_category(detail::field(j, "category", where), where + ".category"));
  if (j.contains("constant")) return AbFunctor::constant(cat, read_group(j["constant"], where + ".constant"));
  const auto names = detail::object_names(*cat);
  const json& objs = detail::field(j, "objects", where);
  std::vector<std::optional<PresentedAbGroup>> groups(cat->num_objects());
  for (auto it = objs.begin(); it != objs.end(); ++it) {
    ObjId x = detail::object_from_key(it.key(), names, cat->num_objects(), where + ".objects");
    groups[x] = read_group(it.value(), where + ".objects." + it.key());
  }
  std::vector<PresentedAbGroup> on_obj;
  for (std::size_t x = 0; x < groups.size(); ++x) {
    if (!groups[x]) detail::bad(where, "no group given for object \"" + cat->objects()[x] + "\"");
    on_obj.push_back(*groups[x]);
  }
  std::vector<std::optional<IntMatrix>> mats(cat->num_morphisms());
  if (j.contains("morphisms")) {
    const json& ms = j["morphisms"];
    for (auto it = ms.begin(); it != ms.end(); ++it) {
      std::size_t id = 0;
      try {
        id = std::stoull(it.key());
      } catch (const std::exception&) {
        detail::bad(where, "morphism key \"" + it.key() + "\" is not an id");
      }
      if (id >= mats.size()) detail::bad(where, "morphism id out of range");
      mats[id] = read_matrix(it.value(), on_obj[cat->dst(id)].ngens(), on_obj[cat->src(id)].ngens(),
                             where + ".morphisms." + it.key());
    }
  }
  std::vector<AbHom> on_mor;
  for (std::size_t m = 0; m < mats.size(); ++m) {
    if (!mats[m]) {
      if (!cat->is_identity(m)) detail::bad(where, "no matrix given for morphism " + std::to_string(m));
      mats[m] = IntMatrix::identity(on_obj[cat->src(m)].ngens());
    }
    try {
      on_mor.emplace_back(on_obj[cat->src(m)], on_obj[cat->dst(m)], *mats[m]);
    } catch (const PreconditionError& e) {
      detail::bad(where, "morphism " + std::to_string(m) + ": " + e.what());
    }
  }
  return AbFunctor(cat, std::move(on_obj), std::move(on_mor));
}

inline json write_abfunctor(const AbFunctor& phi) {
  const FinCat& c = *phi.base();
  json objs = json::object();
  for (std::size_t x = 0; x < c.num_objects(); ++x) objs[c.objects()[x]] = write_group(phi.on_obj(x));
  json mors = json::object();
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) mors[std::to_string(m)] = write_matrix(phi.on_mor(m).matrix());
  return {{"category", write_category(c)}, {"objects", objs}, {"morphisms", mors}};
}

// {"degree": n, "values": [{"chain": [ids], "value": [...]}]}; a 0-chain is
// written {"object": obj, "value": [...]}. Chains not listed are zero.
inline Cochain read_cochain(const AbFunctorPtr& phi, const json& j, const std::string& where = "cochain") {
  const std::size_t n = detail::as_index(detail::field(j, "degree", where), where + ".degree");
  const FinCat& c = *phi->base();
  const auto names = detail::object_names(c);
  auto chains = std::make_shared<const ChainList>(c, n);
  Cochain z = Cochain::zero(phi, chains);
  if (!j.contains("values")) return z;
  for (const auto& e : j["values"]) {
    std::size_t idx = 0;
    if (n == 0) {
      ObjId x = detail::read_object_ref(detail::field(e, "object", where), names, c.num_objects(), where + ".object");
      idx = chains->index_of(Chain{{}, x});
    } else {
      const json& ch = detail::field(e, "chain", where);
      if (!ch.is_array() || ch.size() != n) detail::bad(where, "chain must list " + std::to_string(n) + " morphisms");
      std::vector<MorId> mors;
      for (const auto& m : ch) {
        std::size_t id = detail::as_index(m, where + ".chain");
        if (id >= c.num_morphisms()) detail::bad(where, "morphism id out of range");
        mors.push_back(id);
      }
      for (std::size_t i = 0; i + 1 < n; ++i)
        if (c.dst(mors[i]) != c.src(mors[i + 1])) detail::bad(where, "chain morphisms are not composable");
      idx = chains->index_of_mors(mors);
    }
    IntVec v = read_vector(detail::field(e, "value", where), where + ".value");
    if (v.size() != z.group_at(idx).ngens()) detail::bad(where, "value has the wrong number of coordinates");
    z.set(idx, v);
  }
  return z;
}

inline json write_cochain(const Cochain& z) {
  json vals = json::array();
  const FinCat& c = z.base();
  for (std::size_t i = 0; i < z.chain_list()->size(); ++i) {
    const Chain& ch = (*z.chain_list())[i];
    json e;
    if (z.degree() == 0) e["object"] = c.objects()[ch.object];
    else e["chain"] = ch.mors;
    e["value"] = write_vector(z.value(i));
    vals.push_back(e);
  }
  return {{"degree", z.degree()}, {"values", vals}};
}

inline json write_functor_maps(const CatFunctor& f) { return {{"objects", f.obj_map()}, {"morphisms", f.mor_map()}}; }

// {"total": cat, "base": cat, "phi": functor over base, "proj": {id: id} or [ids],
//  "delta": {obj: {"[g]": id}}}. The functor's own category field may be omitted.
inline Extension read_extension(const json& j, const std::string& where = "extension") {
  Extension e;
  e.total = std::make_shared<const FinCat>(read_category(detail::field(j, "total", where), where + ".total"));
  e.base = std::make_shared<const FinCat>(read_category(detail::field(j, "base", where), where + ".base"));
  json phi = detail::field(j, "phi", where);
  if (!phi.contains("category")) phi["category"] = write_category(*e.base);
  AbFunctor f = read_abfunctor(phi, where + ".phi");
  if (!(*f.base() == *e.base)) detail::bad(where, "phi is not over the base category");
  e.coeff = std::make_shared<const AbFunctor>(AbFunctor(e.base, f.objects(), f.morphisms()));
  const FinCat& t = *e.total;
  const FinCat& b = *e.base;
  std::vector<MorId> mor_map(t.num_morphisms(), 0);
  std::vector<bool> have(t.num_morphisms(), false);
  const json& proj = detail::field(j, "proj", where);
  auto set_proj = [&](std::size_t m, const json& v) {
    if (m >= mor_map.size()) detail::bad(where, "proj: morphism id out of range");
    std::size_t target = detail::as_index(v, where + ".proj");
    if (target >= b.num_morphisms()) detail::bad(where, "proj: base morphism id out of range");
    mor_map[m] = target;
    have[m] = true;
  };
  if (proj.is_array()) {
    for (std::size_t m = 0; m < proj.size(); ++m) set_proj(m, proj[m]);
  } else if (proj.is_object()) {
    for (auto it = proj.begin(); it != proj.end(); ++it) {
      std::size_t m = 0;
      try {
        m = std::stoull(it.key());
      } catch (const std::exception&) {
        detail::bad(where, "proj key \"" + it.key() + "\" is not an id");
      }
      set_proj(m, it.value());
    }
  } else {
    detail::bad(where, "proj must be an array or an object");
  }
  for (std::size_t m = 0; m < have.size(); ++m)
    if (!have[m]) detail::bad(where, "proj does not map morphism " + std::to_string(m));
  // Objects of the total category map to the base object of the same name, else by index.
  const auto bnames = detail::object_names(b);
  std::vector<ObjId> obj_map(t.num_objects());
  for (std::size_t x = 0; x < t.num_objects(); ++x) {
    auto it = bnames.find(t.objects()[x]);
    obj_map[x] = it != bnames.end() ? it->second : x;
    if (obj_map[x] >= b.num_objects()) detail::bad(where, "total object has no base counterpart");
  }
  e.proj = CatFunctor(e.total, e.base, std::move(obj_map), std::move(mor_map));
  const auto tnames = detail::object_names(t);
  const json& delta = detail::field(j, "delta", where);
  e.delta.assign(t.num_objects(), {});
  for (std::size_t x = 0; x < t.num_objects(); ++x) {
    const PresentedAbGroup& g = e.coeff->on_obj(e.proj.obj(x));
    auto order = g.order();
    if (!order || *order > 4096) detail::bad(where, "coefficient groups must be finite and small");
    e.delta[x].assign(order->convert_to<std::size_t>(), 0);
  }
  std::vector<std::vector<bool>> set(t.num_objects());
  for (std::size_t x = 0; x < t.num_objects(); ++x) set[x].assign(e.delta[x].size(), false);
  for (auto it = delta.begin(); it != delta.end(); ++it) {
    ObjId x = detail::object_from_key(it.key(), tnames, t.num_objects(), where + ".delta");
    const PresentedAbGroup& g = e.coeff->on_obj(e.proj.obj(x));
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
      IntVec v = read_vector(detail::parse_key(jt.key(), where + ".delta"), where + ".delta");
      if (v.size() != g.ngens()) detail::bad(where, "delta key has the wrong number of coordinates");
      std::size_t idx = g.element_index(v);
      std::size_t id = detail::as_index(jt.value(), where + ".delta");
      if (id >= t.num_morphisms()) detail::bad(where, "delta: morphism id out of range");
      e.delta[x][idx] = id;
      set[x][idx] = true;
    }
  }
  for (std::size_t x = 0; x < t.num_objects(); ++x)
    for (std::size_t i = 0; i < set[x].size(); ++i)
      if (!set[x][i]) detail::bad(where, "delta is not given on every element at object \"" + t.objects()[x] + "\"");
  return e;
}

inline json write_extension(const Extension& e) {
  json phi = write_abfunctor(*e.coeff);
  phi.erase("category");
  json delta = json::object();
  for (std::size_t x = 0; x < e.delta.size(); ++x) {
    json m = json::object();
    const PresentedAbGroup& g = e.group(e.proj.obj(x));
    for (std::size_t i = 0; i < e.delta[x].size(); ++i) m[vector_key(g.element(i))] = e.delta[x][i];
    delta[e.total->objects()[x]] = m;
  }
  return {{"total", write_category(*e.total)},
          {"base", write_category(*e.base)},
          {"phi", phi},
          {"proj", e.proj.mor_map()},
          {"delta", delta}};
}

// {"p", "k", "rank", "pi": table, "action": {x: matrix} or [matrices], "coc": {"[x,y]": vector}};
// missing action entries are identities and missing cocycle entries are zero.
inline PToralData read_ptoral(const json& j, const std::string& where = "ptoral") {
  const std::size_t p = detail::as_index(detail::field(j, "p", where), where + ".p");
  const std::size_t k = detail::as_index(detail::field(j, "k", where), where + ".k");
  const std::size_t r = detail::as_index(detail::field(j, "rank", where), where + ".rank");
  if (!is_prime(p) || k < 1) detail::bad(where, "p must be prime and k >= 1");
  FiniteGroup pi = read_finite_group(detail::field(j, "pi", where), where + ".pi");
  std::vector<IntMatrix> action(pi.order(), IntMatrix::identity(r));
  if (j.contains("action")) {
    const json& a = j["action"];
    if (a.is_array()) {
      if (a.size() != pi.order()) detail::bad(where, "action must list one matrix per element");
      for (std::size_t x = 0; x < a.size(); ++x) action[x] = read_matrix(a[x], r, r, where + ".action");
    } else {
      for (auto it = a.begin(); it != a.end(); ++it) {
        std::size_t x = std::stoull(it.key());
        if (x >= pi.order()) detail::bad(where, "action: element out of range");
        action[x] = read_matrix(it.value(), r, r, where + ".action");
      }
    }
  }
  PToralData s = split_ptoral(static_cast<unsigned>(p), static_cast<unsigned>(k), pi, action);
  s.r = r;
  s.coc.assign(pi.order(), std::vector<IntVec>(pi.order(), IntVec(r)));
  if (j.contains("coc")) {
    for (auto it = j["coc"].begin(); it != j["coc"].end(); ++it) {
      IntVec xy = read_vector(detail::parse_key(it.key(), where + ".coc"), where + ".coc");
      if (xy.size() != 2 || xy[0] < 0 || xy[1] < 0 || xy[0] >= pi.order() || xy[1] >= pi.order())
        detail::bad(where, "coc keys are [x,y] with x, y elements of pi");
      IntVec v = read_vector(it.value(), where + ".coc");
      if (v.size() != r) detail::bad(where, "coc values must have rank entries");
      s.coc[xy[0].convert_to<std::size_t>()][xy[1].convert_to<std::size_t>()] =
          lattice::reduced(v, IntVec(r, s.modulus()));
    }
  }
  return s;
}

inline json write_ptoral(const PToralData& s) {
  json action = json::array();
  for (const auto& m : s.action) action.push_back(write_matrix(m));
  json coc = json::object();
  for (std::size_t x = 0; x < s.pi.order(); ++x)
    for (std::size_t y = 0; y < s.pi.order(); ++y)
      if (!is_zero_vec(s.coc[x][y])) coc[json::array({x, y}).dump()] = write_vector(s.coc[x][y]);
  return {{"p", s.p},   {"k", s.k},           {"rank", s.r},
          {"pi", s.pi.table()}, {"action", action}, {"coc", coc}};
}

inline json write_violations(const Violations& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back({{"kind", x.kind}, {"message", x.message}, {"witness", x.witness}});
  return a;
}

inline json write_adams(const AdamsAut& a) {
  json d = json::array();
  for (const auto& v : a.d) d.push_back(write_vector(v));
  return {{"zeta", write_integer(a.zeta)}, {"d", d}};
}

}  // namespace catext::json_io
