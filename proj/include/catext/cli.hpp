#pragma once

// Batch front-end: one JSON request on stdin (or --input), one report on stdout.
// Exit codes: 0 ok, 1 violations, 2 malformed input, 3 resource refusal.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catext/json_io.hpp"
#include "catext/psu.hpp"

namespace catext::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kViolations = 1, kMalformed = 2, kRefused = 3 };

struct Options {
  std::string command;
  std::string input;
  std::optional<std::size_t> degree;
  std::optional<unsigned> precision;
  bool pretty = false;
  std::optional<std::uint64_t> max_cells;
  unsigned p = 3;
  unsigned K = 2;
  std::optional<std::string> zeta;
};

struct Outcome {
  std::string status = "ok";
  json result = json::object();
  json witnesses = json::array();
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"validate", "cohom",          "ext-class", "ext-build",
                                          "ext-equiv", "ext-split",     "ext-aut",   "ext-scalar-aut",
                                          "adams",    "group-cohom",    "weyl-h1",   "psu-demo"};
  return c;
}

inline std::string usage() {
  std::string s = "usage: catext <command> [--input FILE] [--degree N] [--precision K] [--max-cells N] [--pretty]\n"
                  "                        [--p P] [--K K] [--zeta Z]\n"
                  "commands:";
  for (const auto& c : commands()) s += " " + c;
  s += "\nThe request is read as JSON from stdin unless --input is given. "
       "CATEXT_MAX_CELLS sets the default cell limit.\n";
  return s;
}

namespace detail {

using json_io::read_integer;
using json_io::write_integer;
using json_io::write_vector;

inline const json& need(const json& req, const char* key) {
  if (!req.is_object() || !req.contains(key))
    throw MalformedInput(std::string("request is missing \"") + key + "\"");
  return req.at(key);
}

inline AbFunctorPtr functor_of(const json& req) {
  return std::make_shared<const AbFunctor>(json_io::read_abfunctor(need(req, "functor"), "functor"));
}

inline json class_json(const CohomologyClass& c) {
  return {{"h2_invariants", write_vector(c.h->invariants())},
          {"class", write_vector(c.coords)},
          {"order", write_integer(c.order())},
          {"zero", c.is_zero()}};
}

// Validates an extension and records violations; returns false if any.
inline bool checked_extension(const Extension& e, Outcome& out) {
  Violations v = validate_extension(e);
  if (v.empty()) return true;
  out.status = "violations";
  out.witnesses = json_io::write_violations(v);
  out.result["valid"] = false;
  return false;
}

inline Outcome cmd_validate(const json& req, const Options&) {
  Outcome out;
  Violations all;
  auto add = [&](const std::string& what, const Violations& v) {
    out.result[what] = {{"valid", v.empty()}, {"violations", v.size()}};
    for (auto x : v) {
      x.kind = what + "." + x.kind;
      all.push_back(x);
    }
  };
  bool any = false;
  if (req.contains("category")) {
    add("category", validate_category(json_io::read_category(req["category"])));
    any = true;
  }
  if (req.contains("functor")) {
    AbFunctor f = json_io::read_abfunctor(req["functor"], "functor");
    Violations v = validate_category(*f.base());
    if (v.empty()) v = validate_abfunctor(f);
    add("functor", v);
    any = true;
  }
  if (req.contains("extension")) {
    add("extension", validate_extension(json_io::read_extension(req["extension"])));
    any = true;
  }
  if (req.contains("ptoral")) {
    add("ptoral", validate_ptoral(json_io::read_ptoral(req["ptoral"])));
    any = true;
  }
  if (!any) throw MalformedInput("validate expects category, functor, extension or ptoral");
  out.witnesses = json_io::write_violations(all);
  if (!all.empty()) out.status = "violations";
  return out;
}

inline Outcome cmd_cohom(const json& req, const Options& o, const CobarLimits& lim) {
  Outcome out;
  AbFunctorPtr phi = functor_of(req);
  Violations v = validate_category(*phi->base());
  if (v.empty()) v = validate_abfunctor(*phi);
  if (!v.empty()) {
    out.status = "violations";
    out.witnesses = json_io::write_violations(v);
    return out;
  }
  const std::size_t top = o.degree.value_or(2);
  json hs = json::array();
  for (std::size_t n = 0; n <= top; ++n) {
    Cohomology h(phi, n, lim);
    auto ord = h.group().order();
    hs.push_back({{"degree", n},
                  {"invariants", write_vector(h.invariants())},
                  {"order", ord ? write_integer(*ord) : json("infinite")}});
  }
  out.result["cohomology"] = hs;
  return out;
}

inline Outcome cmd_ext_class(const json& req, const CobarLimits& lim) {
  Outcome out;
  Extension e = json_io::read_extension(need(req, "extension"));
  if (!checked_extension(e, out)) return out;
  out.result = class_json(extension_class(e, lim));
  out.result["cocycle"] = json_io::write_cochain(extension_cocycle(e, canonical_section(e)));
  return out;
}

inline Outcome cmd_ext_build(const json& req) {
  Outcome out;
  AbFunctorPtr phi = functor_of(req);
  Violations v = validate_category(*phi->base());
  if (v.empty()) v = validate_abfunctor(*phi);
  if (!v.empty()) {
    out.status = "violations";
    out.witnesses = json_io::write_violations(v);
    return out;
  }
  Cochain z = json_io::read_cochain(phi, need(req, "cocycle"), "cocycle");
  if (z.degree() != 2) throw MalformedInput("cocycle must have degree 2");
  if (!is_cocycle(z)) {
    out.status = "violations";
    Cochain dz = differential(z);
    for (std::size_t i = 0; i < dz.values().size(); ++i)
      if (!dz.group_at(i).is_zero(dz.value(i))) {
        std::vector<std::int64_t> w;
        for (auto m : (*dz.chain_list())[i].mors) w.push_back(wit(m));
        out.witnesses.push_back({{"kind", "not_cocycle"}, {"message", "dz is nonzero on this 3-chain"}, {"witness", w}});
      }
    return out;
  }
  bool regularized = false;
  if (!is_regular_2cochain(z)) {
    z = regularize_2cocycle(z).z;
    regularized = true;
  }
  Extension e = build_from_cocycle(phi, z);
  out.result["regularized"] = regularized;
  out.result["extension"] = json_io::write_extension(e);
  return out;
}

inline Outcome cmd_ext_equiv(const json& req, const CobarLimits& lim) {
  Outcome out;
  Extension a = json_io::read_extension(need(req, "extension"));
  Extension b = json_io::read_extension(need(req, "other"), "other");
  if (!checked_extension(a, out) || !checked_extension(b, out)) return out;
  auto m = are_equivalent(a, b, lim);
  out.result["equivalent"] = m.has_value();
  if (m) out.result["functor"] = json_io::write_functor_maps(m->functor);
  else
    out.witnesses.push_back({{"first", class_json(extension_class(a, lim))}, {"second", class_json(extension_class(b, lim))}});
  return out;
}

inline Outcome cmd_ext_split(const json& req, const CobarLimits& lim) {
  Outcome out;
  Extension e = json_io::read_extension(need(req, "extension"));
  if (!checked_extension(e, out)) return out;
  auto s = is_split(e, lim);
  out.result["verdict"] = s ? "split" : "not split";
  if (s) out.result["section"] = json_io::write_functor_maps(*s);
  else out.witnesses.push_back(class_json(extension_class(e, lim)));
  return out;
}

inline Outcome cmd_ext_aut(const json& req, const CobarLimits& lim) {
  Outcome out;
  Extension e = json_io::read_extension(need(req, "extension"));
  if (!checked_extension(e, out)) return out;
  AutModInner a = aut_id_id_mod_inner(e, lim);
  auto ord = a.h1->group().order();
  out.result["h1_invariants"] = write_vector(a.h1->invariants());
  out.result["count_mod_inner"] = ord ? write_integer(*ord) : json("infinite");
  json gens = json::array();
  for (const auto& g : a.generators) gens.push_back(json_io::write_functor_maps(g));
  out.result["generators"] = gens;
  return out;
}

inline Outcome cmd_ext_scalar_aut(const json& req, const Options& o, const CobarLimits& lim) {
  Outcome out;
  Extension e = json_io::read_extension(need(req, "extension"));
  if (!checked_extension(e, out)) return out;
  Integer zeta = o.zeta ? read_integer(json(*o.zeta), "zeta") : read_integer(need(req, "zeta"), "zeta");
  NatTrans eta = scalar_nat_trans(e.coeff, zeta);
  Violations v = validate_nat_trans(eta);
  if (!v.empty()) {
    out.status = "violations";
    out.witnesses = json_io::write_violations(v);
    return out;
  }
  CohomologyClass c = extension_class(e, lim);
  CohomologyClass zc = scalar_action_on_class(c, zeta);
  auto m = morphism_exists(e, e, CatFunctor::identity(e.base), eta, lim);
  out.result["zeta"] = write_integer(zeta);
  out.result["exists"] = m.has_value();
  out.result["class"] = write_vector(c.coords);
  out.result["zeta_class"] = write_vector(zc.coords);
  out.result["class_fixed"] = c == zc;
  if (m) out.result["functor"] = json_io::write_functor_maps(m->functor);
  return out;
}

inline Outcome cmd_adams(const json& req, const Options& o, const CobarLimits& lim) {
  Outcome out;
  PToralData s = json_io::read_ptoral(need(req, "ptoral"));
  Violations v = validate_ptoral(s);
  if (!v.empty()) {
    out.status = "violations";
    out.witnesses = json_io::write_violations(v);
    return out;
  }
  const unsigned level = o.precision.value_or(s.k);
  if (level > s.k)
    throw PrecisionError("requested precision " + std::to_string(level) + " exceeds the datum's level " +
                         std::to_string(s.k));
  ClassOrder co = extension_class_order(s, lim);
  out.result["class_order"] = write_integer(co.order);
  out.result["m"] = co.m;
  std::vector<UnitModPk> zetas;
  if (o.zeta || req.contains("zeta")) {
    Integer z = o.zeta ? read_integer(json(*o.zeta), "zeta") : read_integer(req["zeta"], "zeta");
    zetas.emplace_back(s.p, s.k, z);
  } else {
    zetas = all_units(s.p, s.k);
  }
  json degrees = json::array();
  for (const auto& z : zetas) {
    auto a = adams_of_degree(s, z, lim);
    json d{{"zeta", write_integer(z.residue())},
           {"realized", a.has_value()},
           {"in_gamma_m", gamma_membership(z, std::min<unsigned>(co.m, s.k))}};
    if (level < s.k) d["residue_at_precision"] = write_integer(z.at_level(level).residue());
    if (a) d["witness"] = json_io::write_adams(*a);
    degrees.push_back(d);
  }
  out.result["degrees"] = degrees;
  auto ad = enumerate_ad(s, 1u << 16, lim);
  out.result["ad_count"] = ad.size();
  out.result["aut_T_count"] = aut_T(s).size();
  return out;
}

inline std::vector<IntMatrix> read_action(const json& req, std::size_t order, std::size_t r) {
  std::vector<IntMatrix> action(order, IntMatrix::identity(r));
  if (!req.contains("action")) return action;
  const json& a = req["action"];
  if (!a.is_array() || a.size() != order) throw MalformedInput("action must list one matrix per group element");
  for (std::size_t x = 0; x < order; ++x) action[x] = json_io::read_matrix(a[x], r, r, "action");
  return action;
}

inline Outcome cmd_group_cohom(const json& req, const Options& o, const CobarLimits& lim) {
  Outcome out;
  FiniteGroup g = json_io::read_finite_group(need(req, "group"));
  const std::size_t top = o.degree.value_or(2);
  json hs = json::array();
  if (req.contains("torus")) {
    const json& t = req["torus"];
    const unsigned p = static_cast<unsigned>(json_io::detail::as_index(json_io::detail::field(t, "p", "torus"), "p"));
    const unsigned k = static_cast<unsigned>(json_io::detail::as_index(json_io::detail::field(t, "k", "torus"), "k"));
    const std::size_t r = json_io::detail::as_index(json_io::detail::field(t, "rank", "torus"), "rank");
    auto action = read_action(req, g.order(), r);
    for (std::size_t n = 0; n <= top; ++n) {
      TorusCohomology tc = torus_cohomology(g, action, p, k, n, lim);
      hs.push_back({{"degree", n}, {"at_level", write_vector(tc.at_level)}, {"stable", write_vector(tc.stable)}});
    }
  } else {
    PresentedAbGroup m = json_io::read_group(need(req, "module"), "module");
    auto action = read_action(req, g.order(), m.ngens());
    for (std::size_t n = 0; n <= top; ++n)
      hs.push_back({{"degree", n}, {"invariants", write_vector(group_cohomology(g, m, action, n, lim).invariant_factors())}});
  }
  out.result["cohomology"] = hs;
  return out;
}

inline Outcome cmd_weyl_h1(const json& req, const CobarLimits& lim) {
  Outcome out;
  FiniteGroup w = json_io::read_finite_group(need(req, "group"));
  const std::size_t r = json_io::detail::as_index(need(req, "rank"), "rank");
  auto action = read_action(req, w.order(), r);
  std::vector<std::size_t> scalars;
  if (req.contains("scalars"))
    for (const auto& x : req["scalars"]) scalars.push_back(json_io::detail::as_index(x, "scalars"));
  const unsigned p = static_cast<unsigned>(json_io::detail::as_index(need(req, "p"), "p"));
  const unsigned k = static_cast<unsigned>(json_io::detail::as_index(need(req, "k"), "k"));
  WeylH1Report rep = h1_weyl_vanishing(w, action, scalars, p, k, lim);
  out.result = {{"p_odd", rep.p_odd},
                {"scalars_nontrivial", rep.scalars_nontrivial},
                {"condition_i", rep.cond_i},
                {"quotient_h1", write_vector(rep.quotient_h1)},
                {"condition_ii", rep.cond_ii},
                {"pseudo_reflections", rep.pseudo_reflections},
                {"generated_by_pseudo_reflections", rep.generated_by_pseudo_reflections},
                {"h1_at_level", write_vector(rep.h1.at_level)},
                {"h1_stable", write_vector(rep.h1.stable)},
                {"h1_vanishes", rep.h1_vanishes}};
  return out;
}

inline json diag_json(const MonomialMatrix& m) {
  return {{"perm", m.perm()}, {"exps", m.exps()}, {"modulus", m.modulus()}};
}

inline Outcome cmd_psu_demo(const Options& o, const CobarLimits& lim) {
  Outcome out;
  const unsigned p = o.p, K = o.K;
  MonomialMatrix a = build_A(p, K), b = build_B(p, K);
  json rels = json::array();
  bool all_rel = true;
  for (const auto& r : tensor_relations(p, K, 2)) {
    rels.push_back({{"relation", r.name}, {"i", r.i}, {"j", r.j}, {"holds", r.holds}});
    all_rel = all_rel && r.holds;
  }
  XY xy = build_xy(p, K);
  PSUElement c = commutator(xy.x, xy.y);
  NoSectionReport ns = no_section_check(p, K);
  NoSectionReport nsc = no_section_check(p, K, true);
  ObstructionReport ob = restricted_class_obstruction(p, K, false, lim);
  ObstructionReport obc = restricted_class_obstruction(p, K, true, lim);
  auto ob_json = [](const ObstructionReport& r) {
    return json{{"group_order", r.group_order},
                {"quotient_invariants", write_vector(r.quotient_invariants)},
                {"h2_invariants", write_vector(r.h2_invariants)},
                {"class", write_vector(r.class_coords)},
                {"class_order", write_integer(r.class_order)},
                {"zero", r.is_zero},
                {"extension_valid", r.extension_valid}};
  };
  json gamma = json::array();
  for (std::size_t f = 1; f <= 2; ++f) {
    try {
      QuotientStructure q = gamma_quotient_structure(p, K, f);
      gamma.push_back({{"factors", f},
                       {"group_order", q.group_order},
                       {"quotient_order", q.quotient_order},
                       {"abelian", q.abelian},
                       {"invariants", write_vector(q.invariants)}});
    } catch (const ResourceRefusal& e) {
      gamma.push_back({{"factors", f}, {"refused", e.what()}});
    }
  }
  out.result = {{"p", p},
                {"K", K},
                {"commutator_AB", diag_json(commutator(a, b))},
                {"commutator_AB_is_zeta", commutator(a, b) == MonomialMatrix::scalar(p, p, K, pow_int(p, K - 1).convert_to<std::int64_t>())},
                {"relations", rels},
                {"relations_hold", all_rel},
                {"commutator_XY", diag_json(c.matrix())},
                {"commutator_XY_nontrivial", !c.is_identity()},
                {"no_section", {{"verdict", ns.all_nontrivial && ns.all_equal_reference},
                                {"checked_pairs", ns.checked_pairs},
                                {"all_equal_XY", ns.all_equal_reference},
                                {"all_nontrivial", ns.all_nontrivial}}},
                {"split_control_no_section", nsc.all_nontrivial && nsc.all_equal_reference},
                {"restricted_class", ob_json(ob)},
                {"split_control_class", ob_json(obc)},
                {"gamma_quotient", gamma}};
  return out;
}

inline void flatten_pretty(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_pretty(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_pretty(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << "  " << prefix << std::string(prefix.size() < 40 ? 40 - prefix.size() : 1, ' ') << j.dump() << "\n";
  }
}

}  // namespace detail

inline std::uint64_t default_max_cells() {
  if (const char* env = std::getenv("CATEXT_MAX_CELLS")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return CobarLimits{}.max_cells;
}

// Runs one request. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& os) {
  Options o;
  CLI::App app{"catext"};
  app.add_option("command", o.command)->required();
  app.add_option("--input", o.input);
  app.add_option("--degree", o.degree);
  app.add_option("--precision", o.precision);
  app.add_flag("--pretty", o.pretty);
  app.add_option("--max-cells", o.max_cells);
  app.add_option("--p", o.p);
  app.add_option("--K", o.K);
  app.add_option("--zeta", o.zeta);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    os << json{{"status", "malformed"}, {"error", e.what()}, {"usage", usage()}}.dump() << "\n";
    return kMalformed;
  }
  if (std::find(commands().begin(), commands().end(), o.command) == commands().end()) {
    os << json{{"command", o.command}, {"status", "malformed"}, {"error", "unknown command"}, {"usage", usage()}}.dump()
       << "\n";
    return kMalformed;
  }

  CobarLimits lim;
  lim.max_cells = o.max_cells.value_or(default_max_cells());
  if (o.degree) lim.max_degree = std::max<std::size_t>(lim.max_degree, *o.degree);

  json report{{"command", o.command}};
  int code = kOk;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    json req = json::object();
    if (o.command != "psu-demo") {
      std::string text;
      if (o.input.empty()) {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
      } else {
        std::ifstream f(o.input);
        if (!f) throw MalformedInput("cannot open input file " + o.input);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
      }
      try {
        req = json::parse(text);
      } catch (const json::parse_error& e) {
        report["position"] = e.byte;
        throw MalformedInput(std::string("malformed JSON: ") + e.what());
      }
    }
    Outcome out;
    const std::string& c = o.command;
    if (c == "validate") out = detail::cmd_validate(req, o);
    else if (c == "cohom") out = detail::cmd_cohom(req, o, lim);
    else if (c == "ext-class") out = detail::cmd_ext_class(req, lim);
    else if (c == "ext-build") out = detail::cmd_ext_build(req);
    else if (c == "ext-equiv") out = detail::cmd_ext_equiv(req, lim);
    else if (c == "ext-split") out = detail::cmd_ext_split(req, lim);
    else if (c == "ext-aut") out = detail::cmd_ext_aut(req, lim);
    else if (c == "ext-scalar-aut") out = detail::cmd_ext_scalar_aut(req, o, lim);
    else if (c == "adams") out = detail::cmd_adams(req, o, lim);
    else if (c == "group-cohom") out = detail::cmd_group_cohom(req, o, lim);
    else if (c == "weyl-h1") out = detail::cmd_weyl_h1(req, lim);
    else out = detail::cmd_psu_demo(o, lim);
    report["status"] = out.status;
    report["result"] = out.result;
    report["witnesses"] = out.witnesses;
    code = out.status == "ok" ? kOk : kViolations;
  } catch (const ResourceRefusal& e) {
    report["status"] = "refused";
    report["error"] = e.what();
    report["estimate"] = e.estimate();
    report["limit"] = e.limit();
    code = kRefused;
  } catch (const PrecisionError& e) {
    report["status"] = "refused";
    report["error"] = e.what();
    code = kRefused;
  } catch (const MalformedInput& e) {
    report["status"] = "malformed";
    report["error"] = e.what();
    code = kMalformed;
  } catch (const PreconditionError& e) {
    report["status"] = "malformed";
    report["error"] = e.what();
    code = kMalformed;
  } catch (const json::exception& e) {
    report["status"] = "malformed";
    report["error"] = e.what();
    code = kMalformed;
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = e.what();
    code = kMalformed;
  }
  report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (o.pretty) {
    os << report.dump(2) << "\n\n" << o.command << ": " << report.value("status", "") << "\n";
    if (report.contains("result")) detail::flatten_pretty(report["result"], "", os);
    if (report.contains("error")) os << "  error: " << report["error"].get<std::string>() << "\n";
  } else {
    os << report.dump() << "\n";
  }
  return code;
}

}  // namespace catext::cli
