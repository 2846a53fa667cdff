#pragma once

// JSON fixtures for the ce and assemblies modules.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcap/assemblies.hpp"
#include "tcap/ce.hpp"
#include "tcap/parse.hpp"

namespace tcap::io {

using json = nlohmann::json;

/// Structurally bad fixture data.
class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FixtureError(std::string("malformed JSON: ") + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FixtureError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline ce::Nat nat(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw FixtureError(std::string(what) + " must be a natural number");
  return j.get<ce::Nat>();
}

inline std::vector<ce::Nat> nats(const json& j, const char* what) {
  if (!j.is_array()) throw FixtureError(std::string(what) + " must be a list");
  std::vector<ce::Nat> out;
  for (const json& x : j) out.push_back(nat(x, what));
  return out;
}

inline ce::Nat key_nat(const std::string& k) {
  if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
    throw FixtureError("table key \"" + k + "\" is not a natural number");
  return std::stoull(k);
}

}  // namespace detail

// ---- ce fixtures ----

/// {"table": {"0": 1, ...} or [v0, v1, ...], "default": n}; a bare list is
/// a padded sequence.
inline ce::Fn1 fn1_from_json(const json& j) {
  ce::Fn1 f;
  if (j.is_array()) return ce::pad_sequence(detail::nats(j, "sequence"));
  const json& t = detail::field(j, "table");
  if (t.is_array()) {
    auto vs = detail::nats(t, "table");
    for (std::size_t i = 0; i < vs.size(); ++i) f.table[i] = vs[i];
  } else if (t.is_object()) {
    for (auto it = t.begin(); it != t.end(); ++it) f.table[detail::key_nat(it.key())] = detail::nat(it.value(), "table value");
  } else {
    throw FixtureError("table must be an object or a list");
  }
  if (j.contains("default")) f.fallback = detail::nat(j.at("default"), "default");
  return f;
}

inline json to_json(const ce::Fn1& f) {
  json t = json::object();
  for (auto [k, v] : f.table) t[std::to_string(k)] = v;
  return {{"table", t}, {"default", f.fallback}};
}

/// A number is a fixed point; a list (or {"first_diff": [...]}) scans.
inline ce::Reflect2 reflect2_from_json(const json& j) {
  using K = ce::Reflect2::Kind;
  if (j.is_number()) return {K::Point, {detail::nat(j, "reflect")}};
  if (j.is_array()) return {K::FirstDiff, detail::nats(j, "reflect")};
  if (j.is_object() && j.contains("point")) return {K::Point, {detail::nat(j.at("point"), "reflect point")}};
  if (j.is_object() && j.contains("first_diff")) return {K::FirstDiff, detail::nats(j.at("first_diff"), "reflect")};
  throw FixtureError("reflect must be a number, a list, {\"point\": n} or {\"first_diff\": [...]}");
}

inline json to_json(const ce::Reflect2& r) {
  if (r.kind == ce::Reflect2::Kind::Point) return {{"point", r.order.at(0)}};
  return {{"first_diff", r.order}};
}

/// {"probe": n} or {"op": "eval" | "sum" | "branch", "probes": [...]}.
inline ce::Program program_from_json(const json& j) {
  ce::Program p;
  if (j.contains("probe")) {
    p.op = ce::Op::Eval;
    p.probes = {detail::nat(j.at("probe"), "probe")};
  } else {
    std::string op = detail::field(j, "op").get<std::string>();
    if (op == "eval") p.op = ce::Op::Eval;
    else if (op == "sum") p.op = ce::Op::Sum;
    else if (op == "branch") p.op = ce::Op::Branch;
    else throw FixtureError("unknown op \"" + op + "\"");
    p.probes = detail::nats(detail::field(j, "probes"), "probes");
  }
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    throw FixtureError(e.what());
  }
  return p;
}

inline json to_json(const ce::Program& p) {
  if (p.op == ce::Op::Eval) return {{"probe", p.probes.at(0)}};
  return {{"op", p.op == ce::Op::Sum ? "sum" : "branch"}, {"probes", p.probes}};
}

inline ce::Fn2 fn2_from_json(const json& j) {
  ce::Fn2 f;
  f.program = program_from_json(j);
  if (j.contains("reflect")) f.reflect = reflect2_from_json(j.at("reflect"));
  if (j.contains("modulus")) f.modulus = detail::nat(j.at("modulus"), "modulus");
  return f;
}

inline json to_json(const ce::Fn2& f) {
  json j = to_json(f.program);
  if (f.reflect) j["reflect"] = to_json(*f.reflect);
  if (f.modulus) j["modulus"] = *f.modulus;
  return j;
}

struct Ce0Fixture {
  ce::Fn2 phi;
  ce::Fn1 f, g;
};

struct Ce1Fixture {
  ce::Fn3 phi;
  ce::Fn2 f, g;
};

/// {"phi": {...}, "reflect": ..., "f": ..., "g": ...}; reflect may also sit
/// inside phi.
inline Ce0Fixture ce0_from_json(const json& j) {
  Ce0Fixture c;
  c.phi = fn2_from_json(detail::field(j, "phi"));
  if (j.contains("reflect")) c.phi.reflect = reflect2_from_json(j.at("reflect"));
  c.f = fn1_from_json(detail::field(j, "f"));
  c.g = fn1_from_json(detail::field(j, "g"));
  return c;
}

inline json to_json(const Ce0Fixture& c) {
  json j = {{"phi", to_json(c.phi.program)}, {"f", to_json(c.f)}, {"g", to_json(c.g)}};
  if (c.phi.reflect) j["reflect"] = to_json(*c.phi.reflect);
  return j;
}

/// {"phi": {"probe1": fn1}, "reflect": [fn1, ...], "f": fn2, "g": fn2,
/// "modulus_f": n, "modulus_g": n}; reflect lists the candidates tried by
/// Phi's reflector.
inline Ce1Fixture ce1_from_json(const json& j) {
  Ce1Fixture c;
  c.phi.probe1 = fn1_from_json(detail::field(detail::field(j, "phi"), "probe1"));
  if (j.contains("reflect")) {
    const json& r = j.at("reflect");
    if (!r.is_array()) throw FixtureError("reflect must be a list of type-1 fixtures");
    for (const json& b : r) c.phi.candidates.push_back(fn1_from_json(b));
  }
  c.f = fn2_from_json(detail::field(j, "f"));
  c.g = fn2_from_json(detail::field(j, "g"));
  if (j.contains("modulus_f")) c.f.modulus = detail::nat(j.at("modulus_f"), "modulus_f");
  if (j.contains("modulus_g")) c.g.modulus = detail::nat(j.at("modulus_g"), "modulus_g");
  return c;
}

inline json to_json(const Ce1Fixture& c) {
  json refl = json::array();
  for (const ce::Fn1& b : c.phi.candidates) refl.push_back(to_json(b));
  ce::Fn2 f = c.f, g = c.g;
  f.modulus.reset();
  g.modulus.reset();
  json j = {{"phi", {{"probe1", to_json(c.phi.probe1)}}}, {"reflect", refl}, {"f", to_json(f)}, {"g", to_json(g)}};
  if (c.f.modulus) j["modulus_f"] = *c.f.modulus;
  if (c.g.modulus) j["modulus_g"] = *c.g.modulus;
  return j;
}

/// A file holds one fixture object, a list of them, or {"fixtures": [...]}.
inline std::vector<json> fixture_list(const json& j) {
  if (j.is_array()) return {j.begin(), j.end()};
  if (j.is_object() && j.contains("fixtures") && j.at("fixtures").is_array())
    return {j.at("fixtures").begin(), j.at("fixtures").end()};
  if (j.is_object()) return {j};
  throw FixtureError("expected a fixture object or a list of fixtures");
}

// ---- assemblies ----

namespace detail {

inline Term term_at(const json& j) {
  if (!j.is_string()) throw FixtureError("terms are given as strings");
  return parse_term(j.get<std::string>());
}

inline Type type_at(const json& j) {
  if (!j.is_string()) throw FixtureError("types are given as strings");
  return parse_type(j.get<std::string>());
}

/// One realizer list per point, from {point: [terms]}; absent points get
/// an empty list.
inline std::vector<std::vector<Term>> realizer_lists(const std::vector<std::string>& points, const json& j,
                                                      bool require_all) {
  if (!j.is_object()) throw FixtureError("realizers must map point names to term lists");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(points.begin(), points.end(), it.key()) == points.end())
      throw FixtureError("realizers name an unknown point \"" + it.key() + "\"");
  std::vector<std::vector<Term>> out;
  for (const std::string& p : points) {
    std::vector<Term> ts;
    if (j.contains(p)) {
      if (!j.at(p).is_array()) throw FixtureError("realizers of " + p + " must be a list");
      for (const json& t : j.at(p)) ts.push_back(term_at(t));
    } else if (require_all) {
      throw FixtureError("point " + p + " has no realizers");
    }
    out.push_back(std::move(ts));
  }
  return out;
}

}  // namespace detail

/// {"carrier": [names], "type": "...", "realizers": {name: [terms]}}.
inline Assembly assembly_from_json(const json& j) {
  std::vector<std::string> points;
  for (const json& p : detail::field(j, "carrier")) points.push_back(p.get<std::string>());
  Type t = detail::type_at(detail::field(j, "type"));
  auto rs = detail::realizer_lists(points, detail::field(j, "realizers"), true);
  return make_assembly(points, t, rs);
}

inline json to_json(const Assembly& a) {
  json rs = json::object();
  for (std::size_t x = 0; x < a.size(); ++x) {
    json ts = json::array();
    for (const Term& t : a.realizers[x]) ts.push_back(t.str());
    rs[a.points[x]] = ts;
  }
  return {{"carrier", a.points}, {"type", a.type.str()}, {"realizers", rs}};
}

/// {"over": name, "type": "...", "realizers": {...}, "support_witness": term}.
inline Predicate predicate_from_json(const json& j, const Assembly& over) {
  Type t = detail::type_at(detail::field(j, "type"));
  auto rs = detail::realizer_lists(over.points, detail::field(j, "realizers"), false);
  Term support = j.contains("support_witness") ? detail::term_at(j.at("support_witness"))
                                              : build::app(build::K(), over.realizers.at(0).at(0));
  return make_predicate(over, t, rs, support);
}

/// Named objects and the checks to run on them:
/// {"assemblies": {name: assembly}, "morphisms": {name: {"from", "to", "map",
/// "tracker"}}, "predicates": {name: predicate}, "checks": [...]}.
struct HyperdoctrineFile {
  std::map<std::string, Assembly> assemblies;
  std::map<std::string, AsmMorphism> morphisms;
  std::map<std::string, Predicate> predicates;
  std::vector<json> checks;

  const Assembly& assembly(const std::string& n) const { return lookup(assemblies, n, "assembly"); }
  const AsmMorphism& morphism(const std::string& n) const { return lookup(morphisms, n, "morphism"); }
  const Predicate& predicate(const std::string& n) const { return lookup(predicates, n, "predicate"); }

 private:
  template <class M>
  static const typename M::mapped_type& lookup(const M& m, const std::string& n, const char* what) {
    auto it = m.find(n);
    if (it == m.end()) throw FixtureError(std::string("unknown ") + what + " \"" + n + "\"");
    return it->second;
  }
};

inline HyperdoctrineFile hyperdoctrine_from_json(const json& j) {
  HyperdoctrineFile h;
  const json& as = detail::field(j, "assemblies");
  for (auto it = as.begin(); it != as.end(); ++it) h.assemblies.emplace(it.key(), assembly_from_json(it.value()));
  if (j.contains("morphisms")) {
    const json& ms = j.at("morphisms");
    for (auto it = ms.begin(); it != ms.end(); ++it) {
      const json& m = it.value();
      const Assembly& from = h.assembly(detail::field(m, "from").get<std::string>());
      const Assembly& to = h.assembly(detail::field(m, "to").get<std::string>());
      const json& mp = detail::field(m, "map");
      std::vector<std::size_t> map;
      for (const std::string& p : from.points) {
        if (!mp.contains(p)) throw FixtureError("morphism " + it.key() + " does not map " + p);
        std::string target = mp.at(p).get<std::string>();
        auto pos = std::find(to.points.begin(), to.points.end(), target);
        if (pos == to.points.end()) throw FixtureError("morphism " + it.key() + " maps to unknown point " + target);
        map.push_back(static_cast<std::size_t>(pos - to.points.begin()));
      }
      h.morphisms.emplace(it.key(), make_morphism(from, to, map, detail::term_at(detail::field(m, "tracker"))));
    }
  }
  if (j.contains("predicates")) {
    const json& ps = j.at("predicates");
    for (auto it = ps.begin(); it != ps.end(); ++it)
      h.predicates.emplace(it.key(), predicate_from_json(it.value(), h.assembly(detail::field(it.value(), "over").get<std::string>())));
  }
  if (j.contains("checks")) h.checks = {j.at("checks").begin(), j.at("checks").end()};
  return h;
}

}  // namespace tcap::io
