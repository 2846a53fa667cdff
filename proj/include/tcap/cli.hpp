#pragma once

// Command-line front end: one verb per module pipeline.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcap/apartness.hpp"
#include "tcap/assemblies.hpp"
#include "tcap/ce.hpp"
#include "tcap/fixture_io.hpp"
#include "tcap/parse.hpp"

namespace tcap::cli {

using json = nlohmann::json;

enum Exit : int { Ok = 0, Failed = 1, BadInput = 2 };

namespace detail {

inline json verdict_json(const Verdict& v) {
  json cex = json::array();
  for (const Term& t : v.counterexample) cex.push_back(t.str());
  const char* o = v.is_holds() ? "holds" : v.is_fails() ? "fails" : "unknown";
  return {{"outcome", o}, {"detail", v.detail}, {"counterexample", cex}};
}

inline std::vector<Term> terms(const json& j, const char* key) {
  std::vector<Term> out;
  if (!j.contains(key)) return out;
  for (const json& t : j.at(key)) out.push_back(parse_term(t.get<std::string>()));
  return out;
}

inline std::string name(const json& j, const char* key) { return io::detail::field(j, key).get<std::string>(); }

struct CheckOutcome {
  std::string label;
  Verdict verdict;
  json extra = json::object();
};

inline CheckOutcome run_check(const io::HyperdoctrineFile& h, const json& c) {
  std::string kind = name(c, "kind");
  if (kind == "exists_adjunction") {
    auto r = check_exists_adjunction(h.morphism(name(c, "f")), h.predicate(name(c, "p")), h.predicate(name(c, "q")),
                                     terms(c, "g"), terms(c, "h"));
    return {kind, r.verdict, {{"left_held", r.left_held}, {"right_held", r.right_held}}};
  }
  if (kind == "forall_adjunction") {
    auto r = check_forall_adjunction(h.morphism(name(c, "f")), h.predicate(name(c, "q")), h.predicate(name(c, "r")),
                                     terms(c, "g"), terms(c, "h"), terms(c, "functions"));
    return {kind, r.verdict, {{"left_held", r.left_held}, {"right_held", r.right_held}}};
  }
  if (kind == "beck_chevalley")
    return {kind, check_beck_chevalley(h.morphism(name(c, "f")), h.morphism(name(c, "k")), h.predicate(name(c, "e")))};
  if (kind == "round_trip") return {kind, check_subobject_round_trip(h.predicate(name(c, "p")))};
  if (kind == "leq") {
    Term w = parse_term(name(c, "witness"));
    return {kind, leq_check(h.predicate(name(c, "p")), h.predicate(name(c, "q")), w)};
  }
  if (kind == "tracks") return {kind, check_tracks(h.morphism(name(c, "morphism")))};
  throw io::FixtureError("unknown check kind \"" + kind + "\"");
}

}  // namespace detail

/// Parses argv and runs one verb; returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"typed combinatory algebras, apartness types, assemblies and CE witness extraction", "tcap"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string text, path, samples;
  std::uint32_t seed = 1;
  auto* eval = app.add_subcommand("eval", "normalize a term");
  eval->add_option("term", text)->required();
  auto* type = app.add_subcommand("type", "infer the type of a term");
  type->add_option("term", text)->required();
  auto* translate = app.add_subcommand("translate", "print the plus and minus types");
  translate->add_option("type", text)->required();
  auto* ce0 = app.add_subcommand("ce0", "CE0 witness for each fixture");
  ce0->add_option("--fixtures", path)->required();
  auto* ce1 = app.add_subcommand("ce1", "CE1 witness for each fixture");
  ce1->add_option("--fixtures", path)->required();
  auto* apart = app.add_subcommand("check-apartness", "sampled apartness axioms at a type");
  apart->add_option("type", text)->required();
  apart->add_option("--samples", samples, "JSON list of extra sample terms");
  apart->add_option("--seed", seed, "seed for choosing sampled elements");
  auto* hyper = app.add_subcommand("check-hyperdoctrine", "hyperdoctrine checks on fixture assemblies");
  hyper->add_option("--fixtures", path)->required();
  for (auto* s : {eval, type, translate, ce0, ce1, apart, hyper}) s->add_flag("--json", as_json, "machine-readable output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return BadInput;
  }

  try {
    if (eval->parsed()) {
      Elaborated e = compile(parse_term(text));
      Term nf = normalize_compiled(e.term);
      if (as_json) out << json{{"term", text}, {"type", e.type.str()}, {"normal_form", nf.str()}}.dump() << "\n";
      else out << nf.str() << "\n";
      return Ok;
    }
    if (type->parsed()) {
      Type t = infer_type(parse_term(text));
      if (as_json) out << json{{"term", text}, {"type", t.str()}}.dump() << "\n";
      else out << t.str() << "\n";
      return Ok;
    }
    if (translate->parsed()) {
      TranslatedType tr = translate_type(parse_type(text));
      if (as_json) out << json{{"type", text}, {"plus", tr.plus.str()}, {"minus", tr.minus.str()}}.dump() << "\n";
      else out << tr.plus.str() << "\n" << tr.minus.str() << "\n";
      return Ok;
    }
    if (ce0->parsed()) {
      json results = json::array();
      for (const json& j : io::fixture_list(io::parse_json(io::read_file(path)))) {
        io::Ce0Fixture c = io::ce0_from_json(j);
        ce::Nat x = ce::ce0_witness(c.phi, c.f, c.g);
        if (as_json) results.push_back({{"fixture", io::to_json(c)}, {"witness", x}});
        else out << x << "\n";
      }
      if (as_json) out << json{{"verb", "ce0"}, {"results", results}}.dump() << "\n";
      return Ok;
    }
    if (ce1->parsed()) {
      json results = json::array();
      for (const json& j : io::fixture_list(io::parse_json(io::read_file(path)))) {
        io::Ce1Fixture c = io::ce1_from_json(j);
        ce::Sequence s = ce::ce1_search(c.phi, c.f, c.g);
        if (as_json) {
          results.push_back({{"fixture", io::to_json(c)}, {"sequence", s}, {"witness", io::to_json(ce::pad_sequence(s))}});
        } else {
          out << "<";
          for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << s[i];
          out << ">\n";
        }
      }
      if (as_json) out << json{{"verb", "ce1"}, {"results", results}}.dump() << "\n";
      return Ok;
    }
    if (apart->parsed()) {
      Type s = parse_type(text);
      SamplePool pool;
      if (!samples.empty()) {
        json j = io::parse_json(io::read_file(samples));
        if (!j.is_array()) throw io::FixtureError("samples must be a list");
        for (const json& t : j) {
          if (t.is_string()) pool.add(parse_term(t.get<std::string>()));
          else pool.add(io::detail::term_at(io::detail::field(t, "term")), parse_type(io::detail::field(t, "type").get<std::string>()));
        }
      }
      ApartnessChecker c(pool);
      AxiomReport rep = check_axioms(build_apartness_structure(s), c, 10, seed);
      if (as_json) {
        out << json{{"type", s.str()},           {"ok", rep.ok()},
                    {"elements", rep.elements},   {"reflexivity_cases", rep.reflexivity_cases},
                    {"symmetry_cases", rep.symmetry_cases}, {"transitivity_cases", rep.transitivity_cases},
                    {"domain_cases", rep.domain_cases}, {"failures", rep.failures}}
                   .dump()
            << "\n";
      } else {
        out << s.str() << ": " << (rep.ok() ? "axioms hold" : "axioms fail") << " on " << rep.elements << " elements ("
            << rep.reflexivity_cases << " reflexivity, " << rep.symmetry_cases << " symmetry, "
            << rep.transitivity_cases << " transitivity, " << rep.domain_cases << " domain cases)\n";
        for (const std::string& f : rep.failures) out << "  " << f << "\n";
      }
      return rep.ok() ? Ok : Failed;
    }
    if (hyper->parsed()) {
      io::HyperdoctrineFile h = io::hyperdoctrine_from_json(io::parse_json(io::read_file(path)));
      std::vector<json> checks = h.checks;
      if (checks.empty()) {
        for (const auto& [n, m] : h.morphisms) checks.push_back({{"kind", "tracks"}, {"morphism", n}});
        for (const auto& [n, p] : h.predicates) checks.push_back({{"kind", "round_trip"}, {"p", n}});
      }
      bool failed = false;
      json results = json::array();
      for (const json& c : checks) {
        detail::CheckOutcome r = detail::run_check(h, c);
        failed = failed || r.verdict.is_fails();
        if (as_json) {
          json v = detail::verdict_json(r.verdict);
          v["check"] = c;
          v.update(r.extra);
          results.push_back(v);
        } else {
          out << r.label << ": " << r.verdict.str() << "\n";
        }
      }
      if (as_json) out << json{{"verb", "check-hyperdoctrine"}, {"results", results}}.dump() << "\n";
      return failed ? Failed : Ok;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return BadInput;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return BadInput;
  } catch (const io::FixtureError& e) {
    err << "fixture error: " << e.what() << "\n";
    return BadInput;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return BadInput;
  } catch (const json::exception& e) {
    err << "fixture error: " << e.what() << "\n";
    return BadInput;
  }
  return BadInput;
}

}  // namespace tcap::cli
