// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/asm_gen.hpp"
#include "support/ce_gen.hpp"
#include "support/oracles.hpp"
#include "support/term_gen.hpp"
#include "tcap/apartness.hpp"
#include "tcap/assemblies.hpp"
#include "tcap/ce.hpp"
#include "tcap/parse.hpp"

namespace {

using namespace tcap;
using namespace tcap::build;
using Clock = std::chrono::steady_clock;

struct Criterion {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are reported.
struct Tally {
  std::size_t cases = 0, failures = 0;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }

  Criterion outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary;
    if (failures) s << "; " << failures << " failed";
    for (const auto& n : notes) s << " [" << n << "]";
    return {failures == 0, s.str()};
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Criterion combinator_laws() {
  auto start = Clock::now();
  Tally t;
  testing::TermGen gen(7);
  const Type N = Type::nat();
  const int tuples = 200;
  for (int i = 0; i < tuples; ++i) {
    Type ta = gen.small_type(), tb = gen.small_type(), tc = gen.small_type();
    Term a = gen.term(ta, 2), b = gen.term(tb, 2), c = gen.term(tc, 2);
    Term f = gen.term(Type::arrow(tc, Type::arrow(tb, ta)), 2);
    Term g = gen.term(Type::arrow(tc, tb), 2);
    Term n = gen.term(N, 2);
    Term step = gen.term(Type::arrow(N, Type::arrow(ta, ta)), 2);
    Term fa = gen.term(Type::arrow(ta, tc), 2), fb = gen.term(Type::arrow(tb, tc), 2);
    Type sum = Type::sum(ta, tb);
    Term inl_ab = Term::constant(Comb::Inl, Type::arrow(ta, sum));
    Term inr_ab = Term::constant(Comb::Inr, Type::arrow(tb, sum));
    Term K_ab = Term::constant(Comb::K, Type::arrow(ta, Type::arrow(tb, ta)));
    std::string at = " tuple " + std::to_string(i);
    t.check(terms_equal(app(K_ab, a, b), a), "k" + at);
    t.check(terms_equal(app(S(), f, g, c), app(f, c, app(g, c))), "s" + at);
    t.check(terms_equal(fst(pair(a, b)), a), "fst" + at);
    t.check(terms_equal(snd(pair(a, b)), b), "snd" + at);
    t.check(terms_equal(app(case_(), fa, fb, app(inl_ab, a)), app(fa, a)), "case inl" + at);
    t.check(terms_equal(app(case_(), fa, fb, app(inr_ab, b)), app(fb, b)), "case inr" + at);
    t.check(terms_equal(app(rec(), a, step, zero()), a), "rec 0" + at);
    t.check(terms_equal(app(rec(), a, step, succ(n)), app(step, n, app(rec(), a, step, n))), "rec succ" + at);
  }
  double secs = seconds_since(start);
  if (secs >= 10) t.check(false, "runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << tuples << " tuples x 8 equations, " << secs << " s";
  return t.outcome(s.str());
}

Criterion decidable_equality() {
  Tally t;
  Term d = build_d();
  for (std::uint64_t a = 0; a <= 16; ++a)
    for (std::uint64_t b = 0; b <= 16; ++b)
      t.check(nat_value(app(d, numeral(a), numeral(b))) == (a == b ? 1u : 0u),
              "d " + std::to_string(a) + " " + std::to_string(b));
  return t.outcome(std::to_string(t.cases) + " pairs");
}

const std::vector<const char*> kAxiomTypes = {"N",          "Unit",        "N * N",         "N + N",
                                              "N + Unit",   "N -> N",      "(N -> N) -> N", "N * N -> N",
                                              "N -> N * N", "(N + N) * N", "N -> N -> N",   "(N -> N) * (N + Unit)"};

Criterion translation() {
  Tally t;
  std::size_t exhaustive = 0;
  for (const Type& s : oracle::all_types(3)) {
    ++exhaustive;
    auto got = translate_type(s);
    auto want = oracle::translate(s);
    t.check(oracle::paren(got.plus) == want.plus && oracle::paren(got.minus) == want.minus, s.str());
  }
  std::vector<Type> d3 = oracle::all_types(3);
  std::mt19937 rng(4);
  auto any = [&] { return d3[rng() % d3.size()]; };
  for (int i = 0; i < 20000; ++i) {
    Type a = any(), b = any();
    Type s = i % 3 == 0 ? Type::prod(a, b) : i % 3 == 1 ? Type::arrow(a, b) : Type::sum(a, b);
    t.check(oracle::paren(translate_type(s).plus) == oracle::translate(s).plus &&
                oracle::paren(translate_type(s).minus) == oracle::translate(s).minus,
            s.str());
  }
  std::size_t configs = 0;
  SamplePool pool;
  ApartnessChecker c(pool);
  for (const char* name : {"N", "N * N", "N + N", "N -> N", "(N -> N) -> N"}) {
    AxiomReport rep = check_axioms(build_apartness_structure(parse_type(name)), c);
    configs += rep.domain_cases + rep.reflexivity_cases + rep.symmetry_cases + rep.transitivity_cases;
    t.check(rep.ok(), std::string(name) + ": " + (rep.failures.empty() ? "" : rep.failures[0]));
    t.check(rep.domain_cases > 0 && rep.reflexivity_cases > 0 && rep.symmetry_cases > 0, std::string(name) + ": vacuous");
  }
  std::ostringstream s;
  s << exhaustive << " types of depth <= 3 exhaustively, 20000 of depth 4 sampled; properties 1-4 on " << configs
    << " configurations";
  return t.outcome(s.str());
}

Criterion hyperdoctrine() {
  Tally t;
  std::size_t ex_left = 0, ex_right = 0, all_left = 0, all_right = 0;
  const std::uint32_t fixtures = 12;
  for (std::uint32_t seed = 0; seed < fixtures; ++seed) {
    testing::AsmGen gen(100 + seed);
    testing::HyperFixture h = gen.hyper();
    std::string at = "fixture " + std::to_string(seed);
    t.check(h.x.size() <= 4 && h.y.size() <= 4 && h.z.size() <= 4, at + ": too large");
    AdjunctionReport ex = check_exists_adjunction(h.f, h.p, h.q, h.ex_g, h.ex_h);
    t.check(ex.verdict.passes(), at + " exists: " + ex.verdict.str());
    AdjunctionReport all = check_forall_adjunction(h.f, h.q, h.r, h.all_g, h.all_h);
    t.check(all.verdict.passes(), at + " forall: " + all.verdict.str());
    Verdict bc = check_beck_chevalley(h.f, h.k, h.e);
    t.check(bc.is_holds(), at + " beck-chevalley: " + bc.str());
    for (const Predicate* p : {&h.p, &h.q, &h.r, &h.e}) {
      Verdict rt = check_subobject_round_trip(*p);
      t.check(rt.is_holds(), at + " round trip: " + rt.str());
    }
    ex_left += ex.left_held;
    ex_right += ex.right_held;
    all_left += all.left_held;
    all_right += all.right_held;
  }
  t.check(ex_left > 5 && ex_right > 5 && all_left > 5 && all_right > 5, "adjunction checks vacuous");
  std::ostringstream s;
  s << fixtures << " fixtures; witnesses exercised: exists " << ex_left << "/" << ex_right << ", forall " << all_left
    << "/" << all_right;
  return t.outcome(s.str());
}

Criterion ip_ac() {
  Tally t;
  std::size_t ip_holds = 0, ip_unknown = 0, ac_holds = 0, ac_unknown = 0, ip_n = 0, ac_n = 0;
  for (std::uint32_t seed = 0; seed < 12; ++seed) {
    testing::AsmGen gen(300 + seed);
    testing::IpFixture f = gen.ip();
    if (!(is_modest(f.y) && is_exhaustive(f.y, f.y_sample))) continue;
    ++ip_n;
    Predicate premise = ip_premise(f.phi, f.psi, f.y, f.functions);
    Verdict v = leq_check(premise, ip_conclusion(f.phi, f.psi, f.y), ip_witness(pred_neg(f.phi), f.psi, f.y));
    t.check(v.passes(), "ip fixture " + std::to_string(seed) + ": " + v.str());
    (v.is_holds() ? ip_holds : ip_unknown) += 1;
  }
  for (std::uint32_t seed = 0; seed < 12; ++seed) {
    testing::AsmGen gen(500 + seed);
    testing::AcFixture f = gen.ac();
    if (!(is_basic(f.instance.x, f.x_sample) && is_basic(f.instance.y, f.y_sample))) continue;
    ++ac_n;
    Verdict v = leq_check(ac_premise(f.instance, f.functions), ac_conclusion(f.instance), ac_witness(f.instance));
    t.check(v.passes(), "ac fixture " + std::to_string(seed) + ": " + v.str());
    (v.is_holds() ? ac_holds : ac_unknown) += 1;
  }
  t.check(ip_n >= 10 && ac_n >= 10, "too few fixtures met the side conditions");
  std::ostringstream s;
  s << "ip " << ip_n << " fixtures (" << ip_holds << " holds, " << ip_unknown << " not refuted on samples), ac " << ac_n
    << " fixtures (" << ac_holds << " holds, " << ac_unknown << " not refuted on samples)";
  return t.outcome(s.str());
}

Criterion ce0() {
  auto start = Clock::now();
  Tally t;
  testing::CeGen gen(2718);
  const int n = 500;
  std::size_t differing = 0;
  for (int i = 0; i < n; ++i) {
    testing::Ce0Case c = gen.ce0();
    std::string at = "fixture " + std::to_string(i);
    ce::Nat x = ce::ce0_witness(c.phi, c.f, c.g);
    bool apart = c.phi(c.f) != c.phi(c.g);
    if (apart) {
      ++differing;
      t.check(c.f(x) != c.g(x), at + ": unsound");
      auto fx = [&](std::uint64_t k) { return c.f(k); };
      auto gx = [&](std::uint64_t k) { return c.g(k); };
      t.check(oracle::least_difference(fx, gx, 1000) == x, at + ": not minimal");
    } else {
      t.check(x == 0, at + ": equal values but nonzero");
    }
    t.check(ce::ce0_witness(c.phi_alt, c.f, c.g) == x, at + ": depends on the reflector");
    t.check(ce::ce0_by_term(c.phi, c.f, c.g) == x, at + ": term disagrees");
  }
  double secs = seconds_since(start);
  if (secs >= 60) t.check(false, "runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << n << " fixtures (" << differing << " with different values), " << secs << " s";
  return t.outcome(s.str());
}

Criterion ce1() {
  auto start = Clock::now();
  Tally t;
  testing::CeGen gen(3141);
  const int n = 200;
  std::size_t differing = 0;
  for (int i = 0; i < n; ++i) {
    testing::Ce1Case c = gen.ce1();
    std::string at = "fixture " + std::to_string(i);
    t.check(*c.f.modulus <= 4 && *c.g.modulus <= 4, at + ": modulus too large");
    ce::Sequence s = ce::ce1_search(c.phi, c.f, c.g);
    t.check(ce::ce1_search(c.phi_alt, c.f, c.g) == s, at + ": depends on the reflector");
    ce::Fn1 out = ce::pad_sequence(s);
    if (c.phi(c.f) == c.phi(c.g)) {
      t.check(s.empty(), at + ": equal values but nonzero");
      continue;
    }
    ++differing;
    t.check(c.f(out) != c.g(out), at + ": unsound");
    auto hit = [&](const std::vector<std::uint64_t>& q) {
      ce::Fn1 p = ce::pad_sequence(q);
      return c.f(p) != c.g(p);
    };
    t.check(oracle::first_code(hit, 1u << 20) == ce::h_encode(s), at + ": not the first hit in h-order");
  }
  double secs = seconds_since(start);
  if (secs >= 60) t.check(false, "runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << n << " fixtures (" << differing << " with different values), " << secs << " s";
  return t.outcome(s.str());
}

Criterion apartness_axioms() {
  Tally t;
  SamplePool pool;
  ApartnessChecker c(pool);
  std::size_t elements = 0;
  for (const char* name : kAxiomTypes) {
    Type s = parse_type(name);
    AxiomReport rep = check_axioms(build_apartness_structure(s), c);
    elements += rep.elements;
    t.check(rep.ok(), std::string(name) + ": " + (rep.failures.empty() ? "" : rep.failures[0]));
    t.check(rep.elements > 0 && rep.reflexivity_cases > 0, std::string(name) + ": vacuous");
  }
  std::ostringstream s;
  s << kAxiomTypes.size() << " types, " << elements << " sampled elements";
  return t.outcome(s.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Criterion()>>> criteria = {
      {"combinator laws", combinator_laws}, {"decidable equality", decidable_equality},
      {"translation", translation},         {"hyperdoctrine", hyperdoctrine},
      {"IP/AC witnesses", ip_ac},           {"CE0", ce0},
      {"CE1", ce1},                         {"apartness axioms", apartness_axioms}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Criterion o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
