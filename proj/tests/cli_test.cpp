#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "support/ce_gen.hpp"
#include "tcap/cli.hpp"

namespace tcap {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(TCAP_FIXTURE_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

TEST(CliTest, EvalProjection) {
  Result r = run({"eval", "fst (pair 2 5)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2\n");
}

TEST(CliTest, TypeOfIdentity) {
  Result r = run({"type", "fn x : N. x"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "N -> N\n");
}

TEST(CliTest, TranslateArrow) {
  Result r = run({"translate", "N -> N"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(N -> N) * (N -> N -> N -> N)\nN * N\n");
}

TEST(CliTest, JsonFlag) {
  Result r = run({"translate", "N * N", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["plus"], "N * N");
  EXPECT_EQ(j["minus"], "N + N");
  Result e = run({"--json", "eval", "succ 4"});
  EXPECT_EQ(nlohmann::json::parse(e.out)["normal_form"], "5");
}

TEST(CliTest, BadInputExitsTwo) {
  EXPECT_EQ(run({"eval", "fst 3"}).code, 2);
  EXPECT_EQ(run({"eval", "(pair 1"}).code, 2);
  EXPECT_EQ(run({"translate", "N ->"}).code, 2);
  EXPECT_EQ(run({"ce0", "--fixtures", "/nonexistent/f.json"}).code, 2);
  EXPECT_EQ(run({"ce0", "--fixtures", temp_file("bad.json", "{\"phi\": 3")}).code, 2);
  EXPECT_EQ(run({"ce0", "--fixtures", temp_file("nophi.json", "{\"f\": [1]}")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliTest, Ce0Example) {
  Result r = run({"ce0", "--fixtures", fixture("ce0_example.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0\n");
}

TEST(CliTest, Ce0Corpus) {
  Result r = run({"ce0", "--fixtures", fixture("ce0_corpus.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0\n0\n3\n0\n");
}

TEST(CliTest, Ce0InvalidReflector) {
  std::string f = temp_file("inv.json", R"({"phi": {"probe": 2}, "reflect": 5, "f": [0, 1, 2], "g": [0, 1, 3]})");
  Result r = run({"ce0", "--fixtures", f});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("invalid reflector"), std::string::npos);
}

TEST(CliTest, Ce1Example) {
  Result r = run({"ce1", "--fixtures", fixture("ce1_example.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "<1>\n");
}

TEST(CliTest, CheckApartness) {
  Result r = run({"check-apartness", "N * N"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("axioms hold"), std::string::npos);
  Result j = run({"check-apartness", "N -> N", "--seed", "5", "--json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(j.out)["ok"].get<bool>());
}

TEST(CliTest, CheckApartnessSamples) {
  std::string s = temp_file("samples.json", R"(["pair 11 12", {"term": "13", "type": "N"}])");
  Result r = run({"check-apartness", "N * N", "--samples", s, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["ok"].get<bool>());
}

TEST(CliTest, Deterministic) {
  auto a = run({"check-apartness", "N -> N", "--seed", "9"});
  auto b = run({"check-apartness", "N -> N", "--seed", "9"});
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, Hyperdoctrine) {
  Result r = run({"check-hyperdoctrine", "--fixtures", fixture("hyperdoctrine.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("fails"), std::string::npos);
}

TEST(CliTest, HyperdoctrineFailureExitsOne) {
  auto h = io::parse_json(io::read_file(fixture("hyperdoctrine.json")));
  h["checks"] = {{{"kind", "leq"}, {"p", "R"}, {"q", "P"}, {"witness", "fn m : N * N. m"}}};
  Result r = run({"check-hyperdoctrine", "--fixtures", temp_file("hfail.json", h.dump())});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("fails"), std::string::npos);
  EXPECT_NE(r.out.find("at "), std::string::npos);
}

TEST(CliTest, HyperdoctrineDefaultChecks) {
  auto h = io::parse_json(io::read_file(fixture("hyperdoctrine.json")));
  h.erase("checks");
  Result r = run({"check-hyperdoctrine", "--fixtures", temp_file("hdef.json", h.dump())});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("tracks: holds"), std::string::npos);
  EXPECT_NE(r.out.find("round_trip: holds"), std::string::npos);
}

TEST(FixtureIoTest, Ce0RoundTrip) {
  testing::CeGen gen(31);
  for (int i = 0; i < 100; ++i) {
    auto c = gen.ce0();
    io::Ce0Fixture fx{c.phi, c.f, c.g};
    io::Ce0Fixture back = io::ce0_from_json(io::to_json(fx));
    EXPECT_EQ(io::to_json(back), io::to_json(fx));
    EXPECT_EQ(ce::ce0_witness(back.phi, back.f, back.g), ce::ce0_witness(c.phi, c.f, c.g));
  }
}

TEST(FixtureIoTest, Ce1RoundTrip) {
  testing::CeGen gen(32);
  for (int i = 0; i < 100; ++i) {
    auto c = gen.ce1();
    io::Ce1Fixture fx{c.phi_alt, c.f, c.g};
    io::Ce1Fixture back = io::ce1_from_json(io::to_json(fx));
    EXPECT_EQ(io::to_json(back), io::to_json(fx));
    EXPECT_EQ(ce::ce1_search(back.phi, back.f, back.g), ce::ce1_search(fx.phi, fx.f, fx.g));
  }
}

TEST(FixtureIoTest, JsonOutputRoundTrips) {
  Result r = run({"--json", "ce0", "--fixtures", fixture("ce0_corpus.json")});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  for (const auto& res : j["results"]) {
    io::Ce0Fixture c = io::ce0_from_json(res["fixture"]);
    EXPECT_EQ(ce::ce0_witness(c.phi, c.f, c.g), res["witness"].get<ce::Nat>());
  }
}

TEST(FixtureIoTest, AssemblyRoundTrip) {
  auto h = io::hyperdoctrine_from_json(io::parse_json(io::read_file(fixture("hyperdoctrine.json"))));
  for (const auto& [n, a] : h.assemblies) EXPECT_TRUE(same_assembly(io::assembly_from_json(io::to_json(a)), a)) << n;
}

TEST(FixtureIoTest, Fn1Forms) {
  auto a = io::fn1_from_json(nlohmann::json::parse(R"({"table": {"3": 4}, "default": 1})"));
  EXPECT_EQ(a(3), 4u);
  EXPECT_EQ(a(0), 1u);
  auto b = io::fn1_from_json(nlohmann::json::parse("[5, 7]"));
  EXPECT_EQ(b(1), 7u);
  EXPECT_EQ(b(2), 0u);
  EXPECT_THROW(io::fn1_from_json(nlohmann::json::parse(R"({"table": {"x": 4}})")), io::FixtureError);
  EXPECT_THROW(io::fn1_from_json(nlohmann::json::parse(R"({"table": [-1]})")), io::FixtureError);
}

TEST(FixtureIoTest, UnknownPointRejected) {
  auto j = nlohmann::json::parse(R"({"carrier": ["a"], "type": "N", "realizers": {"a": ["0"], "b": ["1"]}})");
  EXPECT_THROW(io::assembly_from_json(j), io::FixtureError);
  auto k = nlohmann::json::parse(R"({"carrier": ["a", "b"], "type": "N", "realizers": {"a": ["0"]}})");
  EXPECT_THROW(io::assembly_from_json(k), io::FixtureError);
}

}  // namespace
}  // namespace tcap
