#include <gtest/gtest.h>

#include "generators.hpp"
#include "spelect/io.hpp"

using namespace spelect;
using spelect::testing::Rng;

namespace {

void expect_parse_error(const std::string& text, int line, int column) {
  try {
    parse_election(text);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

std::string first_difference(const ElectionDocument& a, const ElectionDocument& b) {
  if (a.candidates != b.candidates) return "candidates";
  if (a.axis != b.axis) return "axis";
  if (a.target != b.target) return "target";
  if (a.rule != b.rule) return "rule";
  if (a.manipulators != b.manipulators) return "manipulators";
  if (a.mode != b.mode) return "mode";
  if (a.kind != b.kind) return "kind";
  if (a.linear != b.linear) return "linear ballots";
  if (a.approval != b.approval) return "approval ballots";
  if (a.pool != b.pool) return "pool";
  if (a.spoilers != b.spoilers) return "spoilers";
  return "";
}

}  // namespace

TEST(Parse, MinimalFile) {
  auto doc = parse_election("CANDIDATES: a, b\nBALLOTS:\na>b\n");
  EXPECT_EQ(doc.candidates, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(doc.linear.size(), 1u);
  EXPECT_EQ(linear_election(doc).ballots.size(), 1u);
}

TEST(Parse, SuccinctMultiplicity) {
  auto doc = parse_election("CANDIDATES: p\nBALLOTS:\n3 x approve{p}\n");
  EXPECT_EQ(doc.mode, InputMode::kSuccinct);
  ASSERT_EQ(doc.approval.size(), 1u);
  EXPECT_EQ(doc.approval[0].multiplicity, 3);
}

TEST(Parse, AllSections) {
  auto doc = parse_election(
      "# comment\n"
      "CANDIDATES: a,p,b\n"
      "AXIS: a, p, b\n"
      "TARGET: p\n"
      "MODE: succinct\n"
      "RULE: score:3,1,0\n"
      "MANIPULATORS: 1, 2\n"
      "BALLOTS:\n"
      "  2 x w=5 a>p>b   # trailing\n"
      "w=3 b>p>a\n");
  EXPECT_EQ(*doc.axis, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(*doc.target, 1);
  EXPECT_EQ(*doc.rule, "score:3,1,0");
  EXPECT_EQ(doc.manipulators, (std::vector<Score>{1, 2}));
  EXPECT_EQ(doc.linear[0], (LinearBallot{{0, 1, 2}, 5, 2}));
  EXPECT_EQ(doc.linear[1], (LinearBallot{{2, 1, 0}, 3, 1}));
}

TEST(Parse, Diagnostics) {
  expect_parse_error("CANDIDATES: a,b\nBALLOTS:\na>c\n", 3, 3);                 // unknown id
  expect_parse_error("CANDIDATES: a,b\nBALLOTS:\na>a\n", 3, 3);                 // duplicate in ranking
  expect_parse_error("CANDIDATES: a,b\nBALLOTS:\nw=1.5 a>b\n", 3, 3);           // non-integer weight
  expect_parse_error("CANDIDATES: a,b\nBALLOTS:\na>b\napprove{a}\n", 4, 1);     // kinds mixed
  expect_parse_error("CANDIDATES: a,b\nBALLOTS:\na\n", 3, 2);                    // incomplete ranking
  expect_parse_error("CANDIDATES: a,a\n", 1, 15);                               // duplicate candidate
  expect_parse_error("BALLOTS:\n", 1, 1);                                       // no candidates
  expect_parse_error("CANDIDATES: a\nVOTES:\n", 2, 1);                          // unknown section
  expect_parse_error("CANDIDATES: a,b\nMODE: standard\nBALLOTS:\n2 x a>b\n", 4, 1);
  expect_parse_error("CANDIDATES: a,b\nAXIS: a\n", 2, 8);
  expect_parse_error("CANDIDATES: a,b\nBALLOTS:\napprove{a,a}\n", 3, 12);
  expect_parse_error("CANDIDATES: a,b\nPOOL:\na>b\n", 3, 1);
  expect_parse_error("CANDIDATES: a,b\nRULE: score:1,x\n", 2, 7);
}

TEST(Parse, ViolatedAxisIsASolverError) {
  auto doc = parse_election("CANDIDATES: l,p,r\nAXIS: l,p,r\nTARGET: p\nBALLOTS:\napprove{l,r}\n");
  try {
    auto inst = voter_control_instance(doc, "ccdv", 1, WinnerModel::kUnique);
    solve_voter_control(inst);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_STREQ(e.what(), kInvalidAxisMessage);
  }
}

TEST(RoundTrip, RandomDocuments) {
  Rng rng(71);
  for (int iter = 0; iter < 500; ++iter) {
    GenOptions g;
    g.seed = static_cast<std::uint64_t>(iter);
    g.candidates = rng.range(1, 7);
    g.voters = rng.range(0, 6);
    g.kind = rng.coin() ? GeneratedKind::kLinear : GeneratedKind::kApproval;
    g.weight_cap = rng.range(1, 5);
    g.pool = rng.range(0, 3);
    g.spoilers = rng.range(0, 3);
    g.manipulators = rng.range(0, 3);
    auto doc = gen_random_sp(g);
    if (rng.coin()) {
      doc.mode = InputMode::kSuccinct;
      for (auto& b : doc.linear) b.multiplicity = rng.range(1, 4);
      for (auto& b : doc.approval) b.multiplicity = rng.range(1, 4);
    }
    if (rng.coin()) doc.axis.reset();
    if (rng.coin()) doc.target.reset();
    if (rng.coin()) doc.rule = "borda";
    const auto text = serialize(doc);
    EXPECT_EQ(first_difference(parse_election(text), doc), "") << text;
    EXPECT_EQ(serialize(parse_election(text)), text);
  }
}

TEST(Generator, SeedStable) {
  GenOptions g{42, 6, 8, GeneratedKind::kLinear, 3, 0, 2, 2};
  EXPECT_EQ(serialize(gen_random_sp(g)), serialize(gen_random_sp(g)));
  g.seed = 43;
  GenOptions h = g;
  h.seed = 42;
  EXPECT_NE(serialize(gen_random_sp(g)), serialize(gen_random_sp(h)));
}

TEST(Generator, ProfilesFitTheAxis) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenOptions g{seed, static_cast<int>(seed % 8) + 1, 6, seed % 2 ? GeneratedKind::kLinear : GeneratedKind::kApproval,
                 2, 3, 0, 0};
    auto doc = gen_random_sp(g);
    const Axis axis{*doc.axis};
    if (g.kind == GeneratedKind::kLinear) {
      EXPECT_TRUE(linear_consistent(linear_election(doc), axis));
    } else {
      auto e = approval_election(doc);
      e.ballots.insert(e.ballots.end(), doc.pool.begin(), doc.pool.end());
      EXPECT_TRUE(approval_consistent(e, axis));
    }
  }
}

TEST(Generator, SingleCandidate) {
  auto lin = gen_random_sp(GenOptions{1, 1, 4, GeneratedKind::kLinear, 1, 0, 0, 0});
  for (const auto& b : lin.linear) EXPECT_EQ(b.ranking, (std::vector<int>{0}));
  auto app = gen_random_sp(GenOptions{1, 1, 20, GeneratedKind::kApproval, 1, 0, 0, 0});
  for (const auto& b : app.approval) EXPECT_TRUE(b.approved.empty() || b.approved == std::vector<int>{0});
}

TEST(Rules, Parse) {
  EXPECT_EQ(parse_rule("plurality", 3), ScoringVector::plurality(3));
  EXPECT_EQ(parse_rule("veto", 3), ScoringVector::veto(3));
  EXPECT_EQ(parse_rule("borda", 4), ScoringVector::borda(4));
  EXPECT_EQ(parse_rule("score:3,2,1,0", 4), ScoringVector({3, 2, 1, 0}));
  EXPECT_THROW(parse_rule("score:3,2", 4), InvalidInput);
  EXPECT_THROW(parse_rule("copeland", 4), InvalidInput);
  EXPECT_THROW(parse_model("both"), InvalidInput);
}

TEST(Results, ReplayReproducesScores) {
  Rng rng(72);
  int replayed = 0;
  for (int iter = 0; iter < 300; ++iter) {
    GenOptions g;
    g.seed = static_cast<std::uint64_t>(iter) + 1000;
    g.candidates = rng.range(2, 5);
    g.voters = rng.range(1, 5);
    const int kind = iter % 3;
    g.kind = kind == 0 ? GeneratedKind::kApproval : GeneratedKind::kLinear;
    g.pool = 3;
    g.spoilers = kind == 1 ? 2 : 0;
    g.manipulators = kind == 2 ? 2 : 0;
    g.weight_cap = kind == 2 ? 3 : 1;
    auto doc = gen_random_sp(g);
    const auto model = rng.coin() ? WinnerModel::kUnique : WinnerModel::kNonUnique;
    std::string json;
    if (kind == 0) {
      const std::string action = rng.coin() ? "ccav" : "ccdv";
      auto inst = voter_control_instance(doc, action, 2, model);
      json = voter_control_result(doc, inst, action, solve_voter_control(inst));
    } else if (kind == 1) {
      const std::string action = rng.coin() ? "ccac" : "dcuac";
      auto inst = candidate_control_instance(doc, action, 1, model);
      json = candidate_control_result(doc, inst, action, solve_candidate_control(inst));
    } else {
      auto inst = manipulation_instance(doc, "borda", model);
      json = manipulation_result(doc, inst, solve_manipulation(inst));
    }
    EXPECT_TRUE(replay_result(doc, json)) << json;
    replayed += json.find("\"decision\": \"yes\"") != std::string::npos;
    // Tampering with a recorded score must be caught.
    auto at = json.find("\"scores_after\": {");
    if (at != std::string::npos) {
      auto colon = json.find(": ", json.find('"', at + 17));
      auto tampered = json;
      tampered.insert(colon + 2, "9");
      EXPECT_FALSE(replay_result(doc, tampered));
    }
  }
  EXPECT_GT(replayed, 50);
}
