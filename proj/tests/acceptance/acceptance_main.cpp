// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "generators.hpp"
#include "spelect/io.hpp"
#include "spelect/oracles.hpp"

using namespace spelect;
using spelect::testing::Rng;

namespace {

constexpr Score kNever = std::numeric_limits<Score>::max();

struct Report {
  bool ok = true;
  long long cases = 0;
  std::string note;
  std::vector<std::string> failures;

  void fail(std::string what) {
    ok = false;
    if (failures.size() < 8) failures.push_back(std::move(what));
  }
};

// Calls f(counts) for every count vector over `types` entries with sum <= max_total.
void for_each_multiset(int types, int max_total, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> counts(types, 0);
  std::function<void(int, int)> rec = [&](int t, int left) {
    if (t == types) {
      f(counts);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[t] = c;
      rec(t + 1, left - c);
    }
    counts[t] = 0;
  };
  rec(0, max_total);
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// ---------------------------------------------------------------- 1

Report plurality_equals_local_score() {
  Report r;
  Rng rng(1001);
  for (int iter = 0; iter < 1000; ++iter) {
    const int m = rng.range(1, 10);
    const int n = rng.range(0, 20);
    const Axis axis = spelect::testing::random_axis(rng, m);
    auto e = spelect::testing::random_sp_linear(rng, axis, n, 5);
    const auto full = plurality_scores(e);
    for (int c = 0; c < m; ++c) {
      ++r.cases;
      if (full[c] != local_score(e, c, axis)) r.fail("election " + std::to_string(iter) + " candidate " + std::to_string(c));
    }
  }
  r.note = "1000 elections";
  return r;
}

// ---------------------------------------------------------------- 2

struct VoterGrid {
  int m;
  int max_registered;
  int max_pool;
};

ApprovalElection approval_profile(int m, const std::vector<std::vector<int>>& types, const std::vector<int>& counts,
                                  InputMode mode) {
  ApprovalElection e{spelect::testing::names(m), {}, mode};
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] == 0) continue;
    if (mode == InputMode::kSuccinct) {
      e.ballots.push_back({types[t], 1, counts[t]});
    } else {
      for (int i = 0; i < counts[t]; ++i) e.ballots.push_back({types[t], 1, 1});
    }
  }
  return e;
}

// Compares solver and oracle for every budget 0..5 on one instance.
void check_voter_instance(VoterControlInstance inst, Report& r, const std::string& label) {
  inst.budget = 5;
  const auto want = brute_control(inst);
  const Score least = want ? want->total() : kNever;
  for (Score k = 0; k <= 5; ++k) {
    inst.budget = k;
    ++r.cases;
    const auto got = solve_voter_control(inst);
    if (got.has_value() != (least <= k)) {
      r.fail(label + " k=" + std::to_string(k) + (got ? " solver yes, oracle no" : " solver no, oracle yes"));
    } else if (got && (got->total() > k || !certificate_succeeds(inst, *got))) {
      r.fail(label + " k=" + std::to_string(k) + " certificate does not replay");
    }
  }
}

Report approval_voter_control() {
  Report r;
  // Full product of |V| <= 5 and |V'| <= 5 is only enumerated where it stays
  // small; larger m use capped corners of the grid plus seeded sampling.
  const std::vector<VoterGrid> grid = {{1, 5, 5}, {2, 5, 5}, {3, 5, 3}, {3, 3, 5}, {4, 5, 1}, {4, 1, 5},
                                       {4, 3, 2}, {4, 2, 3}, {5, 5, 1}, {5, 1, 5}, {5, 2, 2}};
  long long exhaustive = 0;
  for (const auto& g : grid) {
    const auto types = spelect::testing::all_intervals(g.m);
    const int t = static_cast<int>(types.size());
    for_each_multiset(t, g.max_registered, [&](const std::vector<int>& reg) {
      for (InputMode mode : {InputMode::kStandard, InputMode::kSuccinct}) {
        const auto v = approval_profile(g.m, types, reg, mode);
        for (int p = 0; p < g.m; ++p) {
          for (WinnerModel model : {WinnerModel::kUnique, WinnerModel::kNonUnique}) {
            VoterControlInstance del{v, {}, p, 0, identity_axis(g.m), model, VoterAction::kDeleteVoters};
            // Deleting ignores the pool, so only visit it once per grid row.
            if (g.max_pool == 5 || g.m <= 2) check_voter_instance(del, r, "ccdv m=" + std::to_string(g.m));
            for_each_multiset(t, g.max_pool, [&](const std::vector<int>& pool_counts) {
              VoterControlInstance add{v, approval_profile(g.m, types, pool_counts, mode).ballots, p, 0,
                                       identity_axis(g.m), model, VoterAction::kAddVoters};
              ++exhaustive;
              check_voter_instance(add, r, "ccav m=" + std::to_string(g.m) + " reg=" + join(reg) +
                                               " pool=" + join(pool_counts) + " p=" + std::to_string(p));
            });
          }
        }
      }
    });
  }
  // Seeded fill-in of the whole box, with and without a given axis.
  Rng rng(1002);
  const int sampled = 60000;
  for (int iter = 0; iter < sampled; ++iter) {
    const int m = rng.range(1, 5);
    const Axis axis = spelect::testing::random_axis(rng, m);
    auto v = spelect::testing::random_sp_approval(rng, axis, rng.range(0, 5));
    auto pool = spelect::testing::random_sp_approval(rng, axis, rng.range(0, 5));
    const InputMode mode = rng.coin() ? InputMode::kSuccinct : InputMode::kStandard;
    v.mode = mode;
    if (mode == InputMode::kSuccinct) {
      for (auto& b : v.ballots) b.multiplicity = rng.range(1, 3);
      for (auto& b : pool.ballots) b.multiplicity = rng.range(1, 3);
    }
    const VoterAction action = rng.coin() ? VoterAction::kAddVoters : VoterAction::kDeleteVoters;
    if (action == VoterAction::kDeleteVoters) pool.ballots.clear();
    VoterControlInstance inst{v, pool.ballots, rng.range(0, m - 1), 0,
                              rng.coin() ? std::optional<Axis>(axis) : std::nullopt,
                              rng.coin() ? WinnerModel::kUnique : WinnerModel::kNonUnique, action};
    check_voter_instance(inst, r, "sampled " + std::to_string(iter));
  }
  r.note = std::to_string(exhaustive) + " exhaustive adding instances, " + std::to_string(sampled) +
           " sampled, budgets 0..5";
  return r;
}

// ---------------------------------------------------------------- 3

struct CandidateGrid {
  int m;
  int max_voters;
};

void check_candidate_instance(CandidateControlInstance inst, Score max_budget, Report& r, const std::string& label,
                              long long& destructive_yes) {
  const bool unlimited = inst.action == CandidateAction::kUnlimitedAddCandidates;
  inst.budget = max_budget;
  const auto want = brute_control(inst);
  const Score least = want ? static_cast<Score>(want->candidates.size()) : kNever;
  if (want && inst.goal == ControlGoal::kDestructive && inst.action != CandidateAction::kDeleteCandidates) {
    ++destructive_yes;
    if (least > 3) r.fail(label + " destructive adding needs " + std::to_string(least) + " spoilers");
  }
  for (Score k = unlimited ? max_budget : 0; k <= max_budget; ++k) {
    inst.budget = k;
    ++r.cases;
    const auto got = solve_candidate_control(inst);
    if (got.has_value() != (least <= k)) {
      r.fail(label + " k=" + std::to_string(k) + (got ? " solver yes, oracle no" : " solver no, oracle yes"));
    } else if (got && ((!unlimited && static_cast<Score>(got->candidates.size()) > k) ||
                       !certificate_succeeds(inst, *got))) {
      r.fail(label + " k=" + std::to_string(k) + " certificate does not replay");
    }
  }
}

void candidate_checks(const LinearElection& e, int p, const std::optional<Axis>& axis, unsigned spoiler_mask,
                      Report& r, const std::string& label, long long& destructive_yes) {
  const int m = e.size();
  std::vector<bool> spoiler(m, false);
  int spoilers = 0;
  for (int c = 0; c < m; ++c) {
    if (spoiler_mask >> c & 1U) {
      spoiler[c] = true;
      ++spoilers;
    }
  }
  for (WinnerModel model : {WinnerModel::kUnique, WinnerModel::kNonUnique}) {
    for (ControlGoal goal : {ControlGoal::kConstructive, ControlGoal::kDestructive}) {
      const std::string tag = label + (goal == ControlGoal::kConstructive ? " c" : " d") +
                              (model == WinnerModel::kUnique ? " unique" : " nonunique");
      if (spoiler_mask == 0) {
        CandidateControlInstance del{e, std::vector<bool>(m, false), p, 0, axis, model,
                                     CandidateAction::kDeleteCandidates, goal};
        check_candidate_instance(del, m - 1, r, tag + " dc", destructive_yes);
      }
      for (CandidateAction action : {CandidateAction::kAddCandidates, CandidateAction::kUnlimitedAddCandidates}) {
        CandidateControlInstance add{e, spoiler, p, 0, axis, model, action, goal};
        check_candidate_instance(add, spoilers, r,
                                 tag + (action == CandidateAction::kAddCandidates ? " ac" : " uac"), destructive_yes);
      }
    }
  }
}

LinearElection linear_profile(int m, const std::vector<std::vector<int>>& types, const std::vector<int>& counts) {
  LinearElection e{spelect::testing::names(m), {}, InputMode::kStandard};
  for (std::size_t t = 0; t < counts.size(); ++t) {
    for (int i = 0; i < counts[t]; ++i) e.ballots.push_back({types[t], 1, 1});
  }
  return e;
}

Report plurality_candidate_control() {
  Report r;
  long long destructive_yes = 0;
  long long exhaustive = 0;
  const std::vector<CandidateGrid> grid = {{1, 5}, {2, 5}, {3, 5}, {4, 5}, {5, 5}, {6, 3}};
  for (const auto& g : grid) {
    const Axis axis = identity_axis(g.m);
    const auto types = enumerate_sp_linear_ballots(axis);
    for_each_multiset(static_cast<int>(types.size()), g.max_voters, [&](const std::vector<int>& counts) {
      const auto e = linear_profile(g.m, types, counts);
      for (int p = 0; p < g.m; ++p) {
        for (unsigned mask = 0; mask < (1U << g.m); ++mask) {
          if (mask >> p & 1U) continue;
          ++exhaustive;
          candidate_checks(e, p, axis, mask, r,
                           "m=" + std::to_string(g.m) + " counts=" + join(counts) + " p=" + std::to_string(p) +
                               " spoilers=" + std::to_string(mask),
                           destructive_yes);
        }
      }
    });
  }
  Rng rng(1003);
  const int sampled = 20000;
  for (int iter = 0; iter < sampled; ++iter) {
    const int m = rng.range(5, 6);
    const Axis axis = spelect::testing::random_axis(rng, m);
    const auto e = spelect::testing::random_sp_linear(rng, axis, rng.range(0, 5));
    const int p = rng.range(0, m - 1);
    unsigned mask = static_cast<unsigned>(rng.range(0, (1 << m) - 1)) & ~(1U << p);
    candidate_checks(e, p, rng.coin() ? std::optional<Axis>(axis) : std::nullopt, mask, r,
                     "sampled " + std::to_string(iter), destructive_yes);
  }
  r.note = std::to_string(exhaustive) + " exhaustive configurations, " + std::to_string(sampled) + " sampled, " +
           std::to_string(destructive_yes) + " destructive YES all within 3";
  return r;
}

// ---------------------------------------------------------------- 4

Report demote_matches_exhaustive() {
  Report r;
  Rng rng(1004);
  for (int iter = 0; iter < 500; ++iter) {
    const int registered = rng.range(1, 4);
    const int spoilers = rng.range(0, 12);
    const int m = registered + spoilers;
    const Axis axis = spelect::testing::random_axis(rng, m);
    const auto e = spelect::testing::random_sp_linear(rng, axis, rng.range(1, 30), 3);
    std::vector<int> ids(m);
    for (int c = 0; c < m; ++c) ids[c] = c;
    rng.shuffle(ids);
    std::vector<bool> spoiler(m, false);
    std::vector<int> pool;
    for (int i = 0; i < spoilers; ++i) {
      spoiler[ids[i]] = true;
      pool.push_back(ids[i]);
    }
    std::vector<char> active(m);
    for (int c = 0; c < m; ++c) active[c] = !spoiler[c];
    const auto base = plurality_scores_among(e, active);
    const Score bound = rng.range(0, static_cast<int>(*std::max_element(base.begin(), base.end())));
    auto fits = [&](std::uint32_t subset) {
      std::vector<char> on = active;
      for (int i = 0; i < spoilers; ++i) {
        if (subset >> i & 1U) on[pool[i]] = 1;
      }
      const auto s = plurality_scores_among(e, on);
      for (int c = 0; c < m; ++c) {
        if (on[c] && s[c] > bound) return false;
      }
      return true;
    };
    int least = -1;
    for (std::uint32_t subset = 0; subset < (1U << spoilers); ++subset) {
      const int size = __builtin_popcount(subset);
      if ((least < 0 || size < least) && fits(subset)) least = size;
    }
    ++r.cases;
    const auto got = demote_by_adding_candidates(e, spoiler, axis, bound);
    if (got.has_value() != (least >= 0)) {
      r.fail("instance " + std::to_string(iter) + ": decision differs");
      continue;
    }
    if (!got) continue;
    std::uint32_t subset = 0;
    bool in_pool = true;
    for (int c : *got) {
      auto at = std::find(pool.begin(), pool.end(), c);
      if (at == pool.end()) {
        in_pool = false;
        break;
      }
      subset |= 1U << (at - pool.begin());
    }
    if (!in_pool || static_cast<int>(got->size()) != least || !fits(subset)) {
      r.fail("instance " + std::to_string(iter) + ": DP set size " + std::to_string(got->size()) + ", minimum " +
             std::to_string(least));
    }
  }
  r.note = "500 instances, up to 12 spoilers";
  return r;
}

// ---------------------------------------------------------------- 5 and 7 shared

using Solver = std::function<std::optional<ManipulationCertificate>(const ManipulationInstance&)>;

struct NamedSolver {
  std::string name;
  Solver run;
};

std::vector<NamedSolver> solvers_for(const ScoringVector& rule, int p, const std::optional<Axis>& axis) {
  const int m = rule.size();
  std::vector<NamedSolver> out;
  out.push_back({"dispatch", [](const ManipulationInstance& in) { return solve_manipulation(in).certificate; }});
  out.push_back({"exact", [](const ManipulationInstance& in) { return exact_ccwm(in); }});
  if (m == 3) out.push_back({"dichotomy3", solve_dichotomy3});
  if (m == 3 && rule == ScoringVector::borda(3)) out.push_back({"borda3", solve_borda3});
  bool ones_zeros = rule[0] > 0;
  int ones = 0;
  while (ones < m && rule[ones] == rule[0]) ++ones;
  for (int i = ones; i < m; ++i) ones_zeros = ones_zeros && rule[i] == 0;
  if (ones_zeros && ones >= m - ones) out.push_back({"ones-zeros", solve_ones_zeros});
  if (m >= 2 && ones_zeros && ones == m - 1) out.push_back({"veto", solve_veto});
  if (m >= 3 && rule == ScoringVector::j_veto(m, 3)) out.push_back({"3veto", solve_3veto});
  if (axis && (axis->order.front() == p || axis->order.back() == p)) {
    out.push_back({"end-candidate", end_candidate_shortcut});
  }
  return out;
}

// Every solver for the rule against the oracle, plus certificate replay.
void check_manipulation(const ManipulationInstance& inst, Report& r, const std::string& label) {
  const bool want = brute_manipulation(inst).has_value();
  const auto axes = candidate_axes(inst);
  for (const auto& s : solvers_for(inst.rule, inst.distinguished, inst.axis)) {
    ++r.cases;
    const auto got = s.run(inst);
    if (got.has_value() != want) {
      r.fail(label + " " + s.name + (got ? " yes, oracle no" : " no, oracle yes"));
      continue;
    }
    if (got) {
      bool replays = false;
      for (const auto& axis : axes) replays = replays || certificate_succeeds(inst, *got, axis);
      if (!replays) r.fail(label + " " + s.name + " certificate does not replay");
    }
  }
}

// Manipulator weight multisets: up to three manipulators, weights 1..4.
std::vector<std::vector<Score>> manipulator_sets() {
  std::vector<std::vector<Score>> out;
  for_each_multiset(4, 3, [&](const std::vector<int>& counts) {
    std::vector<Score> w;
    for (int x = 0; x < 4; ++x) {
      for (int i = 0; i < counts[x]; ++i) w.push_back(x + 1);
    }
    out.push_back(w);
  });
  return out;
}

// Nonmanipulator profiles on the identity axis: multisets of (ranking, weight 1..4).
void for_each_weighted_profile(int m, int max_ballots, const std::function<void(const LinearElection&)>& f) {
  const auto types = enumerate_sp_linear_ballots(identity_axis(m));
  const int options = static_cast<int>(types.size()) * 4;
  for_each_multiset(options, max_ballots, [&](const std::vector<int>& counts) {
    LinearElection e{spelect::testing::names(m), {}, InputMode::kStandard};
    for (int o = 0; o < options; ++o) {
      for (int i = 0; i < counts[o]; ++i) e.ballots.push_back({types[o / 4], o % 4 + 1, 1});
    }
    f(e);
  });
}

std::string rule_text(const ScoringVector& rule) {
  std::string s;
  for (int i = 0; i < rule.size(); ++i) s += (i ? "," : "") + std::to_string(rule[i]);
  return s;
}

void manipulation_grid(int m, int max_ballots, const std::vector<ScoringVector>& rules, Report& r) {
  const auto weights = manipulator_sets();
  for_each_weighted_profile(m, max_ballots, [&](const LinearElection& e) {
    for (const auto& rule : rules) {
      for (int p = 0; p < m; ++p) {
        for (const auto& w : weights) {
          for (WinnerModel model : {WinnerModel::kUnique, WinnerModel::kNonUnique}) {
            ManipulationInstance inst{e, w, p, identity_axis(m), rule, model};
            check_manipulation(inst, r,
                               "m=" + std::to_string(m) + " rule=" + rule_text(rule) + " p=" + std::to_string(p) +
                                   " ballots=" + std::to_string(e.ballots.size()));
          }
        }
      }
    }
  });
}

// ---------------------------------------------------------------- 5

std::vector<ScoringVector> all_rules(int m, Score cap) {
  std::vector<ScoringVector> out;
  std::vector<Score> a(m);
  std::function<void(int, Score)> rec = [&](int i, Score hi) {
    if (i == m) {
      out.emplace_back(a);
      return;
    }
    for (Score x = 0; x <= hi; ++x) {
      a[i] = x;
      rec(i + 1, x);
    }
  };
  rec(0, cap);
  return out;
}

Report manipulation_equivalence() {
  Report r;
  manipulation_grid(1, 3, all_rules(1, 1), r);
  manipulation_grid(2, 3, all_rules(2, 2), r);
  manipulation_grid(3, 3, all_rules(3, 3), r);
  manipulation_grid(4, 2,
                    {ScoringVector::plurality(4), ScoringVector::veto(4), ScoringVector({1, 1, 0, 0}),
                     ScoringVector::borda(4), ScoringVector({2, 1, 1, 0}), ScoringVector({3, 3, 0, 0})},
                    r);
  manipulation_grid(5, 2,
                    {ScoringVector::plurality(5), ScoringVector::veto(5), ScoringVector::j_veto(5, 2),
                     ScoringVector::j_veto(5, 3), ScoringVector::borda(5)},
                    r);
  // Seeded instances with more ballots and without a given axis.
  Rng rng(1005);
  const int sampled = 4000;
  for (int iter = 0; iter < sampled; ++iter) {
    const int m = rng.range(2, 5);
    const Axis axis = spelect::testing::random_axis(rng, m);
    auto e = spelect::testing::random_sp_linear(rng, axis, rng.range(0, 5), 4);
    std::vector<Score> w(rng.range(0, 3));
    for (auto& x : w) x = rng.range(1, 4);
    auto rules = all_rules(m, 2);
    const auto& rule = rules[rng.range(0, static_cast<int>(rules.size()) - 1)];
    ManipulationInstance inst{e, w, rng.range(0, m - 1), rng.coin() ? std::optional<Axis>(axis) : std::nullopt, rule,
                              rng.coin() ? WinnerModel::kUnique : WinnerModel::kNonUnique};
    check_manipulation(inst, r, "sampled " + std::to_string(iter));
  }
  r.note = "exhaustive m<=5 grids plus " + std::to_string(sampled) + " sampled";
  return r;
}

// ---------------------------------------------------------------- 6

std::vector<Score> final_scores(const ManipulationInstance& inst, const ManipulationCertificate& cert) {
  return scoring_scores(apply_certificate(inst, cert), inst.rule).scores;
}

Report reductions_round_trip() {
  Report r;
  long long partitions = 0;
  for (std::uint32_t mask = 1; mask < (1U << 10); ++mask) {
    const int n = __builtin_popcount(mask);
    if (n > 8) continue;
    PartitionInstance part;
    Score total = 0;
    for (int i = 0; i < 10; ++i) {
      if (mask >> i & 1U) {
        part.items.push_back(i + 1);
        total += i + 1;
      }
    }
    if (total % 2 != 0) continue;
    ++partitions;
    const bool want = partition_solve(part).has_value();
    for (WinnerModel model : {WinnerModel::kUnique, WinnerModel::kNonUnique}) {
      const std::vector<std::pair<std::string, ManipulationInstance>> reduced = {
          {"3veto5", reduce_partition_to_3veto5(part, model)},
          {"310", reduce_partition_to_310(part, model)},
          {"borda4", reduce_partition_to_borda4(part, model)},
          {"dichotomy(3,1)", reduce_partition_to_dichotomy(part, 3, 1, model)},
          {"dichotomy(5,2)", reduce_partition_to_dichotomy(part, 5, 2, model)},
      };
      for (const auto& [name, inst] : reduced) {
        ++r.cases;
        const auto got = exact_ccwm(inst);
        if (got.has_value() != want) {
          r.fail(name + " items=" + join(std::vector<int>(part.items.begin(), part.items.end())) +
                 (model == WinnerModel::kUnique ? " unique" : " nonunique"));
        } else if (got && !certificate_succeeds(inst, *got, *inst.axis)) {
          r.fail(name + " certificate does not replay");
        }
      }
    }
  }
  // Score identities at K = 3, items {1,2,3}.
  const PartitionInstance k3{{1, 2, 3}};
  {
    auto inst = reduce_partition_to_borda4(k3, WinnerModel::kNonUnique);
    const auto s = scoring_scores(inst.nonmanipulators, inst.rule).scores;  // a b p c
    ++r.cases;
    if (s != std::vector<Score>{42, 96, 87, 99}) r.fail("borda4 nonmanipulator scores " + join({s.begin(), s.end()}));
  }
  {
    auto inst = reduce_partition_to_3veto5(k3, WinnerModel::kNonUnique);
    const auto cert = exact_ccwm(inst);
    ++r.cases;
    // a b c d p
    if (!cert || final_scores(inst, *cert) != std::vector<Score>{6, 6, 3, 3, 6}) r.fail("3veto5 witness scores");
  }
  {
    auto inst = reduce_partition_to_310(k3, WinnerModel::kNonUnique);
    const auto cert = exact_ccwm(inst);
    ++r.cases;
    if (!cert || final_scores(inst, *cert) != std::vector<Score>{48, 48, 48}) r.fail("310 witness scores");
  }
  r.note = std::to_string(partitions) + " PARTITION instances x 5 generators x 2 models, K=3 identities";
  return r;
}

// ---------------------------------------------------------------- 7

Report three_veto_transition(const std::string& data_dir) {
  Report r;
  std::ifstream in(data_dir + "/three_veto_m5.elc");
  std::stringstream text;
  text << in.rdbuf();
  const auto doc = parse_election(text.str());
  const auto stored = manipulation_instance(doc, std::nullopt, WinnerModel::kNonUnique);
  const bool exact = exact_ccwm(stored).has_value();
  const bool large_m = three_veto_large_m_rule(stored);
  const bool brute = brute_manipulation(stored).has_value();
  r.cases += 3;
  if (exact == large_m) r.fail("stored m=5 instance: the large-m rule agrees with exact_ccwm");
  if (exact != brute) r.fail("stored m=5 instance: exact_ccwm disagrees with the oracle");

  manipulation_grid(3, 3, {ScoringVector::j_veto(3, 3)}, r);
  manipulation_grid(4, 2, {ScoringVector::j_veto(4, 3)}, r);
  // m = 6: every single weighted ballot (and none) against every coalition.
  const auto weights = manipulator_sets();
  const ScoringVector rule6 = ScoringVector::j_veto(6, 3);
  for_each_weighted_profile(6, 1, [&](const LinearElection& e) {
    for (int p = 0; p < 6; ++p) {
      for (const auto& w : weights) {
        for (WinnerModel model : {WinnerModel::kUnique, WinnerModel::kNonUnique}) {
          ManipulationInstance inst{e, w, p, identity_axis(6), rule6, model};
          const bool want = brute_manipulation(inst).has_value();
          const auto got = solve_3veto(inst);
          r.cases += 2;
          if (got.has_value() != want) r.fail("m=6 solve_3veto p=" + std::to_string(p));
          if (three_veto_large_m_rule(inst) != want) r.fail("m=6 large-m rule p=" + std::to_string(p));
          if (got && !certificate_succeeds(inst, *got, identity_axis(6))) r.fail("m=6 certificate does not replay");
        }
      }
    }
  });
  r.note = std::string("stored m=5: exact ") + (exact ? "yes" : "no") + ", large-m rule " + (large_m ? "yes" : "no") +
           "; m=3,4,6 exhaustive";
  return r;
}

// ---------------------------------------------------------------- 8

template <typename E>
void check_axis(const E& e, const std::optional<Axis>& found, Report& r, const std::string& label) {
  const auto all = brute_axis(e);
  ++r.cases;
  if (found.has_value() != !all.empty()) {
    r.fail(label + (found ? ": finder found an axis, oracle none" : ": finder found none"));
    return;
  }
  if (found && std::find(all.begin(), all.end(), *found) == all.end()) r.fail(label + ": axis not in oracle list");
}

Report axis_recognition() {
  Report r;
  Rng rng(1008);
  for (int iter = 0; iter < 2000; ++iter) {
    const int m = rng.range(1, 7);
    const int n = rng.range(0, 6);
    const Axis axis = spelect::testing::random_axis(rng, m);
    auto e = rng.coin() ? spelect::testing::random_sp_linear(rng, axis, n) : spelect::testing::random_linear(rng, m, n);
    if (!e.ballots.empty() && rng.range(0, 3) == 0) {
      // Near misses: one adjacent swap in one ballot.
      auto& b = e.ballots[rng.range(0, static_cast<int>(e.ballots.size()) - 1)].ranking;
      if (m >= 2) {
        const int i = rng.range(0, m - 2);
        std::swap(b[i], b[i + 1]);
      }
    }
    check_axis(e, find_axis_linear(e), r, "linear " + std::to_string(iter));
  }
  for (int iter = 0; iter < 2000; ++iter) {
    const int m = rng.range(1, 7);
    const int n = rng.range(0, 6);
    const Axis axis = spelect::testing::random_axis(rng, m);
    auto e = rng.coin() ? spelect::testing::random_sp_approval(rng, axis, n)
                        : spelect::testing::random_approval(rng, m, n);
    check_axis(e, find_axis_approval(e), r, "approval " + std::to_string(iter));
  }
  // Three pairwise-overlapping approvals on the first three candidates.
  for (int m = 3; m <= 7; ++m) {
    ApprovalElection e{spelect::testing::names(m), {{{0, 1}, 1, 1}, {{1, 2}, 1, 1}, {{0, 2}, 1, 1}},
                       InputMode::kStandard};
    ++r.cases;
    if (find_axis_approval(e) || !brute_axis(e).empty()) r.fail("three-vote pattern accepted at m=" + std::to_string(m));
  }
  r.note = "2000 linear + 2000 approval profiles, three-vote pattern m=3..7";
  return r;
}

// ---------------------------------------------------------------- 9

struct Captured {
  std::string out;
  int status = -1;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

Report cli_determinism(const std::string& cli, const std::string& data_dir) {
  Report r;
  std::ifstream in(data_dir + "/cli_corpus.txt");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::string args;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line.compare(i, 6, "{data}") == 0) {
        args += data_dir;
        i += 5;
      } else {
        args += line[i];
      }
    }
    const std::string command = "'" + cli + "' " + args + " 2>/dev/null";
    const auto a = capture(command);
    const auto b = capture(command);
    ++r.cases;
    if (a.status < 0 || a.status > 2) r.fail(line + ": abnormal exit");
    if (a.out != b.out || a.status != b.status) r.fail(line + ": output differs between runs");
  }
  if (r.cases < 20) r.fail("corpus too small: " + std::to_string(r.cases) + " invocations");
  r.note = std::to_string(r.cases) + " invocations run twice";
  return r;
}

}  // namespace

// Usage: spelect_acceptance [--only N] [DATA_DIR [CLI]]
int main(int argc, char** argv) {
  int only = 0;
  std::vector<std::string> positional;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      positional.push_back(arg);
    }
  }
  const std::string data_dir = positional.size() > 0 ? positional[0] : SPELECT_TEST_DATA_DIR;
  const std::string cli = positional.size() > 1 ? positional[1] : SPELECT_CLI_PATH;
  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Report()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "plurality score equals local score", 5, plurality_equals_local_score},
      {2, "approval CCAV/CCDV equal the oracle", 600, approval_voter_control},
      {3, "plurality candidate control equals the oracle", 900, plurality_candidate_control},
      {4, "DemoteByAddingCandidates equals the exhaustive minimum", 120, demote_matches_exhaustive},
      {5, "polynomial manipulation solvers equal the oracle", 600, manipulation_equivalence},
      {6, "PARTITION reductions round-trip", 600, reductions_round_trip},
      {7, "3-veto m=5 exhibit and m=3,4,6 agreement", 600, [&] { return three_veto_transition(data_dir); }},
      {8, "axis recognition equals the oracle", 300, axis_recognition},
      {9, "CLI output is byte-reproducible", 600, [&] { return cli_determinism(cli, data_dir); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    try {
      rep = c.run();
    } catch (const std::exception& e) {
      rep.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) rep.fail("over the time limit");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (rep.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << rep.cases << " checks, " << secs
         << " s of " << c.limit_seconds << " s; " << rep.note << ")";
    std::cout << line.str() << std::endl;
    for (const auto& f : rep.failures) std::cout << "    " << f << std::endl;
    failed += rep.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
