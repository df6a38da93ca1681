#include <benchmark/benchmark.h>

#include "spelect/io.hpp"
#include "spelect/single_peaked.hpp"

using namespace spelect;

namespace {

ElectionDocument doc(GeneratedKind kind, int m, int n, int spoilers = 0, int manipulators = 0, Score cap = 1) {
  GenOptions g;
  g.seed = 2024;
  g.candidates = m;
  g.voters = n;
  g.kind = kind;
  g.spoilers = spoilers;
  g.manipulators = manipulators;
  g.weight_cap = cap;
  g.pool = kind == GeneratedKind::kApproval ? n : 0;
  return gen_random_sp(g);
}

void BM_FindAxisLinear(benchmark::State& state) {
  const auto e = linear_election(doc(GeneratedKind::kLinear, static_cast<int>(state.range(0)), 200));
  for (auto _ : state) benchmark::DoNotOptimize(find_axis_linear(e));
}
BENCHMARK(BM_FindAxisLinear)->Arg(8)->Arg(32)->Arg(128);

void BM_FindAxisApproval(benchmark::State& state) {
  const auto e = approval_election(doc(GeneratedKind::kApproval, static_cast<int>(state.range(0)), 200));
  for (auto _ : state) benchmark::DoNotOptimize(find_axis_approval(e));
}
BENCHMARK(BM_FindAxisApproval)->Arg(8)->Arg(32)->Arg(128);

void BM_Ccav(benchmark::State& state) {
  const auto d = doc(GeneratedKind::kApproval, 20, static_cast<int>(state.range(0)));
  const auto inst = voter_control_instance(d, "ccav", state.range(0) / 4, WinnerModel::kUnique);
  for (auto _ : state) benchmark::DoNotOptimize(solve_voter_control(inst));
}
BENCHMARK(BM_Ccav)->Arg(100)->Arg(1000);

void BM_DemoteByAdding(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto d = doc(GeneratedKind::kLinear, m, 3 * m, m / 2);
  const auto inst = candidate_control_instance(d, "dcac", m, WinnerModel::kUnique);
  for (auto _ : state) {
    benchmark::DoNotOptimize(demote_by_adding_candidates(inst.election, inst.spoiler, *inst.axis, 4));
  }
}
BENCHMARK(BM_DemoteByAdding)->Arg(12)->Arg(24)->Arg(48);

void BM_Ccac(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto d = doc(GeneratedKind::kLinear, m, 3 * m, m / 2);
  const auto inst = candidate_control_instance(d, "ccac", 3, WinnerModel::kUnique);
  for (auto _ : state) benchmark::DoNotOptimize(solve_candidate_control(inst));
}
BENCHMARK(BM_Ccac)->Arg(12)->Arg(24)->Arg(48);

void BM_ExactCcwm(benchmark::State& state) {
  const auto d = doc(GeneratedKind::kLinear, 5, 6, 0, static_cast<int>(state.range(0)), 4);
  const auto inst = manipulation_instance(d, "borda", WinnerModel::kNonUnique);
  for (auto _ : state) benchmark::DoNotOptimize(exact_ccwm(inst));
}
BENCHMARK(BM_ExactCcwm)->Arg(2)->Arg(4)->Arg(6);

}  // namespace
BENCHMARK_MAIN();
