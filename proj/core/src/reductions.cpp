#include "spelect/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "spelect/errors.hpp"

namespace spelect {

Score PartitionInstance::half() const { return std::accumulate(items.begin(), items.end(), Score{0}) / 2; }

void validate(const PartitionInstance& inst) {
  std::set<Score> seen;
  Score total = 0;
  for (Score k : inst.items) {
    if (k <= 0) throw InvalidInput("partition items must be positive");
    if (!seen.insert(k).second) throw InvalidInput("partition items must be distinct");
    total += k;
  }
  if (total % 2 != 0) throw InvalidInput("partition items must have an even sum");
  if (total > 50'000'000) throw ResourceLimit("partition total too large for the subset-sum table");
}

std::optional<std::vector<Score>> partition_solve(const PartitionInstance& inst) {
  validate(inst);
  const Score k = inst.half();
  const int n = static_cast<int>(inst.items.size());
  // first[s]: index of the item that first reached sum s, or -1.
  std::vector<int> first(static_cast<std::size_t>(k) + 1, -1);
  std::vector<char> reach(static_cast<std::size_t>(k) + 1, 0);
  reach[0] = 1;
  for (int i = 0; i < n; ++i) {
    const Score w = inst.items[i];
    for (Score s = k; s >= w; --s) {
      if (!reach[s] && reach[s - w]) {
        reach[s] = 1;
        first[s] = i;
      }
    }
  }
  if (!reach[k]) return std::nullopt;
  std::vector<char> used(n, 0);
  for (Score s = k; s > 0; s -= inst.items[first[s]]) used[first[s]] = 1;
  std::vector<Score> out;
  for (int i = 0; i < n; ++i) {
    if (used[i]) out.push_back(inst.items[i]);
  }
  return out;
}

namespace {

ManipulationInstance make(std::vector<std::string> names, const std::vector<std::vector<std::string>>& ballots,
                          const std::vector<Score>& weights, const std::vector<std::string>& axis,
                          std::vector<Score> rule, std::vector<Score> manipulators) {
  ManipulationInstance inst;
  inst.nonmanipulators.candidates = std::move(names);
  const auto& e = inst.nonmanipulators;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    LinearBallot b;
    for (const auto& id : ballots[i]) b.ranking.push_back(e.index_of(id));
    b.weight = weights[i];
    inst.nonmanipulators.ballots.push_back(std::move(b));
  }
  Axis a;
  for (const auto& id : axis) a.order.push_back(e.index_of(id));
  inst.axis = std::move(a);
  inst.distinguished = e.index_of("p");
  inst.rule = ScoringVector(std::move(rule));
  inst.manipulator_weights = std::move(manipulators);
  return inst;
}

}  // namespace

ManipulationInstance reduce_partition_to_3veto5(const PartitionInstance& inst, WinnerModel model) {
  validate(inst);
  const Score k = inst.half();
  const Score w = model == WinnerModel::kUnique ? k - 1 : k;
  auto out = make({"a", "b", "c", "d", "p"}, {{"c", "a", "p", "b", "d"}, {"d", "b", "p", "a", "c"}}, {w, w},
                  {"c", "a", "p", "b", "d"}, {1, 1, 0, 0, 0}, inst.items);
  out.model = model;
  return out;
}

ManipulationInstance reduce_partition_to_310(const PartitionInstance& inst, WinnerModel model) {
  validate(inst);
  const Score k = inst.half();
  const Score w = model == WinnerModel::kUnique ? 5 * k - 1 : 5 * k;
  auto out = make({"a", "b", "p"}, {{"a", "p", "b"}, {"b", "p", "a"}}, {w, w}, {"a", "p", "b"}, {3, 1, 0}, inst.items);
  out.model = model;
  return out;
}

ManipulationInstance reduce_partition_to_borda4(const PartitionInstance& inst, WinnerModel model) {
  validate(inst);
  const Score k = inst.half();
  const bool unique = model == WinnerModel::kUnique;
  auto out = make({"a", "b", "p", "c"}, {{"c", "p", "b", "a"}, {"b", "a", "p", "c"}},
                  {unique ? 11 * k - 3 : 11 * k, unique ? 7 * k - 2 : 7 * k}, {"a", "b", "p", "c"}, {3, 2, 1, 0},
                  inst.items);
  out.model = model;
  return out;
}

Score dichotomy_unique_scale(Score alpha1, Score alpha2) { return alpha1 + alpha2 + 1; }

ManipulationInstance reduce_partition_to_dichotomy(const PartitionInstance& inst, Score alpha1, Score alpha2,
                                                   WinnerModel model) {
  validate(inst);
  if (!(alpha1 > 2 * alpha2 && alpha2 > 0)) throw InvalidInput("dichotomy reduction needs alpha1 > 2*alpha2 > 0");
  const Score k = inst.half();
  const Score scale = model == WinnerModel::kUnique ? dichotomy_unique_scale(alpha1, alpha2) : 1;
  Score w = (2 * alpha1 - alpha2) * k * scale;
  if (model == WinnerModel::kUnique) w -= 1;
  std::vector<Score> manipulators;
  for (Score item : inst.items) manipulators.push_back((alpha1 - 2 * alpha2) * item * scale);
  auto out = make({"a", "b", "p"}, {{"a", "p", "b"}, {"b", "p", "a"}}, {w, w}, {"a", "p", "b"}, {alpha1, alpha2, 0},
                  std::move(manipulators));
  out.model = model;
  return out;
}

}  // namespace spelect
