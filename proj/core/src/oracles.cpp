#include "spelect/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "spelect/errors.hpp"

namespace spelect {

namespace {

template <typename E, typename Check>
std::vector<Axis> all_axes(const E& e, const OracleLimits& limits, Check consistent) {
  const int m = e.size();
  if (m > limits.max_axis_candidates) {
    throw ResourceLimit("brute_axis limited to " + std::to_string(limits.max_axis_candidates) + " candidates");
  }
  std::vector<Axis> out;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> pos(m);
    for (int i = 0; i < m; ++i) pos[perm[i]] = i;
    bool ok = true;
    for (const auto& b : e.ballots) {
      if (!consistent(b, pos)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(Axis{perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Definition check straight from triples: no candidate ranked below two
// candidates that sit on either side of it.
bool triple_check(const LinearBallot& b, const std::vector<int>& pos) {
  const int m = static_cast<int>(b.ranking.size());
  for (int z = 0; z < m; ++z) {
    bool left = false, right = false;
    for (int a = 0; a < z; ++a) {
      if (pos[b.ranking[a]] < pos[b.ranking[z]]) left = true;
      if (pos[b.ranking[a]] > pos[b.ranking[z]]) right = true;
    }
    if (left && right) return false;
  }
  return true;
}

bool gap_check(const ApprovalBallot& b, const std::vector<int>& pos) {
  if (b.approved.empty()) return true;
  int lo = static_cast<int>(pos.size()), hi = -1;
  for (int c : b.approved) {
    lo = std::min(lo, pos[c]);
    hi = std::max(hi, pos[c]);
  }
  for (int x = lo; x <= hi; ++x) {
    int c = -1;
    for (int y = 0; y < static_cast<int>(pos.size()); ++y) {
      if (pos[y] == x) c = y;
    }
    if (!b.approves(c)) return false;
  }
  return true;
}

bool wins(const std::vector<Score>& scores, const std::vector<char>& present, int c, WinnerModel model) {
  for (int d = 0; d < static_cast<int>(scores.size()); ++d) {
    if (d == c || !present[d]) continue;
    if (scores[d] > scores[c] || (model == WinnerModel::kUnique && scores[d] == scores[c])) return false;
  }
  return true;
}

// Visits subsets of {0..n-1} by size, then lexicographically, up to max_size.
template <typename Visit>
bool for_each_subset(int n, int max_size, Visit visit) {
  std::vector<int> idx;
  for (int size = 0; size <= std::min(n, max_size); ++size) {
    idx.resize(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (visit(idx)) return true;
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int t = i + 1; t < size; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return false;
}

}  // namespace

std::vector<Axis> brute_axis(const LinearElection& e, const OracleLimits& limits) {
  return all_axes(e, limits, triple_check);
}

std::vector<Axis> brute_axis(const ApprovalElection& e, const OracleLimits& limits) {
  return all_axes(e, limits, gap_check);
}

std::optional<VoterCertificate> brute_control(const VoterControlInstance& inst, const OracleLimits& limits) {
  validate(inst);
  const bool adding = inst.action == VoterAction::kAddVoters;
  const auto& source = adding ? inst.pool : inst.election.ballots;
  const int n = static_cast<int>(source.size());
  std::uint64_t space = 1;
  for (const auto& b : source) {
    space *= static_cast<std::uint64_t>(b.multiplicity + 1);
    if (space > limits.max_enumeration) throw ResourceLimit("brute_control: too many voter selections");
  }
  const auto base = approval_scores(inst.election);
  const int m = inst.election.size();
  const std::vector<char> all(m, 1);

  // Every count vector with total <= budget, grouped by total so the first
  // success is a smallest one.
  std::vector<Score> counts(n, 0);
  std::optional<VoterCertificate> found;
  for (Score total = 0; total <= inst.budget && !found; ++total) {
    auto rec = [&](auto&& self, int i, Score left) -> bool {
      if (i == n) {
        if (left != 0) return false;
        std::vector<Score> s = base.scores;
        for (int j = 0; j < n; ++j) {
          for (int c : source[j].approved) s[c] += (adding ? 1 : -1) * counts[j] * source[j].weight;
        }
        if (!wins(s, all, inst.distinguished, inst.model)) return false;
        VoterCertificate cert;
        for (int j = 0; j < n; ++j) {
          if (counts[j] > 0) cert.selected.push_back({j, counts[j]});
        }
        found = std::move(cert);
        return true;
      }
      for (Score c = 0; c <= std::min(left, source[i].multiplicity); ++c) {
        counts[i] = c;
        if (self(self, i + 1, left - c)) return true;
      }
      counts[i] = 0;
      return false;
    };
    rec(rec, 0, total);
  }
  return found;
}

std::optional<CandidateCertificate> brute_control(const CandidateControlInstance& inst, const OracleLimits& limits) {
  validate(inst);
  const int m = inst.election.size();
  const bool adding = inst.action != CandidateAction::kDeleteCandidates;
  std::vector<int> pool;
  std::vector<char> base(m, 0);
  for (int c = 0; c < m; ++c) {
    base[c] = inst.spoiler[c] ? 0 : 1;
    if (adding ? inst.spoiler[c] : (!inst.spoiler[c] && c != inst.distinguished)) pool.push_back(c);
  }
  if (pool.size() > 24 || (std::uint64_t{1} << pool.size()) > limits.max_enumeration) {
    throw ResourceLimit("brute_control: too many candidate subsets");
  }
  const Score budget = inst.action == CandidateAction::kUnlimitedAddCandidates ? static_cast<Score>(pool.size())
                                                                                : inst.budget;
  std::optional<CandidateCertificate> found;
  for_each_subset(static_cast<int>(pool.size()), static_cast<int>(std::min<Score>(budget, pool.size())),
                  [&](const std::vector<int>& idx) {
                    auto present = base;
                    for (int i : idx) present[pool[i]] = adding ? 1 : 0;
                    const auto e = plurality_scores_among(inst.election, present);
                    const bool w = wins(e, present, inst.distinguished, inst.model);
                    if (w != (inst.goal == ControlGoal::kConstructive)) return false;
                    CandidateCertificate cert;
                    for (int i : idx) cert.candidates.push_back(pool[i]);
                    found = std::move(cert);
                    return true;
                  });
  return found;
}

std::optional<ManipulationCertificate> brute_manipulation(const ManipulationInstance& inst, const OracleLimits& limits) {
  validate(inst);
  std::vector<Axis> axes;
  if (inst.axis) {
    if (!linear_consistent(inst.nonmanipulators, *inst.axis)) throw InvalidInput(kInvalidAxisMessage);
    axes.push_back(*inst.axis);
  } else {
    axes = brute_axis(inst.nonmanipulators, limits);
  }
  const int m = inst.nonmanipulators.size();
  const int n = static_cast<int>(inst.manipulator_weights.size());
  const auto base = scoring_scores(inst.nonmanipulators, inst.rule);
  const std::vector<char> all(m, 1);
  for (const auto& axis : axes) {
    const auto types = enumerate_sp_linear_ballots(axis);
    const int nt = static_cast<int>(types.size());
    std::uint64_t space = 1;
    for (int i = 0; i < n; ++i) {
      space *= static_cast<std::uint64_t>(nt);
      if (space > limits.max_enumeration) throw ResourceLimit("brute_manipulation: too many ballot assignments");
    }
    // points[t][c]
    std::vector<std::vector<Score>> points(nt, std::vector<Score>(m));
    for (int t = 0; t < nt; ++t) {
      for (int r = 0; r < m; ++r) points[t][types[t][r]] = inst.rule[r];
    }
    std::vector<int> pick(n, 0);
    while (true) {
      std::vector<Score> s = base.scores;
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < m; ++c) s[c] += inst.manipulator_weights[i] * points[pick[i]][c];
      }
      if (wins(s, all, inst.distinguished, inst.model)) {
        ManipulationCertificate cert;
        for (int i = 0; i < n; ++i) cert.ballots.push_back(types[pick[i]]);
        return cert;
      }
      int i = n - 1;
      while (i >= 0 && pick[i] == nt - 1) pick[i--] = 0;
      if (i < 0) break;
      ++pick[i];
    }
  }
  return std::nullopt;
}

}  // namespace spelect
