#include "spelect/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "spelect/errors.hpp"

namespace spelect {

bool ApprovalBallot::approves(int c) const {
  return std::binary_search(approved.begin(), approved.end(), c);
}

namespace {

void check_candidates(const std::vector<std::string>& candidates) {
  std::unordered_set<std::string> seen;
  for (const auto& id : candidates) {
    if (id.empty()) throw InvalidInput("empty candidate id");
    if (!seen.insert(id).second) throw InvalidInput("duplicate candidate '" + id + "'");
  }
}

void check_counts(Score weight, Score multiplicity, InputMode mode) {
  if (weight < 0) throw InvalidInput("negative ballot weight");
  if (multiplicity < 1) throw InvalidInput("ballot multiplicity must be positive");
  if (mode == InputMode::kStandard && multiplicity != 1) {
    throw InvalidInput("multiplicity > 1 requires succinct input mode");
  }
}

}  // namespace

void validate(const LinearElection& e) {
  check_candidates(e.candidates);
  const int m = e.size();
  std::vector<char> seen(m);
  for (const auto& b : e.ballots) {
    check_counts(b.weight, b.multiplicity, e.mode);
    if (static_cast<int>(b.ranking.size()) != m) {
      throw InvalidInput("ranking does not list every candidate exactly once");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int c : b.ranking) {
      if (c < 0 || c >= m || seen[c]) throw InvalidInput("ranking is not a permutation of the candidates");
      seen[c] = 1;
    }
  }
}

void validate(const ApprovalElection& e) {
  check_candidates(e.candidates);
  const int m = e.size();
  for (const auto& b : e.ballots) {
    check_counts(b.weight, b.multiplicity, e.mode);
    for (std::size_t i = 0; i < b.approved.size(); ++i) {
      int c = b.approved[i];
      if (c < 0 || c >= m) throw InvalidInput("approved candidate out of range");
      if (i > 0 && b.approved[i - 1] >= c) throw InvalidInput("approved set must be sorted without repeats");
    }
  }
}

ScoringVector::ScoringVector(std::vector<Score> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw InvalidInput("scoring vector must be nonempty");
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i] < 0) throw InvalidInput("scoring vector entries must be non-negative");
    if (i > 0 && alpha_[i] > alpha_[i - 1]) throw InvalidInput("scoring vector must be non-increasing");
  }
}

ScoringVector ScoringVector::plurality(int m) {
  if (m < 1) throw InvalidInput("plurality needs at least one candidate");
  std::vector<Score> a(m, 0);
  a[0] = 1;
  return ScoringVector(std::move(a));
}

ScoringVector ScoringVector::veto(int m) { return j_veto(m, 1); }

ScoringVector ScoringVector::j_veto(int m, int j) {
  if (m < 1 || j < 0 || j > m) throw InvalidInput("j-veto needs 0 <= j <= m and m >= 1");
  std::vector<Score> a(m, 1);
  std::fill(a.end() - j, a.end(), 0);
  return ScoringVector(std::move(a));
}

ScoringVector ScoringVector::borda(int m) {
  if (m < 1) throw InvalidInput("borda needs at least one candidate");
  std::vector<Score> a(m);
  for (int i = 0; i < m; ++i) a[i] = m - 1 - i;
  return ScoringVector(std::move(a));
}

Score ScoreTable::max() const {
  return scores.empty() ? 0 : *std::max_element(scores.begin(), scores.end());
}

ScoreTable approval_scores(const ApprovalElection& e) {
  ScoreTable t{std::vector<Score>(e.size(), 0)};
  for (const auto& b : e.ballots) {
    for (int c : b.approved) t.scores[c] += b.count();
  }
  return t;
}

ScoreTable scoring_scores(const LinearElection& e, const ScoringVector& alpha) {
  if (alpha.size() != e.size()) throw InvalidInput("scoring vector length differs from candidate count");
  ScoreTable t{std::vector<Score>(e.size(), 0)};
  for (const auto& b : e.ballots) {
    for (int pos = 0; pos < static_cast<int>(b.ranking.size()); ++pos) {
      t.scores[b.ranking[pos]] += b.count() * alpha[pos];
    }
  }
  return t;
}

ScoreTable plurality_scores(const LinearElection& e) {
  ScoreTable t{std::vector<Score>(e.size(), 0)};
  for (const auto& b : e.ballots) {
    if (!b.ranking.empty()) t.scores[b.ranking.front()] += b.count();
  }
  return t;
}

std::vector<int> winners(const ScoreTable& scores, WinnerModel model) {
  std::vector<int> out;
  if (scores.scores.empty()) return out;
  const Score best = scores.max();
  for (int c = 0; c < scores.size(); ++c) {
    if (scores[c] == best) out.push_back(c);
  }
  if (model == WinnerModel::kUnique && out.size() > 1) out.clear();
  return out;
}

std::vector<int> winners(const ApprovalElection& e, WinnerModel model) {
  return winners(approval_scores(e), model);
}

std::vector<int> winners(const LinearElection& e, const ScoringVector& alpha, WinnerModel model) {
  return winners(scoring_scores(e, alpha), model);
}

bool is_winner(const ScoreTable& scores, int c, WinnerModel model) {
  for (int d = 0; d < scores.size(); ++d) {
    if (d == c) continue;
    if (scores[d] > scores[c]) return false;
    if (model == WinnerModel::kUnique && scores[d] == scores[c]) return false;
  }
  return true;
}

std::vector<Score> plurality_scores_among(const LinearElection& e, const std::vector<char>& active) {
  std::vector<Score> s(e.size(), 0);
  for (const auto& b : e.ballots) {
    for (int c : b.ranking) {
      if (active[c]) {
        s[c] += b.count();
        break;
      }
    }
  }
  return s;
}

LinearElection restrict(const LinearElection& e, std::span<const int> keep) {
  const int m = e.size();
  std::vector<int> new_index(m, -1);
  for (int c : keep) {
    if (c < 0 || c >= m) throw InvalidInput("restrict: candidate out of range");
    new_index[c] = 0;
  }
  LinearElection out;
  out.mode = e.mode;
  for (int c = 0; c < m; ++c) {
    if (new_index[c] == 0) {
      new_index[c] = out.size();
      out.candidates.push_back(e.candidates[c]);
    }
  }
  if (out.candidates.empty()) throw InvalidInput("restrict: keep set must be nonempty");
  out.ballots.reserve(e.ballots.size());
  for (const auto& b : e.ballots) {
    LinearBallot nb{{}, b.weight, b.multiplicity};
    nb.ranking.reserve(out.candidates.size());
    for (int c : b.ranking) {
      if (new_index[c] >= 0) nb.ranking.push_back(new_index[c]);
    }
    out.ballots.push_back(std::move(nb));
  }
  return out;
}

LinearElection restrict(const LinearElection& e, const std::vector<std::string>& keep_ids) {
  std::vector<int> keep;
  keep.reserve(keep_ids.size());
  for (const auto& id : keep_ids) keep.push_back(e.index_of(id));
  return restrict(e, keep);
}

namespace {

template <typename E>
E expand_impl(const E& e) {
  E out;
  out.candidates = e.candidates;
  out.mode = InputMode::kStandard;
  for (const auto& b : e.ballots) {
    auto unit = b;
    unit.multiplicity = 1;
    for (Score i = 0; i < b.multiplicity; ++i) out.ballots.push_back(unit);
  }
  return out;
}

}  // namespace

LinearElection expand_multiplicities(const LinearElection& e) { return expand_impl(e); }
ApprovalElection expand_multiplicities(const ApprovalElection& e) { return expand_impl(e); }

}  // namespace spelect
