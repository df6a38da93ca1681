#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spelect/errors.hpp"

namespace spelect {

using Score = std::int64_t;

enum class WinnerModel { kUnique, kNonUnique };
enum class InputMode { kStandard, kSuccinct };

// Candidates are referred to by their index into Election::candidates.
struct LinearBallot {
  std::vector<int> ranking;  // most preferred first
  Score weight = 1;
  Score multiplicity = 1;

  Score count() const { return weight * multiplicity; }
  bool operator==(const LinearBallot&) const = default;
};

struct ApprovalBallot {
  std::vector<int> approved;  // sorted, no repeats
  Score weight = 1;
  Score multiplicity = 1;

  Score count() const { return weight * multiplicity; }
  bool approves(int c) const;
  bool operator==(const ApprovalBallot&) const = default;
};

template <typename Ballot>
struct Election {
  std::vector<std::string> candidates;
  std::vector<Ballot> ballots;
  InputMode mode = InputMode::kStandard;

  int size() const { return static_cast<int>(candidates.size()); }
  // Index of a candidate id; throws InvalidInput for unknown ids.
  int index_of(std::string_view id) const;
  bool operator==(const Election&) const = default;
};

using LinearElection = Election<LinearBallot>;
using ApprovalElection = Election<ApprovalBallot>;

// Throws InvalidInput describing the first violated invariant.
void validate(const LinearElection& e);
void validate(const ApprovalElection& e);

class ScoringVector {
 public:
  explicit ScoringVector(std::vector<Score> alpha);

  static ScoringVector plurality(int m);
  static ScoringVector veto(int m);
  // (1^{m-j}, 0^j)
  static ScoringVector j_veto(int m, int j);
  static ScoringVector borda(int m);

  int size() const { return static_cast<int>(alpha_.size()); }
  Score operator[](int position) const { return alpha_[position]; }
  const std::vector<Score>& values() const { return alpha_; }
  bool operator==(const ScoringVector&) const = default;

 private:
  std::vector<Score> alpha_;
};

// Scores indexed by candidate index, in election candidate order.
struct ScoreTable {
  std::vector<Score> scores;

  int size() const { return static_cast<int>(scores.size()); }
  Score operator[](int c) const { return scores[c]; }
  Score max() const;
  bool operator==(const ScoreTable&) const = default;
};

ScoreTable approval_scores(const ApprovalElection& e);
ScoreTable scoring_scores(const LinearElection& e, const ScoringVector& alpha);
ScoreTable plurality_scores(const LinearElection& e);

// Sorted candidate indices. Unique: the strict maximum alone, or empty on a tie.
std::vector<int> winners(const ScoreTable& scores, WinnerModel model);
std::vector<int> winners(const ApprovalElection& e, WinnerModel model);
std::vector<int> winners(const LinearElection& e, const ScoringVector& alpha, WinnerModel model);
bool is_winner(const ScoreTable& scores, int c, WinnerModel model);

// Plurality scores when only candidates with active[c] != 0 take part. Inactive
// candidates get 0. Equivalent to plurality over restrict(e, active set).
std::vector<Score> plurality_scores_among(const LinearElection& e, const std::vector<char>& active);

// Keeps the listed candidates (indices into e.candidates) in their original
// candidate-list order; rankings are filtered and re-indexed.
LinearElection restrict(const LinearElection& e, std::span<const int> keep);
LinearElection restrict(const LinearElection& e, const std::vector<std::string>& keep_ids);

// Splits every ballot into `multiplicity` unit copies.
LinearElection expand_multiplicities(const LinearElection& e);
ApprovalElection expand_multiplicities(const ApprovalElection& e);

template <typename Ballot>
int Election<Ballot>::index_of(std::string_view id) const {
  for (int i = 0; i < size(); ++i) {
    if (candidates[i] == id) return i;
  }
  throw InvalidInput("unknown candidate '" + std::string(id) + "'");
}

}  // namespace spelect
