#pragma once

#include <optional>
#include <vector>

#include "spelect/model.hpp"
#include "spelect/single_peaked.hpp"

namespace spelect {

enum class CandidateAction { kAddCandidates, kUnlimitedAddCandidates, kDeleteCandidates };
enum class ControlGoal { kConstructive, kDestructive };

struct CandidateControlInstance {
  LinearElection election;    // over registered and spoiler candidates
  std::vector<bool> spoiler;  // spoiler[c]: c is an unregistered candidate
  int distinguished = 0;      // p (constructive) or d (destructive)
  Score budget = 0;           // ignored for unlimited adding
  std::optional<Axis> axis;
  WinnerModel model = WinnerModel::kUnique;
  CandidateAction action = CandidateAction::kAddCandidates;
  ControlGoal goal = ControlGoal::kConstructive;
};

// Candidates added or deleted, ordered by axis position.
struct CandidateCertificate {
  std::vector<int> candidates;
  bool operator==(const CandidateCertificate&) const = default;
};

void validate(const CandidateControlInstance& inst);
Axis resolve_axis(const CandidateControlInstance& inst);

// Plurality score of c computed only from c and its axis neighbours.
Score local_score(const LinearElection& e, int c, const Axis& axis);

// Smallest set of spoilers whose addition keeps every score at most `bound`
// (registered candidates always take part). nullopt stands for "no such set".
std::optional<std::vector<int>> demote_by_adding_candidates(const LinearElection& e, const std::vector<bool>& spoiler,
                                                            const Axis& axis, Score bound);

// The family D(present, c): c's i nearest present left neighbours together
// with its j nearest present right neighbours, for every i and j. Members are
// listed with i as the outer loop and each set ordered by axis position.
std::vector<std::vector<int>> neighborhood(const Axis& axis, const std::vector<char>& present, int c);

std::optional<CandidateCertificate> solve_ccac_plurality(const CandidateControlInstance& inst);
std::optional<CandidateCertificate> solve_ccuac_plurality(const CandidateControlInstance& inst);
std::optional<CandidateCertificate> solve_dcac_plurality(const CandidateControlInstance& inst);
std::optional<CandidateCertificate> solve_ccdc_plurality(const CandidateControlInstance& inst);
std::optional<CandidateCertificate> solve_dcdc_plurality(const CandidateControlInstance& inst);
// Dispatches on action and goal.
std::optional<CandidateCertificate> solve_candidate_control(const CandidateControlInstance& inst);

// Which candidates take part once the certificate is applied.
std::vector<char> participants_after(const CandidateControlInstance& inst, const CandidateCertificate& cert);
bool certificate_succeeds(const CandidateControlInstance& inst, const CandidateCertificate& cert);

}  // namespace spelect
