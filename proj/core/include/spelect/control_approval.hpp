#pragma once

#include <optional>
#include <vector>

#include "spelect/model.hpp"
#include "spelect/single_peaked.hpp"

namespace spelect {

enum class VoterAction { kAddVoters, kDeleteVoters };

struct VoterControlInstance {
  ApprovalElection election;         // registered voters
  std::vector<ApprovalBallot> pool;  // unregistered voters, adding only
  int distinguished = 0;
  Score budget = 0;
  std::optional<Axis> axis;
  WinnerModel model = WinnerModel::kUnique;
  VoterAction action = VoterAction::kAddVoters;
};

struct VoterSelection {
  int ballot = 0;  // index into pool (adding) or election.ballots (deleting)
  Score count = 0;
  bool operator==(const VoterSelection&) const = default;
};

struct VoterCertificate {
  std::vector<VoterSelection> selected;  // sorted by ballot index

  Score total() const;
  bool operator==(const VoterCertificate&) const = default;
};

struct DangerousRivals {
  std::vector<int> left;   // nearest to p first
  std::vector<int> right;  // nearest to p first
};

// Throws InvalidInput for malformed instances (including non-unit weights).
void validate(const VoterControlInstance& inst);

// The axis given with the instance (checked against V and the pool), or one
// discovered from them. Throws InvalidInput if none is valid.
Axis resolve_axis(const VoterControlInstance& inst);

DangerousRivals dangerous_rivals(const ApprovalElection& e, int p, const Axis& axis, WinnerModel model);

std::optional<VoterCertificate> solve_ccav_approval(const VoterControlInstance& inst);
std::optional<VoterCertificate> solve_ccdv_approval(const VoterControlInstance& inst);
std::optional<VoterCertificate> solve_voter_control(const VoterControlInstance& inst);

// The registered election after adding or deleting the selected voters.
ApprovalElection apply_certificate(const VoterControlInstance& inst, const VoterCertificate& cert);
bool certificate_succeeds(const VoterControlInstance& inst, const VoterCertificate& cert);

}  // namespace spelect
