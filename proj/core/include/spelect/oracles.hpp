#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spelect/control_approval.hpp"
#include "spelect/control_plurality.hpp"
#include "spelect/manipulation.hpp"
#include "spelect/model.hpp"
#include "spelect/single_peaked.hpp"

namespace spelect {

// Exhaustive reference implementations. Each throws ResourceLimit instead of
// truncating when an instance exceeds its cap.
struct OracleLimits {
  int max_axis_candidates = 7;
  std::uint64_t max_enumeration = 50'000'000;
};

// Every permutation the profile is consistent with, in lexicographic order.
std::vector<Axis> brute_axis(const LinearElection& e, const OracleLimits& limits = {});
std::vector<Axis> brute_axis(const ApprovalElection& e, const OracleLimits& limits = {});

// Smallest successful selection within budget; among equal sizes the first in
// enumeration order.
std::optional<VoterCertificate> brute_control(const VoterControlInstance& inst, const OracleLimits& limits = {});
std::optional<CandidateCertificate> brute_control(const CandidateControlInstance& inst,
                                                  const OracleLimits& limits = {});

// First successful assignment of axis-consistent ballots to manipulators, in
// lexicographic order of ballot-type indices. Without an instance axis, every
// axis consistent with the nonmanipulators is tried.
std::optional<ManipulationCertificate> brute_manipulation(const ManipulationInstance& inst,
                                                          const OracleLimits& limits = {});

}  // namespace spelect
