#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spelect/model.hpp"

namespace spelect {

// Societal order: order[i] is the candidate at axis position i.
struct Axis {
  std::vector<int> order;

  int size() const { return static_cast<int>(order.size()); }
  Axis reversed() const;
  // position[c] for every candidate c; requires order to be a permutation of 0..m-1.
  std::vector<int> positions() const;
  bool is_permutation_of(int m) const;
  bool operator==(const Axis&) const = default;
  auto operator<=>(const Axis&) const = default;
};

Axis identity_axis(int m);

// `position` maps candidate -> axis position.
bool ranking_consistent(std::span<const int> ranking, const std::vector<int>& position);
bool approved_consistent(std::span<const int> approved, const std::vector<int>& position);

bool linear_consistent(const LinearElection& e, const Axis& axis);
bool approval_consistent(const ApprovalElection& e, const Axis& axis);

// Both return the lexicographically smaller of the axis found and its reverse.
std::optional<Axis> find_axis_approval(const ApprovalElection& e);
std::optional<Axis> find_axis_linear(const LinearElection& e);

// All 2^{m-1} rankings consistent with the axis: by peak position, then
// left-before-right at each outward step.
std::vector<std::vector<int>> enumerate_sp_linear_ballots(const Axis& axis);

// Every axis the profile is consistent with, one representative (the
// lexicographically smaller) per reversal pair, in lexicographic order.
// Throws ResourceLimit when m exceeds max_candidates.
std::vector<Axis> consistent_axes_up_to_reversal(const LinearElection& e, int max_candidates = 8);

}  // namespace spelect
