#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spelect/model.hpp"
#include "spelect/single_peaked.hpp"

namespace spelect {

struct ManipulationInstance {
  LinearElection nonmanipulators;  // candidates and the weighted ballots S
  std::vector<Score> manipulator_weights;
  int distinguished = 0;
  std::optional<Axis> axis;
  ScoringVector rule = ScoringVector({0});
  WinnerModel model = WinnerModel::kNonUnique;
};

// One ranking per manipulator, in manipulator order.
struct ManipulationCertificate {
  std::vector<std::vector<int>> ballots;
  bool operator==(const ManipulationCertificate&) const = default;
};

struct ExactLimits {
  std::size_t max_states = 2'000'000;
};

void validate(const ManipulationInstance& inst);

// Given axis (checked against S), or every consistent axis up to reversal
// when none is given (at most 8 candidates).
std::vector<Axis> candidate_axes(const ManipulationInstance& inst);

// Each solver uses the instance axis when present and otherwise tries every
// axis consistent with S, returning the first success.
std::optional<ManipulationCertificate> solve_borda3(const ManipulationInstance& inst);
std::optional<ManipulationCertificate> solve_ones_zeros(const ManipulationInstance& inst);
std::optional<ManipulationCertificate> solve_veto(const ManipulationInstance& inst);
std::optional<ManipulationCertificate> solve_3veto(const ManipulationInstance& inst);
std::optional<ManipulationCertificate> solve_dichotomy3(const ManipulationInstance& inst);
std::optional<ManipulationCertificate> exact_ccwm(const ManipulationInstance& inst, const ExactLimits& limits = {});
std::optional<ManipulationCertificate> end_candidate_shortcut(const ManipulationInstance& inst);

// The closed-form 3-veto decision that is correct from six candidates on,
// applied unchanged to smaller m. It is wrong for m = 5 on some instances.
bool three_veto_large_m_rule(const ManipulationInstance& inst);

struct ManipulationOutcome {
  std::optional<ManipulationCertificate> certificate;
  std::string method;  // which branch decided the instance
  std::optional<Axis> axis_used;
};

// Picks the polynomial branch that applies to (m, rule, position of p) and
// falls back to exact_ccwm.
ManipulationOutcome solve_manipulation(const ManipulationInstance& inst, const ExactLimits& limits = {});

// Nonmanipulators plus the certificate's ballots with the manipulator weights.
LinearElection apply_certificate(const ManipulationInstance& inst, const ManipulationCertificate& cert);
// Certificate ballots must be consistent with `axis`.
bool certificate_succeeds(const ManipulationInstance& inst, const ManipulationCertificate& cert, const Axis& axis);

}  // namespace spelect
