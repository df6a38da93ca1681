#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spelect/control_approval.hpp"
#include "spelect/control_plurality.hpp"
#include "spelect/manipulation.hpp"
#include "spelect/model.hpp"
#include "spelect/reductions.hpp"

namespace spelect {

enum class BallotKind { kNone, kLinear, kApproval };

// In-memory form of the election text format. Candidate references are
// indices into `candidates`; spoilers are ids of unregistered candidates.
struct ElectionDocument {
  std::vector<std::string> candidates;
  std::optional<std::vector<int>> axis;
  std::optional<int> target;
  std::optional<std::string> rule;
  std::vector<Score> manipulators;
  InputMode mode = InputMode::kStandard;
  BallotKind kind = BallotKind::kNone;
  std::vector<LinearBallot> linear;
  std::vector<ApprovalBallot> approval;
  std::vector<ApprovalBallot> pool;
  std::vector<int> spoilers;  // sorted

  bool operator==(const ElectionDocument&) const = default;
};

// Throws ParseError with the offending line and column.
ElectionDocument parse_election(std::string_view text);
std::string serialize(const ElectionDocument& doc);

std::string format_ballot(const ElectionDocument& doc, const LinearBallot& b);
std::string format_ballot(const ElectionDocument& doc, const ApprovalBallot& b);

WinnerModel parse_model(std::string_view text);
std::string model_name(WinnerModel model);
// plurality | veto | borda | score:a1,a2,...  (approval is handled by callers)
ScoringVector parse_rule(std::string_view text, int m);

LinearElection linear_election(const ElectionDocument& doc);
ApprovalElection approval_election(const ElectionDocument& doc);
std::optional<Axis> document_axis(const ElectionDocument& doc);

// Control action names: ccav ccdv ccac ccuac dcac dcuac ccdc dcdc.
bool is_voter_action(std::string_view action);
bool is_candidate_action(std::string_view action);
VoterControlInstance voter_control_instance(const ElectionDocument& doc, std::string_view action, Score budget,
                                            WinnerModel model);
CandidateControlInstance candidate_control_instance(const ElectionDocument& doc, std::string_view action, Score budget,
                                                    WinnerModel model);
// The rule comes from `rule_text` when given, else from the RULE section.
ManipulationInstance manipulation_instance(const ElectionDocument& doc, std::optional<std::string> rule_text,
                                           WinnerModel model);

// Result documents are JSON objects with keys in alphabetical order.
std::string voter_control_result(const ElectionDocument& doc, const VoterControlInstance& inst,
                                 std::string_view action, const std::optional<VoterCertificate>& cert);
std::string candidate_control_result(const ElectionDocument& doc, const CandidateControlInstance& inst,
                                     std::string_view action, const std::optional<CandidateCertificate>& cert);
std::string manipulation_result(const ElectionDocument& doc, const ManipulationInstance& inst,
                                const ManipulationOutcome& outcome);

// Re-applies the certificate of a result document to the input and checks that
// the recomputed scores equal the recorded scores_after. A "no" result replays
// trivially. Throws InvalidInput on malformed results.
bool replay_result(const ElectionDocument& doc, std::string_view result_json);

enum class GeneratedKind { kLinear, kApproval };

struct GenOptions {
  std::uint64_t seed = 0;
  int candidates = 4;
  int voters = 5;
  GeneratedKind kind = GeneratedKind::kLinear;
  Score weight_cap = 1;
  int pool = 0;          // approval: extra unregistered voters
  int spoilers = 0;      // linear: how many candidates are marked unregistered
  int manipulators = 0;  // linear: manipulator weights drawn up to weight_cap
};

// Deterministic for a given seed on every platform. Every ballot (and pool
// ballot) is consistent with the emitted axis.
ElectionDocument gen_random_sp(const GenOptions& options);

// Reduction instances packaged as documents with AXIS, TARGET, RULE and
// MANIPULATORS set.
ElectionDocument manipulation_document(const ManipulationInstance& inst);

}  // namespace spelect
