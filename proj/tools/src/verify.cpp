#include "verify.hpp"

#include <random>

namespace spelect {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string axis_text(const ElectionDocument& doc, const std::optional<Axis>& axis) {
  if (!axis) return "none";
  std::string out;
  for (int c : axis->order) out += (out.empty() ? "" : ",") + doc.candidates[c];
  return out;
}

template <typename E>
CheckResult check_axis(const ElectionDocument& doc, const E& e, const std::optional<Axis>& found) {
  const auto all = brute_axis(e);
  CheckResult r{"find-axis", "-", axis_text(doc, found), all.empty() ? "none" : axis_text(doc, all.front()), false};
  if (!found) {
    r.agree = all.empty();
  } else {
    r.agree = std::find(all.begin(), all.end(), *found) != all.end();
  }
  return r;
}

}  // namespace

std::vector<CheckResult> verify_document(const ElectionDocument& doc, const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const int m = static_cast<int>(doc.candidates.size());
  std::vector<WinnerModel> models;
  if (o.model) models = {*o.model};
  else models = {WinnerModel::kUnique, WinnerModel::kNonUnique};

  if (doc.kind != BallotKind::kLinear && m <= 7) {
    auto e = approval_election(doc);
    e.ballots.insert(e.ballots.end(), doc.pool.begin(), doc.pool.end());
    out.push_back(check_axis(doc, e, find_axis_approval(e)));
  }
  if (doc.kind == BallotKind::kLinear && m <= 7) {
    const auto e = linear_election(doc);
    out.push_back(check_axis(doc, e, find_axis_linear(e)));
  }
  if (!doc.target) return out;

  for (WinnerModel model : models) {
    const std::string mname = model_name(model);
    if (doc.kind != BallotKind::kLinear) {
      for (std::string action : {"ccav", "ccdv"}) {
        if (action == "ccav" && doc.pool.empty()) continue;
        const auto inst = voter_control_instance(doc, action, o.budget, model);
        const auto got = solve_voter_control(inst);
        const auto want = brute_control(inst);
        bool ok = got.has_value() == want.has_value();
        if (got) ok = ok && got->total() <= inst.budget && certificate_succeeds(inst, *got);
        out.push_back({action, mname, yes_no(got.has_value()), yes_no(want.has_value()), ok});
      }
    } else {
      const bool deleting = doc.spoilers.empty();
      const std::vector<std::string> actions =
          deleting ? std::vector<std::string>{"ccdc", "dcdc"} : std::vector<std::string>{"ccac", "ccuac", "dcac", "dcuac"};
      for (const auto& action : actions) {
        const auto inst = candidate_control_instance(doc, action, o.budget, model);
        const auto got = solve_candidate_control(inst);
        const auto want = brute_control(inst);
        bool ok = got.has_value() == want.has_value();
        if (got) ok = ok && certificate_succeeds(inst, *got);
        out.push_back({action, mname, yes_no(got.has_value()), yes_no(want.has_value()), ok});
      }
      if (!doc.manipulators.empty() && (o.rule || doc.rule)) {
        const auto inst = manipulation_instance(doc, o.rule, model);
        const auto got = solve_manipulation(inst);
        const auto want = brute_manipulation(inst);
        bool ok = got.certificate.has_value() == want.has_value();
        if (got.certificate) ok = ok && certificate_succeeds(inst, *got.certificate, *got.axis_used);
        out.push_back({"manip/" + got.method, mname, yes_no(got.certificate.has_value()), yes_no(want.has_value()), ok});
      }
    }
  }
  return out;
}

BatchItem batch_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  BatchItem item;
  GenOptions g;
  g.seed = rng();
  switch (seed % 4) {
    case 0:
      g.kind = GeneratedKind::kApproval;
      g.candidates = draw(2, 5);
      g.voters = draw(0, 5);
      g.pool = draw(0, 4);
      break;
    case 1:
      g.candidates = draw(2, 6);
      g.voters = draw(1, 5);
      g.spoilers = draw(1, g.candidates - 1);
      break;
    case 2:
      g.candidates = draw(2, 6);
      g.voters = draw(1, 5);
      break;
    default: {
      g.candidates = draw(3, 5);
      g.voters = draw(1, 4);
      g.weight_cap = 4;
      g.manipulators = draw(1, 3);
      break;
    }
  }
  item.doc = gen_random_sp(g);
  item.options.budget = draw(0, 3);
  if (seed % 4 == 3) {
    const int m = g.candidates;
    std::vector<Score> alpha(m);
    Score v = draw(0, 3);
    for (int i = m - 1; i >= 0; --i) {
      alpha[i] = v;
      v += draw(0, 2);
    }
    std::string rule = "score:";
    for (int i = 0; i < m; ++i) rule += (i ? "," : "") + std::to_string(alpha[i]);
    item.doc.rule = rule;
    // Leave the axis out half the time so axis-free manipulation is exercised.
    if (draw(0, 1) == 0) item.doc.axis.reset();
  }
  return item;
}

}  // namespace spelect
