#include "spelect/control_approval.hpp"

#include <algorithm>
#include <map>

#include "spelect/errors.hpp"

namespace spelect {

Score VoterCertificate::total() const {
  Score t = 0;
  for (const auto& s : selected) t += s.count;
  return t;
}

void validate(const VoterControlInstance& inst) {
  validate(inst.election);
  const int m = inst.election.size();
  if (inst.distinguished < 0 || inst.distinguished >= m) throw InvalidInput("distinguished candidate not in the election");
  if (inst.budget < 0) throw InvalidInput("budget must be non-negative");
  if (inst.action == VoterAction::kDeleteVoters && !inst.pool.empty()) {
    throw InvalidInput("a pool of unregistered voters is only meaningful when adding voters");
  }
  ApprovalElection pool{inst.election.candidates, inst.pool, inst.election.mode};
  validate(pool);
  for (const auto* ballots : {&inst.election.ballots, &inst.pool}) {
    for (const auto& b : *ballots) {
      if (b.weight != 1) throw InvalidInput("voter control uses unweighted ballots");
    }
  }
  if (inst.axis && !inst.axis->is_permutation_of(m)) throw InvalidInput("axis is not a permutation of the candidates");
}

Axis resolve_axis(const VoterControlInstance& inst) {
  ApprovalElection all = inst.election;
  all.ballots.insert(all.ballots.end(), inst.pool.begin(), inst.pool.end());
  if (inst.axis) {
    if (!approval_consistent(all, *inst.axis)) throw InvalidInput(kInvalidAxisMessage);
    return *inst.axis;
  }
  auto found = find_axis_approval(all);
  if (!found) throw InvalidInput("ballots are not single-peaked for any axis");
  return *found;
}

namespace {

bool blocks(Score rival, Score p, WinnerModel model) {
  return model == WinnerModel::kUnique ? rival >= p : rival > p;
}

// Positions along the axis; `mirror` flips them so the same right-side
// routine handles the left side.
struct Span {
  int lo = 0;
  int hi = -1;  // empty when hi < lo
  Score available = 0;
  Score used = 0;
  int index = 0;

  bool empty() const { return hi < lo; }
};

struct Frame {
  std::vector<Score> score;  // by position
  std::vector<Span> spans;
  int p = 0;

  void mirror() {
    const int m = static_cast<int>(score.size());
    std::reverse(score.begin(), score.end());
    for (auto& s : spans) {
      if (s.empty()) continue;
      int lo = m - 1 - s.hi;
      s.hi = m - 1 - s.lo;
      s.lo = lo;
    }
    p = m - 1 - p;
  }

  void apply(const Span& s, Score delta) {
    for (int x = s.lo; x <= s.hi; ++x) score[x] += delta;
  }

  int nearest_right_rival(WinnerModel model) const {
    for (int q = p + 1; q < static_cast<int>(score.size()); ++q) {
      if (blocks(score[q], score[p], model)) return q;
    }
    return -1;
  }
};

std::vector<Span> spans_of(const std::vector<ApprovalBallot>& ballots, const std::vector<int>& pos) {
  std::vector<Span> out;
  for (int i = 0; i < static_cast<int>(ballots.size()); ++i) {
    Span s;
    s.index = i;
    s.available = ballots[i].multiplicity;
    if (!ballots[i].approved.empty()) {
      s.lo = s.hi = pos[ballots[i].approved.front()];
      for (int c : ballots[i].approved) {
        s.lo = std::min(s.lo, pos[c]);
        s.hi = std::max(s.hi, pos[c]);
      }
    }
    out.push_back(s);
  }
  return out;
}

Frame make_frame(const ApprovalElection& e, const std::vector<ApprovalBallot>& spans_from, const Axis& axis, int p) {
  const auto pos = axis.positions();
  Frame f;
  const auto scores = approval_scores(e);
  f.score.resize(e.size());
  for (int c = 0; c < e.size(); ++c) f.score[pos[c]] = scores[c];
  f.spans = spans_of(spans_from, pos);
  f.p = pos[p];
  return f;
}

VoterCertificate collect(const std::vector<Span>& spans) {
  VoterCertificate cert;
  for (const auto& s : spans) {
    if (s.used > 0) cert.selected.push_back({s.index, s.used});
  }
  std::sort(cert.selected.begin(), cert.selected.end(),
            [](const VoterSelection& a, const VoterSelection& b) { return a.ballot < b.ballot; });
  return cert;
}

// Adds pool voters until no rival right of p blocks it. Returns false when the
// budget or the useful pool runs out.
bool add_right(Frame& f, Score& budget, WinnerModel model) {
  const Score margin = model == WinnerModel::kUnique ? 1 : 0;
  for (int q = f.nearest_right_rival(model); q >= 0; q = f.nearest_right_rival(model)) {
    Score need = f.score[q] - f.score[f.p] + margin;
    std::vector<Span*> useful;
    for (auto& s : f.spans) {
      if (!s.empty() && s.lo <= f.p && s.hi >= f.p && s.hi < q && s.used < s.available) useful.push_back(&s);
    }
    std::sort(useful.begin(), useful.end(), [](const Span* a, const Span* b) {
      if (a->lo != b->lo) return a->lo > b->lo;
      if (a->hi != b->hi) return a->hi < b->hi;
      return a->index < b->index;
    });
    for (Span* s : useful) {
      if (need == 0 || budget == 0) break;
      Score take = std::min({s->available - s->used, need, budget});
      s->used += take;
      budget -= take;
      need -= take;
      f.apply(*s, take);
    }
    if (need > 0) return false;
  }
  return true;
}

bool delete_right(Frame& f, Score& budget, WinnerModel model) {
  const Score margin = model == WinnerModel::kUnique ? 1 : 0;
  for (int q = f.nearest_right_rival(model); q >= 0; q = f.nearest_right_rival(model)) {
    Score need = f.score[q] - f.score[f.p] + margin;
    std::vector<Span*> useful;
    for (auto& s : f.spans) {
      if (!s.empty() && s.lo > f.p && s.lo <= q && s.hi >= q && s.used < s.available) useful.push_back(&s);
    }
    std::sort(useful.begin(), useful.end(), [](const Span* a, const Span* b) {
      if (a->hi != b->hi) return a->hi > b->hi;
      if (a->lo != b->lo) return a->lo > b->lo;
      return a->index < b->index;
    });
    for (Span* s : useful) {
      if (need == 0 || budget == 0) break;
      Score take = std::min({s->available - s->used, need, budget});
      s->used += take;
      budget -= take;
      need -= take;
      f.apply(*s, -take);
    }
    if (need > 0) return false;
  }
  return true;
}

}  // namespace

DangerousRivals dangerous_rivals(const ApprovalElection& e, int p, const Axis& axis, WinnerModel model) {
  if (p < 0 || p >= e.size()) throw InvalidInput("distinguished candidate not in the election");
  if (!approval_consistent(e, axis)) throw InvalidInput(kInvalidAxisMessage);
  const auto scores = approval_scores(e);
  const auto pos = axis.positions();
  DangerousRivals out;
  auto walk = [&](int step, std::vector<int>& list) {
    bool anchored = false;
    Score anchor = 0;
    for (int i = pos[p] + step; i >= 0 && i < axis.size(); i += step) {
      const Score s = scores[axis.order[i]];
      if (!anchored ? blocks(s, scores[p], model) : s > anchor) {
        list.push_back(axis.order[i]);
        anchored = true;
        anchor = s;
      }
    }
  };
  walk(+1, out.right);
  walk(-1, out.left);
  return out;
}

std::optional<VoterCertificate> solve_ccav_approval(const VoterControlInstance& inst) {
  validate(inst);
  if (inst.action != VoterAction::kAddVoters) throw InvalidInput("solve_ccav_approval needs an adding instance");
  const Axis axis = resolve_axis(inst);
  Frame f = make_frame(inst.election, inst.pool, axis, inst.distinguished);
  Score budget = inst.budget;
  if (!add_right(f, budget, inst.model)) return std::nullopt;
  f.mirror();
  if (!add_right(f, budget, inst.model)) return std::nullopt;
  return collect(f.spans);
}

std::optional<VoterCertificate> solve_ccdv_approval(const VoterControlInstance& inst) {
  validate(inst);
  if (inst.action != VoterAction::kDeleteVoters) throw InvalidInput("solve_ccdv_approval needs a deleting instance");
  const Axis axis = resolve_axis(inst);
  Frame f = make_frame(inst.election, inst.election.ballots, axis, inst.distinguished);
  Score budget = inst.budget;
  if (!delete_right(f, budget, inst.model)) return std::nullopt;
  f.mirror();
  if (!delete_right(f, budget, inst.model)) return std::nullopt;
  return collect(f.spans);
}

std::optional<VoterCertificate> solve_voter_control(const VoterControlInstance& inst) {
  return inst.action == VoterAction::kAddVoters ? solve_ccav_approval(inst) : solve_ccdv_approval(inst);
}

ApprovalElection apply_certificate(const VoterControlInstance& inst, const VoterCertificate& cert) {
  ApprovalElection out = inst.election;
  const auto& source = inst.action == VoterAction::kAddVoters ? inst.pool : inst.election.ballots;
  std::map<int, Score> taken;
  for (const auto& s : cert.selected) {
    if (s.ballot < 0 || s.ballot >= static_cast<int>(source.size()) || s.count < 0) {
      throw InvalidInput("certificate refers to a ballot that does not exist");
    }
    taken[s.ballot] += s.count;
  }
  for (const auto& [ballot, count] : taken) {
    if (count > source[ballot].multiplicity) throw InvalidInput("certificate uses a ballot more often than available");
  }
  if (cert.total() > inst.budget) throw InvalidInput("certificate exceeds the budget");
  if (inst.action == VoterAction::kAddVoters) {
    for (const auto& [ballot, count] : taken) {
      if (count == 0) continue;
      ApprovalBallot b = source[ballot];
      b.multiplicity = count;
      out.ballots.push_back(std::move(b));
    }
    out.mode = InputMode::kSuccinct;
  } else {
    std::vector<ApprovalBallot> kept;
    for (int i = 0; i < static_cast<int>(out.ballots.size()); ++i) {
      ApprovalBallot b = out.ballots[i];
      auto it = taken.find(i);
      if (it != taken.end()) b.multiplicity -= it->second;
      if (b.multiplicity > 0) kept.push_back(std::move(b));
    }
    out.ballots = std::move(kept);
  }
  return out;
}

bool certificate_succeeds(const VoterControlInstance& inst, const VoterCertificate& cert) {
  const auto after = apply_certificate(inst, cert);
  return is_winner(approval_scores(after), inst.distinguished, inst.model);
}

}  // namespace spelect
