#include "spelect/control_plurality.hpp"

#include <algorithm>
#include <limits>

#include "spelect/errors.hpp"

namespace spelect {

namespace {

// Candidates laid out along the axis. rank[v][x] is where voter v ranks the
// candidate at position x (lower is better).
struct Line {
  std::vector<char> registered;
  std::vector<char> dummy;
  std::vector<std::vector<int>> rank;
  std::vector<Score> weight;

  int size() const { return static_cast<int>(registered.size()); }

  // A registered candidate every voter ranks below everything present. It
  // never scores.
  void pad(bool front) {
    int worst = size();
    for (const auto& r : rank) {
      for (int x : r) worst = std::max(worst, x + 1);
    }
    if (front) {
      registered.insert(registered.begin(), 1);
      dummy.insert(dummy.begin(), 1);
      for (auto& r : rank) r.insert(r.begin(), worst);
    } else {
      registered.push_back(1);
      dummy.push_back(1);
      for (auto& r : rank) r.push_back(worst);
    }
  }

  Line slice(int from, int to, const std::vector<int>& voters) const {
    Line out;
    out.registered.assign(registered.begin() + from, registered.begin() + to + 1);
    out.dummy.assign(dummy.begin() + from, dummy.begin() + to + 1);
    for (int v : voters) {
      out.rank.emplace_back(rank[v].begin() + from, rank[v].begin() + to + 1);
      out.weight.push_back(weight[v]);
    }
    return out;
  }
};

Line make_line(const LinearElection& e, const std::vector<bool>& spoiler, const Axis& axis) {
  const auto pos = axis.positions();
  Line line;
  line.registered.resize(e.size());
  line.dummy.assign(e.size(), 0);
  for (int x = 0; x < e.size(); ++x) line.registered[x] = spoiler[axis.order[x]] ? 0 : 1;
  for (const auto& b : e.ballots) {
    std::vector<int> r(e.size());
    for (int k = 0; k < static_cast<int>(b.ranking.size()); ++k) r[pos[b.ranking[k]]] = k;
    line.rank.push_back(std::move(r));
    line.weight.push_back(b.count());
  }
  return line;
}

// Score of position j when only i, j, k take part; i or k may be -1 (absent).
Score triple_score(const Line& line, int i, int j, int k) {
  Score s = 0;
  for (std::size_t v = 0; v < line.rank.size(); ++v) {
    const auto& r = line.rank[v];
    if ((i < 0 || r[j] < r[i]) && (k < 0 || r[j] < r[k])) s += line.weight[v];
  }
  return s;
}

constexpr Score kInfinity = std::numeric_limits<Score>::max();

struct Choice {
  Score size = kInfinity;
  std::vector<int> positions;  // ascending

  bool finite() const { return size != kInfinity; }
  bool better_than(const Choice& o) const {
    if (size != o.size) return size < o.size;
    return positions < o.positions;
  }
};

// The f(i,j) dynamic program: f(i,j) is the fewest spoilers in a chosen prefix
// whose last two members are i < j, where every member before j already scores
// at most b. A dummy registered candidate is put in front so the first member
// is fixed.
std::optional<std::vector<int>> demote(Line line, Score b) {
  if (std::none_of(line.registered.begin(), line.registered.end(), [](char r) { return r != 0; })) {
    return std::vector<int>{};
  }
  if (b < 0) return std::nullopt;
  int shift = 1;
  line.pad(true);
  if (line.size() < 3) {
    line.pad(true);
    shift = 2;
  }
  const int m = line.size();

  std::vector<int> registered_prefix(m + 1, 0);
  for (int x = 0; x < m; ++x) registered_prefix[x + 1] = registered_prefix[x] + line.registered[x];
  auto registered_between = [&](int a, int c) {  // strictly between a < c
    return registered_prefix[c] - registered_prefix[a + 1] > 0;
  };

  // s(i,j,k) for i in [-1, j), k in (j, m]; k == m means absent.
  const int stride_j = m + 1;
  const int stride_i = m * stride_j;
  std::vector<Score> s(static_cast<std::size_t>(m + 1) * stride_i, 0);
  auto s_at = [&](int i, int j, int k) -> Score& {
    return s[static_cast<std::size_t>(i + 1) * stride_i + static_cast<std::size_t>(j) * stride_j + k];
  };
  for (std::size_t v = 0; v < line.rank.size(); ++v) {
    const auto& r = line.rank[v];
    const Score w = line.weight[v];
    for (int j = 0; j < m; ++j) {
      if (line.dummy[j]) continue;
      for (int i = -1; i < j; ++i) {
        if (i >= 0 && r[i] < r[j]) continue;
        for (int k = j + 1; k <= m; ++k) {
          if (k < m && r[k] < r[j]) continue;
          s_at(i, j, k) += w;
        }
      }
    }
  }

  auto spoiler = [&](int x) { return line.registered[x] ? 0 : 1; };
  std::vector<std::vector<Choice>> f(m, std::vector<Choice>(m));
  for (int j = 1; j < m; ++j) {
    if (registered_between(0, j) || s_at(-1, 0, j) > b) continue;
    f[0][j].size = spoiler(j);
    if (spoiler(j)) f[0][j].positions.push_back(j);
  }
  for (int j = 1; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      if (registered_between(j, k)) continue;
      Choice best;
      for (int i = 0; i < j; ++i) {
        if (!f[i][j].finite() || s_at(i, j, k) > b) continue;
        Choice cand{f[i][j].size + spoiler(k), f[i][j].positions};
        if (spoiler(k)) cand.positions.push_back(k);
        if (cand.better_than(best)) best = std::move(cand);
      }
      f[j][k] = std::move(best);
    }
  }
  Choice answer;
  for (int j = 1; j < m; ++j) {
    if (registered_prefix[m] - registered_prefix[j + 1] > 0) continue;
    for (int i = 0; i < j; ++i) {
      if (f[i][j].finite() && s_at(i, j, m) <= b && f[i][j].better_than(answer)) answer = f[i][j];
    }
  }
  if (!answer.finite()) return std::nullopt;
  for (int& x : answer.positions) x -= shift;
  return answer.positions;
}

bool wins_among(const std::vector<Score>& scores, const std::vector<char>& active, int c, WinnerModel model) {
  for (int d = 0; d < static_cast<int>(scores.size()); ++d) {
    if (d == c || !active[d]) continue;
    if (scores[d] > scores[c]) return false;
    if (model == WinnerModel::kUnique && scores[d] == scores[c]) return false;
  }
  return true;
}

std::vector<char> registered_set(const CandidateControlInstance& inst) {
  std::vector<char> active(inst.election.size());
  for (int c = 0; c < inst.election.size(); ++c) active[c] = inst.spoiler[c] ? 0 : 1;
  return active;
}

CandidateCertificate to_certificate(const Axis& axis, const std::vector<int>& positions) {
  CandidateCertificate cert;
  for (int x : positions) cert.candidates.push_back(axis.order[x]);
  return cert;
}

Score effective_budget(const CandidateControlInstance& inst) {
  if (inst.action == CandidateAction::kUnlimitedAddCandidates) {
    return std::count(inst.spoiler.begin(), inst.spoiler.end(), true);
  }
  return inst.budget;
}

}  // namespace

void validate(const CandidateControlInstance& inst) {
  validate(inst.election);
  const int m = inst.election.size();
  if (static_cast<int>(inst.spoiler.size()) != m) throw InvalidInput("spoiler flags must cover every candidate");
  if (inst.distinguished < 0 || inst.distinguished >= m) throw InvalidInput("distinguished candidate not in the election");
  if (inst.spoiler[inst.distinguished]) throw InvalidInput("distinguished candidate must be registered");
  if (inst.budget < 0) throw InvalidInput("budget must be non-negative");
  if (inst.action == CandidateAction::kDeleteCandidates &&
      std::find(inst.spoiler.begin(), inst.spoiler.end(), true) != inst.spoiler.end()) {
    throw InvalidInput("deleting candidates takes no spoiler candidates");
  }
  if (inst.axis && !inst.axis->is_permutation_of(m)) throw InvalidInput("axis is not a permutation of the candidates");
}

Axis resolve_axis(const CandidateControlInstance& inst) {
  if (inst.axis) {
    if (!linear_consistent(inst.election, *inst.axis)) throw InvalidInput(kInvalidAxisMessage);
    return *inst.axis;
  }
  auto found = find_axis_linear(inst.election);
  if (!found) throw InvalidInput("ballots are not single-peaked for any axis");
  return *found;
}

Score local_score(const LinearElection& e, int c, const Axis& axis) {
  const auto pos = axis.positions();
  std::vector<char> active(e.size(), 0);
  active[c] = 1;
  if (pos[c] > 0) active[axis.order[pos[c] - 1]] = 1;
  if (pos[c] + 1 < axis.size()) active[axis.order[pos[c] + 1]] = 1;
  return plurality_scores_among(e, active)[c];
}

std::optional<std::vector<int>> demote_by_adding_candidates(const LinearElection& e, const std::vector<bool>& spoiler,
                                                            const Axis& axis, Score bound) {
  validate(e);
  if (static_cast<int>(spoiler.size()) != e.size()) throw InvalidInput("spoiler flags must cover every candidate");
  if (!linear_consistent(e, axis)) throw InvalidInput(kInvalidAxisMessage);
  auto positions = demote(make_line(e, spoiler, axis), bound);
  if (!positions) return std::nullopt;
  return to_certificate(axis, *positions).candidates;
}

std::vector<std::vector<int>> neighborhood(const Axis& axis, const std::vector<char>& present, int c) {
  const auto pos = axis.positions();
  std::vector<int> left, right;  // nearest first
  for (int x = pos[c] - 1; x >= 0; --x) {
    if (present[axis.order[x]]) left.push_back(axis.order[x]);
  }
  for (int x = pos[c] + 1; x < axis.size(); ++x) {
    if (present[axis.order[x]]) right.push_back(axis.order[x]);
  }
  std::vector<std::vector<int>> family;
  for (std::size_t i = 0; i <= left.size(); ++i) {
    for (std::size_t j = 0; j <= right.size(); ++j) {
      std::vector<int> d(left.begin(), left.begin() + i);
      std::reverse(d.begin(), d.end());
      d.insert(d.end(), right.begin(), right.begin() + j);
      family.push_back(std::move(d));
    }
  }
  return family;
}

std::optional<CandidateCertificate> solve_ccac_plurality(const CandidateControlInstance& inst) {
  validate(inst);
  if (inst.goal != ControlGoal::kConstructive || inst.action == CandidateAction::kDeleteCandidates) {
    throw InvalidInput("solve_ccac_plurality needs a constructive adding instance");
  }
  const Axis axis = resolve_axis(inst);
  const Score budget = effective_budget(inst);
  const auto registered = registered_set(inst);
  if (wins_among(plurality_scores_among(inst.election, registered), registered, inst.distinguished, inst.model)) {
    return CandidateCertificate{};
  }

  Line line = make_line(inst.election, inst.spoiler, axis);
  line.pad(true);
  line.pad(false);
  const int m = line.size();
  const int p = axis.positions()[inst.distinguished] + 1;
  int lp = p - 1;
  while (!line.registered[lp]) --lp;
  int rp = p + 1;
  while (!line.registered[rp]) ++rp;
  const Score margin = inst.model == WinnerModel::kUnique ? 1 : 0;

  Choice best;
  std::vector<int> left_voters, right_voters;
  for (int l = lp; l < p; ++l) {
    for (int r = p + 1; r <= rp; ++r) {
      const Score bound = triple_score(line, l, p, r) - margin;
      left_voters.clear();
      right_voters.clear();
      for (int v = 0; v < static_cast<int>(line.rank.size()); ++v) {
        const auto& rk = line.rank[v];
        int top = p;
        for (int x = 0; x < m; ++x) {
          if ((x <= l || x >= r) && rk[x] < rk[top]) top = x;
        }
        if (top <= l) left_voters.push_back(v);
        if (top >= r) right_voters.push_back(v);
      }
      Line left = line.slice(0, l, left_voters);
      left.registered[l] = 1;
      Line right = line.slice(r, m - 1, right_voters);
      right.registered[0] = 1;
      auto bl = demote(std::move(left), bound);
      if (!bl) continue;
      auto br = demote(std::move(right), bound);
      if (!br) continue;
      Choice c;
      c.positions = *bl;
      if (!line.registered[l]) c.positions.push_back(l);
      if (!line.registered[r]) c.positions.push_back(r);
      for (int x : *br) c.positions.push_back(x + r);
      std::sort(c.positions.begin(), c.positions.end());
      c.size = static_cast<Score>(c.positions.size());
      if (c.better_than(best)) best = std::move(c);
    }
  }
  if (!best.finite() || best.size > budget) return std::nullopt;
  for (int& x : best.positions) x -= 1;  // drop the front dummy
  return to_certificate(axis, best.positions);
}

std::optional<CandidateCertificate> solve_ccuac_plurality(const CandidateControlInstance& inst) {
  CandidateControlInstance copy = inst;
  copy.action = CandidateAction::kUnlimitedAddCandidates;
  return solve_ccac_plurality(copy);
}

std::optional<CandidateCertificate> solve_dcac_plurality(const CandidateControlInstance& inst) {
  validate(inst);
  if (inst.goal != ControlGoal::kDestructive || inst.action == CandidateAction::kDeleteCandidates) {
    throw InvalidInput("solve_dcac_plurality needs a destructive adding instance");
  }
  const Axis axis = resolve_axis(inst);
  const int limit = static_cast<int>(std::min<Score>(3, effective_budget(inst)));
  std::vector<int> spoilers;  // axis order
  for (int c : axis.order) {
    if (inst.spoiler[c]) spoilers.push_back(c);
  }
  const int a = static_cast<int>(spoilers.size());
  auto active = registered_set(inst);
  auto check = [&](const std::vector<int>& chosen) {
    auto act = active;
    for (int c : chosen) act[c] = 1;
    return !wins_among(plurality_scores_among(inst.election, act), act, inst.distinguished, inst.model);
  };
  std::vector<int> chosen;
  for (int size = 0; size <= std::min(limit, a); ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      chosen.clear();
      for (int i : idx) chosen.push_back(spoilers[i]);
      if (check(chosen)) return CandidateCertificate{chosen};
      int i = size - 1;
      while (i >= 0 && idx[i] == a - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int t = i + 1; t < size; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return std::nullopt;
}

std::optional<CandidateCertificate> solve_ccdc_plurality(const CandidateControlInstance& inst) {
  validate(inst);
  if (inst.goal != ControlGoal::kConstructive || inst.action != CandidateAction::kDeleteCandidates) {
    throw InvalidInput("solve_ccdc_plurality needs a constructive deleting instance");
  }
  const Axis axis = resolve_axis(inst);
  const int p = inst.distinguished;
  const auto present = registered_set(inst);
  const auto blocks = [&](Score rival, Score mine) {
    return inst.model == WinnerModel::kUnique ? rival >= mine : rival > mine;
  };

  Choice best;
  for (const auto& start : neighborhood(axis, present, p)) {
    if (static_cast<Score>(start.size()) > inst.budget) continue;
    auto active = present;
    for (int c : start) active[c] = 0;
    Score deleted = static_cast<Score>(start.size());
    bool ok = true;
    while (true) {
      const auto scores = plurality_scores_among(inst.election, active);
      int victim = -1;
      for (int c : axis.order) {
        if (c != p && active[c] && blocks(scores[c], scores[p])) {
          victim = c;
          break;
        }
      }
      if (victim < 0) break;
      active[victim] = 0;
      if (++deleted > inst.budget) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Choice c;
    for (int x = 0; x < axis.size(); ++x) {
      if (present[axis.order[x]] && !active[axis.order[x]]) c.positions.push_back(x);
    }
    c.size = deleted;
    if (c.better_than(best)) best = std::move(c);
  }
  if (!best.finite()) return std::nullopt;
  return to_certificate(axis, best.positions);
}

std::optional<CandidateCertificate> solve_dcdc_plurality(const CandidateControlInstance& inst) {
  validate(inst);
  if (inst.goal != ControlGoal::kDestructive || inst.action != CandidateAction::kDeleteCandidates) {
    throw InvalidInput("solve_dcdc_plurality needs a destructive deleting instance");
  }
  const Axis axis = resolve_axis(inst);
  const auto pos = axis.positions();
  const int d = inst.distinguished;
  const auto present = registered_set(inst);
  if (!wins_among(plurality_scores_among(inst.election, present), present, d, inst.model)) {
    return CandidateCertificate{};
  }
  Choice best;
  for (int c : axis.order) {
    if (c == d || !present[c]) continue;
    for (const auto& del : neighborhood(axis, present, c)) {
      if (static_cast<Score>(del.size()) > inst.budget) continue;
      if (std::find(del.begin(), del.end(), d) != del.end()) continue;
      auto active = present;
      for (int x : del) active[x] = 0;
      const auto scores = plurality_scores_among(inst.election, active);
      const bool beaten = inst.model == WinnerModel::kUnique ? scores[c] >= scores[d] : scores[c] > scores[d];
      if (!beaten) continue;
      Choice ch;
      for (int x : del) ch.positions.push_back(pos[x]);
      std::sort(ch.positions.begin(), ch.positions.end());
      ch.size = static_cast<Score>(del.size());
      if (ch.better_than(best)) best = std::move(ch);
    }
  }
  if (!best.finite()) return std::nullopt;
  return to_certificate(axis, best.positions);
}

std::optional<CandidateCertificate> solve_candidate_control(const CandidateControlInstance& inst) {
  if (inst.action == CandidateAction::kDeleteCandidates) {
    return inst.goal == ControlGoal::kConstructive ? solve_ccdc_plurality(inst) : solve_dcdc_plurality(inst);
  }
  if (inst.goal == ControlGoal::kDestructive) return solve_dcac_plurality(inst);
  return solve_ccac_plurality(inst);
}

std::vector<char> participants_after(const CandidateControlInstance& inst, const CandidateCertificate& cert) {
  auto active = registered_set(inst);
  const bool adding = inst.action != CandidateAction::kDeleteCandidates;
  for (int c : cert.candidates) {
    if (c < 0 || c >= inst.election.size()) throw InvalidInput("certificate names an unknown candidate");
    if (adding) {
      if (!inst.spoiler[c]) throw InvalidInput("only spoiler candidates can be added");
      active[c] = 1;
    } else {
      if (inst.spoiler[c] || !active[c] || c == inst.distinguished) {
        throw InvalidInput("certificate deletes a candidate that cannot be deleted");
      }
      active[c] = 0;
    }
  }
  return active;
}

bool certificate_succeeds(const CandidateControlInstance& inst, const CandidateCertificate& cert) {
  auto sorted = cert.candidates;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (static_cast<Score>(sorted.size()) > effective_budget(inst)) return false;
  const auto active = participants_after(inst, cert);
  const bool wins = wins_among(plurality_scores_among(inst.election, active), active, inst.distinguished, inst.model);
  return inst.goal == ControlGoal::kConstructive ? wins : !wins;
}

}  // namespace spelect
