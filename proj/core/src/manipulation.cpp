#include "spelect/manipulation.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "spelect/errors.hpp"

namespace spelect {

void validate(const ManipulationInstance& inst) {
  validate(inst.nonmanipulators);
  const int m = inst.nonmanipulators.size();
  if (m < 1) throw InvalidInput("manipulation needs at least one candidate");
  if (inst.distinguished < 0 || inst.distinguished >= m) throw InvalidInput("distinguished candidate not in the election");
  if (inst.rule.size() != m) throw InvalidInput("scoring vector length differs from candidate count");
  for (Score w : inst.manipulator_weights) {
    if (w < 0) throw InvalidInput("manipulator weights must be non-negative");
  }
  if (inst.axis && !inst.axis->is_permutation_of(m)) throw InvalidInput("axis is not a permutation of the candidates");
}

std::vector<Axis> candidate_axes(const ManipulationInstance& inst) {
  if (inst.axis) {
    if (!linear_consistent(inst.nonmanipulators, *inst.axis)) throw InvalidInput(kInvalidAxisMessage);
    return {*inst.axis};
  }
  auto axes = consistent_axes_up_to_reversal(inst.nonmanipulators, 8);
  if (axes.empty()) throw InvalidInput("nonmanipulator ballots are not single-peaked for any axis");
  return axes;
}

LinearElection apply_certificate(const ManipulationInstance& inst, const ManipulationCertificate& cert) {
  if (cert.ballots.size() != inst.manipulator_weights.size()) {
    throw InvalidInput("certificate needs exactly one ballot per manipulator");
  }
  LinearElection all = inst.nonmanipulators;
  for (std::size_t i = 0; i < cert.ballots.size(); ++i) {
    all.ballots.push_back(LinearBallot{cert.ballots[i], inst.manipulator_weights[i], 1});
  }
  validate(all);
  return all;
}

bool certificate_succeeds(const ManipulationInstance& inst, const ManipulationCertificate& cert, const Axis& axis) {
  const auto pos = axis.positions();
  for (const auto& b : cert.ballots) {
    if (static_cast<int>(b.size()) != axis.size() || !ranking_consistent(b, pos)) return false;
  }
  const auto all = apply_certificate(inst, cert);
  return is_winner(scoring_scores(all, inst.rule), inst.distinguished, inst.model);
}

namespace {

using AxisSolver = std::function<std::optional<ManipulationCertificate>(const ManipulationInstance&, const Axis&)>;

std::optional<ManipulationCertificate> over_axes(const ManipulationInstance& inst, const AxisSolver& solve) {
  validate(inst);
  for (const auto& axis : candidate_axes(inst)) {
    if (auto cert = solve(inst, axis)) return cert;
  }
  return std::nullopt;
}

// p first, then one whole side outward, then the other.
std::vector<int> sweep(const Axis& axis, int p, bool left_first) {
  const int at = axis.positions()[p];
  std::vector<int> out{p};
  auto add_left = [&] {
    for (int x = at - 1; x >= 0; --x) out.push_back(axis.order[x]);
  };
  auto add_right = [&] {
    for (int x = at + 1; x < axis.size(); ++x) out.push_back(axis.order[x]);
  };
  if (left_first) {
    add_left();
    add_right();
  } else {
    add_right();
    add_left();
  }
  return out;
}

// p first, then the rest of positions [lo, hi], then everything else; the
// ballot's top hi-lo+1 candidates are exactly that window.
std::vector<int> window_ballot(const Axis& axis, int p, int lo, int hi) {
  const int at = axis.positions()[p];
  std::vector<int> out{p};
  for (int x = at - 1; x >= lo; --x) out.push_back(axis.order[x]);
  for (int x = at + 1; x <= hi; ++x) out.push_back(axis.order[x]);
  for (int x = lo - 1; x >= 0; --x) out.push_back(axis.order[x]);
  for (int x = hi + 1; x < axis.size(); ++x) out.push_back(axis.order[x]);
  return out;
}

ManipulationCertificate uniform(const ManipulationInstance& inst, const std::vector<int>& ballot) {
  return ManipulationCertificate{std::vector<std::vector<int>>(inst.manipulator_weights.size(), ballot)};
}

std::optional<ManipulationCertificate> accept_if(const ManipulationInstance& inst, ManipulationCertificate cert,
                                                 const Axis& axis) {
  if (certificate_succeeds(inst, cert, axis)) return cert;
  return std::nullopt;
}

// p first, then its left side; at an axis end this is the only p-first ballot.
std::vector<int> p_first(const Axis& axis, int p) { return sweep(axis, p, true); }

struct OnesZeros {
  Score high = 0;
  int ones = 0;
  int zeros = 0;
};

// (x^ones, 0^zeros) with x > 0 and at least one of each, or nullopt.
std::optional<OnesZeros> ones_zeros_shape(const ScoringVector& rule) {
  OnesZeros s;
  s.high = rule[0];
  if (s.high <= 0) return std::nullopt;
  int i = 0;
  while (i < rule.size() && rule[i] == s.high) ++i;
  s.ones = i;
  while (i < rule.size() && rule[i] == 0) ++i;
  if (i != rule.size()) return std::nullopt;
  s.zeros = rule.size() - s.ones;
  return s;
}

Score total_weight(const LinearElection& e) {
  Score w = 0;
  for (const auto& b : e.ballots) w += b.count();
  return w;
}

std::optional<ManipulationCertificate> ones_zeros_core(const ManipulationInstance& inst, const Axis& axis,
                                                       const OnesZeros* shape) {
  const int m = axis.size();
  const int p = inst.distinguished;
  const auto pos = axis.positions();
  const auto s_scores = scoring_scores(inst.nonmanipulators, inst.rule);

  if (shape->zeros == 0) return accept_if(inst, uniform(inst, p_first(axis, p)), axis);

  if (shape->ones != shape->zeros) {
    if (s_scores[p] != shape->high * total_weight(inst.nonmanipulators)) return std::nullopt;
    if (inst.model == WinnerModel::kNonUnique) return accept_if(inst, uniform(inst, p_first(axis, p)), axis);
    // Every rival tied with p must fall outside the top window of some
    // positive-weight manipulator.
    const int k1 = shape->ones;
    const int at = pos[p];
    int left_tied = -1, right_tied = m;
    for (int c = 0; c < m; ++c) {
      if (c == p || s_scores[c] != s_scores[p]) continue;
      if (pos[c] < at) left_tied = std::max(left_tied, pos[c]);
      if (pos[c] > at) right_tied = std::min(right_tied, pos[c]);
    }
    const int lo_start = std::max(0, at - k1 + 1);
    const int hi_start = std::min(at, m - k1);
    auto clears_left = [&](int s) { return s > left_tied; };
    auto clears_right = [&](int s) { return s + k1 - 1 < right_tied; };
    std::vector<int> active;
    for (int i = 0; i < static_cast<int>(inst.manipulator_weights.size()); ++i) {
      if (inst.manipulator_weights[i] > 0) active.push_back(i);
    }
    for (int s = lo_start; s <= hi_start; ++s) {
      if (clears_left(s) && clears_right(s)) {
        return accept_if(inst, uniform(inst, window_ballot(axis, p, s, s + k1 - 1)), axis);
      }
    }
    if (active.size() < 2) return std::nullopt;
    int sl = -1, sr = -1;
    for (int s = lo_start; s <= hi_start; ++s) {
      if (sl < 0 && clears_left(s)) sl = s;
      if (sr < 0 && clears_right(s)) sr = s;
    }
    if (sl < 0 || sr < 0) return std::nullopt;
    ManipulationCertificate cert = uniform(inst, window_ballot(axis, p, sl, sl + k1 - 1));
    cert.ballots[active[1]] = window_ballot(axis, p, sr, sr + k1 - 1);
    return accept_if(inst, std::move(cert), axis);
  }

  // ones == zeros: orient so at least half the candidates precede p; every
  // manipulator then votes along the axis from its far end back to the start.
  const int k = shape->ones;
  const Axis oriented = pos[p] >= k ? axis : axis.reversed();
  const auto opos = oriented.positions();
  const std::vector<int> back(oriented.order.rbegin(), oriented.order.rend());
  ManipulationCertificate cert = uniform(inst, back);
  if (inst.model == WinnerModel::kUnique && opos[p] + 1 < m &&
      s_scores[oriented.order[opos[p] + 1]] == s_scores[p]) {
    int lightest = -1;
    for (int i = 0; i < static_cast<int>(inst.manipulator_weights.size()); ++i) {
      const Score w = inst.manipulator_weights[i];
      if (w > 0 && (lightest < 0 || w < inst.manipulator_weights[lightest])) lightest = i;
    }
    if (lightest >= 0) cert.ballots[lightest] = sweep(oriented, p, true);
  }
  return accept_if(inst, std::move(cert), axis);
}

std::optional<ManipulationCertificate> ones_zeros_on(const ManipulationInstance& inst, const Axis& axis) {
  const auto shape = ones_zeros_shape(inst.rule);
  if (!shape || shape->ones < shape->zeros) {
    throw InvalidInput("solve_ones_zeros needs a rule (x^k1, 0^k0) with k1 >= k0");
  }
  return ones_zeros_core(inst, axis, &*shape);
}

bool all_equal(const ScoringVector& rule) {
  return std::all_of(rule.values().begin(), rule.values().end(), [&](Score a) { return a == rule[0]; });
}

bool is_plurality_shape(const ScoringVector& rule) {
  for (int i = 1; i < rule.size(); ++i) {
    if (rule[i] != 0) return false;
  }
  return true;
}

std::optional<ManipulationCertificate> borda3_on(const ManipulationInstance& inst, const Axis& axis) {
  const int p = inst.distinguished;
  const int at = axis.positions()[p];
  if (at != 1) return accept_if(inst, uniform(inst, p_first(axis, p)), axis);
  const auto s = scoring_scores(inst.nonmanipulators, inst.rule);
  const int a = axis.order[0];
  const int b = axis.order[2];
  // Rank the stronger rival last.
  const bool a_stronger = s[a] >= s[b];
  return accept_if(inst, uniform(inst, sweep(axis, p, !a_stronger)), axis);
}

std::optional<ManipulationCertificate> exact_on(const ManipulationInstance& inst, const Axis& axis,
                                                const ExactLimits& limits);

std::optional<ManipulationCertificate> dichotomy3_on(const ManipulationInstance& inst, const Axis& axis,
                                                     const ExactLimits& limits) {
  const Score a1 = inst.rule[0] - inst.rule[2];
  const Score a2 = inst.rule[1] - inst.rule[2];
  const int p = inst.distinguished;
  if (a1 > 2 * a2 && a2 > 0) return exact_on(inst, axis, limits);
  if (a2 == 0) return accept_if(inst, uniform(inst, p_first(axis, p)), axis);
  if (a1 == a2) {
    ManipulationInstance normalized = inst;
    normalized.rule = ScoringVector({a1, a2, 0});
    auto cert = ones_zeros_on(normalized, axis);
    if (!cert) return std::nullopt;
    return accept_if(inst, std::move(*cert), axis);
  }
  const int at = axis.positions()[p];
  if (at != 1) return accept_if(inst, uniform(inst, p_first(axis, p)), axis);
  const auto s = scoring_scores(inst.nonmanipulators, inst.rule);
  const int a = axis.order[0];
  const int b = axis.order[2];
  bool toward_a;
  if (inst.model == WinnerModel::kNonUnique) {
    toward_a = s[p] >= s[a];
  } else {
    toward_a = s[a] < s[b];
  }
  return accept_if(inst, uniform(inst, sweep(axis, p, toward_a)), axis);
}

// ---------------------------------------------------------------------------
// Exact search. A state holds, for every rival c, the points the manipulators
// processed so far gave c minus those they gave p. States that some other
// state matches or beats on every rival are dropped.

constexpr Score kSafe = std::numeric_limits<Score>::min() / 4;

struct State {
  std::vector<Score> gap;
  int parent = -1;
  int type = -1;
};

struct GapHash {
  std::size_t operator()(const std::vector<Score>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Score x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

std::vector<State> pareto(std::vector<State> states) {
  std::sort(states.begin(), states.end(), [](const State& a, const State& b) {
    Score sa = 0, sb = 0;
    for (Score x : a.gap) sa += x == kSafe ? 0 : x;
    for (Score x : b.gap) sb += x == kSafe ? 0 : x;
    if (sa != sb) return sa < sb;
    return a.gap < b.gap;
  });
  std::vector<State> kept;
  for (auto& s : states) {
    bool dominated = false;
    for (const auto& k : kept) {
      bool le = true;
      for (std::size_t c = 0; c < s.gap.size() && le; ++c) le = k.gap[c] <= s.gap[c];
      if (le) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(s));
  }
  return kept;
}

std::optional<ManipulationCertificate> exact_on(const ManipulationInstance& inst, const Axis& axis,
                                                const ExactLimits& limits) {
  const int m = axis.size();
  const int p = inst.distinguished;
  const auto types = enumerate_sp_linear_ballots(axis);
  const int nt = static_cast<int>(types.size());
  // delta[t][c]: points type t gives c minus the points it gives p.
  std::vector<std::vector<Score>> delta(nt, std::vector<Score>(m));
  for (int t = 0; t < nt; ++t) {
    std::vector<Score> pts(m);
    for (int r = 0; r < m; ++r) pts[types[t][r]] = inst.rule[r];
    for (int c = 0; c < m; ++c) delta[t][c] = pts[c] - pts[p];
  }
  std::vector<Score> lo(m, 0), hi(m, 0);
  for (int c = 0; c < m; ++c) {
    lo[c] = hi[c] = delta[0][c];
    for (int t = 1; t < nt; ++t) {
      lo[c] = std::min(lo[c], delta[t][c]);
      hi[c] = std::max(hi[c], delta[t][c]);
    }
  }
  const auto s = scoring_scores(inst.nonmanipulators, inst.rule);
  const Score allowed = inst.model == WinnerModel::kUnique ? -1 : 0;
  // Rival c is fine at the end iff base[c] + gap[c] <= allowed.
  std::vector<Score> base(m);
  for (int c = 0; c < m; ++c) base[c] = s[c] - s[p];

  // Heaviest manipulators first keeps the frontier small.
  const int n = static_cast<int>(inst.manipulator_weights.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return inst.manipulator_weights[a] > inst.manipulator_weights[b]; });
  std::vector<Score> rest(n + 1, 0);
  for (int i = n - 1; i >= 0; --i) rest[i] = rest[i + 1] + inst.manipulator_weights[order[i]];

  // Returns false if the state can no longer succeed; marks settled rivals.
  auto settle = [&](std::vector<Score>& gap, Score remaining) {
    for (int c = 0; c < m; ++c) {
      if (c == p || gap[c] == kSafe) continue;
      if (base[c] + gap[c] + lo[c] * remaining > allowed) return false;
      if (base[c] + gap[c] + hi[c] * remaining <= allowed) gap[c] = kSafe;
    }
    return true;
  };

  std::vector<std::vector<State>> layers(n + 1);
  {
    State start{std::vector<Score>(m, 0), -1, -1};
    start.gap[p] = kSafe;
    if (!settle(start.gap, rest[0])) return std::nullopt;
    layers[0].push_back(std::move(start));
  }
  for (int i = 0; i < n; ++i) {
    const Score w = inst.manipulator_weights[order[i]];
    std::unordered_map<std::vector<Score>, int, GapHash> seen;
    std::vector<State> next;
    for (int si = 0; si < static_cast<int>(layers[i].size()); ++si) {
      const auto& cur = layers[i][si];
      for (int t = 0; t < nt; ++t) {
        std::vector<Score> gap = cur.gap;
        for (int c = 0; c < m; ++c) {
          if (gap[c] != kSafe) gap[c] += w * delta[t][c];
        }
        if (!settle(gap, rest[i + 1])) continue;
        if (seen.emplace(gap, static_cast<int>(next.size())).second) {
          next.push_back(State{std::move(gap), si, t});
          if (next.size() > limits.max_states) {
            throw ResourceLimit("exact manipulation search exceeded " + std::to_string(limits.max_states) + " states");
          }
        }
      }
    }
    layers[i + 1] = pareto(std::move(next));
    if (layers[i + 1].empty()) return std::nullopt;
  }
  // settle() with nothing remaining leaves only successful states.
  const auto& final_layer = layers[n];
  if (final_layer.empty()) return std::nullopt;
  ManipulationCertificate cert;
  cert.ballots.resize(n);
  int at = 0;
  for (int i = n; i > 0; --i) {
    const State& st = layers[i][at];
    cert.ballots[order[i - 1]] = types[st.type];
    at = st.parent;
  }
  return accept_if(inst, std::move(cert), axis);
}

}  // namespace

std::optional<ManipulationCertificate> solve_borda3(const ManipulationInstance& inst) {
  validate(inst);
  if (inst.nonmanipulators.size() != 3 || inst.rule != ScoringVector::borda(3)) {
    throw InvalidInput("solve_borda3 needs three candidates and the rule (2,1,0)");
  }
  return over_axes(inst, borda3_on);
}

std::optional<ManipulationCertificate> solve_ones_zeros(const ManipulationInstance& inst) {
  return over_axes(inst, ones_zeros_on);
}

std::optional<ManipulationCertificate> solve_veto(const ManipulationInstance& inst) {
  validate(inst);
  const int m = inst.nonmanipulators.size();
  const auto shape = ones_zeros_shape(inst.rule);
  const bool is_veto = m == 1 ? inst.rule[0] == 0 : shape && shape->zeros == 1;
  if (!is_veto) throw InvalidInput("solve_veto needs a veto rule");
  return over_axes(inst, [m](const ManipulationInstance& in, const Axis& axis) -> std::optional<ManipulationCertificate> {
    const int p = in.distinguished;
    if (m == 1) return accept_if(in, uniform(in, {p}), axis);
    if (m == 2) return ones_zeros_on(in, axis);
    if (in.model == WinnerModel::kUnique) {
      if (m == 3) return ones_zeros_on(in, axis);
      return std::nullopt;
    }
    const auto s = scoring_scores(in.nonmanipulators, in.rule);
    if (s[p] != in.rule[0] * total_weight(in.nonmanipulators)) return std::nullopt;
    return accept_if(in, uniform(in, p_first(axis, p)), axis);
  });
}

std::optional<ManipulationCertificate> solve_3veto(const ManipulationInstance& inst) {
  validate(inst);
  const int m = inst.nonmanipulators.size();
  if (m < 3) throw InvalidInput("3-veto needs at least three candidates");
  if (inst.rule != ScoringVector::j_veto(m, 3)) throw InvalidInput("solve_3veto needs the rule (1^{m-3}, 0^3)");
  return over_axes(inst, [m](const ManipulationInstance& in, const Axis& axis) -> std::optional<ManipulationCertificate> {
    const int p = in.distinguished;
    if (m == 3) {
      if (in.model == WinnerModel::kUnique) return std::nullopt;
      return accept_if(in, uniform(in, p_first(axis, p)), axis);
    }
    if (m == 4) return accept_if(in, uniform(in, p_first(axis, p)), axis);
    if (m == 5) return exact_on(in, axis, ExactLimits{});
    return ones_zeros_on(in, axis);
  });
}

std::optional<ManipulationCertificate> solve_dichotomy3(const ManipulationInstance& inst) {
  validate(inst);
  if (inst.nonmanipulators.size() != 3) throw InvalidInput("solve_dichotomy3 needs exactly three candidates");
  return over_axes(inst, [](const ManipulationInstance& in, const Axis& axis) {
    return dichotomy3_on(in, axis, ExactLimits{});
  });
}

bool three_veto_large_m_rule(const ManipulationInstance& inst) {
  validate(inst);
  const int m = inst.nonmanipulators.size();
  if (m < 4 || inst.rule != ScoringVector::j_veto(m, 3)) {
    throw InvalidInput("three_veto_large_m_rule needs the rule (1^{m-3}, 0^3) with m >= 4");
  }
  const auto shape = *ones_zeros_shape(inst.rule);
  return over_axes(inst, [&shape](const ManipulationInstance& in, const Axis& axis) {
           return ones_zeros_core(in, axis, &shape);
         })
      .has_value();
}

std::optional<ManipulationCertificate> exact_ccwm(const ManipulationInstance& inst, const ExactLimits& limits) {
  validate(inst);
  if (inst.nonmanipulators.size() > 16) throw ResourceLimit("exact manipulation search limited to 16 candidates");
  return over_axes(inst, [&limits](const ManipulationInstance& in, const Axis& axis) {
    return exact_on(in, axis, limits);
  });
}

std::optional<ManipulationCertificate> end_candidate_shortcut(const ManipulationInstance& inst) {
  validate(inst);
  bool any_end = false;
  auto result = over_axes(inst, [&any_end](const ManipulationInstance& in, const Axis& axis) -> std::optional<ManipulationCertificate> {
    const int at = axis.positions()[in.distinguished];
    if (at != 0 && at != axis.size() - 1) return std::nullopt;
    any_end = true;
    return accept_if(in, uniform(in, p_first(axis, in.distinguished)), axis);
  });
  if (!any_end) throw InvalidInput("distinguished candidate is not at an end of the axis");
  return result;
}

ManipulationOutcome solve_manipulation(const ManipulationInstance& inst, const ExactLimits& limits) {
  validate(inst);
  const int m = inst.nonmanipulators.size();
  const auto shape = ones_zeros_shape(inst.rule);
  ManipulationOutcome out;
  const auto axes = candidate_axes(inst);
  for (const auto& axis : axes) {
    const int at = axis.positions()[inst.distinguished];
    std::optional<ManipulationCertificate> cert;
    std::string method;
    if (m == 1 || all_equal(inst.rule)) {
      method = "all-tied";
      cert = accept_if(inst, uniform(inst, p_first(axis, inst.distinguished)), axis);
    } else if (m == 3) {
      const Score a1 = inst.rule[0] - inst.rule[2];
      const Score a2 = inst.rule[1] - inst.rule[2];
      method = a1 > 2 * a2 && a2 > 0 ? "exact" : "dichotomy3";
      cert = dichotomy3_on(inst, axis, limits);
    } else if (shape && shape->ones >= shape->zeros) {
      method = "ones-zeros";
      cert = ones_zeros_on(inst, axis);
    } else if (is_plurality_shape(inst.rule)) {
      method = "plurality";
      cert = accept_if(inst, uniform(inst, p_first(axis, inst.distinguished)), axis);
    } else if (at == 0 || at == m - 1) {
      method = "end-candidate";
      cert = accept_if(inst, uniform(inst, p_first(axis, inst.distinguished)), axis);
    } else {
      method = "exact";
      cert = exact_on(inst, axis, limits);
    }
    if (out.method.empty()) {
      out.method = method;
      out.axis_used = axis;
    }
    if (cert) {
      out.certificate = std::move(cert);
      out.method = method;
      out.axis_used = axis;
      return out;
    }
  }
  return out;
}

}  // namespace spelect
