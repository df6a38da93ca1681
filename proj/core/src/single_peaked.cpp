#include "spelect/single_peaked.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "spelect/errors.hpp"

namespace spelect {

Axis Axis::reversed() const { return Axis{std::vector<int>(order.rbegin(), order.rend())}; }

std::vector<int> Axis::positions() const {
  std::vector<int> pos(order.size(), -1);
  for (int i = 0; i < size(); ++i) pos[order[i]] = i;
  return pos;
}

bool Axis::is_permutation_of(int m) const {
  if (size() != m) return false;
  std::vector<char> seen(m, 0);
  for (int c : order) {
    if (c < 0 || c >= m || seen[c]) return false;
    seen[c] = 1;
  }
  return true;
}

Axis identity_axis(int m) {
  Axis a;
  a.order.resize(m);
  std::iota(a.order.begin(), a.order.end(), 0);
  return a;
}

bool ranking_consistent(std::span<const int> ranking, const std::vector<int>& position) {
  if (ranking.empty()) return true;
  int lo = position[ranking[0]];
  int hi = lo;
  for (std::size_t i = 1; i < ranking.size(); ++i) {
    int p = position[ranking[i]];
    if (p == lo - 1) {
      lo = p;
    } else if (p == hi + 1) {
      hi = p;
    } else {
      return false;
    }
  }
  return true;
}

bool approved_consistent(std::span<const int> approved, const std::vector<int>& position) {
  if (approved.empty()) return true;
  int lo = position[approved[0]];
  int hi = lo;
  for (int c : approved) {
    lo = std::min(lo, position[c]);
    hi = std::max(hi, position[c]);
  }
  return hi - lo + 1 == static_cast<int>(approved.size());
}

bool linear_consistent(const LinearElection& e, const Axis& axis) {
  if (!axis.is_permutation_of(e.size())) throw InvalidInput("axis is not a permutation of the candidates");
  const auto pos = axis.positions();
  return std::all_of(e.ballots.begin(), e.ballots.end(),
                     [&](const LinearBallot& b) { return ranking_consistent(b.ranking, pos); });
}

bool approval_consistent(const ApprovalElection& e, const Axis& axis) {
  if (!axis.is_permutation_of(e.size())) throw InvalidInput("axis is not a permutation of the candidates");
  const auto pos = axis.positions();
  return std::all_of(e.ballots.begin(), e.ballots.end(),
                     [&](const ApprovalBallot& b) { return approved_consistent(b.approved, pos); });
}

namespace {

Axis canonical(Axis a) {
  Axis r = a.reversed();
  return r.order < a.order ? r : a;
}

// ---------------------------------------------------------------------------
// Approval: consecutive-ones arrangement over overlap components.

using Set = std::vector<int>;  // sorted element list

bool overlaps(const std::vector<char>& in_a, const Set& a, const Set& b) {
  std::size_t common = 0;
  for (int x : b) common += in_a[x] ? 1 : 0;
  return common > 0 && common < a.size() && common < b.size();
}

struct Component {
  std::vector<Set> atoms;  // left-to-right, unique up to reversal
  Set elements;            // sorted union
  std::vector<int> members;
};

// Places the sets of one overlap component one at a time, each overlapping an
// already placed set. Returns false when no consecutive arrangement exists.
bool arrange_component(const std::vector<Set>& sets, Component& comp, int m) {
  std::vector<Set> blocks;
  std::vector<int> block_of(m, -1);
  auto reindex = [&] {
    std::fill(block_of.begin(), block_of.end(), -1);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      for (int x : blocks[b]) block_of[x] = b;
    }
  };

  // Order members so every set after the first overlaps an earlier one.
  std::vector<int> order;
  {
    std::vector<char> used(comp.members.size(), 0);
    std::vector<std::vector<char>> membership;
    for (int id : comp.members) {
      std::vector<char> in(m, 0);
      for (int x : sets[id]) in[x] = 1;
      membership.push_back(std::move(in));
    }
    order.push_back(0);
    used[0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      int u = order[head];
      for (std::size_t v = 0; v < comp.members.size(); ++v) {
        if (!used[v] && overlaps(membership[u], sets[comp.members[u]], sets[comp.members[v]])) {
          used[v] = 1;
          order.push_back(static_cast<int>(v));
        }
      }
    }
  }

  std::vector<char> in_s(m, 0);
  for (int idx : order) {
    const Set& s = sets[comp.members[idx]];
    if (blocks.empty()) {
      blocks.push_back(s);
      reindex();
      continue;
    }
    std::fill(in_s.begin(), in_s.end(), 0);
    for (int x : s) in_s[x] = 1;
    const int nb = static_cast<int>(blocks.size());
    std::vector<int> hits(nb, 0);
    Set fresh;
    for (int x : s) {
      if (block_of[x] < 0) {
        fresh.push_back(x);
      } else {
        ++hits[block_of[x]];
      }
    }
    auto split = [&](int b, bool inside_first) {
      Set in, out;
      for (int x : blocks[b]) (in_s[x] ? in : out).push_back(x);
      std::vector<Set> parts;
      if (inside_first) {
        parts.push_back(std::move(in));
        if (!out.empty()) parts.push_back(std::move(out));
      } else {
        if (!out.empty()) parts.push_back(std::move(out));
        parts.push_back(std::move(in));
      }
      return parts;
    };
    auto full = [&](int b) { return hits[b] == static_cast<int>(blocks[b].size()); };

    if (nb == 1) {
      // Only the first set is placed: (first \ s, first ∩ s, s \ first).
      std::vector<Set> next = split(0, false);
      next.push_back(fresh);
      blocks = std::move(next);
      reindex();
      continue;
    }

    int i = -1, j = -1;
    for (int b = 0; b < nb; ++b) {
      if (hits[b] > 0) {
        if (i < 0) i = b;
        j = b;
      }
    }
    if (i < 0) return false;  // cannot happen for an overlapping set
    for (int b = i + 1; b < j; ++b) {
      if (!full(b)) return false;
    }

    std::vector<Set> next;
    if (fresh.empty()) {
      if (i == j) return false;  // a set inside one block never overlaps a placed set
      for (int b = 0; b < i; ++b) next.push_back(blocks[b]);
      for (auto& part : split(i, false)) next.push_back(std::move(part));
      for (int b = i + 1; b < j; ++b) next.push_back(blocks[b]);
      for (auto& part : split(j, true)) next.push_back(std::move(part));
      for (int b = j + 1; b < nb; ++b) next.push_back(blocks[b]);
    } else {
      const bool as_prefix = i == 0 && (j == 0 || full(0));
      const bool as_suffix = j == nb - 1 && (i == nb - 1 || full(nb - 1));
      if (as_prefix == as_suffix) return false;
      if (as_prefix) {
        next.push_back(fresh);
        for (int b = 0; b < j; ++b) next.push_back(blocks[b]);
        for (auto& part : split(j, true)) next.push_back(std::move(part));
        for (int b = j + 1; b < nb; ++b) next.push_back(blocks[b]);
      } else {
        for (int b = 0; b < i; ++b) next.push_back(blocks[b]);
        for (auto& part : split(i, false)) next.push_back(std::move(part));
        for (int b = i + 1; b < nb; ++b) next.push_back(blocks[b]);
        next.push_back(fresh);
      }
    }
    blocks = std::move(next);
    reindex();
  }
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  comp.atoms = std::move(blocks);
  return true;
}

struct Forest {
  std::vector<Component> comps;
  // children[k][a]: components nested inside atom a of component k.
  std::vector<std::vector<std::vector<int>>> children;
  std::vector<int> roots;
};

std::vector<int> assemble(const Forest& f, const Set& elements, const std::vector<int>& kids, int m);

std::vector<int> assemble_component(const Forest& f, int k, int m) {
  const auto& comp = f.comps[k];
  std::vector<std::vector<int>> parts;
  for (std::size_t a = 0; a < comp.atoms.size(); ++a) {
    parts.push_back(assemble(f, comp.atoms[a], f.children[k][a], m));
  }
  std::vector<int> fwd, bwd;
  for (const auto& p : parts) fwd.insert(fwd.end(), p.begin(), p.end());
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) bwd.insert(bwd.end(), it->begin(), it->end());
  return std::min(fwd, bwd);
}

// Lexicographically least arrangement of `elements` in which every nested
// component occupies a contiguous stretch.
std::vector<int> assemble(const Forest& f, const Set& elements, const std::vector<int>& kids, int m) {
  std::vector<char> covered(m, 0);
  std::vector<std::vector<int>> blocks;
  for (int k : kids) {
    for (int x : f.comps[k].elements) covered[x] = 1;
    blocks.push_back(assemble_component(f, k, m));
  }
  for (int x : elements) {
    if (!covered[x]) blocks.push_back({x});
  }
  std::sort(blocks.begin(), blocks.end());
  std::vector<int> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::optional<Axis> find_axis_approval(const ApprovalElection& e) {
  validate(e);
  const int m = e.size();
  std::vector<Set> sets;
  {
    std::set<Set> seen;
    for (const auto& b : e.ballots) {
      const int k = static_cast<int>(b.approved.size());
      if (k >= 2 && k < m && seen.insert(b.approved).second) sets.push_back(b.approved);
    }
  }
  const int k = static_cast<int>(sets.size());

  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  {
    std::vector<char> in_a(m, 0);
    for (int a = 0; a < k; ++a) {
      for (int x : sets[a]) in_a[x] = 1;
      for (int b = a + 1; b < k; ++b) {
        if (overlaps(in_a, sets[a], sets[b])) parent[find(a)] = find(b);
      }
      for (int x : sets[a]) in_a[x] = 0;
    }
  }

  Forest f;
  {
    std::vector<int> comp_of_root(k, -1);
    for (int s = 0; s < k; ++s) {
      int r = find(s);
      if (comp_of_root[r] < 0) {
        comp_of_root[r] = static_cast<int>(f.comps.size());
        f.comps.emplace_back();
      }
      f.comps[comp_of_root[r]].members.push_back(s);
    }
  }
  for (auto& comp : f.comps) {
    if (!arrange_component(sets, comp, m)) return std::nullopt;
    for (const auto& atom : comp.atoms) comp.elements.insert(comp.elements.end(), atom.begin(), atom.end());
    std::sort(comp.elements.begin(), comp.elements.end());
  }
  // A lone set equal to another component's union adds no constraint.
  {
    std::vector<char> redundant(f.comps.size(), 0);
    for (std::size_t a = 0; a < f.comps.size(); ++a) {
      if (f.comps[a].members.size() != 1) continue;
      for (std::size_t b = 0; b < f.comps.size(); ++b) {
        if (b != a && f.comps[b].elements == f.comps[a].elements &&
            (f.comps[b].members.size() > 1 || b < a)) {
          redundant[a] = 1;
          break;
        }
      }
    }
    std::vector<Component> kept;
    for (std::size_t a = 0; a < f.comps.size(); ++a) {
      if (!redundant[a]) kept.push_back(std::move(f.comps[a]));
    }
    f.comps = std::move(kept);
  }

  // Nest components: a union inside another lies within one of its atoms.
  const int nc = static_cast<int>(f.comps.size());
  f.children.resize(nc);
  for (int a = 0; a < nc; ++a) f.children[a].resize(f.comps[a].atoms.size());
  for (int a = 0; a < nc; ++a) {
    const Set& ua = f.comps[a].elements;
    int best = -1;
    for (int b = 0; b < nc; ++b) {
      if (b == a) continue;
      const Set& ub = f.comps[b].elements;
      if (ub.size() > ua.size() && std::includes(ub.begin(), ub.end(), ua.begin(), ua.end())) {
        if (best < 0 || ub.size() < f.comps[best].elements.size()) best = b;
      }
    }
    if (best < 0) {
      f.roots.push_back(a);
      continue;
    }
    bool placed = false;
    for (std::size_t atom = 0; atom < f.comps[best].atoms.size(); ++atom) {
      const Set& s = f.comps[best].atoms[atom];
      if (std::includes(s.begin(), s.end(), ua.begin(), ua.end())) {
        f.children[best][atom].push_back(a);
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }

  Set all(m);
  std::iota(all.begin(), all.end(), 0);
  Axis axis{assemble(f, all, f.roots, m)};
  if (!approval_consistent(e, axis)) return std::nullopt;
  return canonical(std::move(axis));
}

// ---------------------------------------------------------------------------
// Linear: peel each ballot's bottom candidate off the remaining set. Those
// candidates sit at the two ends of the remaining stretch, so every candidate
// gets a stage (how far from the outside it sits) and only its side is free.
// Each single-peakedness triple becomes an equal/differ constraint between two
// side labels, solved with a parity union-find.

namespace {

class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::pair<int, int> find(int x) {
    int p = 0;
    int root = x;
    while (parent_[root] != root) {
      p ^= parity_[root];
      root = parent_[root];
    }
    // path compression
    int cur = x, acc = p;
    while (parent_[cur] != cur) {
      int next = parent_[cur];
      int step = parity_[cur];
      parent_[cur] = root;
      parity_[cur] = acc;
      acc ^= step;
      cur = next;
    }
    return {root, p};
  }

  // Requires label(a) xor label(b) == differ. Returns false on contradiction.
  bool relate(int a, int b, int differ) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == differ;
    parent_[ra] = rb;
    parity_[ra] = pa ^ pb ^ differ;
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

}  // namespace

std::optional<Axis> find_axis_linear(const LinearElection& e) {
  validate(e);
  const int m = e.size();
  if (e.ballots.empty() || m <= 2) return identity_axis(m);

  std::vector<int> stage(m, -1);
  std::vector<char> remaining(m, 1);
  ParityUnionFind labels(m);
  int left = m;
  for (int t = 0; left > 0; ++t) {
    std::vector<int> last;
    for (const auto& b : e.ballots) {
      for (auto it = b.ranking.rbegin(); it != b.ranking.rend(); ++it) {
        if (remaining[*it]) {
          if (std::find(last.begin(), last.end(), *it) == last.end()) last.push_back(*it);
          break;
        }
      }
    }
    if (last.size() > 2) return std::nullopt;
    if (last.size() == 2 && !labels.relate(last[0], last[1], 1)) return std::nullopt;
    for (int c : last) {
      stage[c] = t;
      remaining[c] = 0;
      --left;
    }
  }

  std::vector<int> outer;
  bool any_inner = false;
  for (const auto& b : e.ballots) {
    for (std::size_t zi = 1; zi < b.ranking.size(); ++zi) {
      const int z = b.ranking[zi];
      outer.clear();
      any_inner = false;
      for (std::size_t ai = 0; ai < zi; ++ai) {
        const int a = b.ranking[ai];
        if (stage[a] < stage[z]) {
          outer.push_back(a);
        } else {
          any_inner = true;
        }
      }
      for (std::size_t i = 1; i < outer.size(); ++i) {
        if (!labels.relate(outer[0], outer[i], 0)) return std::nullopt;
      }
      if (any_inner && !outer.empty() && !labels.relate(outer[0], z, 1)) return std::nullopt;
    }
  }

  std::vector<int> on_left, on_right;
  for (int c = 0; c < m; ++c) (labels.find(c).second == 0 ? on_left : on_right).push_back(c);
  std::stable_sort(on_left.begin(), on_left.end(), [&](int a, int b) { return stage[a] < stage[b]; });
  std::stable_sort(on_right.begin(), on_right.end(), [&](int a, int b) { return stage[a] > stage[b]; });
  Axis axis;
  axis.order = on_left;
  axis.order.insert(axis.order.end(), on_right.begin(), on_right.end());
  if (!linear_consistent(e, axis)) throw std::logic_error("find_axis_linear produced an invalid axis");
  return canonical(std::move(axis));
}

std::vector<std::vector<int>> enumerate_sp_linear_ballots(const Axis& axis) {
  const int m = axis.size();
  std::vector<std::vector<int>> out;
  if (m == 0) return out;
  std::vector<int> current;
  current.reserve(m);
  auto grow = [&](auto&& self, int lo, int hi) -> void {
    if (lo == 0 && hi == m - 1) {
      out.push_back(current);
      return;
    }
    if (lo > 0) {
      current.push_back(axis.order[lo - 1]);
      self(self, lo - 1, hi);
      current.pop_back();
    }
    if (hi < m - 1) {
      current.push_back(axis.order[hi + 1]);
      self(self, lo, hi + 1);
      current.pop_back();
    }
  };
  for (int peak = 0; peak < m; ++peak) {
    current.assign(1, axis.order[peak]);
    grow(grow, peak, peak);
  }
  return out;
}

std::vector<Axis> consistent_axes_up_to_reversal(const LinearElection& e, int max_candidates) {
  const int m = e.size();
  if (m > max_candidates) throw ResourceLimit("axis enumeration limited to " + std::to_string(max_candidates) + " candidates");
  std::vector<Axis> out;
  Axis a = identity_axis(m);
  do {
    std::vector<int> rev(a.order.rbegin(), a.order.rend());
    if (a.order <= rev && linear_consistent(e, a)) out.push_back(a);
  } while (std::next_permutation(a.order.begin(), a.order.end()));
  return out;
}

}  // namespace spelect
