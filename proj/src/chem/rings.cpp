//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/rings.h"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>

namespace exprmol {
namespace {
  using Bits = std::vector<std::uint64_t>;

  void set_bit(Bits &b, int i) {
    b[i >> 6] |= std::uint64_t { 1 } << (i & 63);
  }

  bool test_bit(const Bits &b, int i) {
    return (b[i >> 6] >> (i & 63)) & 1;
  }

  int highest_bit(const Bits &b) {
    for (int w = static_cast<int>(b.size()) - 1; w >= 0; --w) {
      if (b[w] != 0)
        return w * 64 + 63 - __builtin_clzll(b[w]);
    }
    return -1;
  }

  struct Candidate {
    int length;
    Bits edges;
  };

  // Orders the edges of a simple cycle into a closed walk.
  Ring walk_cycle(const MolGraph &g, const std::vector<int> &edges) {
    Ring ring;
    std::set<int> remaining(edges.begin(), edges.end());
    int start = g.bond(edges.front()).begin;
    for (int e: edges)
      start = std::min({ start, g.bond(e).begin, g.bond(e).end });
    int cur = start;
    while (!remaining.empty()) {
      int next_bond = -1;
      for (const auto &n: g.neighbors(cur)) {
        if (remaining.count(n.bond) != 0
            && (next_bond < 0 || n.atom < g.bond(next_bond).other(cur)))
          next_bond = n.bond;
      }
      if (next_bond < 0)
        break;
      ring.atoms.push_back(cur);
      ring.bonds.push_back(next_bond);
      remaining.erase(next_bond);
      cur = g.bond(next_bond).other(cur);
    }
    return ring;
  }
} // namespace

std::vector<bool> ring_bond_flags(const MolGraph &g) {
  // Iterative Tarjan bridge finding.
  const int n = g.atom_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> in_ring(g.bond_count(), true);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int s = 0; s < n; ++s) {
    if (disc[s] >= 0)
      continue;
    disc[s] = low[s] = timer++;
    stack.push_back({ s, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      auto nbrs = g.neighbors(f.atom);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame &p = stack.back();
        low[p.atom] = std::min(low[p.atom], low[done.atom]);
        if (low[done.atom] > disc[p.atom])
          in_ring[done.parent_bond] = false;
      }
    }
  }
  return in_ring;
}

std::vector<bool> ring_atom_flags(const MolGraph &g) {
  const auto rb = ring_bond_flags(g);
  std::vector<bool> out(g.atom_count(), false);
  for (int b = 0; b < g.bond_count(); ++b) {
    if (rb[b]) {
      out[g.bond(b).begin] = true;
      out[g.bond(b).end] = true;
    }
  }
  return out;
}

std::vector<Ring> sssr(const MolGraph &g) {
  const int n = g.atom_count();
  const auto rb = ring_bond_flags(g);
  int ring_edge_count = 0;
  for (bool f: rb)
    ring_edge_count += f;
  if (ring_edge_count == 0)
    return {};

  // Cyclomatic number of the whole graph (bridges contribute nothing).
  const int cyclomatic =
      g.bond_count() - n + static_cast<int>(g.components().size());
  const std::size_t words = (g.bond_count() + 63) / 64;

  std::vector<Candidate> candidates;
  std::set<Bits> seen;
  std::vector<int> dist(n), parent_bond(n);
  for (int v = 0; v < n; ++v) {
    bool has_ring_bond = false;
    for (const auto &nb: g.neighbors(v))
      has_ring_bond = has_ring_bond || rb[nb.bond];
    if (!has_ring_bond)
      continue;

    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent_bond.begin(), parent_bond.end(), -1);
    std::deque<int> queue { v };
    dist[v] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto &nb: g.neighbors(u)) {
        if (!rb[nb.bond] || dist[nb.atom] >= 0)
          continue;
        dist[nb.atom] = dist[u] + 1;
        parent_bond[nb.atom] = nb.bond;
        queue.push_back(nb.atom);
      }
    }

    for (int e = 0; e < g.bond_count(); ++e) {
      if (!rb[e])
        continue;
      const int x = g.bond(e).begin;
      const int y = g.bond(e).end;
      if (dist[x] < 0 || dist[y] < 0 || parent_bond[x] == e || parent_bond[y] == e)
        continue;
      // Paths v..x and v..y must meet only at v.
      std::vector<int> path_x, path_y;
      for (int a = x; a != v; a = g.bond(parent_bond[a]).other(a))
        path_x.push_back(a);
      for (int a = y; a != v; a = g.bond(parent_bond[a]).other(a))
        path_y.push_back(a);
      bool disjoint = true;
      for (int a: path_x) {
        if (std::find(path_y.begin(), path_y.end(), a) != path_y.end()) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint)
        continue;
      Bits bits(words, 0);
      set_bit(bits, e);
      for (int a: path_x)
        set_bit(bits, parent_bond[a]);
      for (int a: path_y)
        set_bit(bits, parent_bond[a]);
      if (seen.insert(bits).second)
        candidates.push_back({ dist[x] + dist[y] + 1, std::move(bits) });
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
    if (a.length != b.length)
      return a.length < b.length;
    return a.edges < b.edges;
  });

  // Incremental GF(2) elimination keyed by the highest set bit.
  std::vector<Bits> basis;
  std::vector<int> pivots;
  std::vector<Ring> rings;
  for (const auto &c: candidates) {
    if (static_cast<int>(rings.size()) == cyclomatic)
      break;
    Bits r = c.edges;
    while (true) {
      const int h = highest_bit(r);
      if (h < 0)
        break;
      auto it = std::find(pivots.begin(), pivots.end(), h);
      if (it == pivots.end())
        break;
      const auto &b = basis[it - pivots.begin()];
      for (std::size_t w = 0; w < words; ++w)
        r[w] ^= b[w];
    }
    if (highest_bit(r) < 0)
      continue;
    pivots.push_back(highest_bit(r));
    basis.push_back(std::move(r));
    std::vector<int> edges;
    for (int e = 0; e < g.bond_count(); ++e) {
      if (test_bit(c.edges, e))
        edges.push_back(e);
    }
    rings.push_back(walk_cycle(g, edges));
  }
  return rings;
}

int spiro_atom_count(const MolGraph &g, const std::vector<Ring> &rings) {
  std::vector<bool> spiro(g.atom_count(), false);
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (std::size_t j = i + 1; j < rings.size(); ++j) {
      int shared = -1;
      int count = 0;
      for (int a: rings[i].atoms) {
        if (std::find(rings[j].atoms.begin(), rings[j].atoms.end(), a)
            != rings[j].atoms.end()) {
          shared = a;
          ++count;
        }
      }
      if (count == 1)
        spiro[shared] = true;
    }
  }
  return static_cast<int>(std::count(spiro.begin(), spiro.end(), true));
}

int bridgehead_atom_count(const MolGraph &g, const std::vector<Ring> &rings) {
  std::vector<bool> head(g.atom_count(), false);
  std::vector<int> hits(g.atom_count());
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (std::size_t j = i + 1; j < rings.size(); ++j) {
      std::vector<int> shared;
      for (int b: rings[i].bonds) {
        if (std::find(rings[j].bonds.begin(), rings[j].bonds.end(), b)
            != rings[j].bonds.end())
          shared.push_back(b);
      }
      if (shared.size() < 2)
        continue;
      std::fill(hits.begin(), hits.end(), 0);
      for (int b: shared) {
        ++hits[g.bond(b).begin];
        ++hits[g.bond(b).end];
      }
      for (int a = 0; a < g.atom_count(); ++a) {
        if (hits[a] == 1)
          head[a] = true;
      }
    }
  }
  return static_cast<int>(std::count(head.begin(), head.end(), true));
}

} // namespace exprmol
