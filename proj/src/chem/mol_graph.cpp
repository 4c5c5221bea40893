//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/mol_graph.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace exprmol {

int bond_order_value(BondOrder order) {
  switch (order) {
  case BondOrder::kDouble:
    return 2;
  case BondOrder::kTriple:
    return 3;
  default:
    return 1;
  }
}

int MolGraph::add_atom(const Atom &atom) {
  atoms_.push_back(atom);
  adj_.emplace_back();
  return atom_count() - 1;
}

int MolGraph::add_bond(int a, int b, BondOrder order, BondDirection direction) {
  if (a < 0 || b < 0 || a >= atom_count() || b >= atom_count())
    throw std::out_of_range("bond endpoint out of range");
  if (a == b)
    throw std::invalid_argument("self bond on atom " + std::to_string(a));
  if (bond_between(a, b))
    throw std::invalid_argument("duplicate bond " + std::to_string(a) + "-"
                                + std::to_string(b));
  bonds_.push_back({ a, b, order, direction });
  const int id = bond_count() - 1;
  adj_[a].push_back({ b, id });
  adj_[b].push_back({ a, id });
  return id;
}

std::optional<int> MolGraph::bond_between(int a, int b) const {
  for (const auto &n: adj_[a]) {
    if (n.atom == b)
      return n.bond;
  }
  return std::nullopt;
}

int MolGraph::heavy_degree(int i) const {
  int d = 0;
  for (const auto &n: adj_[i])
    d += atoms_[n.atom].atomic_number != 1;
  return d;
}

int MolGraph::total_hydrogens(int i) const {
  return atoms_[i].hydrogens + degree(i) - heavy_degree(i);
}

int MolGraph::bond_order_sum(int i) const {
  int s = 0;
  for (const auto &n: adj_[i])
    s += bond_order_value(bonds_[n.bond].order);
  return s;
}

int MolGraph::heavy_atom_count() const {
  int n = 0;
  for (const auto &a: atoms_)
    n += a.atomic_number != 1;
  return n;
}

std::vector<std::vector<int>> MolGraph::components() const {
  std::vector<int> comp(atoms_.size(), -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < atom_count(); ++s) {
    if (comp[s] >= 0)
      continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      out[c].push_back(u);
      for (const auto &n: adj_[u]) {
        if (comp[n.atom] < 0) {
          comp[n.atom] = c;
          stack.push_back(n.atom);
        }
      }
    }
  }
  for (auto &c: out)
    std::sort(c.begin(), c.end());
  return out;
}

MolGraph MolGraph::permuted(std::span<const int> order) const {
  if (order.size() != atoms_.size())
    throw std::invalid_argument("permutation size does not match atom count");
  std::vector<int> inverse(atoms_.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int p = order[i];
    if (p < 0 || p >= atom_count() || inverse[p] >= 0)
      throw std::invalid_argument("not a permutation");
    inverse[p] = static_cast<int>(i);
  }
  MolGraph g;
  for (int p = 0; p < atom_count(); ++p)
    g.add_atom(atoms_[inverse[p]]);
  for (const auto &b: bonds_)
    g.add_bond(order[b.begin], order[b.end], b.order, b.direction);
  return g;
}

} // namespace exprmol
