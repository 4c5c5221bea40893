//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/canonical.h"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <utility>

#include "exprmol/smiles.h"

namespace exprmol {
namespace {
  int bond_code(BondOrder order) {
    return static_cast<int>(order);
  }

  template <class Key>
  std::vector<int> dense_ranks(const std::vector<Key> &keys) {
    std::vector<int> idx(keys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    std::vector<int> ranks(keys.size(), 0);
    int r = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0 && keys[idx[k - 1]] < keys[idx[k]])
        ++r;
      ranks[idx[k]] = r;
    }
    return ranks;
  }

  int class_count(const std::vector<int> &ranks) {
    return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
  }

  class TieBreaker {
  public:
    TieBreaker(const MolGraph &g, int budget): g_(g), budget_(budget) { }

    CanonicalForm run() {
      search(refine_ranks(g_, initial_ranks(g_)));
      return { best_, best_ranks_ };
    }

  private:
    void search(const std::vector<int> &ranks) {
      const int n = g_.atom_count();
      if (class_count(ranks) == n) {
        std::string s = write_smiles(g_, ranks);
        if (leaves_ == 0 || s < best_) {
          best_ = std::move(s);
          best_ranks_ = ranks;
        }
        ++leaves_;
        return;
      }

      std::vector<int> count(n, 0);
      for (int r: ranks)
        ++count[r];
      int tied = 0;
      while (count[tied] < 2)
        ++tied;

      std::vector<int> members;
      for (int i = 0; i < n; ++i) {
        if (ranks[i] != tied)
          continue;
        // Interchangeable terminal atoms on the same neighbor give the same
        // strings; try only one of them.
        bool twin = false;
        if (g_.degree(i) == 1) {
          for (int m: members) {
            if (g_.degree(m) == 1 && g_.neighbors(m)[0].atom == g_.neighbors(i)[0].atom
                && g_.bond(g_.neighbors(m)[0].bond).order
                       == g_.bond(g_.neighbors(i)[0].bond).order
                && g_.bond(g_.neighbors(m)[0].bond).direction == BondDirection::kNone
                && g_.bond(g_.neighbors(i)[0].bond).direction == BondDirection::kNone
                && g_.atom(m).chirality == g_.atom(i).chirality) {
              twin = true;
              break;
            }
          }
        }
        if (!twin)
          members.push_back(i);
      }

      for (int m: members) {
        std::vector<int> next(n);
        for (int i = 0; i < n; ++i)
          next[i] = 2 * ranks[i] + (ranks[i] == tied && i != m ? 1 : 0);
        search(refine_ranks(g_, dense_ranks(next)));
        if (leaves_ >= budget_)
          break;
      }
    }

    const MolGraph &g_;
    int budget_;
    int leaves_ = 0;
    std::string best_;
    std::vector<int> best_ranks_;
  };
} // namespace

std::vector<int> initial_ranks(const MolGraph &g) {
  using Key = std::tuple<int, int, int, int, int, int>;
  std::vector<Key> keys;
  keys.reserve(g.atom_count());
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom &a = g.atom(i);
    keys.emplace_back(a.atomic_number, a.charge, g.degree(i), g.total_hydrogens(i),
                      a.aromatic ? 1 : 0, a.isotope);
  }
  return dense_ranks(keys);
}

std::vector<int> refine_ranks(const MolGraph &g, std::vector<int> ranks) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  int classes = class_count(ranks);
  while (true) {
    std::vector<Key> keys(g.atom_count());
    for (int i = 0; i < g.atom_count(); ++i) {
      keys[i].first = ranks[i];
      for (const auto &nb: g.neighbors(i))
        keys[i].second.emplace_back(ranks[nb.atom], bond_code(g.bond(nb.bond).order));
      std::sort(keys[i].second.begin(), keys[i].second.end());
    }
    ranks = dense_ranks(keys);
    const int next = class_count(ranks);
    if (next == classes)
      return ranks;
    classes = next;
  }
}

CanonicalForm canonical_form(const MolGraph &g, int leaf_budget) {
  if (g.empty())
    return {};
  return TieBreaker(g, leaf_budget).run();
}

std::string canonical_smiles(const MolGraph &g) {
  return canonical_form(g).smiles;
}

std::string canonicalize(std::string_view smiles) {
  return canonical_smiles(parse_smiles_or_throw(smiles));
}

std::string random_smiles(const MolGraph &g, Rng &rng) {
  std::vector<int> ranks(g.atom_count());
  std::iota(ranks.begin(), ranks.end(), 0);
  rng.shuffle(ranks);
  return write_smiles(g, ranks);
}

} // namespace exprmol
